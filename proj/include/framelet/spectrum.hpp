#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace framelet {

using cplx = std::complex<double>;

// Endpoint comparison tolerance: exact rational inputs dominate, the
// tolerance only guards float noise.
inline bool nearlyEqual(double a, double b) {
  double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= 1e-12 * scale;
}

// Complex linear piece: value a0 + a1*g on the half-open interval (lo, hi].
struct Segment {
  double lo = 0.0;
  double hi = 0.0;
  cplx a0{0.0, 0.0};
  cplx a1{0.0, 0.0};
};

// Compactly supported piecewise-linear complex function of frequency,
// together with a symbolic time shift tau: the object represents
// g -> exp(-2*pi*i*tau*g) * (piecewise value).
class PiecewiseSpectrum {
 public:
  PiecewiseSpectrum() = default;  // identically zero
  explicit PiecewiseSpectrum(std::vector<Segment> segments, double timeShift = 0.0);

  // Piecewise value times the phase exp(-2*pi*i*tau*g); 0 outside support.
  cplx eval(double g) const;
  // Piecewise value only (no phase).
  cplx evalPoly(double g) const;

  const std::vector<Segment>& segments() const { return segments_; }
  double timeShift() const { return timeShift_; }

  bool isZero() const { return segments_.empty(); }
  double supportLo() const;
  double supportHi() const;
  double supportLength() const;  // max hi - min lo; 0 for the zero spectrum
  double normSquared() const;

  std::vector<double> breakpoints() const;

 private:
  std::vector<Segment> segments_;  // sorted by lo, pairwise disjoint
  double timeShift_ = 0.0;
};

// Real piece of degree <= 2: value b0 + b1*g + b2*g^2 on (lo, hi].
struct QuadSegment {
  double lo = 0.0;
  double hi = 0.0;
  double b0 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
};

// Real piecewise-quadratic function on half-open intervals, optionally
// periodic: when period > 0 the stored segments describe one period and
// evaluation reduces the argument into that window (left-continuously).
class PiecewiseQuad {
 public:
  PiecewiseQuad() = default;
  explicit PiecewiseQuad(std::vector<QuadSegment> segments, double period = 0.0);

  double eval(double g) const;
  const std::vector<QuadSegment>& segments() const { return segments_; }
  double period() const { return period_; }
  bool isPeriodic() const { return period_ > 0.0; }

  bool isZero() const { return segments_.empty(); }
  double supportLo() const;
  double supportHi() const;

  PiecewiseQuad plus(const PiecewiseQuad& other) const;  // aperiodic add
  PiecewiseQuad scaled(double factor) const;
  PiecewiseQuad restrictedTo(double lo, double hi) const;
  PiecewiseQuad withPeriod(double period) const;

  std::vector<double> breakpoints() const;

 private:
  std::vector<QuadSegment> segments_;
  double period_ = 0.0;
};

// out(g) = in(g - b); support translated by b; time shift unchanged.
PiecewiseSpectrum shiftFrequency(const PiecewiseSpectrum& spec, double b);

// out(g) = sqrt(c) * in(c*g) for c > 0; L2 norm preserved; time shift
// becomes c*tau. Throws invalid-dilation for c <= 0.
PiecewiseSpectrum dilate(const PiecewiseSpectrum& spec, double c);

// Adds dtau to the symbolic time shift (the time-domain translate by dtau).
PiecewiseSpectrum translatedInTime(const PiecewiseSpectrum& spec, double dtau);

// Multiplies the piecewise values by a constant factor.
PiecewiseSpectrum scaled(const PiecewiseSpectrum& spec, cplx factor);

// |spec|^2 as an exact real piecewise quadratic; the time-shift phase drops.
PiecewiseQuad modSquared(const PiecewiseSpectrum& spec);

// Closed form of  integral f(g) * conj(gSpec(g)) * exp(2*pi*i*delta*g) dg,
// the frequency-domain inner product of time translates: both arguments'
// symbolic time shifts fold into the effective exponent delta + tau_g - tau_f.
cplx innerProduct(const PiecewiseSpectrum& f, const PiecewiseSpectrum& gSpec,
                  double delta);

}  // namespace framelet
