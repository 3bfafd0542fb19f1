#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "framelet/family.hpp"

namespace framelet {

// One Gabor window: translation step q0, modulation spacing parameter p0,
// and the window spectrum (frequency domain).
struct WeylHeisenbergWindow {
  double p0 = 0.0;
  double q0 = 0.0;
  PiecewiseSpectrum window;
};

struct WeylHeisenbergParams {
  double A = 1.0;
  double B = 0.0;
  std::vector<WeylHeisenbergWindow> windows;
};

// One Gabor atom reduced to the frequency domain: spec carries the modulation
// (frequency shift by A*l*p0) and the translate (timeShift -n*q0); phase is
// the remaining unimodular constant exp(2*pi*i*(-(1/2)*A*n*l*p0*q0 + B*l*p0)).
struct GaborAtom {
  long n = 0;
  long l = 0;
  int j = 0;
  cplx phase{1.0, 0.0};
  PiecewiseSpectrum spec;
};

// Enforces A != 0, q0 > 0 and uniform across windows, |p0*q0| < 1, nonzero
// windows with support length at most lambda = 1/q0.
void validateWeylHeisenberg(const WeylHeisenbergParams& p);

// Modulated generator family phi_(l,j) = shiftFrequency(window_j, A*l*p0_j)
// on the uniform translation step q0 = 1/lambda, atom phases recorded.
GeneratorFamily buildGaborFamily(const WeylHeisenbergParams& p);

GaborAtom gaborAtom(const WeylHeisenbergParams& p, long n, long l, int j);

// alpha = lambda * essInf of the modulated density, beta likewise with the
// essential supremum; same code path as translateFrameBounds on the family.
FrameBounds gaborFrameBounds(const WeylHeisenbergParams& p);

// One wavelet window: dilation rate q0 and the window spectrum.
struct ExtendedAffineWindow {
  double q0 = 0.0;
  PiecewiseSpectrum window;
};

struct ExtendedAffineParams {
  double c = 0.0;
  double d = 1.0;
  std::vector<ExtendedAffineWindow> windows;
  std::optional<std::pair<long, long>> truncateL;
};

// Lattice data of the atom (n,l,j): alpha = e^{-l*q0_j}, beta = n*q0_j/d,
// gamma = beta * ln(alpha)/(alpha-1) with the limit value at alpha = 1.
struct LatticePoint {
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 0.0;
};

void validateExtendedAffine(const ExtendedAffineParams& p);

// Dilated generator family phi_(l,j) = dilate(window_j, e^{-l*q0_j}),
// translated on step q0_j.
GeneratorFamily buildWaveletFamily(const ExtendedAffineParams& p);

LatticePoint latticePoint(const ExtendedAffineParams& p, long n, long l, int j);

struct WaveletDiagnostics {
  double inf = 0.0;
  double sup = 0.0;
  double zeroSetMeasure = 0.0;
  PiecewiseQuad values;  // W over the requested window
  std::string caveat;    // always present: analysis is window-restricted
};

// W(g) = lambda * sum over (l,j) of e^{-l*q0_j} |window_j(g*e^{-l*q0_j})|^2,
// evaluated exactly over the window, with the measure of {W = 0} reported.
WaveletDiagnostics waveletDiagnostics(const ExtendedAffineParams& p,
                                      double winLo, double winHi);

struct ReciprocalBounds {
  FrameBounds bounds;
  bool validityWarning = false;  // set when lambda > 1
  std::string warningText;
};

// Bounds of the system with reciprocal steps 1/q^{(l)}: (alpha/lambda^2,
// beta/lambda^2) where (alpha, beta) = translateFrameBounds(fam). For
// lambda > 1 the identity's derivation is doubtful; the result carries a
// validity warning and callers should cross-check against the oracle.
ReciprocalBounds reciprocalStepBounds(const GeneratorFamily& fam);

// Trig polynomial F(g) = sum_n coeff_n * exp(2*pi*i*n*g/period), attached to
// window j and modulation index l; finitely many coefficients.
struct PeriodicSymbol {
  int j = 0;
  long l = 0;
  double period = 1.0;
  std::vector<std::pair<long, cplx>> coeffs;

  cplx eval(double g) const;
};

// f(g) = sum over symbols F_{l,j}(g) * window_j(g - A*l*p0_j): a span member
// by construction, exactly evaluable anywhere.
class SynthesizedSpectrum {
 public:
  SynthesizedSpectrum(std::vector<PeriodicSymbol> symbols,
                      WeylHeisenbergParams params);

  cplx eval(double g) const;
  std::vector<double> breakpoints() const;
  const std::vector<PeriodicSymbol>& symbols() const { return symbols_; }

 private:
  std::vector<PeriodicSymbol> symbols_;
  WeylHeisenbergParams params_;
};

SynthesizedSpectrum synthesizeFromSymbols(std::vector<PeriodicSymbol> symbols,
                                          const WeylHeisenbergParams& p);

// The one-coefficient symbol whose synthesis reproduces the full spectrum of
// atom (n,l,j), phase included: period 1/q0_j, coefficient phase(n,l,j) at n.
PeriodicSymbol atomSymbol(const WeylHeisenbergParams& p, long n, long l, int j);

}  // namespace framelet
