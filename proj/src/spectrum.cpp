#include "framelet/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "framelet/errors.hpp"

namespace framelet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validateSegments(const std::vector<Segment>& segs) {
  for (const auto& s : segs) {
    if (!(s.lo < s.hi)) {
      raise(ErrorCode::InvalidParams, "segment requires lo < hi");
    }
    if (!std::isfinite(s.lo) || !std::isfinite(s.hi) ||
        !std::isfinite(s.a0.real()) || !std::isfinite(s.a0.imag()) ||
        !std::isfinite(s.a1.real()) || !std::isfinite(s.a1.imag())) {
      raise(ErrorCode::InvalidParams, "segment requires finite endpoints and coefficients");
    }
  }
  for (size_t i = 1; i < segs.size(); ++i) {
    if (segs[i].lo < segs[i - 1].hi && !nearlyEqual(segs[i].lo, segs[i - 1].hi)) {
      raise(ErrorCode::InvalidParams, "segments must be pairwise disjoint");
    }
  }
}

}  // namespace

PiecewiseSpectrum::PiecewiseSpectrum(std::vector<Segment> segments, double timeShift)
    : segments_(std::move(segments)), timeShift_(timeShift) {
  std::sort(segments_.begin(), segments_.end(),
            [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  validateSegments(segments_);
  if (!std::isfinite(timeShift_)) {
    raise(ErrorCode::InvalidParams, "time shift must be finite");
  }
}

cplx PiecewiseSpectrum::evalPoly(double g) const {
  for (const auto& s : segments_) {
    if (s.lo < g && g <= s.hi) return s.a0 + s.a1 * g;
    if (s.lo >= g) break;
  }
  return {0.0, 0.0};
}

cplx PiecewiseSpectrum::eval(double g) const {
  cplx v = evalPoly(g);
  if (v == cplx{0.0, 0.0} || timeShift_ == 0.0) return v;
  return std::polar(1.0, -kTwoPi * timeShift_ * g) * v;
}

double PiecewiseSpectrum::supportLo() const {
  return segments_.empty() ? 0.0 : segments_.front().lo;
}

double PiecewiseSpectrum::supportHi() const {
  return segments_.empty() ? 0.0 : segments_.back().hi;
}

double PiecewiseSpectrum::supportLength() const {
  return segments_.empty() ? 0.0 : supportHi() - supportLo();
}

double PiecewiseSpectrum::normSquared() const {
  return innerProduct(*this, *this, 0.0).real();
}

std::vector<double> PiecewiseSpectrum::breakpoints() const {
  std::vector<double> pts;
  for (const auto& s : segments_) {
    if (pts.empty() || !nearlyEqual(pts.back(), s.lo)) pts.push_back(s.lo);
    pts.push_back(s.hi);
  }
  return pts;
}

PiecewiseQuad::PiecewiseQuad(std::vector<QuadSegment> segments, double period)
    : segments_(std::move(segments)), period_(period) {
  std::sort(segments_.begin(), segments_.end(),
            [](const QuadSegment& a, const QuadSegment& b) { return a.lo < b.lo; });
  for (const auto& s : segments_) {
    if (!(s.lo < s.hi)) raise(ErrorCode::InvalidParams, "quad segment requires lo < hi");
  }
  for (size_t i = 1; i < segments_.size(); ++i) {
    if (segments_[i].lo < segments_[i - 1].hi &&
        !nearlyEqual(segments_[i].lo, segments_[i - 1].hi)) {
      raise(ErrorCode::InvalidParams, "quad segments must be pairwise disjoint");
    }
  }
  if (period_ < 0.0) raise(ErrorCode::InvalidParams, "period must be >= 0");
  if (period_ > 0.0 && !segments_.empty() &&
      supportHi() - supportLo() > period_ + 1e-12 * std::max(1.0, period_)) {
    raise(ErrorCode::InvalidParams, "periodic segments must fit within one period");
  }
}

double PiecewiseQuad::eval(double g) const {
  if (segments_.empty()) return 0.0;
  double x = g;
  if (period_ > 0.0) {
    // reduce into (lo, lo + period] left-continuously
    double base = segments_.front().lo;
    double k = std::ceil((g - base) / period_) - 1.0;
    x = g - k * period_;
    if (x <= base) x += period_;
    if (x > base + period_) x -= period_;
  }
  for (const auto& s : segments_) {
    if (s.lo < x && x <= s.hi) return s.b0 + x * (s.b1 + x * s.b2);
    if (s.lo >= x) break;
  }
  return 0.0;
}

double PiecewiseQuad::supportLo() const {
  return segments_.empty() ? 0.0 : segments_.front().lo;
}

double PiecewiseQuad::supportHi() const {
  return segments_.empty() ? 0.0 : segments_.back().hi;
}

PiecewiseQuad PiecewiseQuad::plus(const PiecewiseQuad& other) const {
  if (period_ > 0.0 || other.period_ > 0.0) {
    raise(ErrorCode::InvalidParams, "plus requires aperiodic operands");
  }
  std::vector<double> pts;
  for (const auto& s : segments_) { pts.push_back(s.lo); pts.push_back(s.hi); }
  for (const auto& s : other.segments_) { pts.push_back(s.lo); pts.push_back(s.hi); }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) { return nearlyEqual(a, b); }),
            pts.end());
  std::vector<QuadSegment> out;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    double lo = pts[i], hi = pts[i + 1];
    double mid = 0.5 * (lo + hi);
    const QuadSegment* pa = nullptr;
    const QuadSegment* pb = nullptr;
    for (const auto& s : segments_) {
      if (s.lo < mid && mid <= s.hi) { pa = &s; break; }
    }
    for (const auto& s : other.segments_) {
      if (s.lo < mid && mid <= s.hi) { pb = &s; break; }
    }
    if (!pa && !pb) continue;
    QuadSegment q{lo, hi, 0.0, 0.0, 0.0};
    if (pa) { q.b0 += pa->b0; q.b1 += pa->b1; q.b2 += pa->b2; }
    if (pb) { q.b0 += pb->b0; q.b1 += pb->b1; q.b2 += pb->b2; }
    out.push_back(q);
  }
  return PiecewiseQuad(std::move(out));
}

PiecewiseQuad PiecewiseQuad::scaled(double factor) const {
  std::vector<QuadSegment> out = segments_;
  for (auto& s : out) { s.b0 *= factor; s.b1 *= factor; s.b2 *= factor; }
  return PiecewiseQuad(std::move(out), period_);
}

PiecewiseQuad PiecewiseQuad::restrictedTo(double lo, double hi) const {
  if (period_ > 0.0) {
    raise(ErrorCode::InvalidParams, "restrictedTo requires an aperiodic function");
  }
  std::vector<QuadSegment> out;
  for (const auto& s : segments_) {
    double a = std::max(s.lo, lo), b = std::min(s.hi, hi);
    if (a < b && !nearlyEqual(a, b)) out.push_back({a, b, s.b0, s.b1, s.b2});
  }
  return PiecewiseQuad(std::move(out));
}

PiecewiseQuad PiecewiseQuad::withPeriod(double period) const {
  return PiecewiseQuad(segments_, period);
}

std::vector<double> PiecewiseQuad::breakpoints() const {
  std::vector<double> pts;
  for (const auto& s : segments_) {
    if (pts.empty() || !nearlyEqual(pts.back(), s.lo)) pts.push_back(s.lo);
    pts.push_back(s.hi);
  }
  return pts;
}

PiecewiseSpectrum shiftFrequency(const PiecewiseSpectrum& spec, double b) {
  // out(g) = in(g-b) exactly; with in = exp(-2*pi*i*tau*g)*poly(g) the shifted
  // phase contributes the constant exp(2*pi*i*tau*b) on top of poly(g-b).
  cplx constant = std::polar(1.0, 2.0 * std::numbers::pi * spec.timeShift() * b);
  std::vector<Segment> out;
  out.reserve(spec.segments().size());
  for (const auto& s : spec.segments()) {
    out.push_back({s.lo + b, s.hi + b, constant * (s.a0 - s.a1 * b),
                   constant * s.a1});
  }
  return PiecewiseSpectrum(std::move(out), spec.timeShift());
}

PiecewiseSpectrum dilate(const PiecewiseSpectrum& spec, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    raise(ErrorCode::InvalidDilation, "dilation factor must be positive and finite");
  }
  double root = std::sqrt(c);
  std::vector<Segment> out;
  out.reserve(spec.segments().size());
  for (const auto& s : spec.segments()) {
    // out(g) = sqrt(c) * (a0 + a1*(c*g)) on (lo/c, hi/c]
    out.push_back({s.lo / c, s.hi / c, root * s.a0, root * s.a1 * c});
  }
  return PiecewiseSpectrum(std::move(out), spec.timeShift() * c);
}

PiecewiseSpectrum translatedInTime(const PiecewiseSpectrum& spec, double dtau) {
  return PiecewiseSpectrum(spec.segments(), spec.timeShift() + dtau);
}

PiecewiseSpectrum scaled(const PiecewiseSpectrum& spec, cplx factor) {
  std::vector<Segment> out = spec.segments();
  for (auto& s : out) { s.a0 *= factor; s.a1 *= factor; }
  return PiecewiseSpectrum(std::move(out), spec.timeShift());
}

PiecewiseQuad modSquared(const PiecewiseSpectrum& spec) {
  std::vector<QuadSegment> out;
  out.reserve(spec.segments().size());
  for (const auto& s : spec.segments()) {
    double b0 = std::norm(s.a0);
    double b1 = 2.0 * (s.a0 * std::conj(s.a1)).real();
    double b2 = std::norm(s.a1);
    out.push_back({s.lo, s.hi, b0, b1, b2});
  }
  return PiecewiseQuad(std::move(out));
}

namespace {

// Moments M_k = integral_{-h}^{h} u^k exp(i*w*u) du for k = 0, 1, 2.
// Near w*h = 0 the closed trig forms cancel catastrophically, so a truncated
// power series is used there; terms decay factorially and 40 terms reach
// machine precision for |w*h| < 0.5.
std::array<cplx, 3> centeredMoments(double w, double h) {
  std::array<cplx, 3> M{};
  double x = w * h;
  if (std::abs(x) < 0.5) {
    const cplx iw{0.0, w};
    for (int k = 0; k < 3; ++k) {
      cplx term{0.0, 0.0};
      cplx pw{1.0, 0.0};  // (i*w)^j / j!
      for (int j = 0; j < 40; ++j) {
        int p = k + j + 1;
        double hp = std::pow(h, p);
        double integral = (hp - ((p % 2 == 0) ? hp : -hp)) / p;
        term += pw * integral;
        pw *= iw / static_cast<double>(j + 1);
      }
      M[k] = term;
    }
    return M;
  }
  double s = std::sin(x), c = std::cos(x);
  M[0] = cplx{2.0 * s / w, 0.0};
  M[1] = cplx{0.0, 2.0 * (s / (w * w) - h * c / w)};
  M[2] = cplx{2.0 * (h * h * s / w + 2.0 * h * c / (w * w) - 2.0 * s / (w * w * w)), 0.0};
  return M;
}

}  // namespace

cplx innerProduct(const PiecewiseSpectrum& f, const PiecewiseSpectrum& gSpec,
                  double delta) {
  if (f.isZero() || gSpec.isZero()) return {0.0, 0.0};
  double deltaTot = delta + gSpec.timeShift() - f.timeShift();
  double w = kTwoPi * deltaTot;

  std::vector<double> pts;
  for (const auto& s : f.segments()) { pts.push_back(s.lo); pts.push_back(s.hi); }
  for (const auto& s : gSpec.segments()) { pts.push_back(s.lo); pts.push_back(s.hi); }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) { return nearlyEqual(a, b); }),
            pts.end());

  cplx total{0.0, 0.0};
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    double lo = pts[i], hi = pts[i + 1];
    double mid = 0.5 * (lo + hi);
    const Segment* pf = nullptr;
    const Segment* pg = nullptr;
    for (const auto& s : f.segments()) {
      if (s.lo < mid && mid <= s.hi) { pf = &s; break; }
    }
    for (const auto& s : gSpec.segments()) {
      if (s.lo < mid && mid <= s.hi) { pg = &s; break; }
    }
    if (!pf || !pg) continue;

    // f * conj(g) on this interval as c0 + c1*g + c2*g^2, then recentered
    // around mid so the moment integrals run over (-h, h).
    cplx c0 = pf->a0 * std::conj(pg->a0);
    cplx c1 = pf->a0 * std::conj(pg->a1) + pf->a1 * std::conj(pg->a0);
    cplx c2 = pf->a1 * std::conj(pg->a1);
    double h = 0.5 * (hi - lo);
    cplx d0 = c0 + c1 * mid + c2 * mid * mid;
    cplx d1 = c1 + 2.0 * c2 * mid;
    cplx d2 = c2;
    auto M = centeredMoments(w, h);
    total += std::polar(1.0, w * mid) * (d0 * M[0] + d1 * M[1] + d2 * M[2]);
  }
  return total;
}

const char* errorCodeName(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidDilation: return "invalid-dilation";
    case ErrorCode::HypothesisViolation: return "hypothesis-violation";
    case ErrorCode::NotAFrame: return "not-a-frame";
    case ErrorCode::UnboundedFamily: return "unbounded-family";
    case ErrorCode::Coverage: return "coverage";
    case ErrorCode::QuadratureFailure: return "quadrature-failure";
    case ErrorCode::IllPosedOperator: return "ill-posed-operator";
    case ErrorCode::InvalidParams: return "invalid-params";
    case ErrorCode::ConfigParse: return "config-parse";
    case ErrorCode::NonMonotoneSweep: return "non-monotone-sweep";
  }
  return "unknown";
}

}  // namespace framelet
