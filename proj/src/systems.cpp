#include "framelet/systems.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "framelet/errors.hpp"

namespace framelet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx unitPhase(double turns) { return std::polar(1.0, kTwoPi * turns); }

// Unimodular constant of the frequency-domain reduction of atom (n,l,j):
// exp(2*pi*i*(-(1/2)*A*n*l*p0*q0 + B*l*p0)).
double atomPhaseTurns(const WeylHeisenbergParams& p, long n, long l, int j) {
  const auto& w = p.windows[static_cast<size_t>(j)];
  double ln = static_cast<double>(l), nn = static_cast<double>(n);
  return -0.5 * p.A * nn * ln * w.p0 * w.q0 + p.B * ln * w.p0;
}

}  // namespace

void validateWeylHeisenberg(const WeylHeisenbergParams& p) {
  if (p.A == 0.0 || !std::isfinite(p.A) || !std::isfinite(p.B)) {
    raise(ErrorCode::InvalidParams, "A must be finite and nonzero, B finite");
  }
  if (p.windows.empty()) {
    raise(ErrorCode::InvalidParams, "at least one window is required");
  }
  double q0 = p.windows.front().q0;
  for (const auto& w : p.windows) {
    if (!(w.q0 > 0.0) || !std::isfinite(w.q0) || !std::isfinite(w.p0)) {
      raise(ErrorCode::InvalidParams, "each window needs finite p0 and q0 > 0");
    }
    if (w.window.isZero()) {
      raise(ErrorCode::InvalidParams, "window spectra must be nonzero");
    }
    if (std::abs(w.p0 * w.q0) >= 1.0) {
      raise(ErrorCode::HypothesisViolation,
            "|p0*q0| must be strictly below 1");
    }
    if (!nearlyEqual(w.q0, q0)) {
      raise(ErrorCode::HypothesisViolation,
            "all windows must share the translation step q0 = 1/lambda");
    }
    double lambda = 1.0 / q0;
    if (w.window.supportLength() > lambda + 1e-12 * std::max(1.0, lambda)) {
      raise(ErrorCode::HypothesisViolation,
            "window support must fit in an interval of length 1/q0");
    }
  }
}

GeneratorFamily buildGaborFamily(const WeylHeisenbergParams& p) {
  validateWeylHeisenberg(p);
  std::vector<PiecewiseSpectrum> windows;
  std::vector<double> modSteps, slopeCoef, offsetCoef;
  for (const auto& w : p.windows) {
    windows.push_back(w.window);
    modSteps.push_back(p.A * w.p0);
    slopeCoef.push_back(-0.5 * p.A * w.p0 * w.q0);
    offsetCoef.push_back(p.B * w.p0);
  }
  double lambda = 1.0 / p.windows.front().q0;
  return GeneratorFamily::modulated(std::move(windows), std::move(modSteps),
                                    lambda, std::move(slopeCoef),
                                    std::move(offsetCoef));
}

GaborAtom gaborAtom(const WeylHeisenbergParams& p, long n, long l, int j) {
  validateWeylHeisenberg(p);
  if (j < 0 || static_cast<size_t>(j) >= p.windows.size()) {
    raise(ErrorCode::InvalidParams, "window index out of range");
  }
  const auto& w = p.windows[static_cast<size_t>(j)];
  GaborAtom atom;
  atom.n = n;
  atom.l = l;
  atom.j = j;
  atom.phase = unitPhase(atomPhaseTurns(p, n, l, j));
  atom.spec = translatedInTime(
      shiftFrequency(w.window, p.A * static_cast<double>(l) * w.p0),
      -static_cast<double>(n) * w.q0);
  return atom;
}

FrameBounds gaborFrameBounds(const WeylHeisenbergParams& p) {
  return translateFrameBounds(buildGaborFamily(p));
}

void validateExtendedAffine(const ExtendedAffineParams& p) {
  if (p.d == 0.0 || !std::isfinite(p.d) || !std::isfinite(p.c)) {
    raise(ErrorCode::InvalidParams, "d must be finite and nonzero, c finite");
  }
  if (p.windows.empty()) {
    raise(ErrorCode::InvalidParams, "at least one window is required");
  }
  for (const auto& w : p.windows) {
    if (!(w.q0 > 0.0) || !std::isfinite(w.q0)) {
      raise(ErrorCode::InvalidParams, "each window needs q0 > 0");
    }
    if (w.window.isZero()) {
      raise(ErrorCode::InvalidParams, "window spectra must be nonzero");
    }
  }
  if (p.truncateL && p.truncateL->first > p.truncateL->second) {
    raise(ErrorCode::InvalidParams, "truncation range must be ordered");
  }
}

GeneratorFamily buildWaveletFamily(const ExtendedAffineParams& p) {
  validateExtendedAffine(p);
  std::vector<PiecewiseSpectrum> windows;
  std::vector<double> q0s;
  for (const auto& w : p.windows) {
    windows.push_back(w.window);
    q0s.push_back(w.q0);
  }
  return GeneratorFamily::dilated(std::move(windows), std::move(q0s),
                                  p.truncateL);
}

LatticePoint latticePoint(const ExtendedAffineParams& p, long n, long l,
                          int j) {
  validateExtendedAffine(p);
  if (j < 0 || static_cast<size_t>(j) >= p.windows.size()) {
    raise(ErrorCode::InvalidParams, "window index out of range");
  }
  double q0 = p.windows[static_cast<size_t>(j)].q0;
  LatticePoint pt;
  pt.alpha = std::exp(-static_cast<double>(l) * q0);
  pt.beta = static_cast<double>(n) * q0 / p.d;
  double u = pt.alpha - 1.0;
  // ln(alpha)/(alpha-1) = 1 - u/2 + u^2/3 - u^3/4 + ... near alpha = 1
  double ratio;
  if (std::abs(u) < 1e-4) {
    ratio = 1.0 + u * (-0.5 + u * (1.0 / 3.0 + u * (-0.25)));
  } else {
    ratio = std::log(pt.alpha) / u;
  }
  pt.gamma = pt.beta * ratio;
  return pt;
}

WaveletDiagnostics waveletDiagnostics(const ExtendedAffineParams& p,
                                      double winLo, double winHi) {
  if (!(winLo < winHi) || !std::isfinite(winLo) || !std::isfinite(winHi)) {
    raise(ErrorCode::InvalidParams, "window must be a finite interval");
  }
  GeneratorFamily fam = buildWaveletFamily(p);
  SpectralDensity density = spectralDensity(fam, winLo, winHi);
  auto [mn, mx] = essRange(density);

  WaveletDiagnostics diag;
  diag.values = density.values.scaled(fam.lambda());
  diag.inf = fam.lambda() * mn;
  diag.sup = fam.lambda() * mx;
  diag.zeroSetMeasure = density.zeroGapMeasure;
  diag.caveat =
      "window-restricted analysis: with finitely many windows the dilated "
      "density tends to 0 at infinity, so no two-sided bound can hold on the "
      "whole line and no global frame certificate is issued";
  return diag;
}

ReciprocalBounds reciprocalStepBounds(const GeneratorFamily& fam) {
  FrameBounds base = translateFrameBounds(fam);
  double lambda = fam.lambda();
  double l2 = lambda * lambda;
  ReciprocalBounds out;
  out.bounds.alpha = base.alpha / l2;
  out.bounds.beta = base.beta / l2;
  out.bounds.isTight = base.isTight;
  out.bounds.isParseval =
      out.bounds.isTight && std::abs(out.bounds.alpha - 1.0) <= 1e-12;
  if (lambda > 1.0 + 1e-12) {
    out.validityWarning = true;
    out.warningText =
        "reciprocal-step bounds rest on an interval Parseval identity that "
        "is only justified for lambda <= 1; values are reported but should "
        "be cross-checked against the discretized oracle";
  }
  return out;
}

cplx PeriodicSymbol::eval(double g) const {
  cplx total{0.0, 0.0};
  for (const auto& [n, c] : coeffs) {
    total += c * unitPhase(static_cast<double>(n) * g / period);
  }
  return total;
}

SynthesizedSpectrum::SynthesizedSpectrum(std::vector<PeriodicSymbol> symbols,
                                         WeylHeisenbergParams params)
    : symbols_(std::move(symbols)), params_(std::move(params)) {
  validateWeylHeisenberg(params_);
  for (const auto& sym : symbols_) {
    if (sym.j < 0 || static_cast<size_t>(sym.j) >= params_.windows.size()) {
      raise(ErrorCode::InvalidParams, "symbol window index out of range");
    }
    if (!(sym.period > 0.0) || !std::isfinite(sym.period)) {
      raise(ErrorCode::InvalidParams, "symbol period must be positive");
    }
  }
}

cplx SynthesizedSpectrum::eval(double g) const {
  cplx total{0.0, 0.0};
  for (const auto& sym : symbols_) {
    const auto& w = params_.windows[static_cast<size_t>(sym.j)];
    double shift = params_.A * static_cast<double>(sym.l) * w.p0;
    cplx wv = w.window.eval(g - shift);
    if (wv != cplx{0.0, 0.0}) total += sym.eval(g) * wv;
  }
  return total;
}

std::vector<double> SynthesizedSpectrum::breakpoints() const {
  std::set<double> pts;
  for (const auto& sym : symbols_) {
    const auto& w = params_.windows[static_cast<size_t>(sym.j)];
    double shift = params_.A * static_cast<double>(sym.l) * w.p0;
    for (double b : w.window.breakpoints()) pts.insert(b + shift);
  }
  return {pts.begin(), pts.end()};
}

SynthesizedSpectrum synthesizeFromSymbols(std::vector<PeriodicSymbol> symbols,
                                          const WeylHeisenbergParams& p) {
  return SynthesizedSpectrum(std::move(symbols), p);
}

PeriodicSymbol atomSymbol(const WeylHeisenbergParams& p, long n, long l,
                          int j) {
  validateWeylHeisenberg(p);
  if (j < 0 || static_cast<size_t>(j) >= p.windows.size()) {
    raise(ErrorCode::InvalidParams, "window index out of range");
  }
  PeriodicSymbol sym;
  sym.j = j;
  sym.l = l;
  sym.period = 1.0 / p.windows[static_cast<size_t>(j)].q0;
  sym.coeffs = {{n, unitPhase(atomPhaseTurns(p, n, l, j))}};
  return sym;
}

}  // namespace framelet
