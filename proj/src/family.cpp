#include "framelet/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "framelet/errors.hpp"

namespace framelet {

namespace {

bool intervalsMeet(double aLo, double aHi, double bLo, double bHi) {
  // both intervals half-open (lo, hi]
  return aLo < bHi && bLo < aHi;
}

void requirePositive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    raise(ErrorCode::InvalidParams, std::string(what) + " must be positive and finite");
  }
}

}  // namespace

GeneratorFamily GeneratorFamily::explicitFamily(
    std::vector<std::pair<long, PiecewiseSpectrum>> generators, double lambda,
    std::map<long, double> stepOverrides) {
  requirePositive(lambda, "lambda");
  GeneratorFamily fam;
  fam.rule_ = FamilyRule::Explicit;
  fam.lambda_ = lambda;
  std::sort(generators.begin(), generators.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [l, spec] : generators) {
    if (!fam.explicitIndices_.empty() && fam.explicitIndices_.back() == l) {
      raise(ErrorCode::InvalidParams, "duplicate explicit generator index");
    }
    fam.explicitIndices_.push_back(l);
    fam.bases_.push_back(std::move(spec));
  }
  for (auto& [l, q] : stepOverrides) requirePositive(q, "step");
  fam.stepOverrides_ = std::move(stepOverrides);
  return fam;
}

GeneratorFamily GeneratorFamily::periodicTiling(std::vector<PiecewiseSpectrum> bases,
                                                double period, double lambda) {
  requirePositive(lambda, "lambda");
  requirePositive(period, "period");
  if (bases.empty()) raise(ErrorCode::InvalidParams, "tiling requires at least one base");
  GeneratorFamily fam;
  fam.rule_ = FamilyRule::PeriodicTiling;
  fam.lambda_ = lambda;
  fam.tilingPeriod_ = period;
  fam.bases_ = std::move(bases);
  return fam;
}

GeneratorFamily GeneratorFamily::modulated(std::vector<PiecewiseSpectrum> windows,
                                           std::vector<double> modSteps, double lambda,
                                           std::vector<double> phaseSlopeCoef,
                                           std::vector<double> phaseOffsetCoef) {
  requirePositive(lambda, "lambda");
  if (windows.empty()) raise(ErrorCode::InvalidParams, "modulated rule requires windows");
  if (modSteps.size() != windows.size()) {
    raise(ErrorCode::InvalidParams, "one modulation step per window required");
  }
  GeneratorFamily fam;
  fam.rule_ = FamilyRule::Modulated;
  fam.lambda_ = lambda;
  fam.bases_ = std::move(windows);
  fam.modSteps_ = std::move(modSteps);
  fam.phaseSlopeCoef_ = std::move(phaseSlopeCoef);
  fam.phaseOffsetCoef_ = std::move(phaseOffsetCoef);
  if (!fam.phaseSlopeCoef_.empty() && fam.phaseSlopeCoef_.size() != fam.bases_.size()) {
    raise(ErrorCode::InvalidParams, "one phase slope coefficient per window required");
  }
  if (!fam.phaseOffsetCoef_.empty() && fam.phaseOffsetCoef_.size() != fam.bases_.size()) {
    raise(ErrorCode::InvalidParams, "one phase offset coefficient per window required");
  }
  return fam;
}

GeneratorFamily GeneratorFamily::dilated(std::vector<PiecewiseSpectrum> windows,
                                         std::vector<double> q0s,
                                         std::optional<std::pair<long, long>> truncateL) {
  if (windows.empty()) raise(ErrorCode::InvalidParams, "dilated rule requires windows");
  if (q0s.size() != windows.size()) {
    raise(ErrorCode::InvalidParams, "one dilation step per window required");
  }
  for (double q : q0s) requirePositive(q, "q0");
  if (truncateL && truncateL->first > truncateL->second) {
    raise(ErrorCode::InvalidParams, "truncation range must be ordered");
  }
  GeneratorFamily fam;
  fam.rule_ = FamilyRule::Dilated;
  fam.lambda_ = 1.0 / q0s.front();
  fam.bases_ = std::move(windows);
  fam.dilationSteps_ = std::move(q0s);
  fam.truncateL_ = truncateL;
  return fam;
}

FamilyBranch GeneratorFamily::makeBranch(long l, int baseIdx) const {
  FamilyBranch br;
  br.shiftIndex = l;
  br.baseIndex = baseIdx;
  switch (rule_) {
    case FamilyRule::Explicit: {
      br.spec = bases_[baseIdx];
      auto it = stepOverrides_.find(l);
      br.step = it != stepOverrides_.end() ? it->second : defaultStep();
      break;
    }
    case FamilyRule::PeriodicTiling:
      br.spec = shiftFrequency(bases_[baseIdx], static_cast<double>(l) * tilingPeriod_);
      br.step = defaultStep();
      break;
    case FamilyRule::Modulated:
      br.spec = shiftFrequency(bases_[baseIdx],
                               static_cast<double>(l) * modSteps_[baseIdx]);
      br.step = defaultStep();
      if (!phaseSlopeCoef_.empty()) {
        br.phaseSlopePerN = static_cast<double>(l) * phaseSlopeCoef_[baseIdx];
      }
      if (!phaseOffsetCoef_.empty()) {
        br.phaseOffset = static_cast<double>(l) * phaseOffsetCoef_[baseIdx];
      }
      break;
    case FamilyRule::Dilated:
      br.spec = dilate(bases_[baseIdx],
                       std::exp(-static_cast<double>(l) * dilationSteps_[baseIdx]));
      br.step = dilationSteps_[baseIdx];
      break;
  }
  return br;
}

std::vector<FamilyBranch> GeneratorFamily::materialize(double winLo, double winHi) const {
  if (!(winLo < winHi) || !std::isfinite(winLo) || !std::isfinite(winHi)) {
    raise(ErrorCode::InvalidParams, "window must be a finite interval");
  }
  std::vector<FamilyBranch> out;
  auto tryAdd = [&](long l, int baseIdx) {
    FamilyBranch br = makeBranch(l, baseIdx);
    if (!br.spec.isZero() &&
        intervalsMeet(br.spec.supportLo(), br.spec.supportHi(), winLo, winHi)) {
      out.push_back(std::move(br));
    }
  };

  switch (rule_) {
    case FamilyRule::Explicit:
      for (size_t i = 0; i < explicitIndices_.size(); ++i) {
        tryAdd(explicitIndices_[i], static_cast<int>(i));
      }
      break;
    case FamilyRule::PeriodicTiling:
      for (size_t r = 0; r < bases_.size(); ++r) {
        if (bases_[r].isZero()) continue;
        double lo = bases_[r].supportLo(), hi = bases_[r].supportHi();
        long kLo = static_cast<long>(std::ceil((winLo - hi) / tilingPeriod_)) - 1;
        long kHi = static_cast<long>(std::floor((winHi - lo) / tilingPeriod_)) + 1;
        for (long k = kLo; k <= kHi; ++k) tryAdd(k, static_cast<int>(r));
      }
      break;
    case FamilyRule::Modulated:
      for (size_t j = 0; j < bases_.size(); ++j) {
        if (bases_[j].isZero()) continue;
        double step = modSteps_[j];
        if (step == 0.0) {
          raise(ErrorCode::UnboundedFamily,
                "zero modulation step enumerates infinitely many identical supports");
        }
        double lo = bases_[j].supportLo(), hi = bases_[j].supportHi();
        double r1 = (winLo - hi) / step, r2 = (winHi - lo) / step;
        long kLo = static_cast<long>(std::ceil(std::min(r1, r2))) - 1;
        long kHi = static_cast<long>(std::floor(std::max(r1, r2))) + 1;
        for (long k = kLo; k <= kHi; ++k) tryAdd(k, static_cast<int>(j));
      }
      break;
    case FamilyRule::Dilated:
      for (size_t j = 0; j < bases_.size(); ++j) {
        if (bases_[j].isZero()) continue;
        double lo = bases_[j].supportLo(), hi = bases_[j].supportHi();
        if (lo < 0.0 && hi > 0.0) {
          raise(ErrorCode::UnboundedFamily,
                "window support contains 0; dilations accumulate without truncation");
        }
        long kLo, kHi;
        if (truncateL_) {
          kLo = truncateL_->first;
          kHi = truncateL_->second;
        } else {
          // supports (lo*e^{l q0}, hi*e^{l q0}] on the positive axis (mirrored
          // for negative supports); solve for the l whose image meets the window
          double q0 = dilationSteps_[j];
          double aLo = std::min(std::abs(lo), std::abs(hi));
          double aHi = std::max(std::abs(lo), std::abs(hi));
          double wLo = std::min(std::abs(winLo), std::abs(winHi));
          double wHi = std::max(std::abs(winLo), std::abs(winHi));
          if (winLo < 0.0 && winHi > 0.0) wLo = 0.0;
          bool windowOnSupportSide = (hi <= 0.0) ? (winLo < 0.0) : (winHi > 0.0);
          if (!windowOnSupportSide) { kLo = 1; kHi = 0; }
          else if (wLo <= 0.0) {
            raise(ErrorCode::UnboundedFamily,
                  "window reaches 0; dilated supports accumulate there (provide a truncation)");
          } else {
            kLo = static_cast<long>(std::ceil(std::log(wLo / aHi) / q0)) - 1;
            kHi = static_cast<long>(std::floor(std::log(wHi / aLo) / q0)) + 1;
          }
        }
        for (long k = kLo; k <= kHi; ++k) tryAdd(k, static_cast<int>(j));
      }
      break;
  }
  std::sort(out.begin(), out.end(), [](const FamilyBranch& a, const FamilyBranch& b) {
    return a.shiftIndex != b.shiftIndex ? a.shiftIndex < b.shiftIndex
                                        : a.baseIndex < b.baseIndex;
  });
  return out;
}

std::vector<FamilyBranch> GeneratorFamily::sectionBranches(long t) const {
  if (t < 0) raise(ErrorCode::InvalidParams, "section extent must be >= 0");
  std::vector<FamilyBranch> out;
  if (rule_ == FamilyRule::Explicit) {
    for (size_t i = 0; i < explicitIndices_.size(); ++i) {
      long l = explicitIndices_[i];
      if (std::abs(l) <= t) out.push_back(makeBranch(l, static_cast<int>(i)));
    }
    return out;
  }
  long lo = -t, hi = t;
  if (rule_ == FamilyRule::Dilated && truncateL_) {
    lo = std::max(lo, truncateL_->first);
    hi = std::min(hi, truncateL_->second);
  }
  for (long l = lo; l <= hi; ++l) {
    for (size_t b = 0; b < bases_.size(); ++b) {
      out.push_back(makeBranch(l, static_cast<int>(b)));
    }
  }
  return out;
}

bool GeneratorFamily::uniformStep(double* step) const {
  double q = defaultStep();
  if (rule_ == FamilyRule::Explicit) {
    bool first = true;
    for (long l : explicitIndices_) {
      auto it = stepOverrides_.find(l);
      double v = it != stepOverrides_.end() ? it->second : defaultStep();
      if (first) { q = v; first = false; }
      else if (!nearlyEqual(v, q)) return false;
    }
  }
  if (rule_ == FamilyRule::Dilated) {
    for (double v : dilationSteps_) {
      if (!nearlyEqual(v, dilationSteps_.front())) return false;
    }
    q = dilationSteps_.front();
  }
  if (step) *step = q;
  return true;
}

namespace {

// Detected density period for closed-form rules: exact by construction for
// tilings; for modulated rules the smallest common integer multiple of the
// per-window steps (searched up to 64x) when the ratios are rational.
double rulePeriodCandidate(const GeneratorFamily& fam) {
  switch (fam.rule()) {
    case FamilyRule::PeriodicTiling:
      return fam.tilingPeriod();
    case FamilyRule::Modulated: {
      const auto& steps = fam.modSteps();
      double base = std::abs(steps.front());
      if (base == 0.0) return 0.0;
      for (int m = 1; m <= 64; ++m) {
        double candidate = base * m;
        bool ok = true;
        for (double s : steps) {
          double ratio = candidate / std::abs(s);
          if (std::abs(ratio - std::round(ratio)) > 1e-9) { ok = false; break; }
        }
        if (ok) return candidate;
      }
      return 0.0;
    }
    default:
      return 0.0;
  }
}

bool quadSegmentsEqualShifted(const PiecewiseQuad& a, const PiecewiseQuad& b,
                              double shift) {
  // does b equal a translated by +shift (b(g) == a(g - shift))?
  const auto& sa = a.segments();
  const auto& sb = b.segments();
  if (sa.size() != sb.size()) return false;
  for (size_t i = 0; i < sa.size(); ++i) {
    if (!nearlyEqual(sa[i].lo + shift, sb[i].lo) ||
        !nearlyEqual(sa[i].hi + shift, sb[i].hi)) {
      return false;
    }
    // a-piece value at (g - shift): substitute to compare coefficients
    double c0 = sa[i].b0 - sa[i].b1 * shift + sa[i].b2 * shift * shift;
    double c1 = sa[i].b1 - 2.0 * sa[i].b2 * shift;
    double c2 = sa[i].b2;
    double scale = std::max({1.0, std::abs(sb[i].b0), std::abs(sb[i].b1),
                             std::abs(sb[i].b2)});
    if (std::abs(c0 - sb[i].b0) > 1e-12 * scale ||
        std::abs(c1 - sb[i].b1) > 1e-12 * scale ||
        std::abs(c2 - sb[i].b2) > 1e-12 * scale) {
      return false;
    }
  }
  return true;
}

double coveredMeasure(const PiecewiseQuad& q, double winLo, double winHi) {
  double covered = 0.0;
  for (const auto& s : q.segments()) {
    bool zero = s.b0 == 0.0 && s.b1 == 0.0 && s.b2 == 0.0;
    if (zero) continue;
    double lo = std::max(s.lo, winLo), hi = std::min(s.hi, winHi);
    if (lo < hi) covered += hi - lo;
  }
  return covered;
}

}  // namespace

double rulePeriodHint(const GeneratorFamily& fam) {
  return rulePeriodCandidate(fam);
}

SpectralDensity spectralDensity(const GeneratorFamily& fam, double winLo,
                                double winHi) {
  auto branches = fam.materialize(winLo, winHi);
  PiecewiseQuad sum;
  for (const auto& br : branches) {
    sum = sum.plus(modSquared(br.spec));
  }
  SpectralDensity density;
  density.values = sum.restrictedTo(winLo, winHi);
  density.winLo = winLo;
  density.winHi = winHi;
  density.zeroGapMeasure =
      (winHi - winLo) - coveredMeasure(density.values, winLo, winHi);
  if (density.zeroGapMeasure < 0.0) density.zeroGapMeasure = 0.0;

  double candidate = rulePeriodCandidate(fam);
  if (candidate > 0.0) {
    if (winHi - winLo >= 2.0 * candidate - 1e-12) {
      auto first = density.values.restrictedTo(winLo, winLo + candidate);
      auto second = density.values.restrictedTo(winLo + candidate,
                                                winLo + 2.0 * candidate);
      if (quadSegmentsEqualShifted(first, second, candidate)) {
        density.period = candidate;
      }
    } else {
      density.period = candidate;  // exact by construction of the rule
    }
  }
  return density;
}

std::pair<double, double> essRange(const SpectralDensity& density) {
  const auto& segs = density.values.segments();
  if (segs.empty()) return {0.0, 0.0};
  double mn = std::numeric_limits<double>::infinity();
  double mx = -std::numeric_limits<double>::infinity();
  auto consider = [&](double v) {
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  };
  for (const auto& s : segs) {
    auto value = [&](double g) { return s.b0 + g * (s.b1 + g * s.b2); };
    // one-sided limit into the segment at lo, attained value at hi
    consider(value(s.lo));
    consider(value(s.hi));
    if (s.b2 != 0.0) {
      double vertex = -s.b1 / (2.0 * s.b2);
      if (s.lo < vertex && vertex < s.hi) consider(value(vertex));
    }
  }
  if (density.zeroGapMeasure > 1e-12 * std::max(1.0, density.winHi - density.winLo)) {
    mn = 0.0;
    if (mx < 0.0) mx = 0.0;
  }
  return {mn, mx};
}

FrameBounds boundsFromEssRange(double essInf, double essSup, double lambda) {
  FrameBounds out;
  out.alpha = lambda * essInf;
  out.beta = lambda * essSup;
  out.isTight = std::abs(out.alpha - out.beta) <= 1e-12 * std::max(1.0, std::abs(out.beta));
  out.isParseval = out.isTight && std::abs(out.alpha - 1.0) <= 1e-12;
  return out;
}

namespace {

void validateTranslateHypotheses(const GeneratorFamily& fam,
                                 const std::vector<FamilyBranch>& branches) {
  double lambda = fam.lambda();
  double q = 0.0;
  if (!fam.uniformStep(&q) || !nearlyEqual(q, 1.0 / lambda)) {
    raise(ErrorCode::HypothesisViolation,
          "translate analysis requires every step q^(l) = 1/lambda");
  }
  for (const auto& br : branches) {
    if (br.spec.supportLength() > lambda + 1e-12 * std::max(1.0, lambda)) {
      raise(ErrorCode::HypothesisViolation,
            "generator support exceeds the declared length lambda at shift index " +
                std::to_string(br.shiftIndex));
    }
  }
}

}  // namespace

FrameBounds translateFrameBounds(const GeneratorFamily& fam) {
  double lambda = fam.lambda();
  if (fam.rule() == FamilyRule::Dilated) {
    raise(ErrorCode::NotAFrame,
          "dilated generators leave the density zero on a half-line; the "
          "family is at best a frame for its span");
  }
  if (fam.rule() == FamilyRule::Explicit) {
    // compactly generated, aperiodic: G vanishes outside a finite interval
    std::vector<FamilyBranch> all = fam.materialize(-1e12, 1e12);
    validateTranslateHypotheses(fam, all);
    double lo = 0.0, hi = 0.0;
    for (const auto& br : all) {
      lo = std::min(lo, br.spec.supportLo());
      hi = std::max(hi, br.spec.supportHi());
    }
    raise(ErrorCode::NotAFrame,
          "density vanishes on a set of infinite measure outside (" +
              std::to_string(lo) + ", " + std::to_string(hi) +
              "]; the family is at best a frame for its span");
  }

  double candidate = rulePeriodCandidate(fam);
  if (candidate <= 0.0) {
    raise(ErrorCode::NotAFrame,
          "no density period detected; essential infimum over the line is 0");
  }
  double anchor = fam.baseSpectra().front().supportLo();
  auto density = spectralDensity(fam, anchor, anchor + 2.0 * candidate);
  validateTranslateHypotheses(fam, fam.materialize(anchor, anchor + 2.0 * candidate));
  auto [essInf, essSup] = essRange(density);
  if (essInf <= 1e-12 * std::max(1.0, essSup)) {
    raise(ErrorCode::NotAFrame,
          "density essential infimum vanishes within one period (witness window (" +
              std::to_string(anchor) + ", " + std::to_string(anchor + candidate) + "])");
  }
  return boundsFromEssRange(essInf, essSup, lambda);
}

FrameBounds frameSequenceBounds(const GeneratorFamily& fam, double winLo,
                                double winHi) {
  auto branches = fam.materialize(winLo, winHi);
  if (branches.empty()) {
    raise(ErrorCode::NotAFrame, "no generators meet the requested window");
  }
  validateTranslateHypotheses(fam, branches);
  auto density = spectralDensity(fam, winLo, winHi);
  // essential range over the covered part only: gaps are outside the span
  SpectralDensity coveredOnly = density;
  coveredOnly.zeroGapMeasure = 0.0;
  auto [essInf, essSup] = essRange(coveredOnly);
  if (essInf <= 1e-12 * std::max(1.0, essSup)) {
    raise(ErrorCode::NotAFrame,
          "density dips to 0 inside its own support; not a frame for the span");
  }
  return boundsFromEssRange(essInf, essSup, fam.lambda());
}

}  // namespace framelet
