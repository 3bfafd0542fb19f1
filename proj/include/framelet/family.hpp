#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "framelet/spectrum.hpp"

namespace framelet {

enum class FamilyRule { Explicit, PeriodicTiling, Modulated, Dilated };

// One enumerated generator: branch (shiftIndex, baseIndex) with its spectrum
// and translation step. Atom n of a branch is the time translate by n*step;
// it carries the unimodular phase exp(2*pi*i*(n*phaseSlopePerN + phaseOffset)).
struct FamilyBranch {
  long shiftIndex = 0;
  int baseIndex = 0;
  PiecewiseSpectrum spec;
  double step = 0.0;
  double phaseSlopePerN = 0.0;
  double phaseOffset = 0.0;
};

// Indexed generator family {phi_l}: explicit list or closed-form rule
// (periodic tiling, modulated windows, dilated windows), with translation
// steps q^(l) and the support-length parameter lambda.
class GeneratorFamily {
 public:
  static GeneratorFamily explicitFamily(
      std::vector<std::pair<long, PiecewiseSpectrum>> generators, double lambda,
      std::map<long, double> stepOverrides = {});

  // phi_(r,k) = shiftFrequency(bases[r], k*period) for all r and all k.
  static GeneratorFamily periodicTiling(std::vector<PiecewiseSpectrum> bases,
                                        double period, double lambda);

  // phi_(l,j) = shiftFrequency(windows[j], l*modSteps[j]); atom phases are
  // linear in l: slopePerN = l*phaseSlopeCoef[j], offset = l*phaseOffsetCoef[j].
  static GeneratorFamily modulated(std::vector<PiecewiseSpectrum> windows,
                                   std::vector<double> modSteps, double lambda,
                                   std::vector<double> phaseSlopeCoef = {},
                                   std::vector<double> phaseOffsetCoef = {});

  // phi_(l,j) = dilate(windows[j], exp(-l*q0s[j])); step q0s[j] per branch.
  static GeneratorFamily dilated(std::vector<PiecewiseSpectrum> windows,
                                 std::vector<double> q0s,
                                 std::optional<std::pair<long, long>> truncateL =
                                     std::nullopt);

  FamilyRule rule() const { return rule_; }
  double lambda() const { return lambda_; }
  const std::vector<PiecewiseSpectrum>& baseSpectra() const { return bases_; }
  double tilingPeriod() const { return tilingPeriod_; }
  const std::vector<double>& modSteps() const { return modSteps_; }
  const std::vector<double>& dilationSteps() const { return dilationSteps_; }
  std::optional<std::pair<long, long>> truncation() const { return truncateL_; }

  // Every branch whose support meets the half-open window (winLo, winHi].
  std::vector<FamilyBranch> materialize(double winLo, double winHi) const;

  // Branches for an index section |l| <= t (explicit rule: declared indices
  // within the range; tiling/modulated/dilated: every base at each l).
  std::vector<FamilyBranch> sectionBranches(long t) const;

  // True iff all declared steps agree; writes the common step.
  bool uniformStep(double* step) const;

 private:
  GeneratorFamily() = default;

  FamilyRule rule_ = FamilyRule::Explicit;
  double lambda_ = 1.0;
  std::vector<PiecewiseSpectrum> bases_;
  std::vector<long> explicitIndices_;
  std::map<long, double> stepOverrides_;
  double tilingPeriod_ = 0.0;
  std::vector<double> modSteps_;
  std::vector<double> phaseSlopeCoef_;
  std::vector<double> phaseOffsetCoef_;
  std::vector<double> dilationSteps_;
  std::optional<std::pair<long, long>> truncateL_;

  FamilyBranch makeBranch(long l, int baseIdx) const;
  double defaultStep() const { return 1.0 / lambda_; }
};

// The density G(g) = sum over branches |phi_l(g)|^2 assembled over a window,
// with detected periodicity and the measure of uncovered gaps.
struct SpectralDensity {
  PiecewiseQuad values;
  double period = 0.0;  // 0 when aperiodic or undetected
  double winLo = 0.0;
  double winHi = 0.0;
  double zeroGapMeasure = 0.0;  // measure of {G = 0} within the window
};

SpectralDensity spectralDensity(const GeneratorFamily& fam, double winLo,
                                double winHi);

// Exact essential range of the density over its window (one period suffices
// for periodic rules; callers assemble at least one period). Breakpoint
// values are measure zero and never contribute.
std::pair<double, double> essRange(const SpectralDensity& density);

struct FrameBounds {
  double alpha = 0.0;
  double beta = 0.0;
  bool isTight = false;
  bool isParseval = false;
};

FrameBounds boundsFromEssRange(double essInf, double essSup, double lambda);

// Closed-form period of the density implied by the family rule (tiling
// period, or a common multiple of the modulation steps); 0 when aperiodic
// or no common period is found.
double rulePeriodHint(const GeneratorFamily& fam);

// Frame characterization for {T_{n q} phi_l}: alpha = lambda * essInf G,
// beta = lambda * essSup G. Requires q^(l) = 1/lambda for every branch and
// branch supports within length lambda. Reports not-a-frame when the density
// essential infimum vanishes (always the case for compactly generated
// aperiodic families over the whole line).
FrameBounds translateFrameBounds(const GeneratorFamily& fam);

// Frame-for-span variant used as a precondition by the finite-section
// machinery: the essential infimum is taken over the density's own support
// within the window, so coverage gaps outside the support are allowed.
FrameBounds frameSequenceBounds(const GeneratorFamily& fam, double winLo,
                                double winHi);

}  // namespace framelet
