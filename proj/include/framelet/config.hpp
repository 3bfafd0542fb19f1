#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "framelet/family.hpp"
#include "framelet/systems.hpp"

namespace framelet {

enum class SystemKind { TranslateFamily, WeylHeisenberg, ExtendedAffine };

const char* systemKindName(SystemKind kind);

struct FiniteSectionRequest {
  long maxS = 8;
  long maxT = 8;
  std::vector<long> jList{0};
};

struct IndependenceRequest {
  long s = 4;
  long t = 4;
};

struct OracleRequest {
  double lo = 0.0;
  double hi = 1.0;
  long n = 1024;
  long s = 8;
  long t = 4;
};

// One parsed analysis request: exactly one system declaration plus the list
// of analyses to run against it. Numbers in the file are JSON numbers or
// exact fractions written as "p/q" strings.
struct AnalysisConfig {
  SystemKind kind = SystemKind::TranslateFamily;

  std::optional<GeneratorFamily> translateFamily;
  std::optional<WeylHeisenbergParams> gabor;
  std::optional<ExtendedAffineParams> affine;
  double affineWinLo = 0.0;  // diagnostics window for extended-affine runs
  double affineWinHi = 0.0;

  bool wantBounds = false;
  bool wantDual = false;
  std::optional<FiniteSectionRequest> finiteSection;
  std::optional<IndependenceRequest> independence;
  std::optional<OracleRequest> oracle;

  // Report-flag thresholds (the numeric pipelines pin their own tolerances).
  double tolOracleAgreement = 0.02;  // relative, oracle-vs-analytic flag
  double tolBiorthogonality = 1e-9;  // biorthogonality pass flag

  std::string outDir;      // output.dir; command-line --out overrides
  long csvSamples = 1024;  // output.gridSamples; command-line --grid overrides
};

// JSON number, or a string holding an exact fraction "p/q" or a decimal.
double parseNumber(const nlohmann::json& v);

// A spectrum is a list of {lo, hi, a0_re, a0_im, a1_re, a1_im} segments,
// either bare or wrapped as {"segments": [...], "timeShift": x}.
PiecewiseSpectrum parseSpectrum(const nlohmann::json& v);

AnalysisConfig parseConfigText(const std::string& text);
AnalysisConfig parseConfigFile(const std::string& path);

// The generator family the analyses operate on (builds the Gabor or wavelet
// family for parameterized system kinds).
GeneratorFamily familyFor(const AnalysisConfig& config);

}  // namespace framelet
