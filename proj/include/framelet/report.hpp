#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "framelet/config.hpp"
#include "framelet/frame_operator.hpp"
#include "framelet/systems.hpp"

namespace framelet {

inline constexpr int kReportSchemaVersion = 1;

// One finished analysis: the deterministic report document (fixed key order,
// fixed section ordering, no timing) plus the computed curves the CSV
// exporters need.
struct AnalysisRun {
  nlohmann::ordered_json report;
  std::optional<SweepReport> sweep;           // set when finite-section ran
  std::optional<WaveletDiagnostics> wavelet;  // set for extended-affine runs
  double densityLo = 0.0;  // density window, for the density CSV
  double densityHi = 0.0;
  bool hasDensityWindow = false;
};

// Runs every analysis the config requests. The report carries the density
// (or wavelet) summary even with an empty analysis list; every computed
// numeric result is wrapped as {"value", "provenance"} with provenance
// "analytic" or "oracle". Timing is never included here so that rerunning
// the same config yields byte-identical output.
AnalysisRun runAnalysis(const AnalysisConfig& config);

// Appends wall-clock seconds as the final key (excluded from determinism).
nlohmann::ordered_json withTiming(nlohmann::ordered_json report,
                                  double seconds);

// Serialized form used on disk and on stdout: 2-space indent plus newline.
std::string renderJson(const nlohmann::ordered_json& doc);

// Structural check against the documented report schema; on failure returns
// false and fills why with the first violation.
bool validateReport(const nlohmann::json& report, std::string* why);

// CSV curves with fixed headers: "gamma,G", "gamma,W", and
// "s,t,j,normInv,maxCoeffErr,cond" (maxCoeffErr empty when not measured).
std::string densityCsv(const GeneratorFamily& fam, double lo, double hi,
                       long samples);
std::string waveletCsv(const WaveletDiagnostics& diag, double lo, double hi,
                       long samples);
std::string sweepCsv(const SweepReport& sweep);

}  // namespace framelet
