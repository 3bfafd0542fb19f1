// Command-line front end: parses an analysis config, runs the requested
// analyses, prints the report (with timing) to stdout, and optionally writes
// deterministic JSON/CSV artifacts under --out.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "framelet/config.hpp"
#include "framelet/errors.hpp"
#include "framelet/report.hpp"

namespace {

struct CommonOpts {
  std::string configPath;
  std::string outDir;
  long grid = 0;
  bool writeJson = false;
  bool writeCsv = false;
};

void addCommonFlags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.configPath, "analysis config file")
      ->required();
  cmd->add_option("--out", opts.outDir, "output directory for artifacts");
  cmd->add_option("--grid", opts.grid,
                  "sample count for CSV curves and the oracle grid");
  cmd->add_flag("--json", opts.writeJson, "write report.json under --out");
  cmd->add_flag("--csv", opts.writeCsv, "write CSV curves under --out");
}

void requireKind(const framelet::AnalysisConfig& cfg, framelet::SystemKind k,
                 const char* subcommand) {
  if (cfg.kind != k) {
    framelet::raise(framelet::ErrorCode::InvalidParams,
                    std::string("the ") + subcommand +
                        " subcommand expects a " +
                        framelet::systemKindName(k) + " system");
  }
}

void writeFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    framelet::raise(framelet::ErrorCode::InvalidParams,
                    "cannot write " + path.string());
  }
  out << text;
}

int runCli(const std::string& subcommand, const CommonOpts& opts) {
  framelet::AnalysisConfig cfg = framelet::parseConfigFile(opts.configPath);

  if (subcommand == "analyze") {
    requireKind(cfg, framelet::SystemKind::TranslateFamily, "analyze");
  } else if (subcommand == "gabor") {
    requireKind(cfg, framelet::SystemKind::WeylHeisenberg, "gabor");
  } else if (subcommand == "wavelet") {
    requireKind(cfg, framelet::SystemKind::ExtendedAffine, "wavelet");
  } else if (subcommand == "dual") {
    cfg.wantDual = true;
  } else if (subcommand == "finite-section") {
    if (!cfg.finiteSection) cfg.finiteSection.emplace();
  } else if (subcommand == "independence") {
    if (!cfg.independence) cfg.independence.emplace();
  }

  if (!opts.outDir.empty()) cfg.outDir = opts.outDir;
  if (opts.grid > 0) {
    cfg.csvSamples = opts.grid;
    if (cfg.oracle) cfg.oracle->n = opts.grid;
  }

  auto started = std::chrono::steady_clock::now();
  framelet::AnalysisRun run = framelet::runAnalysis(cfg);
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();

  if (opts.writeJson || opts.writeCsv) {
    std::filesystem::path dir = cfg.outDir.empty() ? "." : cfg.outDir;
    std::filesystem::create_directories(dir);
    if (opts.writeJson) {
      // the artifact omits timing so repeated runs are byte-identical
      writeFile(dir / "report.json", framelet::renderJson(run.report));
    }
    if (opts.writeCsv) {
      if (run.hasDensityWindow) {
        writeFile(dir / "density.csv",
                  framelet::densityCsv(framelet::familyFor(cfg), run.densityLo,
                                       run.densityHi, cfg.csvSamples));
      }
      if (run.wavelet) {
        writeFile(dir / "wavelet.csv",
                  framelet::waveletCsv(*run.wavelet, cfg.affineWinLo,
                                       cfg.affineWinHi, cfg.csvSamples));
      }
      if (run.sweep) {
        writeFile(dir / "sweep.csv", framelet::sweepCsv(*run.sweep));
      }
    }
  }

  std::cout << framelet::renderJson(
      framelet::withTiming(run.report, seconds));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frame analysis for families of translates"};
  app.require_subcommand(1);

  CommonOpts opts;
  const char* names[] = {"analyze",        "gabor",       "wavelet",
                         "dual",           "finite-section",
                         "independence"};
  const char* blurbs[] = {
      "bounds and density for a family of translates",
      "analyze a lattice system of time-frequency shifts",
      "diagnostics for a dilation-lattice system",
      "canonical dual family and its bounds",
      "finite-section inverse-norm sweep",
      "linear independence and biorthogonality of a section"};
  for (int i = 0; i < 6; ++i) {
    addCommonFlags(app.add_subcommand(names[i], blurbs[i]), opts);
  }

  CLI11_PARSE(app, argc, argv);

  std::string chosen = app.get_subcommands().front()->get_name();
  try {
    return runCli(chosen, opts);
  } catch (const framelet::Error& e) {
    nlohmann::ordered_json err;
    err["error"]["code"] = e.codeName();
    err["error"]["message"] = e.what();
    std::cerr << framelet::renderJson(err);
    return 1;
  } catch (const std::exception& e) {
    nlohmann::ordered_json err;
    err["error"]["code"] = "internal-error";
    err["error"]["message"] = e.what();
    std::cerr << framelet::renderJson(err);
    return 1;
  }
}
