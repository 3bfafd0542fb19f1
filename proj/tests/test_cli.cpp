#include <cmath>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "fixtures.hpp"
#include "framelet/config.hpp"
#include "framelet/report.hpp"

using namespace framelet;

namespace {

std::string configPath(const char* name) {
  return std::string(FRAMELET_SOURCE_DIR) + "/configs/" + name;
}

double taggedValue(const nlohmann::ordered_json& block, const char* key) {
  return block.at(key).at("value").get<double>();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("numbers parse as decimals or exact fractions") {
  CHECK(parseNumber(nlohmann::json(0.25)) == doctest::Approx(0.25));
  CHECK(parseNumber(nlohmann::json("13/2")) == doctest::Approx(6.5));
  CHECK(parseNumber(nlohmann::json("-3/4")) == doctest::Approx(-0.75));
  CHECK(parseNumber(nlohmann::json("2.5e-1")) == doctest::Approx(0.25));

  CHECK(fix::errorOf([] { parseNumber(nlohmann::json("1/0")); }) ==
        ErrorCode::ConfigParse);
  CHECK(fix::errorOf([] { parseNumber(nlohmann::json("7/2/3")); }) ==
        ErrorCode::ConfigParse);
  CHECK(fix::errorOf([] { parseNumber(nlohmann::json("abc")); }) ==
        ErrorCode::ConfigParse);
  CHECK(fix::errorOf([] { parseNumber(nlohmann::json(true)); }) ==
        ErrorCode::ConfigParse);
}

TEST_CASE("spectra parse from segment lists") {
  nlohmann::json segs = nlohmann::json::parse(R"([
    { "lo": 0, "hi": 1, "a0_re": 1, "a1_re": 1 },
    { "lo": 1, "hi": 2, "a1_im": "1/2" }
  ])");
  PiecewiseSpectrum spec = parseSpectrum(segs);
  CHECK(std::abs(spec.eval(0.5) - cplx{1.5, 0.0}) < 1e-15);
  CHECK(std::abs(spec.eval(1.5) - cplx{0.0, 0.75}) < 1e-15);

  nlohmann::json shifted = nlohmann::json::parse(R"({
    "segments": [ { "lo": 0, "hi": 1, "a0_re": 1 } ],
    "timeShift": "1/4"
  })");
  CHECK(parseSpectrum(shifted).timeShift() == doctest::Approx(0.25));

  nlohmann::json overlapping = nlohmann::json::parse(R"([
    { "lo": 0, "hi": 1, "a0_re": 1 },
    { "lo": 0.5, "hi": 2, "a0_re": 1 }
  ])");
  CHECK(fix::errorOf([&] { parseSpectrum(overlapping); }) ==
        ErrorCode::InvalidParams);
}

TEST_CASE("config parse failures carry the config-parse code") {
  CHECK(fix::errorOf([] { parseConfigText("{ not json"); }) ==
        ErrorCode::ConfigParse);
  CHECK(fix::errorOf([] { parseConfigText(R"({"analyses": []})"); }) ==
        ErrorCode::ConfigParse);
  CHECK(fix::errorOf([] {
          parseConfigText(R"({"system": {"kind": "nope"}})");
        }) == ErrorCode::ConfigParse);
  CHECK(fix::errorOf([] { parseConfigFile("/nonexistent/cfg.json"); }) ==
        ErrorCode::ConfigParse);

  // unknown analysis kinds and non-positive tolerances are rejected
  std::string base = R"({
    "system": {
      "kind": "translate-family", "rule": "periodic-tiling",
      "lambda": 1, "period": 1,
      "bases": [[ { "lo": 0, "hi": 1, "a0_re": 1 } ]]
    },
    "analyses": [ { "kind": "frobnicate" } ]
  })";
  CHECK(fix::errorOf([&] { parseConfigText(base); }) == ErrorCode::ConfigParse);

  std::string badTol = R"({
    "system": {
      "kind": "translate-family", "rule": "periodic-tiling",
      "lambda": 1, "period": 1,
      "bases": [[ { "lo": 0, "hi": 1, "a0_re": 1 } ]]
    },
    "tolerances": { "biorthogonality": 0 }
  })";
  CHECK(fix::errorOf([&] { parseConfigText(badTol); }) ==
        ErrorCode::ConfigParse);
}

TEST_CASE("lattice hypothesis violations surface at parse time") {
  CHECK(fix::errorOf([] {
          parseConfigFile(configPath("gabor_violation.json"));
        }) == ErrorCode::HypothesisViolation);
}

TEST_CASE("ramp pair config reports its bounds and oracle agreement") {
  AnalysisConfig cfg = parseConfigFile(configPath("gabor_ramp_pair.json"));
  CHECK(cfg.kind == SystemKind::WeylHeisenberg);
  AnalysisRun run = runAnalysis(cfg);
  const auto& rep = run.report;

  CHECK(std::abs(taggedValue(rep.at("bounds"), "alpha") - 6.5) < 1e-9);
  CHECK(std::abs(taggedValue(rep.at("bounds"), "beta") - 26.0) < 1e-9);
  CHECK(rep.at("bounds").at("alpha").at("provenance") == "analytic");
  CHECK_FALSE(rep.at("bounds").at("isTight").get<bool>());

  CHECK(rep.at("oracle").at("minEig").at("provenance") == "oracle");
  CHECK(rep.at("oracle").at("agreesWithAnalytic").get<bool>());
  CHECK(std::abs(taggedValue(rep.at("oracle"), "minEig") - 6.5) < 0.02 * 6.5);

  std::string why;
  CHECK(validateReport(rep, &why));
}

TEST_CASE("tight non-Parseval tiles emit a discrepancy note") {
  AnalysisRun run =
      runAnalysis(parseConfigFile(configPath("tiles_half_unit.json")));
  const auto& rep = run.report;

  CHECK(taggedValue(rep.at("density"), "essInf") == doctest::Approx(4.0));
  CHECK(taggedValue(rep.at("density"), "essSup") == doctest::Approx(4.0));
  CHECK(std::abs(taggedValue(rep.at("bounds"), "alpha") - 2.0) < 1e-12);
  CHECK(std::abs(taggedValue(rep.at("bounds"), "beta") - 2.0) < 1e-12);
  CHECK(rep.at("bounds").at("isTight").get<bool>());
  CHECK_FALSE(rep.at("bounds").at("isParseval").get<bool>());
  REQUIRE(!rep.at("discrepancyNotes").empty());
  std::string note = rep.at("discrepancyNotes").at(0).get<std::string>();
  CHECK(note.find("2") != std::string::npos);

  // the rescaled variant is Parseval and carries no note
  AnalysisRun parseval = runAnalysis(
      parseConfigFile(configPath("tiles_half_unit_parseval.json")));
  CHECK(std::abs(taggedValue(parseval.report.at("bounds"), "alpha") - 1.0) <=
        1e-12);
  CHECK(parseval.report.at("bounds").at("isParseval").get<bool>());
  CHECK(parseval.report.at("discrepancyNotes").empty());

  // reciprocal steps: the tight pair (8, 8) without a validity warning
  CHECK(std::abs(taggedValue(rep.at("reciprocal"), "alpha") - 8.0) < 1e-9);
  CHECK_FALSE(rep.at("reciprocal").at("validityWarning").get<bool>());

  // dual block: bounds (1/2, 1/2), round trip tiny
  CHECK(taggedValue(rep.at("dual").at("bounds"), "alpha") ==
        doctest::Approx(0.5));
  CHECK(taggedValue(rep.at("dual"), "dualOfDualMaxDeviation") <= 1e-10);

  // independence block: a Riesz section, biorthogonal
  CHECK(rep.at("independence").at("isIndependent").get<bool>());
  CHECK(rep.at("independence").at("isBiorthogonal").get<bool>());

  std::string why;
  CHECK(validateReport(rep, &why));
}

TEST_CASE("wide tiles trigger the reciprocal validity warning") {
  AnalysisRun run =
      runAnalysis(parseConfigFile(configPath("tiles_wide.json")));
  CHECK(run.report.at("reciprocal").at("validityWarning").get<bool>());
  CHECK_FALSE(run.report.at("warnings").empty());
}

TEST_CASE("duplicated generators are flagged dependent") {
  AnalysisRun run =
      runAnalysis(parseConfigFile(configPath("tiles_duplicated.json")));
  const auto& ind = run.report.at("independence");
  CHECK_FALSE(ind.at("isIndependent").get<bool>());
  CHECK_FALSE(ind.at("isBiorthogonal").get<bool>());
  CHECK(taggedValue(ind, "dim") - taggedValue(ind, "rank") ==
        doctest::Approx(5.0));
  CHECK(taggedValue(ind, "biorthogonalityDeviation") >= 0.4);
}

TEST_CASE("an empty analysis list still yields the density summary") {
  AnalysisRun run =
      runAnalysis(parseConfigFile(configPath("density_only.json")));
  const auto& rep = run.report;
  CHECK(rep.contains("density"));
  CHECK_FALSE(rep.contains("bounds"));
  CHECK_FALSE(rep.contains("dual"));
  CHECK_FALSE(rep.contains("finiteSection"));
  CHECK_FALSE(rep.contains("oracle"));
  CHECK(rep.at("warnings").is_array());
  std::string why;
  CHECK(validateReport(rep, &why));
}

TEST_CASE("wavelet configs report the diagnostic block with its caveat") {
  AnalysisRun run =
      runAnalysis(parseConfigFile(configPath("wavelet_unit_band.json")));
  const auto& rep = run.report;
  CHECK(rep.contains("wavelet"));
  CHECK_FALSE(rep.contains("density"));
  CHECK(taggedValue(rep.at("wavelet"), "sup") == doctest::Approx(1.0));
  CHECK(std::abs(taggedValue(rep.at("wavelet"), "zeroSetMeasure") -
                 (std::exp(1.0) - 2.0)) < 1e-9);
  CHECK_FALSE(rep.at("warnings").empty());
  CHECK(rep.contains("lattice"));
  REQUIRE(run.wavelet.has_value());
  std::string why;
  CHECK(validateReport(rep, &why));
}

TEST_CASE("reports are deterministic and schema-valid") {
  AnalysisConfig cfg = parseConfigFile(configPath("tiles_half_unit.json"));
  AnalysisRun a = runAnalysis(cfg);
  AnalysisRun b = runAnalysis(cfg);
  CHECK(renderJson(a.report) == renderJson(b.report));

  // timing is appended after the determinism boundary
  nlohmann::ordered_json timed = withTiming(a.report, 1.25);
  CHECK(timed.contains("timing"));
  CHECK_FALSE(a.report.contains("timing"));

  // schema violations are named
  nlohmann::ordered_json broken = a.report;
  broken.erase("schemaVersion");
  std::string why;
  CHECK_FALSE(validateReport(broken, &why));
  CHECK_FALSE(why.empty());

  nlohmann::ordered_json untagged = a.report;
  untagged["bounds"]["alpha"] = 2.0;
  CHECK_FALSE(validateReport(untagged, &why));
}

TEST_CASE("csv outputs carry the documented headers") {
  AnalysisConfig cfg = parseConfigFile(configPath("tiles_half_unit.json"));
  GeneratorFamily fam = familyFor(cfg);
  std::string density = densityCsv(fam, 0.0, 1.0, 8);
  CHECK(density.rfind("gamma,G\n", 0) == 0);
  // 8 samples of the constant density 4
  std::istringstream lines(density);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.substr(line.find(',') + 1) == "4");
  }
  CHECK(rows == 8);

  SweepReport sweep =
      sectionInverseNormSweep(fam, {0}, {{1, 1}, {2, 2}});
  std::string sweepText = sweepCsv(sweep);
  CHECK(sweepText.rfind("s,t,j,normInv,maxCoeffErr,cond\n", 0) == 0);
  // without test functions the maxCoeffErr column is empty
  CHECK(sweepText.find(",,") != std::string::npos);

  AnalysisRun wavelet =
      runAnalysis(parseConfigFile(configPath("wavelet_unit_band.json")));
  std::string waveletText =
      waveletCsv(*wavelet.wavelet, 1.0, 2.0, 16);
  CHECK(waveletText.rfind("gamma,W\n", 0) == 0);
}

}  // TEST_SUITE
