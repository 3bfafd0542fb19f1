#include "framelet/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "framelet/errors.hpp"

namespace framelet {

namespace {

using nlohmann::json;

[[noreturn]] void parseFail(const std::string& message) {
  raise(ErrorCode::ConfigParse, message);
}

const json& require(const json& obj, const char* key, const char* where) {
  if (!obj.is_object() || !obj.contains(key)) {
    parseFail(std::string(where) + " needs the field \"" + key + "\"");
  }
  return obj.at(key);
}

long toLong(const json& v, const char* where) {
  double d = parseNumber(v);
  double r = std::round(d);
  if (std::abs(d - r) > 1e-9 || std::abs(r) > 9.0e15) {
    parseFail(std::string(where) + " must be an integer");
  }
  return static_cast<long>(r);
}

double field(const json& obj, const char* key, double fallback) {
  return obj.is_object() && obj.contains(key) ? parseNumber(obj.at(key))
                                              : fallback;
}

GeneratorFamily parseTranslateFamily(const json& sys) {
  double lambda = parseNumber(require(sys, "lambda", "translate-family"));
  std::string rule = sys.value("rule", "");
  if (rule == "explicit") {
    const json& gens = require(sys, "generators", "explicit translate-family");
    if (!gens.is_array() || gens.empty()) {
      parseFail("generators must be a nonempty list");
    }
    std::vector<std::pair<long, PiecewiseSpectrum>> list;
    std::map<long, double> overrides;
    for (const auto& e : gens) {
      long idx = toLong(require(e, "index", "generator"), "generator index");
      list.emplace_back(idx, parseSpectrum(e));
      if (e.contains("step")) overrides[idx] = parseNumber(e.at("step"));
    }
    return GeneratorFamily::explicitFamily(std::move(list), lambda,
                                           std::move(overrides));
  }
  if (rule == "periodic-tiling") {
    double period = parseNumber(require(sys, "period", "periodic tiling"));
    const json& bases = require(sys, "bases", "periodic tiling");
    if (!bases.is_array() || bases.empty()) {
      parseFail("bases must be a nonempty list");
    }
    std::vector<PiecewiseSpectrum> specs;
    specs.reserve(bases.size());
    for (const auto& e : bases) specs.push_back(parseSpectrum(e));
    return GeneratorFamily::periodicTiling(std::move(specs), period, lambda);
  }
  parseFail("translate-family rule must be \"explicit\" or \"periodic-tiling\"");
}

WeylHeisenbergParams parseGabor(const json& sys) {
  WeylHeisenbergParams p;
  p.A = field(sys, "A", 1.0);
  p.B = field(sys, "B", 0.0);
  const json& windows = require(sys, "windows", "weyl-heisenberg");
  if (!windows.is_array() || windows.empty()) {
    parseFail("windows must be a nonempty list");
  }
  for (const auto& e : windows) {
    WeylHeisenbergWindow w;
    w.p0 = parseNumber(require(e, "p0", "gabor window"));
    w.q0 = parseNumber(require(e, "q0", "gabor window"));
    w.window = parseSpectrum(e);
    p.windows.push_back(std::move(w));
  }
  validateWeylHeisenberg(p);
  return p;
}

ExtendedAffineParams parseAffine(const json& sys) {
  ExtendedAffineParams p;
  p.c = field(sys, "c", 0.0);
  p.d = field(sys, "d", 1.0);
  const json& windows = require(sys, "windows", "extended-affine");
  if (!windows.is_array() || windows.empty()) {
    parseFail("windows must be a nonempty list");
  }
  for (const auto& e : windows) {
    ExtendedAffineWindow w;
    w.q0 = parseNumber(require(e, "q0", "wavelet window"));
    w.window = parseSpectrum(e);
    p.windows.push_back(std::move(w));
  }
  if (sys.contains("truncate")) {
    const json& tr = sys.at("truncate");
    if (!tr.is_array() || tr.size() != 2) {
      parseFail("truncate must be a [lo, hi] pair of integers");
    }
    p.truncateL = std::make_pair(toLong(tr.at(0), "truncate lo"),
                                 toLong(tr.at(1), "truncate hi"));
  }
  validateExtendedAffine(p);
  return p;
}

void parseAnalyses(const json& doc, AnalysisConfig& cfg) {
  if (!doc.contains("analyses")) return;
  const json& list = doc.at("analyses");
  if (!list.is_array()) parseFail("analyses must be a list");
  for (const auto& e : list) {
    std::string kind = e.is_object() ? e.value("kind", "") : "";
    if (kind == "bounds") {
      cfg.wantBounds = true;
    } else if (kind == "dual") {
      cfg.wantDual = true;
    } else if (kind == "finite-section") {
      FiniteSectionRequest req;
      req.maxS = toLong(require(e, "maxS", "finite-section"), "maxS");
      req.maxT = toLong(require(e, "maxT", "finite-section"), "maxT");
      const json& jl = require(e, "jList", "finite-section");
      if (!jl.is_array() || jl.empty()) {
        parseFail("jList must be a nonempty list of shift indices");
      }
      req.jList.clear();
      for (const auto& jv : jl) req.jList.push_back(toLong(jv, "jList entry"));
      cfg.finiteSection = std::move(req);
    } else if (kind == "independence") {
      IndependenceRequest req;
      req.s = toLong(require(e, "s", "independence"), "s");
      req.t = toLong(require(e, "t", "independence"), "t");
      cfg.independence = req;
    } else if (kind == "oracle") {
      OracleRequest req;
      req.lo = parseNumber(require(e, "lo", "oracle"));
      req.hi = parseNumber(require(e, "hi", "oracle"));
      req.n = toLong(require(e, "n", "oracle"), "n");
      req.s = toLong(require(e, "s", "oracle"), "s");
      req.t = toLong(require(e, "t", "oracle"), "t");
      cfg.oracle = req;
    } else {
      parseFail("unknown analysis kind \"" + kind +
                "\" (expected bounds, dual, finite-section, independence, or "
                "oracle)");
    }
  }
}

void parseTolerances(const json& doc, AnalysisConfig& cfg) {
  if (!doc.contains("tolerances")) return;
  const json& tol = doc.at("tolerances");
  if (!tol.is_object()) parseFail("tolerances must be an object");
  if (tol.contains("oracleAgreement")) {
    cfg.tolOracleAgreement = parseNumber(tol.at("oracleAgreement"));
  }
  if (tol.contains("biorthogonality")) {
    cfg.tolBiorthogonality = parseNumber(tol.at("biorthogonality"));
  }
  if (!(cfg.tolOracleAgreement > 0.0) || !(cfg.tolBiorthogonality > 0.0)) {
    parseFail("tolerances must be positive");
  }
}

void parseOutput(const json& doc, AnalysisConfig& cfg) {
  if (!doc.contains("output")) return;
  const json& out = doc.at("output");
  if (!out.is_object()) parseFail("output must be an object");
  if (out.contains("dir")) {
    if (!out.at("dir").is_string()) parseFail("output.dir must be a string");
    cfg.outDir = out.at("dir").get<std::string>();
  }
  if (out.contains("gridSamples")) {
    cfg.csvSamples = toLong(out.at("gridSamples"), "output.gridSamples");
    if (cfg.csvSamples < 2) parseFail("output.gridSamples must be at least 2");
  }
}

}  // namespace

const char* systemKindName(SystemKind kind) {
  switch (kind) {
    case SystemKind::TranslateFamily:
      return "translate-family";
    case SystemKind::WeylHeisenberg:
      return "weyl-heisenberg";
    case SystemKind::ExtendedAffine:
      return "extended-affine";
  }
  return "unknown";
}

double parseNumber(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      try {
        size_t usedP = 0, usedQ = 0;
        long long p = std::stoll(s.substr(0, slash), &usedP);
        long long q = std::stoll(s.substr(slash + 1), &usedQ);
        if (usedP != slash || usedQ != s.size() - slash - 1 || q == 0) {
          parseFail("malformed fraction \"" + s + "\"");
        }
        return static_cast<double>(p) / static_cast<double>(q);
      } catch (const std::logic_error&) {
        parseFail("malformed fraction \"" + s + "\"");
      }
    }
    try {
      size_t used = 0;
      double d = std::stod(s, &used);
      if (used != s.size()) parseFail("malformed number \"" + s + "\"");
      return d;
    } catch (const std::logic_error&) {
      parseFail("malformed number \"" + s + "\"");
    }
  }
  parseFail("expected a number or a \"p/q\" string");
}

PiecewiseSpectrum parseSpectrum(const json& v) {
  const json* segsJson = nullptr;
  double tau = 0.0;
  if (v.is_array()) {
    segsJson = &v;
  } else if (v.is_object()) {
    segsJson = &require(v, "segments", "spectrum");
    if (v.contains("timeShift")) tau = parseNumber(v.at("timeShift"));
  } else {
    parseFail("a spectrum is a segment list or {segments, timeShift}");
  }
  if (!segsJson->is_array()) parseFail("segments must be a list");
  std::vector<Segment> segs;
  segs.reserve(segsJson->size());
  for (const auto& e : *segsJson) {
    Segment s;
    s.lo = parseNumber(require(e, "lo", "segment"));
    s.hi = parseNumber(require(e, "hi", "segment"));
    s.a0 = {field(e, "a0_re", 0.0), field(e, "a0_im", 0.0)};
    s.a1 = {field(e, "a1_re", 0.0), field(e, "a1_im", 0.0)};
    segs.push_back(s);
  }
  return PiecewiseSpectrum(std::move(segs), tau);
}

AnalysisConfig parseConfigText(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    parseFail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) parseFail("the config root must be an object");
  const json& sys = require(doc, "system", "config");
  if (!sys.is_object()) parseFail("system must be an object");
  std::string kind = sys.value("kind", "");

  AnalysisConfig cfg;
  if (kind == "translate-family") {
    cfg.kind = SystemKind::TranslateFamily;
    cfg.translateFamily = parseTranslateFamily(sys);
  } else if (kind == "weyl-heisenberg") {
    cfg.kind = SystemKind::WeylHeisenberg;
    cfg.gabor = parseGabor(sys);
  } else if (kind == "extended-affine") {
    cfg.kind = SystemKind::ExtendedAffine;
    cfg.affine = parseAffine(sys);
    const json& win = require(sys, "window", "extended-affine");
    if (!win.is_array() || win.size() != 2) {
      parseFail("extended-affine needs a diagnostics window [lo, hi]");
    }
    cfg.affineWinLo = parseNumber(win.at(0));
    cfg.affineWinHi = parseNumber(win.at(1));
    if (!(cfg.affineWinLo < cfg.affineWinHi)) {
      parseFail("the diagnostics window must satisfy lo < hi");
    }
  } else {
    parseFail(
        "system.kind must be translate-family, weyl-heisenberg, or "
        "extended-affine");
  }

  parseAnalyses(doc, cfg);
  parseTolerances(doc, cfg);
  parseOutput(doc, cfg);
  return cfg;
}

AnalysisConfig parseConfigFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parseFail("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseConfigText(buf.str());
}

GeneratorFamily familyFor(const AnalysisConfig& config) {
  switch (config.kind) {
    case SystemKind::TranslateFamily:
      return *config.translateFamily;
    case SystemKind::WeylHeisenberg:
      return buildGaborFamily(*config.gabor);
    case SystemKind::ExtendedAffine:
      return buildWaveletFamily(*config.affine);
  }
  raise(ErrorCode::InvalidParams, "unreachable system kind");
}

}  // namespace framelet
