#include "framelet/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "framelet/errors.hpp"
#include "framelet/oracle.hpp"

namespace framelet {

namespace {

using ordered = nlohmann::ordered_json;

ordered tagged(double value, const char* provenance) {
  ordered o;
  o["value"] = value;
  o["provenance"] = provenance;
  return o;
}

std::string fmtNum(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* ruleName(FamilyRule rule) {
  switch (rule) {
    case FamilyRule::Explicit:
      return "explicit";
    case FamilyRule::PeriodicTiling:
      return "periodic-tiling";
    case FamilyRule::Modulated:
      return "modulated";
    case FamilyRule::Dilated:
      return "dilated";
  }
  return "unknown";
}

struct DensitySummary {
  SpectralDensity density;
  double lo = 0.0;
  double hi = 0.0;
};

double coveredNonzeroLen(const PiecewiseQuad& q, double lo, double hi) {
  double covered = 0.0;
  for (const auto& s : q.segments()) {
    if (s.b0 == 0.0 && s.b1 == 0.0 && s.b2 == 0.0) continue;
    double a = std::max(s.lo, lo), b = std::min(s.hi, hi);
    if (a < b) covered += b - a;
  }
  return covered;
}

DensitySummary densitySummaryFor(const GeneratorFamily& fam) {
  double period = rulePeriodHint(fam);
  if (period > 0.0) {
    double anchor = 0.0;
    for (const auto& base : fam.baseSpectra()) {
      if (!base.isZero()) {
        anchor = base.supportLo();
        break;
      }
    }
    SpectralDensity d = spectralDensity(fam, anchor, anchor + 2.0 * period);
    double span = d.period > 0.0 ? d.period : 2.0 * period;
    return {std::move(d), anchor, anchor + span};
  }
  std::vector<FamilyBranch> branches;
  switch (fam.rule()) {
    case FamilyRule::Modulated:
      raise(ErrorCode::UnboundedFamily,
            "the modulation steps share no common period; no finite density "
            "window exists");
    case FamilyRule::Dilated: {
      auto trunc = fam.truncation();
      if (!trunc) {
        raise(ErrorCode::UnboundedFamily,
              "a density summary over dilated branches needs a truncation");
      }
      branches = fam.sectionBranches(
          std::max(std::abs(trunc->first), std::abs(trunc->second)));
      break;
    }
    default:
      branches = fam.materialize(-1e12, 1e12);
      break;
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& br : branches) {
    if (br.spec.isZero()) continue;
    lo = std::min(lo, br.spec.supportLo());
    hi = std::max(hi, br.spec.supportHi());
  }
  if (!(lo < hi)) {
    raise(ErrorCode::InvalidParams, "the family has no nonzero generator");
  }
  return {spectralDensity(fam, lo, hi), lo, hi};
}

ordered densityBlock(const DensitySummary& ds) {
  auto [essInf, essSup] = essRange(ds.density);
  double gap;
  if (ds.density.period > 0.0) {
    gap = std::max(0.0, ds.density.period -
                            coveredNonzeroLen(ds.density.values, ds.lo,
                                              ds.lo + ds.density.period));
  } else {
    gap = ds.density.zeroGapMeasure;
  }
  ordered b;
  b["window"] = ordered::array({ds.lo, ds.hi});
  b["period"] = tagged(ds.density.period, "analytic");
  b["essInf"] = tagged(essInf, "analytic");
  b["essSup"] = tagged(essSup, "analytic");
  b["zeroGapMeasure"] = tagged(gap, "analytic");
  return b;
}

ordered boundsBlock(const FrameBounds& fb) {
  ordered b;
  b["alpha"] = tagged(fb.alpha, "analytic");
  b["beta"] = tagged(fb.beta, "analytic");
  b["isTight"] = fb.isTight;
  b["isParseval"] = fb.isParseval;
  return b;
}

ordered systemBlock(const AnalysisConfig& cfg) {
  ordered s;
  s["kind"] = systemKindName(cfg.kind);
  switch (cfg.kind) {
    case SystemKind::TranslateFamily:
      s["rule"] = ruleName(cfg.translateFamily->rule());
      s["lambda"] = cfg.translateFamily->lambda();
      break;
    case SystemKind::WeylHeisenberg:
      s["A"] = cfg.gabor->A;
      s["B"] = cfg.gabor->B;
      s["windowCount"] = cfg.gabor->windows.size();
      s["lambda"] = 1.0 / cfg.gabor->windows.front().q0;
      break;
    case SystemKind::ExtendedAffine:
      s["c"] = cfg.affine->c;
      s["d"] = cfg.affine->d;
      s["windowCount"] = cfg.affine->windows.size();
      if (cfg.affine->truncateL) {
        s["truncate"] = ordered::array(
            {cfg.affine->truncateL->first, cfg.affine->truncateL->second});
      }
      break;
  }
  return s;
}

ordered latticeBlock(const ExtendedAffineParams& p) {
  long lLo = -3, lHi = 3;
  if (p.truncateL) {
    lLo = p.truncateL->first;
    lHi = p.truncateL->second;
  }
  ordered rows = ordered::array();
  for (int j = 0; j < static_cast<int>(p.windows.size()); ++j) {
    for (long l = lLo; l <= lHi; ++l) {
      for (long n = -3; n <= 3; ++n) {
        LatticePoint pt = latticePoint(p, n, l, j);
        ordered row;
        row["j"] = j;
        row["l"] = l;
        row["n"] = n;
        row["alpha"] = tagged(pt.alpha, "analytic");
        row["beta"] = tagged(pt.beta, "analytic");
        row["gamma"] = tagged(pt.gamma, "analytic");
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

ordered sweepBlock(const SweepReport& sw) {
  ordered b;
  ordered rows = ordered::array();
  for (const auto& row : sw.rows) {
    ordered r;
    r["s"] = row.s;
    r["t"] = row.t;
    r["j"] = row.j;
    r["normInv"] = tagged(row.normInv, "analytic");
    if (std::isnan(row.maxCoeffErr)) {
      r["maxCoeffErr"] = nullptr;
    } else {
      r["maxCoeffErr"] = tagged(row.maxCoeffErr, "oracle");
    }
    r["cond"] = tagged(row.cond, "analytic");
    rows.push_back(std::move(r));
  }
  b["rows"] = std::move(rows);
  b["generatorShiftIndices"] = sw.generatorShiftIndices;
  b["observedSup"] = tagged(sw.observedSup, "analytic");
  b["bounded"] = sw.bounded;
  return b;
}

bool isTagged(const nlohmann::json& v) {
  return v.is_object() && v.contains("value") && v.contains("provenance") &&
         v.at("value").is_number() && v.at("provenance").is_string() &&
         (v.at("provenance") == "analytic" || v.at("provenance") == "oracle");
}

bool fail(std::string* why, const std::string& message) {
  if (why) *why = message;
  return false;
}

bool checkTagged(const nlohmann::json& block, const char* blockName,
                 std::initializer_list<const char*> fields, std::string* why) {
  for (const char* f : fields) {
    if (!block.contains(f) || !isTagged(block.at(f))) {
      return fail(why, std::string(blockName) + "." + f +
                           " must be {value, provenance}");
    }
  }
  return true;
}

}  // namespace

AnalysisRun runAnalysis(const AnalysisConfig& cfg) {
  AnalysisRun run;
  ordered& rep = run.report;
  std::vector<std::string> notes;
  std::vector<std::string> warnings;

  rep["schemaVersion"] = kReportSchemaVersion;
  rep["system"] = systemBlock(cfg);

  GeneratorFamily fam = familyFor(cfg);

  if (cfg.kind == SystemKind::ExtendedAffine) {
    WaveletDiagnostics diag =
        waveletDiagnostics(*cfg.affine, cfg.affineWinLo, cfg.affineWinHi);
    ordered w;
    w["window"] = ordered::array({cfg.affineWinLo, cfg.affineWinHi});
    w["inf"] = tagged(diag.inf, "analytic");
    w["sup"] = tagged(diag.sup, "analytic");
    w["zeroSetMeasure"] = tagged(diag.zeroSetMeasure, "analytic");
    rep["wavelet"] = std::move(w);
    rep["lattice"] = latticeBlock(*cfg.affine);
    warnings.push_back(diag.caveat);
    run.wavelet = std::move(diag);
  } else {
    DensitySummary ds = densitySummaryFor(fam);
    rep["density"] = densityBlock(ds);
    run.densityLo = ds.lo;
    run.densityHi = ds.hi;
    run.hasDensityWindow = true;
  }

  std::optional<FrameBounds> analyticBounds;
  if (cfg.wantBounds && cfg.kind != SystemKind::ExtendedAffine) {
    FrameBounds fb = cfg.kind == SystemKind::WeylHeisenberg
                         ? gaborFrameBounds(*cfg.gabor)
                         : translateFrameBounds(fam);
    analyticBounds = fb;
    rep["bounds"] = boundsBlock(fb);
    if (fb.isTight && !fb.isParseval) {
      notes.push_back(
          "tight frame with bound " + fmtNum(fb.alpha) +
          ", but not Parseval: a Parseval frame needs bound 1; scaling every "
          "generator amplitude by 1/sqrt(" +
          fmtNum(fb.alpha) + ") produces the Parseval variant");
    }
    ReciprocalBounds rb = reciprocalStepBounds(fam);
    ordered rblock = boundsBlock(rb.bounds);
    rblock["validityWarning"] = rb.validityWarning;
    rep["reciprocal"] = std::move(rblock);
    if (rb.validityWarning) warnings.push_back(rb.warningText);
  }
  if (cfg.wantDual) {
    CanonicalDualSystem sys(fam);
    auto duals = canonicalDualGenerators(fam);
    double deviation = 0.0;
    for (const auto& dual : duals) {
      const PiecewiseSpectrum& spec = dual.branch.spec;
      if (spec.isZero()) continue;
      EvaluableSpectrum roundTrip = sys.dualOfDual(dual.branch);
      Grid probe(spec.supportLo(), spec.supportHi(), 200);
      for (long i = 0; i < probe.N; ++i) {
        double g = probe.midpoint(i);
        deviation =
            std::max(deviation, std::abs(roundTrip.eval(g) - spec.eval(g)));
      }
    }
    ordered d;
    d["bounds"] = boundsBlock(sys.dualBounds());
    d["generatorCount"] = duals.size();
    d["dualOfDualMaxDeviation"] = tagged(deviation, "oracle");
    rep["dual"] = std::move(d);
  }

  if (cfg.finiteSection) {
    SweepReport sw = sectionInverseNormSweep(
        fam, cfg.finiteSection->jList, cfg.finiteSection->maxS,
        cfg.finiteSection->maxT);
    rep["finiteSection"] = sweepBlock(sw);
    run.sweep = std::move(sw);
  }

  if (cfg.independence) {
    IndependenceResult ir =
        independenceTest(fam, cfg.independence->s, cfg.independence->t);
    double deviation =
        biorthogonalityCheck(fam, cfg.independence->s, cfg.independence->t);
    ordered ind;
    ind["s"] = cfg.independence->s;
    ind["t"] = cfg.independence->t;
    ind["rank"] = tagged(static_cast<double>(ir.rank), "analytic");
    ind["dim"] = tagged(static_cast<double>(ir.dim), "analytic");
    ind["cutoff"] = tagged(ir.cutoff, "analytic");
    ind["isIndependent"] = ir.isIndependent;
    ind["biorthogonalityDeviation"] = tagged(deviation, "oracle");
    ind["isBiorthogonal"] = deviation <= cfg.tolBiorthogonality;
    rep["independence"] = std::move(ind);
  }

  if (cfg.oracle) {
    Grid grid(cfg.oracle->lo, cfg.oracle->hi, cfg.oracle->n);
    DiscretizedBounds db =
        discretizedFrameBounds(fam, grid, cfg.oracle->s, cfg.oracle->t);
    ordered ob;
    ordered gridMeta;
    gridMeta["lo"] = cfg.oracle->lo;
    gridMeta["hi"] = cfg.oracle->hi;
    gridMeta["n"] = cfg.oracle->n;
    ob["grid"] = std::move(gridMeta);
    ob["s"] = cfg.oracle->s;
    ob["t"] = cfg.oracle->t;
    ob["minEig"] = tagged(db.minEig, "oracle");
    ob["maxEig"] = tagged(db.maxEig, "oracle");
    ob["note"] = db.note;
    if (analyticBounds) {
      double tol = cfg.tolOracleAgreement;
      bool ok = std::abs(db.minEig - analyticBounds->alpha) <=
                    tol * std::abs(analyticBounds->alpha) &&
                std::abs(db.maxEig - analyticBounds->beta) <=
                    tol * std::abs(analyticBounds->beta);
      ob["agreesWithAnalytic"] = ok;
    }
    rep["oracle"] = std::move(ob);
  }

  rep["discrepancyNotes"] = notes;
  rep["warnings"] = warnings;
  return run;
}

nlohmann::ordered_json withTiming(nlohmann::ordered_json report,
                                  double seconds) {
  ordered timing;
  timing["seconds"] = seconds;
  report["timing"] = std::move(timing);
  return report;
}

std::string renderJson(const nlohmann::ordered_json& doc) {
  return doc.dump(2) + "\n";
}

bool validateReport(const nlohmann::json& report, std::string* why) {
  if (!report.is_object()) return fail(why, "report must be an object");
  if (!report.contains("schemaVersion") ||
      report.at("schemaVersion") != kReportSchemaVersion) {
    return fail(why, "schemaVersion must be " +
                         std::to_string(kReportSchemaVersion));
  }
  if (!report.contains("system") || !report.at("system").is_object() ||
      !report.at("system").contains("kind") ||
      !report.at("system").at("kind").is_string()) {
    return fail(why, "system.kind must be a string");
  }
  const std::string kind = report.at("system").at("kind");
  if (kind != "translate-family" && kind != "weyl-heisenberg" &&
      kind != "extended-affine") {
    return fail(why, "unknown system.kind " + kind);
  }
  const bool hasDensity = report.contains("density");
  const bool hasWavelet = report.contains("wavelet");
  if (hasDensity == hasWavelet) {
    return fail(why, "exactly one of density or wavelet must be present");
  }
  if (hasDensity &&
      !checkTagged(report.at("density"), "density",
                   {"period", "essInf", "essSup", "zeroGapMeasure"}, why)) {
    return false;
  }
  if (hasWavelet &&
      !checkTagged(report.at("wavelet"), "wavelet",
                   {"inf", "sup", "zeroSetMeasure"}, why)) {
    return false;
  }
  for (const char* blockName : {"bounds", "reciprocal"}) {
    if (!report.contains(blockName)) continue;
    const auto& block = report.at(blockName);
    if (!checkTagged(block, blockName, {"alpha", "beta"}, why)) return false;
    if (!block.contains("isTight") || !block.at("isTight").is_boolean() ||
        !block.contains("isParseval") ||
        !block.at("isParseval").is_boolean()) {
      return fail(why, std::string(blockName) +
                           " needs boolean isTight and isParseval");
    }
  }
  if (report.contains("dual")) {
    const auto& d = report.at("dual");
    if (!d.is_object() || !d.contains("bounds") ||
        !checkTagged(d.at("bounds"), "dual.bounds", {"alpha", "beta"}, why)) {
      return why && !why->empty()
                 ? false
                 : fail(why, "dual.bounds must carry tagged alpha and beta");
    }
    if (!checkTagged(d, "dual", {"dualOfDualMaxDeviation"}, why)) return false;
  }
  if (report.contains("finiteSection")) {
    const auto& fs = report.at("finiteSection");
    if (!fs.is_object() || !fs.contains("rows") ||
        !fs.at("rows").is_array()) {
      return fail(why, "finiteSection.rows must be an array");
    }
    for (const auto& row : fs.at("rows")) {
      if (!row.is_object() || !row.contains("s") || !row.contains("t") ||
          !row.contains("j") || !row.contains("normInv") ||
          !isTagged(row.at("normInv")) || !row.contains("cond") ||
          !isTagged(row.at("cond")) || !row.contains("maxCoeffErr")) {
        return fail(why, "finiteSection rows need s, t, j, tagged normInv "
                         "and cond, and maxCoeffErr (tagged or null)");
      }
      if (!row.at("maxCoeffErr").is_null() &&
          !isTagged(row.at("maxCoeffErr"))) {
        return fail(why, "maxCoeffErr must be tagged or null");
      }
    }
    if (!checkTagged(fs, "finiteSection", {"observedSup"}, why)) return false;
    if (!fs.contains("bounded") || !fs.at("bounded").is_boolean()) {
      return fail(why, "finiteSection.bounded must be boolean");
    }
  }
  if (report.contains("independence")) {
    const auto& ind = report.at("independence");
    if (!checkTagged(ind, "independence",
                     {"rank", "dim", "cutoff", "biorthogonalityDeviation"},
                     why)) {
      return false;
    }
    if (!ind.contains("isIndependent") ||
        !ind.at("isIndependent").is_boolean() ||
        !ind.contains("isBiorthogonal") ||
        !ind.at("isBiorthogonal").is_boolean()) {
      return fail(why, "independence needs boolean flags");
    }
  }
  if (report.contains("oracle")) {
    const auto& ob = report.at("oracle");
    if (!ob.is_object() || !ob.contains("grid") ||
        !ob.at("grid").is_object() ||
        !checkTagged(ob, "oracle", {"minEig", "maxEig"}, why)) {
      return why && !why->empty()
                 ? false
                 : fail(why, "oracle needs grid metadata and tagged bounds");
    }
    if (!ob.contains("note") || !ob.at("note").is_string()) {
      return fail(why, "oracle.note must be a string");
    }
  }
  for (const char* listName : {"discrepancyNotes", "warnings"}) {
    if (!report.contains(listName) || !report.at(listName).is_array()) {
      return fail(why, std::string(listName) + " must be an array");
    }
    for (const auto& e : report.at(listName)) {
      if (!e.is_string()) {
        return fail(why, std::string(listName) + " entries must be strings");
      }
    }
  }
  return true;
}

std::string densityCsv(const GeneratorFamily& fam, double lo, double hi,
                       long samples) {
  SpectralDensity d = spectralDensity(fam, lo, hi);
  Grid grid(lo, hi, samples);
  std::string out = "gamma,G\n";
  for (long i = 0; i < grid.N; ++i) {
    double g = grid.midpoint(i);
    out += fmtNum(g);
    out += ',';
    out += fmtNum(d.values.eval(g));
    out += '\n';
  }
  return out;
}

std::string waveletCsv(const WaveletDiagnostics& diag, double lo, double hi,
                       long samples) {
  Grid grid(lo, hi, samples);
  std::string out = "gamma,W\n";
  for (long i = 0; i < grid.N; ++i) {
    double g = grid.midpoint(i);
    out += fmtNum(g);
    out += ',';
    out += fmtNum(diag.values.eval(g));
    out += '\n';
  }
  return out;
}

std::string sweepCsv(const SweepReport& sweep) {
  std::string out = "s,t,j,normInv,maxCoeffErr,cond\n";
  for (const auto& row : sweep.rows) {
    out += std::to_string(row.s);
    out += ',';
    out += std::to_string(row.t);
    out += ',';
    out += std::to_string(row.j);
    out += ',';
    out += fmtNum(row.normInv);
    out += ',';
    if (!std::isnan(row.maxCoeffErr)) out += fmtNum(row.maxCoeffErr);
    out += ',';
    out += fmtNum(row.cond);
    out += '\n';
  }
  return out;
}

}  // namespace framelet
