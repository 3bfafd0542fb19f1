// Python bindings for the analysis entry points: run a config, evaluate a
// spectrum, and read frame bounds without going through the CLI.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "framelet/config.hpp"
#include "framelet/errors.hpp"
#include "framelet/family.hpp"
#include "framelet/report.hpp"
#include "framelet/spectrum.hpp"
#include "framelet/systems.hpp"

namespace py = pybind11;
using namespace framelet;

namespace {

PiecewiseSpectrum spectrumFromRows(
    const std::vector<std::array<double, 6>>& rows, double timeShift) {
  std::vector<Segment> segs;
  segs.reserve(rows.size());
  for (const auto& r : rows) {
    segs.push_back({r[0], r[1], cplx{r[2], r[3]}, cplx{r[4], r[5]}});
  }
  return PiecewiseSpectrum(std::move(segs), timeShift);
}

std::string runText(const std::string& text) {
  return renderJson(runAnalysis(parseConfigText(text)).report);
}

std::string runFile(const std::string& path) {
  return renderJson(runAnalysis(parseConfigFile(path)).report);
}

py::dict boundsFromText(const std::string& text) {
  AnalysisConfig cfg = parseConfigText(text);
  GeneratorFamily fam = familyFor(cfg);
  FrameBounds fb = cfg.kind == SystemKind::WeylHeisenberg
                       ? gaborFrameBounds(*cfg.gabor)
                       : translateFrameBounds(fam);
  py::dict out;
  out["alpha"] = fb.alpha;
  out["beta"] = fb.beta;
  out["is_tight"] = fb.isTight;
  out["is_parseval"] = fb.isParseval;
  return out;
}

}  // namespace

PYBIND11_MODULE(_framelet, m) {
  m.doc() = "frame analysis for families of translates";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      std::string msg = std::string(e.codeName()) + ": " + e.what();
      PyErr_SetString(PyExc_ValueError, msg.c_str());
    }
  });

  m.def("run_config_text", &runText, py::arg("text"),
        "Run the analyses requested by a JSON config string; returns the "
        "report as deterministic JSON text.");
  m.def("run_config_file", &runFile, py::arg("path"),
        "Run the analyses requested by a JSON config file; returns the "
        "report as deterministic JSON text.");
  m.def("bounds_from_config_text", &boundsFromText, py::arg("text"),
        "Frame bounds of the configured system as a dict with keys alpha, "
        "beta, is_tight, is_parseval.");
  m.def(
      "norm_squared",
      [](const std::vector<std::array<double, 6>>& rows, double timeShift) {
        return spectrumFromRows(rows, timeShift).normSquared();
      },
      py::arg("segments"), py::arg("time_shift") = 0.0,
      "L2 norm squared of a piecewise-linear spectrum given as rows "
      "(lo, hi, a0_re, a0_im, a1_re, a1_im).");
  m.def(
      "eval_spectrum",
      [](const std::vector<std::array<double, 6>>& rows, double timeShift,
         double g) { return spectrumFromRows(rows, timeShift).eval(g); },
      py::arg("segments"), py::arg("time_shift"), py::arg("g"),
      "Evaluate a piecewise-linear spectrum (with its time-shift phase) at "
      "one frequency.");

  m.attr("__version__") = "0.1.0";
}
