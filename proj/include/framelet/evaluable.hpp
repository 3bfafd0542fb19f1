#pragma once

#include <functional>
#include <vector>

#include "framelet/spectrum.hpp"

namespace framelet {

// Pointwise evaluator in closed form (compositions like phi/(lambda*G) that
// are no longer piecewise-linear), with its breakpoints listed so quadrature
// can split panels there. The first and last breakpoints bound the support.
struct EvaluableSpectrum {
  std::function<cplx(double)> fn;
  std::vector<double> breakpoints;  // sorted ascending

  cplx eval(double g) const { return fn(g); }
  double supportLo() const {
    return breakpoints.empty() ? 0.0 : breakpoints.front();
  }
  double supportHi() const {
    return breakpoints.empty() ? 0.0 : breakpoints.back();
  }
};

EvaluableSpectrum asEvaluable(const PiecewiseSpectrum& spec);

}  // namespace framelet
