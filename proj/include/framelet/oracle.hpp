#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "framelet/evaluable.hpp"
#include "framelet/family.hpp"

namespace framelet {

// Uniform sampling grid over (lo, hi); samples live at cell midpoints so
// half-open breakpoint conventions never matter.
struct Grid {
  double lo = 0.0;
  double hi = 1.0;
  long N = 2;

  Grid(double lo, double hi, long N);

  double spacing() const { return (hi - lo) / static_cast<double>(N); }
  double midpoint(long i) const {
    return lo + (static_cast<double>(i) + 0.5) * spacing();
  }
};

std::vector<cplx> sampleSpectrum(const EvaluableSpectrum& spec,
                                 const Grid& grid);
std::vector<cplx> sampleSpectrum(const PiecewiseSpectrum& spec,
                                 const Grid& grid);

struct DiscretizedBounds {
  double minEig = 0.0;
  double maxEig = 0.0;
  std::string note;  // records that the translation sum is completed exactly
};

// Extreme eigenvalues of the discretized frame operator on the grid band.
// The operator is diagonal in the band samples: the translation direction is
// summed in closed form (leaving lambda * G restricted to branches |l| <= t),
// so only the branch truncation and the midpoint sampling are approximate.
// Raises a coverage error when the grid misses part of an aperiodic family's
// support, covers less than one period of a periodic one, or when branches
// beyond |l| <= t still contribute more than 1e-6 on the band.
DiscretizedBounds discretizedFrameBounds(const GeneratorFamily& fam,
                                         const Grid& grid, long s, long t);

// Adaptive Gauss-Kronrod integral of f * conj(g) * exp(2*pi*i*delta*g) over
// the overlap of supports, split at both argument's breakpoints; absolute
// tolerance 1e-10, quadrature-failure if refinement cannot reach it.
cplx quadratureInnerProduct(const EvaluableSpectrum& f,
                            const EvaluableSpectrum& g, double delta);

double quadratureNormSquared(const EvaluableSpectrum& f);

// Min/max of fn over midpoint samples plus one-sided probes next to every
// breakpoint (b +- 1e-9), catching extrema attained at interval endpoints.
std::pair<double, double> sampledRange(const std::function<double(double)>& fn,
                                       double lo, double hi,
                                       const std::vector<double>& breakpoints,
                                       long nSamples);

}  // namespace framelet
