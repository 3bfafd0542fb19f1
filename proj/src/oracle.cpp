#include "framelet/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "framelet/errors.hpp"

namespace framelet {

namespace {

// Gauss-Kronrod 15|7 nodes and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715526, 0.169004726639268, 0.190350578064785,
    0.204432940075299, 0.209482141084728};
constexpr std::array<double, 4> kWg = {0.129484966168870, 0.279705391489277,
                                       0.381830050505119, 0.417959183673469};

struct PanelResult {
  cplx kronrod{0.0, 0.0};
  double error = 0.0;
};

PanelResult gaussKronrod(const std::function<cplx(double)>& h, double a,
                         double b) {
  double c = 0.5 * (a + b), half = 0.5 * (b - a);
  cplx resK{0.0, 0.0}, resG{0.0, 0.0};
  for (size_t i = 0; i < kXgk.size(); ++i) {
    cplx v;
    if (kXgk[i] == 0.0) {
      v = h(c);
      resK += kWgk[i] * v;
      resG += kWg[3] * v;
    } else {
      cplx vlo = h(c - half * kXgk[i]);
      cplx vhi = h(c + half * kXgk[i]);
      resK += kWgk[i] * (vlo + vhi);
      if (i % 2 == 1) resG += kWg[i / 2] * (vlo + vhi);
    }
  }
  PanelResult out;
  out.kronrod = resK * half;
  out.error = std::abs(resK - resG) * half;
  return out;
}

constexpr double kQuadTol = 1e-10;

cplx adaptiveIntegral(const std::function<cplx(double)>& h,
                      const std::vector<double>& panelEdges) {
  struct Item {
    double a, b;
    int depth;
  };
  std::vector<Item> stack;
  for (size_t i = 0; i + 1 < panelEdges.size(); ++i) {
    if (panelEdges[i + 1] > panelEdges[i]) {
      stack.push_back({panelEdges[i], panelEdges[i + 1], 0});
    }
  }
  if (stack.empty()) return {0.0, 0.0};
  double total = panelEdges.back() - panelEdges.front();

  cplx result{0.0, 0.0};
  long evaluations = 0;
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    PanelResult pr = gaussKronrod(h, it.a, it.b);
    evaluations += 15;
    double budget = kQuadTol * std::max((it.b - it.a) / total, 1e-3);
    if (pr.error <= budget) {
      result += pr.kronrod;
      continue;
    }
    if (it.depth >= 48) {
      raise(ErrorCode::QuadratureFailure,
            "panel refinement exhausted without reaching tolerance");
    }
    if (evaluations > 4'000'000) {
      raise(ErrorCode::QuadratureFailure,
            "evaluation budget exhausted without reaching tolerance");
    }
    double mid = 0.5 * (it.a + it.b);
    stack.push_back({it.a, mid, it.depth + 1});
    stack.push_back({mid, it.b, it.depth + 1});
  }
  return result;
}

}  // namespace

EvaluableSpectrum asEvaluable(const PiecewiseSpectrum& spec) {
  EvaluableSpectrum out;
  out.breakpoints = spec.breakpoints();
  out.fn = [spec](double g) { return spec.eval(g); };
  return out;
}

Grid::Grid(double lo_, double hi_, long N_) : lo(lo_), hi(hi_), N(N_) {
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    raise(ErrorCode::InvalidParams, "grid needs finite hi > lo");
  }
  if (N < 2) raise(ErrorCode::InvalidParams, "grid needs N >= 2");
}

std::vector<cplx> sampleSpectrum(const EvaluableSpectrum& spec,
                                 const Grid& grid) {
  std::vector<cplx> out(static_cast<size_t>(grid.N));
  for (long i = 0; i < grid.N; ++i) {
    out[static_cast<size_t>(i)] = spec.eval(grid.midpoint(i));
  }
  return out;
}

std::vector<cplx> sampleSpectrum(const PiecewiseSpectrum& spec,
                                 const Grid& grid) {
  std::vector<cplx> out(static_cast<size_t>(grid.N));
  for (long i = 0; i < grid.N; ++i) {
    out[static_cast<size_t>(i)] = spec.eval(grid.midpoint(i));
  }
  return out;
}

DiscretizedBounds discretizedFrameBounds(const GeneratorFamily& fam,
                                         const Grid& grid, long s, long t) {
  if (s < 0 || t < 0) raise(ErrorCode::InvalidParams, "section must be >= 0");
  SpectralDensity density = spectralDensity(fam, grid.lo, grid.hi);
  if (density.period > 0.0) {
    if (grid.hi - grid.lo < density.period - 1e-12) {
      std::ostringstream msg;
      msg << "grid window (" << grid.lo << ", " << grid.hi
          << "] covers less than one density period " << density.period;
      raise(ErrorCode::Coverage, msg.str());
    }
  } else if (!density.values.isZero()) {
    double supLo = density.values.supportLo();
    double supHi = density.values.supportHi();
    // Aperiodic: the grid must see the whole support, else the extreme
    // eigenvalue estimates miss part of the band.
    SpectralDensity full = spectralDensity(fam, supLo - 1.0, supHi + 1.0);
    if (full.values.supportLo() < grid.lo - 1e-12 ||
        full.values.supportHi() > grid.hi + 1e-12) {
      std::ostringstream msg;
      msg << "grid window misses the family support ("
          << full.values.supportLo() << ", " << full.values.supportHi()
          << "]";
      raise(ErrorCode::Coverage, msg.str());
    }
  }

  auto branches = fam.materialize(grid.lo, grid.hi);
  PiecewiseQuad truncated;
  for (const auto& br : branches) {
    if (std::labs(br.shiftIndex) <= t) {
      truncated = truncated.plus(modSquared(br.spec));
      continue;
    }
    PiecewiseQuad tail = modSquared(br.spec).restrictedTo(grid.lo, grid.hi);
    double peak = 0.0;
    for (const auto& seg : tail.segments()) {
      auto value = [&](double g) { return seg.b0 + g * (seg.b1 + g * seg.b2); };
      peak = std::max({peak, value(seg.lo), value(seg.hi)});
      if (seg.b2 != 0.0) {
        double vertex = -seg.b1 / (2.0 * seg.b2);
        if (seg.lo < vertex && vertex < seg.hi) {
          peak = std::max(peak, value(vertex));
        }
      }
    }
    if (peak > 1e-6) {
      std::ostringstream msg;
      msg << "branch l=" << br.shiftIndex << " outside the section |l| <= "
          << t << " still contributes up to " << peak << " on ("
          << tail.supportLo() << ", " << tail.supportHi() << "]";
      raise(ErrorCode::Coverage, msg.str());
    }
  }
  PiecewiseQuad band = truncated.restrictedTo(grid.lo, grid.hi);

  double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
  for (long i = 0; i < grid.N; ++i) {
    double v = fam.lambda() * band.eval(grid.midpoint(i));
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  DiscretizedBounds out;
  out.minEig = mn;
  out.maxEig = mx;
  std::ostringstream note;
  note << "translation direction summed in closed form (complete-n limit); "
          "requested s="
       << s << " retained for the record, branch truncation |l| <= " << t;
  out.note = note.str();
  return out;
}

cplx quadratureInnerProduct(const EvaluableSpectrum& f,
                            const EvaluableSpectrum& g, double delta) {
  if (f.breakpoints.empty() || g.breakpoints.empty()) return {0.0, 0.0};
  double lo = std::max(f.supportLo(), g.supportLo());
  double hi = std::min(f.supportHi(), g.supportHi());
  if (!(lo < hi)) return {0.0, 0.0};

  std::set<double> edges{lo, hi};
  for (double b : f.breakpoints) {
    if (b > lo && b < hi) edges.insert(b);
  }
  for (double b : g.breakpoints) {
    if (b > lo && b < hi) edges.insert(b);
  }
  std::vector<double> panelEdges(edges.begin(), edges.end());

  double twoPiDelta = 2.0 * std::numbers::pi * delta;
  auto integrand = [&](double x) {
    return f.eval(x) * std::conj(g.eval(x)) * std::polar(1.0, twoPiDelta * x);
  };
  return adaptiveIntegral(integrand, panelEdges);
}

double quadratureNormSquared(const EvaluableSpectrum& f) {
  return quadratureInnerProduct(f, f, 0.0).real();
}

std::pair<double, double> sampledRange(
    const std::function<double(double)>& fn, double lo, double hi,
    const std::vector<double>& breakpoints, long nSamples) {
  if (!(hi > lo) || nSamples < 1) {
    raise(ErrorCode::InvalidParams, "sampledRange needs hi > lo, nSamples >= 1");
  }
  double mn = std::numeric_limits<double>::infinity();
  double mx = -std::numeric_limits<double>::infinity();
  auto consider = [&](double g) {
    double v = fn(g);
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  };
  double h = (hi - lo) / static_cast<double>(nSamples);
  for (long i = 0; i < nSamples; ++i) {
    consider(lo + (static_cast<double>(i) + 0.5) * h);
  }
  constexpr double kEps = 1e-9;
  for (double b : breakpoints) {
    if (b - kEps >= lo && b - kEps <= hi) consider(b - kEps);
    if (b + kEps >= lo && b + kEps <= hi) consider(b + kEps);
  }
  return {mn, mx};
}

}  // namespace framelet
