#pragma once

// Shared test fixtures: small closed-form families whose densities, bounds,
// Gram matrices, and duals are known exactly.

#include <cmath>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "framelet/errors.hpp"
#include "framelet/family.hpp"
#include "framelet/systems.hpp"

namespace framelet::fix {

inline PiecewiseSpectrum box(double lo, double hi, double amp = 1.0) {
  return PiecewiseSpectrum({{lo, hi, cplx{amp, 0.0}, cplx{0.0, 0.0}}});
}

// Width-1/2 tiles of amplitude amp replicated on period 1/2; lambda = 1/2,
// so the translation step is 2. Density is identically 2*amp^2, bounds
// (amp^2, amp^2): a tight frame, Parseval exactly when amp = sqrt(2).
inline GeneratorFamily halfTiles(double amp = 2.0) {
  return GeneratorFamily::periodicTiling({box(0.0, 0.5, amp)}, 0.5, 0.5);
}

// Unit tiles of amplitude 1 on period 1: a Parseval frame (in fact an
// orthonormal Riesz family; the Gram of any section is the identity).
inline GeneratorFamily unitTiles() {
  return GeneratorFamily::periodicTiling({box(0.0, 1.0)}, 1.0, 1.0);
}

// Width-2 tiles on period 2 with lambda = 2: density 1, bounds (2, 2); the
// reciprocal-step identity is outside its safe range here (lambda > 1).
inline GeneratorFamily wideTiles() {
  return GeneratorFamily::periodicTiling({box(0.0, 2.0)}, 2.0, 2.0);
}

// The two half-unit tiles covering (0, 1], declared explicitly, plus a third
// generator duplicating the first: dependent, not biorthogonal.
inline GeneratorFamily duplicatedTiles() {
  PiecewiseSpectrum first = box(0.0, 0.5, 2.0);
  PiecewiseSpectrum second = box(0.5, 1.0, 2.0);
  return GeneratorFamily::explicitFamily(
      {{0, first}, {1, second}, {2, first}}, 0.5);
}

// The two explicit half-unit tiles without the duplicate: a Riesz basis of
// its span with Gram 2*I on every section.
inline GeneratorFamily explicitTiles() {
  return GeneratorFamily::explicitFamily(
      {{0, box(0.0, 0.5, 2.0)}, {1, box(0.5, 1.0, 2.0)}}, 0.5);
}

// Two ramp windows on the dense lattice p0 = 1, q0 = 1/2 (so lambda = 2 and
// p0*q0 = 1/2 < 1). The modulated density is (13/4)*(1 + frac(g))^2 with
// period 1; bounds (13/2, 26).
inline WeylHeisenbergParams rampPair() {
  PiecewiseSpectrum w1({{0.0, 1.0, cplx{1.0, 0.0}, cplx{1.0, 0.0}},
                        {1.0, 2.0, cplx{0.0, 0.0}, cplx{1.0, 0.0}}});
  PiecewiseSpectrum w2({{0.0, 1.0, cplx{1.0, 0.0}, cplx{1.0, 0.0}},
                        {1.0, 2.0, cplx{0.0, 0.0}, cplx{0.5, 0.0}}});
  WeylHeisenbergParams p;
  p.windows = {{1.0, 0.5, w1}, {1.0, 0.5, w2}};
  return p;
}

// A unit box window on the half-integer modulation lattice (p0 = 1/2,
// q0 = 1): every frequency is covered by exactly two modulates, so the
// system is tight with bound 2.
inline WeylHeisenbergParams boxLattice() {
  WeylHeisenbergParams p;
  p.windows = {{0.5, 1.0, box(0.0, 1.0)}};
  return p;
}

// A unit band window on the dilation lattice with rate q0 = 1: the
// diagnostic density is 1 on (1, 2], vanishes on (2, e], and repeats
// self-similarly from there.
inline ExtendedAffineParams unitBand() {
  ExtendedAffineParams p;
  p.windows = {{1.0, box(1.0, 2.0)}};
  return p;
}

// Deterministic band-limited test function: `pieces` random complex-linear
// segments partitioning (lo, hi].
inline PiecewiseSpectrum randomSpectrum(std::mt19937_64& rng, double lo,
                                        double hi, int pieces) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<Segment> segs;
  double width = (hi - lo) / pieces;
  for (int i = 0; i < pieces; ++i) {
    Segment s;
    s.lo = lo + i * width;
    s.hi = lo + (i + 1) * width;
    s.a0 = cplx{coeff(rng), coeff(rng)};
    s.a1 = cplx{coeff(rng), coeff(rng)};
    segs.push_back(s);
  }
  return PiecewiseSpectrum(std::move(segs));
}

// Runs fn, returning the library error code it raised (nullopt when none).
template <class Fn>
std::optional<ErrorCode> errorOf(Fn&& fn) {
  try {
    std::forward<Fn>(fn)();
    return std::nullopt;
  } catch (const Error& e) {
    return e.code();
  }
}

}  // namespace framelet::fix
