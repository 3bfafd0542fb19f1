#include <cmath>
#include <complex>
#include <random>

#include <doctest.h>

#include "fixtures.hpp"
#include "framelet/systems.hpp"

using namespace framelet;

TEST_SUITE("systems") {

TEST_CASE("frame bounds of the ramp pair lattice") {
  FrameBounds fb = gaborFrameBounds(fix::rampPair());
  CHECK(std::abs(fb.alpha - 6.5) < 1e-9);
  CHECK(std::abs(fb.beta - 26.0) < 1e-9);
  CHECK_FALSE(fb.isTight);
}

TEST_CASE("box window on the half-integer lattice is tight with bound 2") {
  FrameBounds fb = gaborFrameBounds(fix::boxLattice());
  CHECK(std::abs(fb.alpha - 2.0) < 1e-12);
  CHECK(std::abs(fb.beta - 2.0) < 1e-12);
  CHECK(fb.isTight);
  CHECK_FALSE(fb.isParseval);
}

TEST_CASE("lattice hypothesis violations") {
  WeylHeisenbergParams dense = fix::boxLattice();
  dense.windows[0].p0 = 2.0;  // p0*q0 = 2 breaks the density hypothesis
  CHECK(fix::errorOf([&] { validateWeylHeisenberg(dense); }) ==
        ErrorCode::HypothesisViolation);

  WeylHeisenbergParams negStep = fix::boxLattice();
  negStep.windows[0].q0 = -1.0;  // malformed, not a lattice-density issue
  CHECK(fix::errorOf([&] { validateWeylHeisenberg(negStep); }) ==
        ErrorCode::InvalidParams);

  WeylHeisenbergParams mixedSteps = fix::rampPair();
  mixedSteps.windows[1].q0 = 0.25;
  CHECK(fix::errorOf([&] { validateWeylHeisenberg(mixedSteps); }) ==
        ErrorCode::HypothesisViolation);

  WeylHeisenbergParams wideWindow = fix::boxLattice();
  wideWindow.windows[0].window = fix::box(0.0, 1.5);  // support 1.5 > 1/q0
  CHECK(fix::errorOf([&] { validateWeylHeisenberg(wideWindow); }) ==
        ErrorCode::HypothesisViolation);

  WeylHeisenbergParams zeroA = fix::boxLattice();
  zeroA.A = 0.0;  // malformed, not a lattice-density issue
  CHECK(fix::errorOf([&] { validateWeylHeisenberg(zeroA); }) ==
        ErrorCode::InvalidParams);
}

TEST_CASE("atom reduction to the frequency domain") {
  WeylHeisenbergParams p = fix::rampPair();

  GaborAtom base = gaborAtom(p, 0, 0, 0);
  CHECK(base.spec.timeShift() == doctest::Approx(0.0));
  CHECK(std::abs(base.phase - cplx{1.0, 0.0}) < 1e-15);
  for (double g : {0.3, 0.8, 1.5}) {
    CHECK(std::abs(base.spec.eval(g) - p.windows[0].window.eval(g)) < 1e-14);
  }

  GaborAtom translated = gaborAtom(p, 1, 0, 0);
  CHECK(translated.spec.timeShift() == doctest::Approx(-0.5));
  CHECK(std::abs(translated.phase - cplx{1.0, 0.0}) < 1e-15);

  GaborAtom modulated = gaborAtom(p, 0, 1, 0);
  CHECK(modulated.spec.supportLo() == doctest::Approx(1.0));
  CHECK(modulated.spec.supportHi() == doctest::Approx(3.0));

  // phase exp(2*pi*i*(-1/2)*A*n*l*p0*q0) = exp(-i*pi/2) at n = l = 1
  GaborAtom mixed = gaborAtom(p, 1, 1, 0);
  CHECK(std::abs(mixed.phase - cplx{0.0, -1.0}) < 1e-12);
  CHECK(std::abs(std::abs(mixed.phase) - 1.0) < 1e-15);

  // a nonzero B contributes exp(2*pi*i*B*l*p0)
  WeylHeisenbergParams shifted = fix::rampPair();
  shifted.B = 0.25;
  GaborAtom withB = gaborAtom(shifted, 0, 1, 0);
  CHECK(std::abs(withB.phase - cplx{0.0, 1.0}) < 1e-12);
}

TEST_CASE("modulated family reproduces the lattice density") {
  GeneratorFamily fam = buildGaborFamily(fix::rampPair());
  CHECK(fam.rule() == FamilyRule::Modulated);
  CHECK(fam.lambda() == doctest::Approx(2.0));
  CHECK(fam.modSteps().size() == 2);
  CHECK(fam.modSteps()[0] == doctest::Approx(1.0));
}

TEST_CASE("dilation lattice points") {
  ExtendedAffineParams p = fix::unitBand();
  p.windows[0].q0 = std::log(2.0);
  LatticePoint a1 = latticePoint(p, 0, 1, 0);
  CHECK(a1.alpha == doctest::Approx(0.5));

  ExtendedAffineParams q = fix::unitBand();
  q.d = 2.0;
  q.windows[0].q0 = 0.5;
  CHECK(latticePoint(q, 3, 0, 0).beta == doctest::Approx(0.75));

  // at l = 0 the log ratio degenerates and gamma equals beta exactly
  ExtendedAffineParams r = fix::unitBand();
  LatticePoint onAxis = latticePoint(r, 2, 0, 0);
  CHECK(onAxis.alpha == 1.0);
  CHECK(onAxis.gamma == onAxis.beta);

  // the series branch for tiny rates stays continuous
  ExtendedAffineParams s = fix::unitBand();
  s.windows[0].q0 = 1e-9;
  LatticePoint nearAxis = latticePoint(s, 5, 1, 0);
  CHECK(std::abs(nearAxis.gamma - nearAxis.beta) < 1e-6 * std::abs(nearAxis.beta) + 1e-12);
}

TEST_CASE("wavelet diagnostic density of the unit band") {
  double e = std::exp(1.0);
  WaveletDiagnostics diag = waveletDiagnostics(fix::unitBand(), 1.0, 2.0 * e);
  CHECK(diag.sup == doctest::Approx(1.0));
  CHECK(diag.inf == doctest::Approx(0.0));
  CHECK(std::abs(diag.zeroSetMeasure - (e - 2.0)) < 1e-9);
  CHECK_FALSE(diag.caveat.empty());

  for (double g : {1.2, 1.7, 2.0}) {
    CHECK(diag.values.eval(g) == doctest::Approx(1.0));
  }
  CHECK(diag.values.eval(2.5) == doctest::Approx(0.0));

  // self-similarity W(e*g) = W(g)/e for the unit dilation rate
  for (int i = 0; i < 100; ++i) {
    double g = 1.0 + (i + 0.5) / 100.0;
    CHECK(std::abs(diag.values.eval(e * g) - diag.values.eval(g) / e) <=
          1e-10);
  }
}

TEST_CASE("reciprocal-step bounds") {
  ReciprocalBounds half = reciprocalStepBounds(fix::halfTiles());
  CHECK(std::abs(half.bounds.alpha - 8.0) < 1e-9);
  CHECK(std::abs(half.bounds.beta - 8.0) < 1e-9);
  CHECK_FALSE(half.validityWarning);

  // lambda = 1 is its own reciprocal: the bounds are a fixed point
  ReciprocalBounds unit = reciprocalStepBounds(fix::unitTiles());
  CHECK(unit.bounds.alpha == doctest::Approx(1.0));
  CHECK(unit.bounds.beta == doctest::Approx(1.0));
  CHECK_FALSE(unit.validityWarning);

  ReciprocalBounds wide = reciprocalStepBounds(fix::wideTiles());
  CHECK(wide.bounds.alpha == doctest::Approx(0.5));
  CHECK(wide.bounds.beta == doctest::Approx(0.5));
  CHECK(wide.validityWarning);
  CHECK_FALSE(wide.warningText.empty());
}

TEST_CASE("synthesis from periodic symbols") {
  WeylHeisenbergParams p = fix::boxLattice();

  // the constant symbol 1 attached to (l, j) = (0, 0) reproduces the window
  PeriodicSymbol constant;
  constant.period = 1.0 / p.windows[0].q0;
  constant.coeffs = {{0, cplx{1.0, 0.0}}};
  SynthesizedSpectrum f = synthesizeFromSymbols({constant}, p);
  for (double g : {0.2, 0.5, 0.9}) {
    CHECK(std::abs(f.eval(g) - p.windows[0].window.eval(g)) < 1e-13);
  }

  SynthesizedSpectrum zero = synthesizeFromSymbols({}, p);
  CHECK(std::abs(zero.eval(0.4)) == 0.0);

  // the one-coefficient atom symbol matches the atom evaluated directly
  WeylHeisenbergParams ramps = fix::rampPair();
  for (auto [n, l, j] : {std::tuple<long, long, int>{1, 1, 0},
                         {2, -1, 1},
                         {-1, 0, 1},
                         {0, 2, 0}}) {
    GaborAtom atom = gaborAtom(ramps, n, l, j);
    SynthesizedSpectrum synth =
        synthesizeFromSymbols({atomSymbol(ramps, n, l, j)}, ramps);
    for (int i = 0; i < 100; ++i) {
      double g = -1.0 + 5.0 * (i + 0.5) / 100.0;
      cplx direct = atom.phase * atom.spec.eval(g);
      CHECK(std::abs(synth.eval(g) - direct) < 1e-12);
    }
  }
}

TEST_CASE("atom inner products are dilation invariant") {
  WeylHeisenbergParams p = fix::rampPair();
  for (double a : {0.5, 2.0}) {
    WeylHeisenbergParams scaled = p;
    for (auto& w : scaled.windows) {
      w.window = dilate(w.window, 1.0 / a);
      w.p0 *= a;
      w.q0 /= a;
    }
    validateWeylHeisenberg(scaled);
    for (auto [n1, l1, j1, n2, l2, j2] :
         {std::tuple<long, long, int, long, long, int>{0, 0, 0, 1, 0, 0},
          {1, 1, 0, 0, 0, 1},
          {2, -1, 1, -1, 1, 0}}) {
      GaborAtom f1 = gaborAtom(p, n1, l1, j1);
      GaborAtom f2 = gaborAtom(p, n2, l2, j2);
      GaborAtom g1 = gaborAtom(scaled, n1, l1, j1);
      GaborAtom g2 = gaborAtom(scaled, n2, l2, j2);
      cplx orig =
          f1.phase * std::conj(f2.phase) * innerProduct(f1.spec, f2.spec, 0.0);
      cplx dil =
          g1.phase * std::conj(g2.phase) * innerProduct(g1.spec, g2.spec, 0.0);
      CHECK(std::abs(orig - dil) < 1e-10);
    }
  }
}

}  // TEST_SUITE
