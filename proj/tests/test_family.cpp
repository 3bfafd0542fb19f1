#include <cmath>

#include <doctest.h>

#include "fixtures.hpp"
#include "framelet/family.hpp"
#include "framelet/systems.hpp"

using namespace framelet;

TEST_SUITE("family") {

TEST_CASE("periodic tiling materializes the branches meeting a window") {
  GeneratorFamily fam = fix::halfTiles();
  auto branches = fam.materialize(0.0, 1.0);
  REQUIRE(branches.size() == 2);
  CHECK(branches[0].shiftIndex == 0);
  CHECK(branches[1].shiftIndex == 1);
  CHECK(branches[0].spec.supportLo() == doctest::Approx(0.0));
  CHECK(branches[1].spec.supportLo() == doctest::Approx(0.5));
  CHECK(branches[0].step == doctest::Approx(2.0));

  CHECK(fam.materialize(10.0, 11.0).size() == 2);
  CHECK(fix::errorOf([&] { fam.materialize(10.0, 10.0); }) ==
        ErrorCode::InvalidParams);

  double step = 0.0;
  CHECK(fam.uniformStep(&step));
  CHECK(step == doctest::Approx(2.0));
}

TEST_CASE("modulated rule enumerates window translates") {
  GeneratorFamily fam = buildGaborFamily(fix::rampPair());
  auto branches = fam.materialize(0.0, 2.0);
  // supports (l, l+2] meet (0, 2] for l = -1, 0, 1; two bases each
  REQUIRE(branches.size() == 6);
  CHECK(branches.front().shiftIndex == -1);
  CHECK(branches.back().shiftIndex == 1);
  CHECK(branches[0].baseIndex == 0);
  CHECK(branches[1].baseIndex == 1);
  CHECK(branches[2].spec.supportLo() == doctest::Approx(0.0));
}

TEST_CASE("density of the half-unit tiles is constant") {
  SpectralDensity d = spectralDensity(fix::halfTiles(), 0.0, 1.0);
  CHECK(d.period == doctest::Approx(0.5));
  // values are window-restricted; the period is reported separately
  for (double g : {0.1, 0.3, 0.62, 0.97}) {
    CHECK(d.values.eval(g) == doctest::Approx(4.0));
  }
  auto [mn, mx] = essRange(d);
  CHECK(mn == doctest::Approx(4.0));
  CHECK(mx == doctest::Approx(4.0));
  CHECK(d.zeroGapMeasure == doctest::Approx(0.0));
}

TEST_CASE("density of the modulated ramp family") {
  GeneratorFamily fam = buildGaborFamily(fix::rampPair());
  CHECK(rulePeriodHint(fam) == doctest::Approx(1.0));
  SpectralDensity d = spectralDensity(fam, 0.0, 2.0);
  CHECK(d.period == doctest::Approx(1.0));
  // G(g) = (13/4) * (1 + frac(g))^2 with the left-continuous fractional part
  for (double g : {0.25, 0.5, 0.75, 1.25, 1.6}) {
    double frac = g - std::floor(g);
    if (frac == 0.0) frac = 1.0;
    CHECK(d.values.eval(g) ==
          doctest::Approx(13.0 / 4.0 * (1.0 + frac) * (1.0 + frac)));
  }
  auto [mn, mx] = essRange(d);
  CHECK(mn == doctest::Approx(13.0 / 4.0));
  CHECK(mx == doctest::Approx(13.0));
}

TEST_CASE("frame bounds of tight tilings") {
  FrameBounds halfTiles = translateFrameBounds(fix::halfTiles());
  CHECK(halfTiles.alpha == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(halfTiles.beta == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(halfTiles.isTight);
  CHECK_FALSE(halfTiles.isParseval);

  FrameBounds scaled = translateFrameBounds(fix::halfTiles(std::sqrt(2.0)));
  CHECK(std::abs(scaled.alpha - 1.0) < 1e-12);
  CHECK(std::abs(scaled.beta - 1.0) < 1e-12);
  CHECK(scaled.isParseval);

  FrameBounds shannon = translateFrameBounds(fix::unitTiles());
  CHECK(shannon.isParseval);

  FrameBounds ramps = translateFrameBounds(buildGaborFamily(fix::rampPair()));
  CHECK(std::abs(ramps.alpha - 6.5) < 1e-9);
  CHECK(std::abs(ramps.beta - 26.0) < 1e-9);
  CHECK_FALSE(ramps.isTight);
}

TEST_CASE("explicit compactly supported families are never frames for the line") {
  CHECK(fix::errorOf([] { translateFrameBounds(fix::explicitTiles()); }) ==
        ErrorCode::NotAFrame);
}

TEST_CASE("hypothesis violations are reported with their code") {
  // a step override breaking q = 1/lambda
  GeneratorFamily bad = GeneratorFamily::explicitFamily(
      {{0, fix::box(0.0, 0.5, 2.0)}, {1, fix::box(0.5, 1.0, 2.0)}}, 0.5,
      {{1, 3.0}});
  CHECK(fix::errorOf([&] { translateFrameBounds(bad); }) ==
        ErrorCode::HypothesisViolation);

  // a generator wider than the declared length lambda
  GeneratorFamily wide = GeneratorFamily::explicitFamily(
      {{0, fix::box(0.0, 2.0)}}, 0.5);
  CHECK(fix::errorOf([&] { translateFrameBounds(wide); }) ==
        ErrorCode::HypothesisViolation);
}

TEST_CASE("frame-for-span bounds ignore gaps outside the support") {
  FrameBounds fb = frameSequenceBounds(fix::explicitTiles(), 0.0, 1.0);
  CHECK(fb.alpha == doctest::Approx(2.0));
  CHECK(fb.beta == doctest::Approx(2.0));

  CHECK(fix::errorOf([] {
          frameSequenceBounds(fix::explicitTiles(), 5.0, 6.0);
        }) == ErrorCode::NotAFrame);
}

TEST_CASE("rule period hints") {
  CHECK(rulePeriodHint(fix::halfTiles()) == doctest::Approx(0.5));
  CHECK(rulePeriodHint(fix::unitTiles()) == doctest::Approx(1.0));
  CHECK(rulePeriodHint(fix::explicitTiles()) == 0.0);
  CHECK(rulePeriodHint(buildGaborFamily(fix::rampPair())) ==
        doctest::Approx(1.0));
}

TEST_CASE("section enumeration by index") {
  GeneratorFamily fam = buildGaborFamily(fix::rampPair());
  auto branches = fam.sectionBranches(2);
  CHECK(branches.size() == 10);  // l = -2..2, two bases each

  auto dup = fix::duplicatedTiles().sectionBranches(1);
  CHECK(dup.size() == 2);  // declared indices 0 and 1 lie within |l| <= 1
  auto dupAll = fix::duplicatedTiles().sectionBranches(2);
  CHECK(dupAll.size() == 3);
}

}  // TEST_SUITE
