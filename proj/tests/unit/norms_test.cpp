#include <gtest/gtest.h>

#include <cmath>

#include "amalgam/errors.hpp"
#include "amalgam/modulation.hpp"
#include "amalgam/norms.hpp"
#include "amalgam/witness.hpp"
#include "oracles.hpp"

namespace amalgam {
namespace {

using testing::make_rng;
using testing::uniform;

const PiecewiseConstSpectrum kHalfBox({{{0.0, 0.5}, 1.0}});

AmalgamParams P(double p, double q, double s) { return {p, q, s}; }

PiecewiseConstSpectrum random_piecewise(std::mt19937_64& rng) {
  std::vector<Piece> pieces;
  double a = uniform(rng, -6, 0);
  const int count = testing::uniform_int(rng, 1, 5);
  for (int k = 0; k < count; ++k) {
    const double b = a + uniform(rng, 0.05, 2.5);
    pieces.push_back({{a, b}, Complex(uniform(rng, -4, 4), uniform(rng, -4, 4))});
    a = b + (testing::uniform_int(rng, 0, 1) ? 0.0 : uniform(rng, 0, 1.5));
  }
  return PiecewiseConstSpectrum(pieces);
}

TEST(Params, Validation) {
  EXPECT_NO_THROW(P(1, kInfinity, -3).validate());
  EXPECT_THROW(P(0.5, 2, 0).validate(), ConfigError);
  EXPECT_THROW(P(2, std::nan(""), 0).validate(), ConfigError);
  AmalgamParams bad;
  bad.quad_density = 1;
  EXPECT_THROW(bad.validate(), ConfigError);
  EXPECT_THROW(amalgam_norm(kHalfBox, P(2, 0.9, 0)), ConfigError);
}

TEST(Helpers, JapaneseBracketAndLq) {
  EXPECT_DOUBLE_EQ(japanese_bracket(0), 1.0);
  EXPECT_NEAR(japanese_bracket(3), std::sqrt(10.0), 1e-15);
  const std::vector<double> terms{3, 4};
  EXPECT_NEAR(lq_combine(terms, 2), 5.0, 1e-15);
  EXPECT_DOUBLE_EQ(lq_combine(terms, kInfinity), 4.0);
  EXPECT_NEAR(lq_combine(terms, 1), 7.0, 1e-15);
  const std::vector<double> huge{1e300, 1e300};
  EXPECT_NEAR(lq_combine(huge, 4) / 1e300, std::pow(2.0, 0.25), 1e-14);
}

TEST(Helpers, BoxesMeetingMatchesScan) {
  auto rng = make_rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    double a = uniform(rng, -20, 20);
    double b = a + uniform(rng, 0, 5);
    if (trial % 7 == 0) a = std::round(a) + 0.5;  // land on a box edge
    if (trial % 11 == 0) b = std::round(b) - 0.5;
    if (b < a) b = a;
    const auto got = boxes_meeting(IntervalSet(a, b));
    EXPECT_EQ(got, testing::brute_boxes(a, b)) << a << " " << b;
  }
}

TEST(BoxNorm, SingleBoxIndicator) {
  EXPECT_NEAR(box_lp_norm(kHalfBox, 0, 2), std::sqrt(0.5), 1e-15);
  EXPECT_DOUBLE_EQ(box_lp_norm(kHalfBox, 1, 2), 0.0);
  EXPECT_DOUBLE_EQ(box_lp_norm(kHalfBox, 0, kInfinity), 1.0);
}

TEST(BoxNorm, FullBoxInsidePhi4) {
  const auto phi = make_phi_N(4);
  for (double p : {1.0, 2.0, 3.5, kInfinity}) EXPECT_NEAR(box_lp_norm(phi, 5, p), 4.0, 1e-14) << p;
}

TEST(BoxNorm, ZeroSpectrum) {
  for (double p : {1.0, 2.0, kInfinity}) EXPECT_EQ(box_lp_norm(PiecewiseConstSpectrum(), 3, p), 0.0);
}

TEST(BoxNorm, SampledBoxMustBeInsideGrid) {
  FrequencyGrid g(-2, 2, 401);
  auto f = sample(PiecewiseConstSpectrum({{{-1, 1}, 1.0}}), g);
  EXPECT_NO_THROW(box_lp_norm(f, 1, 2.0));
  EXPECT_THROW(box_lp_norm(f, 2, 2.0), DomainError);
}

TEST(AmalgamNorm, OneBoxSpectrumIgnoresQAndS) {
  for (double p : {1.0, 2.0, 4.0, kInfinity})
    for (double q : {1.0, 2.0, kInfinity})
      for (double s : {-2.0, 0.0, 1.3}) EXPECT_NEAR(amalgam_norm(kHalfBox, P(p, q, s)), std::pow(0.5, 1.0 / p), 1e-14);
}

TEST(AmalgamNorm, ZeroSpectrumIsZero) {
  EXPECT_EQ(amalgam_norm(PiecewiseConstSpectrum(), P(2, 2, -1)), 0.0);
  EXPECT_EQ(fourier_lebesgue_norm(PiecewiseConstSpectrum(), 3, 1), 0.0);
  EXPECT_EQ(sobolev_norm(PiecewiseConstSpectrum(), 1), 0.0);
}

TEST(AmalgamNorm, PhiFamilyAtCriticalIndexStaysOrderOne) {
  for (double p : {1.0, 2.0, kInfinity})
    for (double q : {1.0, 2.0, kInfinity}) {
      double lo = INFINITY, hi = 0;
      for (int N : {16, 64, 256}) {
        const double v = amalgam_norm(make_phi_N(N), P(p, q, -1));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      EXPECT_LE(hi / lo, 3.0);
      EXPECT_GE(lo, 1.0 / 3.0);
      // six boxes of size O(1) each: q = 1 adds them up
      EXPECT_LE(hi, q == 1.0 ? 6.0 : 3.0);
    }
}

TEST(AmalgamNorm, HandComputedPhi4) {
  // boxes 4 and 6 see half a unit, box 5 a full unit, all at amplitude 4
  const double b = 4.0;
  const double expected = std::sqrt(2.0 * (b * b * 0.5 / 17 + b * b / 26 + b * b * 0.5 / 37));
  EXPECT_NEAR(amalgam_norm(make_phi_N(4), P(2, 2, -1)), expected, 1e-14);
}

TEST(AmalgamNorm, SampledMatchesPiecewiseOnResolvedGrid) {
  // jumps fall halfway between nodes, so linear interpolation is exact away
  // from two cells per jump
  FrequencyGrid g(-10.0, 10.0, 2001);
  PiecewiseConstSpectrum f({{{-4.005, -1.005}, Complex(1, 2)}, {{2.005, 5.005}, 3.0}});
  const double exact = amalgam_norm(f, P(2, 2, 0));
  EXPECT_NEAR(amalgam_norm(sample(f, g), P(2, 2, 0)), exact, 2e-2 * exact);
}

TEST(AmalgamNorm, SampledRejectsTruncatedSupport) {
  FrequencyGrid g(0.0, 2.0, 21);
  auto f = sample(PiecewiseConstSpectrum({{{1.0, 3.0}, 1.0}}), g);
  EXPECT_THROW(amalgam_norm(f, P(2, 2, 0)), UnsupportedInput);
}

TEST(FourierLebesgue, IndicatorL2) {
  EXPECT_NEAR(fourier_lebesgue_norm(kHalfBox, 2, 0), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(sobolev_norm(PiecewiseConstSpectrum({{{0, 1}, 1.0}}), 0), 1.0, 1e-15);
}

TEST(FourierLebesgue, WeightedMatchesAntiderivative) {
  // int_0^2 (1 + x^2) dx = 2 + 8/3
  PiecewiseConstSpectrum f({{{0, 2}, 1.0}});
  EXPECT_NEAR(sobolev_norm(f, 1.0), std::sqrt(2.0 + 8.0 / 3.0), 1e-14);
  // int_0^2 (1 + x^2)^{-1} dx = atan 2
  EXPECT_NEAR(sobolev_norm(f, -1.0), std::sqrt(std::atan(2.0)), 1e-14);
  EXPECT_DOUBLE_EQ(fourier_lebesgue_norm(f, kInfinity, 1.0), std::sqrt(5.0));
  EXPECT_DOUBLE_EQ(fourier_lebesgue_norm(f, kInfinity, -1.0), 1.0);
}

TEST(FourierLebesgue, SampledConvergesToPiecewise) {
  PiecewiseConstSpectrum f({{{-1.0025, 2.0025}, Complex(0, 2)}});
  FrequencyGrid g(-4.0, 4.0, 1601);
  const double exact = sobolev_norm(f, 0.5);
  EXPECT_NEAR(sobolev_norm(sample(f, g), 0.5), exact, 5e-3 * exact);
}

TEST(FourierLebesgue, EquivalentToAmalgamOnPhiFamily) {
  for (double q : {1.0, 2.0, 4.0, kInfinity})
    for (double s : {-2.0, -1.5, -1.0, 0.5}) {
      for (int N = 8; N <= 512; N *= 2) {
        const auto phi = make_phi_N(N);
        const double r = fourier_lebesgue_norm(phi, q, s) / amalgam_norm(phi, P(q, q, s));
        EXPECT_GE(r, 0.25);
        EXPECT_LE(r, 4.0);
      }
    }
}

TEST(NormProperties, Homogeneity) {
  auto rng = make_rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    auto f = random_piecewise(rng);
    const Complex lambda(uniform(rng, -5, 5), uniform(rng, -5, 5));
    const AmalgamParams params = P(std::array{1.0, 2.0, 3.0, kInfinity}[trial % 4],
                                   std::array{1.0, 2.0, kInfinity}[trial % 3], uniform(rng, -2, 1));
    const double base = amalgam_norm(f, params);
    EXPECT_LT(testing::rel_err(amalgam_norm(f.scaled(lambda), params), std::abs(lambda) * base), 1e-12);
    FrequencyGrid g(-20, 20, 801);
    auto fs = sample(f, g);
    const double sbase = amalgam_norm(fs, params);
    EXPECT_LT(testing::rel_err(amalgam_norm(fs.scaled(lambda), params), std::abs(lambda) * sbase), 1e-12);
  }
}

TEST(NormProperties, TriangleInequality) {
  auto rng = make_rng(19);
  for (int trial = 0; trial < 500; ++trial) {
    auto f = random_piecewise(rng), g = random_piecewise(rng);
    const AmalgamParams params = P(uniform(rng, 1, 6), uniform(rng, 1, 6), uniform(rng, -2, 2));
    EXPECT_LE(amalgam_norm(add(f, g), params), amalgam_norm(f, params) + amalgam_norm(g, params) + 1e-10);
    const AmalgamParams sup = P(kInfinity, kInfinity, params.s);
    EXPECT_LE(amalgam_norm(add(f, g), sup), amalgam_norm(f, sup) + amalgam_norm(g, sup) + 1e-10);
  }
}

TEST(NormProperties, MonotoneInS) {
  for (int N = 2; N <= 256; N *= 2)
    for (double p : {1.0, 2.0, kInfinity})
      for (double q : {1.0, 2.0, kInfinity}) {
        double prev = 0;
        for (double s = -3.0; s <= 1.0; s += 0.25) {
          const double v = amalgam_norm(make_phi_N(N), P(p, q, s));
          EXPECT_GE(v, prev);
          prev = v;
        }
      }
}

TEST(NormProperties, SingleBoxAmalgamEqualsSobolev) {
  auto rng = make_rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    // pieces confined to (-1/2, 1/2]; <0>^s = 1 so only s = 0 is exact
    const double a = uniform(rng, -0.49, 0.3);
    const double b = uniform(rng, a + 0.01, 0.5);
    PiecewiseConstSpectrum f({{{a, b}, Complex(uniform(rng, -3, 3), uniform(rng, -3, 3))}});
    EXPECT_LT(testing::rel_err(amalgam_norm(f, P(2, 2, 0)), sobolev_norm(f, 0)), 1e-10);
  }
}

TEST(Modulation, PartitionOfUnityAtListedPoints) {
  const auto w = build_partition();
  for (double xi : {0.0, 0.3, 0.5, 0.77, 1.5}) EXPECT_NEAR(w.partition_sum(xi), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(w.window(0, 0.0), 1.0);
}

TEST(Modulation, NeighbourWindowsAtThreeQuarters) {
  const auto w = build_partition();
  const double a = w.window(0, 0.75), b = w.window(1, 0.75);
  EXPECT_GT(a, 0.0);
  EXPECT_LT(a, 1.0);
  EXPECT_GT(b, 0.0);
  EXPECT_LT(b, 1.0);
  EXPECT_NEAR(a + b, 1.0, 1e-15);
  // rho(0.75) = step(1/2) = 1/2 and rho(-0.25) = 1
  EXPECT_NEAR(a, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(b, 2.0 / 3.0, 1e-15);
}

TEST(Modulation, BumpShape) {
  EXPECT_EQ(default_bump(0.5), 1.0);
  EXPECT_EQ(default_bump(-0.5), 1.0);
  EXPECT_EQ(default_bump(1.0), 0.0);
  EXPECT_EQ(default_bump(-3.0), 0.0);
  EXPECT_NEAR(default_bump(0.75), 0.5, 1e-15);
  for (double x = 0.5; x < 1.0; x += 0.01) EXPECT_GE(default_bump(x), default_bump(x + 0.01));
}

TEST(Modulation, WindowSupportAndCount) {
  const auto w = build_partition();
  auto rng = make_rng(29);
  for (int i = 0; i < 2000; ++i) {
    const double xi = uniform(rng, -30, 30);
    int nonzero = 0;
    for (long n = static_cast<long>(std::floor(xi)) - 3; n <= static_cast<long>(std::floor(xi)) + 3; ++n) {
      const double s = w.window(n, xi);
      EXPECT_GE(s, 0.0);
      if (std::abs(xi - static_cast<double>(n)) >= 1.0) EXPECT_EQ(s, 0.0);
      if (s > 0.0) ++nonzero;
    }
    EXPECT_LE(nonzero, 2);
  }
}

TEST(Modulation, RejectsBadProfiles) {
  EXPECT_THROW(build_partition([](double x) { return std::abs(x) < 1.5 ? 1.0 : 0.0; }), InvalidProfile);
  EXPECT_THROW(build_partition([](double x) { return std::abs(x) <= 0.4 ? 1.0 : 0.0; }), InvalidProfile);
  EXPECT_THROW(build_partition([](double x) { return std::abs(x) < 1.0 ? 2.0 * (1 - std::abs(x)) : 0.0; }),
               InvalidProfile);
  EXPECT_THROW(build_partition(BumpProfile{}), InvalidProfile);
  // a piecewise-linear plateau bump is admissible
  EXPECT_NO_THROW(build_partition([](double x) {
    const double a = std::abs(x);
    return a <= 0.5 ? 1.0 : (a >= 1.0 ? 0.0 : 2.0 * (1.0 - a));
  }));
}

TEST(Modulation, RequiresPEqualTwo) {
  const auto w = build_partition();
  try {
    modulation_norm(kHalfBox, P(1, 2, 0), w);
    FAIL();
  } catch (const UnsupportedInput& e) {
    EXPECT_STREQ(e.what(), "modulation norm requires p=2");
  }
  EXPECT_THROW(modulation_norm(kHalfBox, P(kInfinity, 2, 0), w), UnsupportedInput);
}

TEST(Modulation, ZeroSpectrum) {
  EXPECT_EQ(modulation_norm(PiecewiseConstSpectrum(), P(2, 2, 0), build_partition()), 0.0);
}

TEST(Modulation, CentredQuarterIndicatorAgainstWindowOracle) {
  // On [-1/4, 1/4] the neighbours sigma_{+-1} are still positive, so the
  // value sits strictly between ||f||/sqrt(2) and ||f||; compare with an
  // independent Simpson evaluation of sum_n int sigma_n^2.
  const auto w = build_partition();
  PiecewiseConstSpectrum f({{{-0.25, 0.25}, 1.0}});
  const double m = modulation_norm(f, P(2, 2, 0), w);
  const double l2 = sobolev_norm(f, 0);
  EXPECT_NEAR(l2, std::sqrt(0.5), 1e-15);
  EXPECT_LT(m, l2);
  EXPECT_GT(m, l2 / std::sqrt(2.0));
  double total = 0;
  for (long n = -1; n <= 1; ++n)
    total += testing::simpson([&](double x) { return std::pow(w.window(n, x), 2); }, -0.25, 0.25, 20000);
  EXPECT_NEAR(m, std::sqrt(total), 1e-10);
}

TEST(Modulation, FlatRegionMatchesSobolev) {
  // once the support keeps every neighbour window at zero, sigma_0 = 1 there
  const auto w = build_partition();
  EXPECT_EQ(w.window(1, 0.0), 0.0);
  EXPECT_EQ(w.window(-1, 0.0), 0.0);
  PiecewiseConstSpectrum f({{{-1e-3, 1e-3}, 1.0}});
  EXPECT_NEAR(modulation_norm(f, P(2, 2, 0), w), sobolev_norm(f, 0), 1e-10);
}

TEST(Modulation, EquivalentToAmalgamOnPhiFamily) {
  const auto w = build_partition();
  for (double q : {1.0, 2.0, kInfinity})
    for (double s : {-2.0, -1.0, 0.0})
      for (int N = 8; N <= 512; N *= 2) {
        const auto phi = make_phi_N(N);
        const double r = modulation_norm(phi, P(2, q, s), w) / amalgam_norm(phi, P(2, q, s));
        EXPECT_GE(r, 0.25);
        EXPECT_LE(r, 4.0);
      }
}

TEST(Modulation, SampledAgreesWithPiecewise) {
  const auto w = build_partition();
  PiecewiseConstSpectrum f({{{-2.0025, 3.0025}, Complex(1, -1)}});
  FrequencyGrid g(-5, 5, 2001);
  const double exact = modulation_norm(f, P(2, 2, -1), w);
  EXPECT_NEAR(modulation_norm(sample(f, g), P(2, 2, -1), w), exact, 5e-3 * exact);
}

}  // namespace
}  // namespace amalgam
