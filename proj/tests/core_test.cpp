#include "simplex/core.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "simplex/oracles.hpp"
#include "test_support.hpp"

namespace simplex {
namespace {

using V = std::vector<double>;

void ExpectVectorNear(const V& actual, const V& expected, double tol) {
  ASSERT_EQ(actual.size(), expected.size());
  for (std::size_t i = 0; i < actual.size(); ++i) {
    EXPECT_NEAR(actual[i], expected[i], tol) << "component " << i;
  }
}

TEST(SortAscending, SortsAndBuildsSuffixSums) {
  const V y{3, 1, 2};
  const auto s = sort_ascending(y);
  EXPECT_EQ(V(s.values().begin(), s.values().end()), (V{1, 2, 3}));
  EXPECT_EQ(V(s.suffix_sums().begin(), s.suffix_sums().end()), (V{6, 5, 3, 0}));
  EXPECT_EQ(y, (V{3, 1, 2}));  // input untouched
  EXPECT_EQ(s.order_statistic(1), 1.0);
  EXPECT_EQ(s.order_statistic(3), 3.0);
}

TEST(SortAscending, SingleComponent) {
  const auto s = sort_ascending(V{5});
  EXPECT_EQ(V(s.values().begin(), s.values().end()), V{5});
  EXPECT_EQ(V(s.suffix_sums().begin(), s.suffix_sums().end()), (V{5, 0}));
}

TEST(SortAscending, AllTies) {
  const auto s = sort_ascending(V{2, 2, 2});
  EXPECT_EQ(V(s.values().begin(), s.values().end()), (V{2, 2, 2}));
  EXPECT_EQ(V(s.suffix_sums().begin(), s.suffix_sums().end()), (V{6, 4, 2, 0}));
}

TEST(SortAscending, RejectsNonFiniteWithIndex) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  try {
    (void)sort_ascending(V{1.0, 2.0, nan, inf});
    FAIL() << "expected InvalidInput";
  } catch (const InvalidInput& e) {
    ASSERT_TRUE(e.index().has_value());
    EXPECT_EQ(*e.index(), 2u);
  }
  EXPECT_THROW((void)sort_ascending(V{-inf}), InvalidInput);
  EXPECT_THROW((void)sort_ascending(V{}), InvalidInput);
}

TEST(SortAscending, SuffixSumInvariants) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const auto y = testing::gaussian_vector(rng, 1 + rep);
    const auto s = sort_ascending(y);
    EXPECT_TRUE(std::is_sorted(s.values().begin(), s.values().end()));
    double total = 0.0;
    for (double v : y) total += v;
    EXPECT_NEAR(s.suffix_sum(0), total, 1e-12 * y.size());
    for (std::size_t i = 0; i + 1 <= y.size(); ++i) {
      EXPECT_NEAR(s.suffix_sum(i) - s.suffix_sum(i + 1), s.values()[i], 1e-12);
    }
  }
}

TEST(ThresholdCandidates, TwoComponents) {
  const auto c = threshold_candidates(sort_ascending(V{0, 2}));
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].index, 0u);
  EXPECT_DOUBLE_EQ(c[0].value, 0.5);
  EXPECT_EQ(c[1].index, 1u);
  EXPECT_DOUBLE_EQ(c[1].value, 1.0);
}

TEST(ThresholdCandidates, BarycenterAndZero) {
  const double third = 1.0 / 3.0;
  const auto c = threshold_candidates(sort_ascending(V{third, third, third}));
  EXPECT_NEAR(c[0].value, 0.0, 1e-16);
  EXPECT_NEAR(c[1].value, -1.0 / 6.0, 1e-16);
  EXPECT_NEAR(c[2].value, -2.0 / 3.0, 2e-16);

  const auto z = threshold_candidates(sort_ascending(V{0, 0, 0, 0}));
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_DOUBLE_EQ(z[i].value, -1.0 / static_cast<double>(4 - i));
  }
}

TEST(FindThreshold, AcceptsTopCandidate) {
  const auto r = find_threshold(sort_ascending(V{0, 2}));
  EXPECT_DOUBLE_EQ(r.t_hat, 1.0);
  EXPECT_EQ(r.accept_index, 1u);
  EXPECT_EQ(r.active_count, 1u);
  // Dykstra oracle: projection of (0,2) is (0,1).
  const auto d = oracles::dykstra_project(V{0, 2}, {10000, 1e-12});
  ExpectVectorNear(d.x, {0, 1}, 1e-8);
}

TEST(FindThreshold, FallsBackToStepFourOnSimplexPoint) {
  const auto r = find_threshold(sort_ascending(V{0.25, 0.25, 0.25, 0.25}));
  EXPECT_DOUBLE_EQ(r.t_hat, 0.0);
  EXPECT_EQ(r.accept_index, 0u);
  EXPECT_EQ(r.active_count, 4u);
}

TEST(FindThreshold, LargeNegativeComponentIsZeroed) {
  const V y{-10, 0, 0, 0};
  // Brute force over a grid containing (0, 1/3, 1/3, 1/3).
  const auto grid = testing::grid_projection(y, 60);
  ExpectVectorNear(grid, {0, 1.0 / 3, 1.0 / 3, 1.0 / 3}, 1e-15);
  const auto r = find_threshold(sort_ascending(y));
  EXPECT_NEAR(r.t_hat, -1.0 / 3.0, 1e-15);
  EXPECT_EQ(r.active_count, 3u);
  ExpectVectorNear(project_simplex(y).x, grid, 1e-15);
}

TEST(FindThreshold, SingleComponent) {
  const auto r = find_threshold(sort_ascending(V{4.5}));
  EXPECT_DOUBLE_EQ(r.t_hat, 3.5);
  EXPECT_EQ(r.accept_index, 0u);
  EXPECT_EQ(r.active_count, 1u);
  EXPECT_EQ(project_simplex(V{4.5}).x, V{1.0});
  EXPECT_EQ(project_simplex(V{-1e6}).x, V{1.0});
}

TEST(ProjectSimplex, IdentityOnVertex) {
  const auto r = project_simplex(V{1, 0});
  EXPECT_EQ(r.x, (V{1, 0}));
  EXPECT_EQ(r.sum_residual, 0.0);
  EXPECT_EQ(r.kkt_residual, 0.0);
}

TEST(ProjectSimplex, ZeroVectorGoesToBarycenter) {
  for (std::size_t n : {1u, 2u, 3u, 7u, 64u, 1000u}) {
    const auto x = project_simplex(V(n, 0.0)).x;
    for (double xi : x) EXPECT_NEAR(xi, 1.0 / static_cast<double>(n), 1e-16);
  }
}

TEST(ProjectSimplex, AllEqualInputGivesBarycenter) {
  for (double c : {-7.25, 0.0, 2.0, 1e6}) {
    const auto r = project_simplex(V(5, c));
    EXPECT_EQ(r.threshold.accept_index, 0u);
    for (double xi : r.x) EXPECT_NEAR(xi, 0.2, 1e-10);
  }
}

TEST(ProjectSimplex, AgreesWithDykstraOnThreeVector) {
  const V y{0.3, 0.3, 0.8};
  const auto x = project_simplex(y).x;
  const auto d = oracles::dykstra_project(y, {10000, 1e-14});
  ExpectVectorNear(x, d.x, 1e-8);
  EXPECT_GT(x[2], x[0]);
  EXPECT_NEAR(x[0] + x[1] + x[2], 1.0, 1e-15);
}

TEST(ProjectSimplex, OutputKeepsCallerOrder) {
  const auto x = project_simplex(V{2, 0}).x;
  EXPECT_EQ(x, (V{1, 0}));
  const auto x3 = project_simplex(V{0.8, 0.3, 0.3}).x;
  EXPECT_GT(x3[0], x3[1]);
}

TEST(ProjectSimplex, ActiveSetMatchesThreshold) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    const auto y = testing::gaussian_vector(rng, 2 + rep % 30);
    const auto r = project_simplex(y);
    std::size_t positive = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      EXPECT_GE(r.x[i], 0.0);
      EXPECT_LE(r.x[i], 1.0);
      if (y[i] > r.threshold.t_hat) {
        ++positive;
        EXPECT_EQ(r.x[i], y[i] - r.threshold.t_hat);
      } else {
        EXPECT_EQ(r.x[i], 0.0);
      }
    }
    EXPECT_EQ(positive, r.threshold.active_count);
    EXPECT_EQ(r.kkt_residual, kkt_residual(y, r.x, r.threshold.t_hat));
  }
}

TEST(ProjectSimplex, RejectsNonFinite) {
  EXPECT_THROW((void)project_simplex(V{0.0, std::nan("")}), InvalidInput);
  EXPECT_THROW((void)project_simplex(V{}), InvalidInput);
}

TEST(ProjectSimplex, SinglePrecision) {
  const std::vector<float> y{0.f, 2.f};
  const auto r = project_simplex(y);
  EXPECT_EQ(r.x, (std::vector<float>{0.f, 1.f}));
}

// The production scan orders components lazily; it must reproduce the
// fully sorted reference scan bit for bit.
TEST(ProjectSimplex, LazyScanMatchesSortedReference) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> small(-3, 3);
  auto check = [](const V& y, double radius) {
    const auto ref = find_threshold(sort_ascending(y), radius);
    const auto got = project_simplex_scaled(y, radius).threshold;
    ASSERT_EQ(got.t_hat, ref.t_hat);
    ASSERT_EQ(got.accept_index, ref.accept_index);
    ASSERT_EQ(got.active_count, ref.active_count);
  };
  for (int rep = 0; rep < 3000; ++rep) {
    const std::size_t n = 1 + rep % 40;
    check(testing::gaussian_vector(rng, n, rep % 2 ? 1.0 : 0.05), 1.0);
    V ties(n);
    for (auto& v : ties) v = 0.25 * small(rng);
    check(ties, 1.0);
    check(ties, 0.5 + rep % 4);
  }
  check(V{0, 0, 0, 0}, 1.0);
  check(V{1e-300, -1e-300, 0}, 1.0);
  check(V{1e300, 1e300, -1e300}, 1.0);
}

TEST(ProjectSimplexScaled, SumsToRadius) {
  const auto r = project_simplex_scaled(V{0, 0}, 2.0);
  EXPECT_EQ(r.x, (V{1, 1}));
  const V y{4, 0};
  const auto x = project_simplex_scaled(y, 2.0).x;
  const auto d = oracles::dykstra_project(y, {10000, 1e-13}, 2.0);
  ExpectVectorNear(x, {2, 0}, 0.0);
  ExpectVectorNear(d.x, x, 1e-8);
}

TEST(ProjectSimplexScaled, UnitRadiusIsProjectSimplex) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 100; ++rep) {
    const auto y = testing::gaussian_vector(rng, 1 + rep % 17);
    EXPECT_EQ(project_simplex_scaled(y, 1.0).x, project_simplex(y).x);
  }
}

TEST(ProjectSimplexScaled, RejectsBadRadius) {
  EXPECT_THROW((void)project_simplex_scaled(V{1, 2}, 0.0), InvalidInput);
  EXPECT_THROW((void)project_simplex_scaled(V{1, 2}, -1.0), InvalidInput);
  EXPECT_THROW((void)project_simplex_scaled(V{1, 2}, std::nan("")), InvalidInput);
  EXPECT_THROW(
      (void)project_simplex_scaled(V{1, 2}, std::numeric_limits<double>::infinity()),
      InvalidInput);
}

TEST(ClipAt, ClipsAboveThreshold) {
  EXPECT_EQ(clip_at(V{1, 3}, 2.0), (V{1, 2}));
  EXPECT_EQ(clip_at(V{1, 3}, 5.0), (V{1, 3}));
  EXPECT_EQ(clip_at(V{1, 3}, 0.0), (V{0, 0}));
  EXPECT_THROW((void)clip_at(V{1, 3}, std::nan("")), InvalidInput);
}

TEST(ClipAt, MaximumIsMinOfThresholdAndMax) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int rep = 0; rep < 100; ++rep) {
    const auto y = testing::gaussian_vector(rng, 1 + rep % 9);
    const double t = u(rng);
    const auto z = clip_at(y, t);
    EXPECT_EQ(*std::max_element(z.begin(), z.end()),
              std::min(t, *std::max_element(y.begin(), y.end())));
  }
}

TEST(EvalF, PiecewiseValues) {
  const auto s = sort_ascending(V{0, 2});
  // At the top breakpoint both neighbouring pieces give 2 + 0.
  EXPECT_DOUBLE_EQ(eval_f(s, 2.0), 2.0);
  for (double t : {2.5, 4.0, 10.0}) {
    EXPECT_DOUBLE_EQ(eval_f(s, t), t + 0.5 * (t - 2.0) * (t - 2.0));
  }
  // Middle piece: only y_(2) = 2 lies above t = 1.
  EXPECT_DOUBLE_EQ(eval_f(s, 1.0), 1.0 + 0.5);
  // Below every component: t + ((t-0)^2 + (t-2)^2)/2.
  EXPECT_DOUBLE_EQ(eval_f(s, -1.0), -1.0 + 0.5 * (1.0 + 9.0));
}

TEST(EvalF, MatchesDirectDefinitionAndClipAt) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int rep = 0; rep < 200; ++rep) {
    const auto y = testing::gaussian_vector(rng, 1 + rep % 25);
    const auto s = sort_ascending(y);
    const double t = std::min(u(rng), s.max());  // z(t) covers t <= max y
    const auto z = clip_at(y, t);
    double via_clip = t;
    for (std::size_t i = 0; i < y.size(); ++i) via_clip += 0.5 * (z[i] - y[i]) * (z[i] - y[i]);
    EXPECT_NEAR(eval_f(s, t), testing::direct_f(y, t), 1e-12);
    EXPECT_NEAR(eval_f(s, t), via_clip, 1e-12);
  }
}

TEST(EvalFPrime, VanishesAtOptimum) {
  const auto s = sort_ascending(V{0, 2});
  EXPECT_DOUBLE_EQ(eval_f_prime(s, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(eval_f_prime(s, 2.0), 1.0);
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 100; ++rep) {
    const auto y = testing::gaussian_vector(rng, 1 + rep % 12);
    const auto sv = sort_ascending(y);
    EXPECT_NEAR(eval_f_prime(sv, sv.max()), 1.0, 1e-15);
    const auto t = find_threshold(sv).t_hat;
    EXPECT_NEAR(eval_f_prime(sv, t), 0.0, 1e-12 * y.size());
  }
}

TEST(EvalFPrime, MatchesCentralDifferences) {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 50; ++rep) {
    const auto y = testing::gaussian_vector(rng, 1 + rep % 20);
    const auto s = sort_ascending(y);
    std::uniform_real_distribution<double> u(s.min() - 1.0, s.max() + 1.0);
    for (int k = 0; k < 20; ++k) {
      const double t = u(rng);
      const double fd =
          testing::central_difference([&](double v) { return testing::direct_f(y, v); }, t, 1e-6);
      EXPECT_NEAR(eval_f_prime(s, t), fd, 1e-5);
    }
  }
}

TEST(FenchelMax, LargestComponent) {
  EXPECT_EQ(fenchel_max(V{3, 1, 2}), 3.0);
  EXPECT_EQ(fenchel_max(V{-5}), -5.0);
  EXPECT_EQ(fenchel_max(V{2, 2}), 2.0);
  EXPECT_THROW((void)fenchel_max(V{}), InvalidInput);
}

TEST(ProxMax, ComplementsTheProjection) {
  EXPECT_EQ(prox_max(V{0, 2}), (V{0, 1}));
  const V bary(4, 0.25);
  EXPECT_EQ(prox_max(bary), V(4, 0.0));
  const V on_face{0.5, 0.5, 0.0};
  EXPECT_EQ(prox_max(on_face), (V{0, 0, 0}));
}

TEST(ProxMax, HasClippedStructure) {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 200; ++rep) {
    const auto y = testing::gaussian_vector(rng, 1 + rep % 15);
    const auto p = project_simplex(y);
    const auto z = prox_max(y);
    const auto zt = clip_at(y, p.threshold.t_hat);
    for (std::size_t i = 0; i < y.size(); ++i) {
      EXPECT_EQ(z[i], y[i] - p.x[i]);
      // Clipped components equal t_hat up to the rounding of y - (y - t).
      EXPECT_NEAR(z[i], zt[i], 4 * std::numeric_limits<double>::epsilon() *
                                   std::max({1.0, std::abs(y[i]), std::abs(p.threshold.t_hat)}));
    }
    EXPECT_NEAR(fenchel_max(z), std::min(p.threshold.t_hat, fenchel_max(y)), 1e-15 * 8);
  }
}

}  // namespace
}  // namespace simplex
