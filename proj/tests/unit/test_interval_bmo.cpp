#include "dyadic/dyadic_core.hpp"
#include "dyadic/interval_bmo.hpp"
#include "dyadic/step_function.hpp"
#include "reference.hpp"
#include "random_functions.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace dyadic;
using dyadic::testing::cells1;
using dyadic::testing::Rng;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

void expect_consistent(const StepFunction& g, const IntervalBmoBound& b) {
  EXPECT_EQ(interval_mean_oscillation(g, b.witness_a, b.witness_b), b.lower);
  EXPECT_GE(b.upper, b.lower.get_d());
  EXPECT_LE(b.upper - b.lower.get_d(), b.tolerance);
  EXPECT_TRUE(b.gap_met);
}

}  // namespace

TEST(IntervalBmoNorm, TwoPieceOptimumIsInterior) {
  // Omega on [a,b] straddling s is 2c(s-a)(b-s)/(b-a)^2 <= c/2, reached with s - a = b - s.
  for (long s = 1; s < 8; ++s) {
    const StepFunction g({q(0), q(s, 8), q(1)}, {q(5, 2), q(-1)});
    const IntervalBmoBound b = interval_bmo_norm(g);
    EXPECT_EQ(b.lower, q(7, 4)) << "s = " << s;
    EXPECT_EQ(b.witness_b - q(s, 8), q(s, 8) - b.witness_a);
    expect_consistent(g, b);
  }
}

TEST(IntervalBmoNorm, ConstantIsZero) {
  const StepFunction g({q(0), q(1)}, {q(3)});
  const IntervalBmoBound b = interval_bmo_norm(g);
  EXPECT_EQ(b.lower, q(0));
  EXPECT_EQ(b.upper, 0.0);
}

TEST(IntervalBmoNorm, AlternatingCellsRearranged) {
  const StepFunction g = rearrange_signed(cells1({1, 0, 1, 0}));
  const IntervalBmoBound b = interval_bmo_norm(g);
  EXPECT_EQ(b.lower, q(1, 2));
  expect_consistent(g, b);
}

TEST(IntervalBmoNorm, ThreePieceDenseGridOracle) {
  // Three values: the optimum can sit strictly inside pieces on both ends.
  const StepFunction g({q(0), q(1, 5), q(3, 5), q(1)}, {q(4), q(1), q(0)});
  const IntervalBmoBound b = interval_bmo_norm(g);
  const Rational grid = reference::interval_grid_max(g, 120);
  EXPECT_LE(grid, b.lower);
  EXPECT_LT(Rational(b.lower - grid).get_d(), 0.05);
  expect_consistent(g, b);
}

TEST(IntervalBmoNorm, AgreesWithGridAndRefinement) {
  Rng rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const StepFunction g = dyadic::testing::random_step(rng, 5, 12, trial % 2 == 0);
    const IntervalBmoBound b = interval_bmo_norm(g);
    expect_consistent(g, b);
    // Every grid interval is feasible, so the grid max is a lower bound.
    ASSERT_LE(reference::interval_grid_max(g, 24), b.lower);
    // The double estimate follows the same region analysis.
    ASSERT_NEAR(interval_bmo_estimate(g), b.lower.get_d(), 1e-9);
    if (trial % 10 == 0) {
      const RefinementCertificate cert = refine_interval_bmo(g, 1e-3, 30);
      ASSERT_LE(cert.lower, b.upper + 1e-12);
      ASSERT_GE(cert.upper + 1e-12, b.lower.get_d());
    }
  }
}

// ||f_d||_* <= 2^n ||f||_{*,D}, lower bound exact and upper bound within tolerance.
TEST(IntervalBmoNorm, RearrangementBoundedByDyadicNorm) {
  Rng rng(32);
  for (int trial = 0; trial < 400; ++trial) {
    const auto [dim, depth] = dyadic::testing::random_shape(rng, 5);
    const auto f = dyadic::testing::random_function(rng, dim, depth, -6, 6);
    const IntervalBmoBound b = interval_bmo_norm(rearrange_signed(f));
    const Rational cap = pow2(dim) * bmo_dyadic_norm(f).value;
    ASSERT_LE(b.lower, cap);
    ASSERT_LE(from_double(b.upper), cap + from_double(1e-9));
  }
}

TEST(RefineIntervalBmo, BracketsTwoPieceValue) {
  const StepFunction g({q(0), q(1, 3), q(1)}, {q(1), q(0)});
  const RefinementCertificate cert = refine_interval_bmo(g, 1e-2, 40);
  EXPECT_LE(cert.lower, 0.5 + 1e-12);
  EXPECT_GE(cert.upper, 0.5 - 1e-12);
  EXPECT_GT(cert.lower, 0.45);
}
