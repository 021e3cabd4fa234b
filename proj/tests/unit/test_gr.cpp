#include "dyadic/errors.hpp"
#include "dyadic/generate.hpp"
#include "dyadic/gurov_reshetnyak.hpp"
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

}  // namespace

TEST(GrModulus, Examples) {
  const auto f = cells1({4, 0, 0, 0});
  EXPECT_EQ(gr_modulus(f, q(1)), q(3, 2));
  EXPECT_EQ(gr_modulus(f, q(1, 2)), q(1));
  EXPECT_EQ(gr_modulus(f, q(1, 4)), q(0));
  EXPECT_EQ(gr_modulus(f, q(3, 4)), q(1));
  EXPECT_EQ(gr_modulus(f, q(0)), q(0));
  EXPECT_EQ(gr_modulus(cells1({1, 0}), q(1)), q(1));
  EXPECT_EQ(gr_modulus(DyadicFunction::constant(2, 2, q(5)), q(1)), q(0));
}

TEST(GrMembership, Examples) {
  EXPECT_EQ(gr_membership(cells1({4, 0, 0, 0})), q(3, 2));
  EXPECT_EQ(gr_membership(DyadicFunction::constant(1, 3, q(2))), q(0));
  EXPECT_EQ(gr_membership(DyadicFunction(2, 1, {q(1), q(1), q(1), q(0)})), q(1, 2));
  EXPECT_EQ(gr_membership(DyadicFunction::constant(1, 2, q(0))), q(0));
  EXPECT_THROW(gr_membership(cells1({1, -1})), DomainError);
}

TEST(GrProfile, MatchesReferenceLevels) {
  Rng rng(51);
  for (int trial = 0; trial < 300; ++trial) {
    const auto [dim, depth] = dyadic::testing::random_shape(rng, 5);
    const auto f = dyadic::testing::random_function(rng, dim, depth, 0, 9);
    const GrProfile p = gr_profile(f);
    const std::vector<Rational> levels = reference::gr_levels(f);
    ASSERT_EQ(p.values.size(), static_cast<std::size_t>(depth + 1));
    for (int k = 0; k <= depth; ++k) {
      // values[k] is the max over levels >= k.
      Rational expected = 0;
      for (int j = k; j < static_cast<int>(levels.size()); ++j) expected = std::max(expected, levels[static_cast<std::size_t>(j)]);
      ASSERT_EQ(p.values[static_cast<std::size_t>(k)], expected);
      if (k > 0) {
        ASSERT_LE(p.values[static_cast<std::size_t>(k)], p.values[static_cast<std::size_t>(k - 1)]);
      }
    }
    ASSERT_LE(p.epsilon_global, q(2));
    // Scale invariance.
    ASSERT_EQ(gr_membership(f.times(q(7, 3))), p.epsilon_global);
  }
}

TEST(GrProfile, SigmaTLevel) {
  const GrProfile p = gr_profile(cells1({4, 0, 0, 0}));
  // sigma_t = min(2t, 1) for n = 1.
  EXPECT_EQ(p.sigma_t_level(q(1, 2)), 0);
  EXPECT_EQ(p.sigma_t_level(q(1, 4)), 1);
  EXPECT_EQ(p.sigma_t_level(q(3, 16)), 2);
  EXPECT_EQ(p.at_sigma_t(q(1, 4)), q(1));
  EXPECT_EQ(p.at_sigma_t(q(1)), q(3, 2));
}

TEST(LocalOscillation, Examples) {
  const auto f = cells1({4, 0, 0, 0});
  const LocalOscillationCheck a = theorem3_check(f, q(1, 4));
  EXPECT_EQ(a.lhs, q(0));
  EXPECT_EQ(a.rhs, q(8));
  const LocalOscillationCheck b = theorem3_check(f, q(1, 2));
  EXPECT_EQ(b.lhs, q(2));
  EXPECT_EQ(b.rhs, q(6));
  EXPECT_TRUE(b.holds());
  const LocalOscillationCheck c = theorem3_check(DyadicFunction::constant(1, 2, q(3)), q(1, 2));
  EXPECT_EQ(c.lhs, q(0));
  EXPECT_EQ(c.rhs, q(0));
  EXPECT_THROW(theorem3_check(f, q(0)), DomainError);
}

TEST(LocalOscillation, RandomCellTimes) {
  Rng rng(52);
  for (int trial = 0; trial < 300; ++trial) {
    const auto [dim, depth] = dyadic::testing::random_shape(rng, 5);
    const auto f = dyadic::testing::random_function(rng, dim, depth, 0, 9);
    const GrProfile p = gr_profile(f);
    for (std::size_t k = 1; k <= f.cell_count(); ++k) {
      const auto check = theorem3_check(f, p, Rational(static_cast<unsigned long>(k)) * f.cell_measure());
      ASSERT_TRUE(check.holds()) << to_string(check.t);
    }
  }
}

TEST(SolveP, Checkpoints) {
  const ExponentSolution two = solve_p(q(1, 4), 1);
  EXPECT_NEAR(two.p, 2.0, 1e-12);
  EXPECT_LE(two.residual, 1e-12);
  EXPECT_LE(two.p_lower, two.p);
  const ExponentSolution three = solve_p(q(4, 27), 1);
  EXPECT_NEAR(three.p, 3.0, 1e-12);
  EXPECT_LE(three.residual, 1e-12);
  const ExponentSolution ten = solve_p(q(1, 10), 1);
  EXPECT_GT(ten.p, 4.1);
  EXPECT_LT(ten.p, 4.3);
  EXPECT_LE(ten.residual, 1e-12);
  // 1/(2^{n-1} eps) = 4 at n = 2, eps = 1/8.
  EXPECT_NEAR(solve_p(q(1, 8), 2).p, 2.0, 1e-12);
  EXPECT_NEAR(solve_p(q(1, 27), 3).p, 3.0, 1e-12);
}

TEST(SolveP, CapAndRange) {
  const ExponentSolution zero = solve_p(q(0), 2);
  EXPECT_TRUE(zero.capped);
  EXPECT_EQ(zero.p, kExponentCap);
  EXPECT_THROW(solve_p(q(1), 1), DomainError);
  EXPECT_THROW(solve_p(q(1, 2), 2), DomainError);
  EXPECT_THROW(solve_p(q(-1, 8), 1), DomainError);
  // Monotone: smaller eps gives larger p.
  double previous = 1.0;
  for (long d = 5; d <= 400; d += 15) {
    const ExponentSolution s = solve_p(q(1, d), 1);
    ASSERT_GT(s.p, previous);
    ASSERT_LE(s.residual, 1e-12 * std::max(1.0, std::log(static_cast<double>(d))));
    previous = s.p;
  }
}

TEST(PowerDecay, ExamplesAndRejection) {
  EXPECT_THROW(theorem5_check(cells1({1, 0}), q(1, 2)), DomainError);
  const auto c = DyadicFunction::constant(2, 2, q(3));
  for (long k = 1; k <= 16; ++k) {
    const PowerDecayCheck check = theorem5_check(c, q(k, 16));
    EXPECT_EQ(check.lhs, q(3));
    EXPECT_GE(check.rhs, 3.0);
    EXPECT_TRUE(check.holds(1e-9));
  }
}

TEST(PowerDecay, CascadeFunctions) {
  Rng rng(53);
  GeneratorSpec spec;
  spec.kind = GeneratorKind::cascade_gr;
  spec.dim = 2;
  spec.depth = 3;
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = generate(spec, rng);
    ASSERT_LE(gr_membership(f), q(1, 8));
    const ExponentSolution p = solve_p(gr_membership(f), 2);
    ASSERT_GE(p.p, 2.0 - 1e-12);
    for (std::size_t k = 1; k <= f.cell_count(); k += 3) {
      const auto check = theorem5_check(f, p, Rational(static_cast<unsigned long>(k)) * f.cell_measure());
      ASSERT_TRUE(check.holds(1e-9));
    }
    ASSERT_TRUE(lq_tail_bound(f, 1.0).holds(1e-9));
    ASSERT_TRUE(lq_tail_bound(f, 1.5).holds(1e-9));
  }
}

TEST(ExpIntegral, Examples) {
  const ExpIntegralCheck a = theorem4_bound(cells1({4, 0, 0, 0}), q(1, 16));
  EXPECT_EQ(a.lhs, q(4));
  EXPECT_GT(a.rhs, 2.0 * std::exp(2.0 * std::exp(1.0) + 1.0));
  EXPECT_TRUE(a.holds());
  const ExpIntegralCheck b = theorem4_bound(DyadicFunction::constant(1, 3, q(2)), q(1, 32));
  EXPECT_EQ(b.integral, 0.0);
  EXPECT_GE(b.rhs, b.constants.c1 * 2.0);
  EXPECT_THROW(theorem4_bound(cells1({4, 0, 0, 0}), q(1, 8)), DomainError);
}

TEST(ExpIntegral, Constants) {
  const double e = std::exp(1.0);
  for (int n = 1; n <= 3; ++n) {
    const ExpIntegralConstants c = exp_integral_constants(n);
    const double two_n = std::ldexp(1.0, n);
    EXPECT_NEAR(c.c1 / (two_n * std::exp(two_n * e + 1)), 1.0, 1e-14);
    EXPECT_NEAR(c.c2, two_n / 2 * e * n, 1e-12);
    EXPECT_NEAR(c.c3, 2 * std::exp(1.0 / n), 1e-12);
    EXPECT_NEAR(c.c4, two_n * e * e, 1e-12);
    for (const Rational& t : exp_integral_t_grid(n)) {
      EXPECT_GT(t, 0);
      EXPECT_LE(t.get_d() * c.c4, 1.0);
    }
  }
}

TEST(ExpIntegral, RandomFunctions) {
  Rng rng(54);
  for (int trial = 0; trial < 200; ++trial) {
    const auto [dim, depth] = dyadic::testing::random_shape(rng, 5);
    const auto f = dyadic::testing::random_function(rng, dim, depth, 0, 9);
    const GrProfile p = gr_profile(f);
    for (const Rational& t : exp_integral_t_grid(dim)) ASSERT_TRUE(theorem4_bound(f, p, t).holds());
  }
}

TEST(LqTail, QEqualsOne) {
  const auto c = DyadicFunction::constant(1, 2, q(5));
  const LqTailCheck check = lq_tail_bound(c, 1.0);
  EXPECT_TRUE(check.exact);
  EXPECT_EQ(check.lq_exact, q(5));
  EXPECT_GE(check.bound, 5.0);
  EXPECT_TRUE(check.holds(1e-9));
  const auto f = DyadicFunction(1, 2, {q(5), q(4), q(4), q(5)});
  const LqTailCheck g = lq_tail_bound(f, 1.0);
  EXPECT_EQ(g.lq_exact, q(9, 2));
  EXPECT_TRUE(g.holds(1e-9));
  EXPECT_THROW(lq_tail_bound(f, g.exponent.p_lower + 1.0), DomainError);
}
