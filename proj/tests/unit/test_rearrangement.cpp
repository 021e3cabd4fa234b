#include "dyadic/errors.hpp"
#include "dyadic/step_function.hpp"
#include "reference.hpp"
#include "random_functions.hpp"

#include <gtest/gtest.h>

using namespace dyadic;
using dyadic::testing::cells1;
using dyadic::testing::Rng;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

StepFunction step(std::vector<Rational> bps, std::vector<Rational> vals) {
  return StepFunction(std::move(bps), std::move(vals));
}

StepFunction half_indicator() { return step({q(0), q(1, 2), q(1)}, {q(1), q(0)}); }

}  // namespace

TEST(StepFunction, ValidatesShape) {
  EXPECT_THROW(step({q(0), q(1)}, {}), InputError);
  EXPECT_THROW(step({q(0), q(1, 2), q(1, 2), q(1)}, {q(1), q(2), q(3)}), InputError);
  EXPECT_THROW(step({q(1, 4), q(1)}, {q(1)}), InputError);
  const auto g = half_indicator();
  EXPECT_EQ(g(q(1, 2)), q(1));  // left-continuous
  EXPECT_EQ(g(q(3, 4)), q(0));
  EXPECT_EQ(g.integral_to(q(3, 4)), q(1, 2));
}

TEST(RearrangeSigned, Examples) {
  EXPECT_EQ(rearrange_signed(cells1({0, 4, 0, 0})), step({q(0), q(1, 4), q(1)}, {q(4), q(0)}));
  EXPECT_EQ(rearrange_signed(cells1({3, 2, 2, 1})), step({q(0), q(1, 4), q(3, 4), q(1)}, {q(3), q(2), q(1)}));
  EXPECT_EQ(rearrange_signed(cells1({-1, 1})), step({q(0), q(1, 2), q(1)}, {q(1), q(-1)}));
}

TEST(RearrangeAbs, Examples) {
  EXPECT_EQ(rearrange_abs(cells1({-1, 1})), step({q(0), q(1)}, {q(1)}));
  const auto f = cells1({0, 3, 1, 3});
  EXPECT_EQ(rearrange_abs(f), rearrange_signed(f));
  EXPECT_EQ(rearrange_abs(DyadicFunction::constant(2, 2, q(0))), step({q(0), q(1)}, {q(0)}));
}

TEST(SupInfFormula, Examples) {
  EXPECT_EQ(supinf_formula(cells1({4, 0, 0, 0}), q(1, 4)), q(4));
  EXPECT_EQ(supinf_formula(cells1({-5, 2, -3, 7}), q(1)), q(2));
  EXPECT_EQ(supinf_formula(cells1({1, 0}), q(1, 2)), q(1));
  EXPECT_THROW(supinf_formula(cells1({1, 0}), q(1, 3)), DomainError);
  EXPECT_THROW(supinf_formula(cells1({1, 0}), q(0)), DomainError);
}

TEST(HardyAverage, Examples) {
  EXPECT_EQ(hardy_average(half_indicator(), q(3, 4)), q(2, 3));
  EXPECT_EQ(hardy_average(half_indicator(), q(1, 3)), q(1));
  EXPECT_EQ(hardy_average(step({q(0), q(1, 4), q(1)}, {q(4), q(0)}), q(1, 2)), q(2));
  EXPECT_THROW(hardy_average(half_indicator(), q(0)), DomainError);
  EXPECT_THROW(hardy_average(half_indicator(), q(3, 2)), DomainError);
}

TEST(IntervalMeanOscillation, Examples) {
  EXPECT_EQ(interval_mean_oscillation(half_indicator(), q(1, 4), q(3, 4)), q(1, 2));
  EXPECT_EQ(interval_mean_oscillation(half_indicator(), q(1, 8), q(3, 8)), q(0));
  EXPECT_EQ(interval_mean_oscillation(half_indicator(), q(0), q(1)), q(1, 2));
  EXPECT_THROW(interval_mean_oscillation(half_indicator(), q(1, 2), q(1, 2)), DomainError);
}

TEST(HardyGapCheck, Examples) {
  const auto e = hardy_gap_check(half_indicator(), q(1), q(2));
  EXPECT_EQ(e.lhs, q(1, 2));
  EXPECT_EQ(e.rhs, q(1, 2));
  const auto c = hardy_gap_check(step({q(0), q(1)}, {q(3)}), q(1, 2), q(3, 2));
  EXPECT_EQ(c.lhs, q(0));
  EXPECT_EQ(c.rhs, q(0));
  const auto d = hardy_gap_check(step({q(0), q(1, 4), q(1)}, {q(4), q(0)}), q(1, 2), q(2));
  EXPECT_EQ(d.lhs, q(2));
  EXPECT_TRUE(d.holds());
  EXPECT_THROW(hardy_gap_check(step({q(0), q(1, 2), q(1)}, {q(0), q(1)}), q(1), q(2)), DomainError);
  EXPECT_THROW(hardy_gap_check(half_indicator(), q(1), q(1)), DomainError);
}

TEST(SolveRightEndpoint, FindsEqualMeanInterval) {
  const auto g = step({q(0), q(1, 4), q(1, 2), q(1)}, {q(3), q(1), q(0)});
  const auto b = solve_right_endpoint(g, q(0), q(1));
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(interval_average(g, q(0), *b), q(1));
  EXPECT_FALSE(solve_right_endpoint(g, q(0), q(5)).has_value());
}

TEST(RearrangementProperties, EquimeasurableAndMonotone) {
  Rng rng(21);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto [dim, depth] = dyadic::testing::random_shape(rng);
    const auto f = dyadic::testing::random_fractional(rng, dim, depth, 9, 2);
    const StepFunction s = rearrange_signed(f);
    const StepFunction a = rearrange_abs(f);
    ASSERT_TRUE(s.is_nonincreasing());
    ASSERT_TRUE(a.is_nonincreasing());
    ASSERT_EQ(reference::distribution(s), reference::distribution(f));
    ASSERT_EQ(reference::distribution(a), reference::distribution(f.absolute()));
    ASSERT_EQ(s.integral_to(q(1)), f.mean());
    for (std::size_t k = 1; k <= f.cell_count(); ++k) {
      const Rational t = Rational(static_cast<unsigned long>(k)) * f.cell_measure();
      ASSERT_EQ(supinf_formula(f, t), a(t));
    }
    if (f.is_nonnegative()) {
      ASSERT_EQ(s, a);
    }
  }
}

TEST(RearrangementProperties, HardyGapHolds) {
  Rng rng(22);
  std::uniform_int_distribution<long> tnum(1, 64);
  std::uniform_int_distribution<long> gnum(65, 400);
  for (int trial = 0; trial < 1200; ++trial) {
    const auto g = dyadic::testing::random_step(rng, 8, 16, true);
    const Rational t = make_rational(tnum(rng), 64);
    const Rational gamma = make_rational(gnum(rng), 64);
    const auto e = hardy_gap_check(g, t, gamma);
    ASSERT_TRUE(e.holds()) << to_string(e.lhs) << " > " << to_string(e.rhs);
  }
}

TEST(RearrangementProperties, EqualMeanSubintervalHasSmallerOscillation) {
  Rng rng(23);
  std::uniform_int_distribution<long> pt(0, 32);
  int instances = 0;
  while (instances < 1200) {
    const auto g = dyadic::testing::random_step(rng, 6, 16, true);
    long x = pt(rng), y = pt(rng), z = pt(rng);
    if (x == y) continue;
    if (x > y) std::swap(x, y);
    const Rational a1 = make_rational(x, 32), b1 = make_rational(y, 32);
    const Rational a = a1 + (b1 - a1) * make_rational(z, 64);
    const auto b = solve_right_endpoint(g, a, interval_average(g, a1, b1));
    if (!b || *b > b1) continue;
    ++instances;
    ASSERT_EQ(interval_average(g, a, *b), interval_average(g, a1, b1));
    ASSERT_LE(interval_mean_oscillation(g, a, *b), interval_mean_oscillation(g, a1, b1));
  }
}
