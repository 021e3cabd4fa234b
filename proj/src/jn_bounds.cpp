#include "dyadic/jn_bounds.hpp"

#include "dyadic/dyadic_core.hpp"
#include "dyadic/errors.hpp"
#include "dyadic/step_function.hpp"

#include <cmath>

namespace dyadic {

namespace {

bool le_with_tol(const Rational& lhs, double rhs, double tol) {
  if (std::isnan(rhs)) return false;
  if (std::isinf(rhs)) return rhs > 0;
  return lhs <= from_double(rhs) + from_double(tol);
}

void require_lambda(const Rational& lambda) {
  if (lambda <= 0) throw DomainError("the distribution bound needs lambda > 0, got " + to_string(lambda));
}

}  // namespace

JnConstants jn_constants(int n) {
  JnConstants c;
  c.n = n;
  const HpFloat denom = mul(HpFloat(pow2(n - 1), Round::nearest), euler(Round::up), Round::up);
  c.b = div(HpFloat(1L), denom, Round::down).to_double(Round::down);
  c.big_b = euler(Round::up).to_double(Round::up);
  return c;
}

double jn_bound(int n, const Rational& norm, const Rational& lambda) {
  // Exponent -lambda / (2^{n-1} e norm) rounded up: the denominator rounded up.
  const HpFloat denom =
      mul(HpFloat(pow2(n - 1) * norm, Round::up), euler(Round::up), Round::up);
  const HpFloat exponent = neg(div(HpFloat(lambda, Round::down), denom, Round::down));
  return mul(euler(Round::up), exp(exponent, Round::up), Round::up).to_double(Round::up);
}

bool LogBoundCheck::holds(double tol) const { return le_with_tol(lhs, rhs, tol); }

LogBoundCheck logbound_check(const DyadicFunction& f, const Rational& norm, const Rational& t) {
  if (sgn(f.mean()) != 0) {
    throw DomainError("the logarithmic rearrangement bound needs int f = 0; f has mean " + to_string(f.mean()) +
                      " (subtract it first)");
  }
  if (t <= 0 || t > 1) throw DomainError("the logarithmic rearrangement bound needs t in (0, 1], got " + to_string(t));
  LogBoundCheck check;
  check.t = t;
  check.lhs = rearrange_signed(f)(t);
  // 2^{n-1} e norm (1 - ln t), every factor rounded up.
  const HpFloat log_factor = sub(HpFloat(1L), log(HpFloat(t, Round::down), Round::down), Round::up);
  const HpFloat scale = mul(HpFloat(pow2(f.dim() - 1) * norm, Round::up), euler(Round::up), Round::up);
  check.rhs = mul(scale, log_factor, Round::up).to_double(Round::up);
  return check;
}

LogBoundCheck logbound_check(const DyadicFunction& f, const Rational& t) {
  return logbound_check(f, bmo_dyadic_norm(f).value, t);
}

bool DistributionCheck::holds(double tol) const {
  if (trivial) return sgn(measure) == 0;
  return le_with_tol(measure, bound, tol);
}

DistributionCheck jn_check(const DyadicFunction& f, const Rational& norm, const Rational& lambda) {
  require_lambda(lambda);
  DistributionCheck check;
  check.lambda = lambda;
  check.measure = distribution_above(f, lambda, f.mean());
  if (sgn(norm) == 0) {
    check.trivial = true;
    return check;
  }
  check.bound = jn_bound(f.dim(), norm, lambda);
  return check;
}

DistributionCheck jn_check(const DyadicFunction& f, const Rational& lambda) {
  return jn_check(f, bmo_dyadic_norm(f).value, lambda);
}

DistributionCheck jn_abs_check(const DyadicFunction& f, const Rational& norm, const Rational& lambda) {
  if (!f.is_nonnegative()) throw DomainError("the two-sided distribution bound is stated for f >= 0");
  require_lambda(lambda);
  DistributionCheck check;
  check.lambda = lambda;
  check.measure = distribution_abs(f, lambda, f.mean());
  if (sgn(norm) == 0) {
    check.trivial = true;
    return check;
  }
  check.bound = jn_bound(f.dim(), norm, lambda);
  return check;
}

DistributionCheck jn_abs_check(const DyadicFunction& f, const Rational& lambda) {
  return jn_abs_check(f, bmo_dyadic_norm(f).value, lambda);
}

std::vector<Rational> lambda_grid(const DyadicFunction& f, int count) {
  if (count < 1) throw DomainError("lambda grid needs at least one point");
  Rational range = f.max_value() - f.min_value();
  if (sgn(range) == 0) range = 1;
  std::vector<Rational> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (int k = 1; k <= count; ++k) {
    Rational lambda = 2 * range * k / count;
    lambda.canonicalize();
    grid.push_back(lambda);
  }
  return grid;
}

}  // namespace dyadic
