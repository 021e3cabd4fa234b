#include "dyadic/gurov_reshetnyak.hpp"

#include "dyadic/errors.hpp"
#include "dyadic/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace dyadic {

namespace {

void require_nonnegative(const DyadicFunction& f, const char* what) {
  if (!f.is_nonnegative()) throw DomainError(std::string(what) + " needs f >= 0 on every cell");
}

HpFloat from_exact(double value) { return HpFloat(value); }

HpFloat ln2(Round round) { return log(HpFloat(2L), round); }

HpFloat power_of_two(int exponent) {
  return HpFloat(pow2(exponent), Round::nearest);  // exact
}

Rational gr_threshold(int n) { return pow2(-(n - 1)); }

void require_gr_range(const Rational& epsilon, int n, const char* what) {
  if (!(epsilon < gr_threshold(n))) {
    throw DomainError(std::string(what) + " needs f in GR_D(Q0, epsilon) with epsilon < 1/2^{n-1} = " +
                      to_string(gr_threshold(n)) + "; this f has epsilon = " + to_string(epsilon));
  }
}

void require_t(const Rational& t, const char* what) {
  if (t <= 0 || t > 1) throw DomainError(std::string(what) + " needs t in (0, 1], got " + to_string(t));
}

bool le_with_tol(const Rational& lhs, double rhs, double tol) {
  if (std::isnan(rhs)) return false;
  if (std::isinf(rhs)) return rhs > 0;
  return lhs <= from_double(rhs) + from_double(tol);
}

}  // namespace

Rational GrProfile::at(const Rational& sigma) const {
  if (sigma < 0 || sigma > 1) throw DomainError("sigma must lie in [0, 1], got " + to_string(sigma));
  for (int k = 0; k <= depth; ++k) {
    if (sigma_breaks[static_cast<std::size_t>(k)] <= sigma) return values[static_cast<std::size_t>(k)];
  }
  return Rational(0);
}

int GrProfile::sigma_t_level(const Rational& t) const {
  require_t(t, "sigma_t");
  const Rational scaled = pow2(dim) * t;
  int k = 0;
  while (pow2(-static_cast<long>(dim) * k) > scaled) ++k;
  return k;
}

Rational GrProfile::at_sigma_t(const Rational& t) const {
  const int k = sigma_t_level(t);
  return k > depth ? Rational(0) : values[static_cast<std::size_t>(k)];
}

GrProfile gr_profile(const DyadicFunction& f, const CubeTable& table) {
  require_nonnegative(f, "the Gurov-Reshetnyak modulus");
  const int depth = f.depth();
  std::vector<Rational> level_max(static_cast<std::size_t>(depth) + 1);

  // deviation / (c sum) = Omega / f_Q, with c the cell count of the cube.
#pragma omp parallel for schedule(dynamic, 1)
  for (int k = 0; k <= depth; ++k) {
    const Integer c(static_cast<unsigned long>(table.cells_per_cube(k)));
    Rational best;
    for (std::size_t q = 0; q < table.cube_count(k); ++q) {
      const Integer& s = table.sum(k, q);
      if (sgn(s) == 0) continue;
      Rational ratio(table.deviation(k, q), c * s);
      ratio.canonicalize();
      if (ratio > best) best = ratio;
    }
    level_max[static_cast<std::size_t>(k)] = best;
  }

  GrProfile profile;
  profile.dim = f.dim();
  profile.depth = depth;
  profile.sigma_breaks.resize(static_cast<std::size_t>(depth) + 1);
  profile.values.resize(static_cast<std::size_t>(depth) + 1);
  Rational running;
  for (int k = depth; k >= 0; --k) {
    running = std::max(running, level_max[static_cast<std::size_t>(k)]);
    profile.values[static_cast<std::size_t>(k)] = running;
    profile.sigma_breaks[static_cast<std::size_t>(k)] = pow2(-k);
  }
  profile.epsilon_global = profile.values[0];
  return profile;
}

GrProfile gr_profile(const DyadicFunction& f) {
  require_nonnegative(f, "the Gurov-Reshetnyak modulus");
  return gr_profile(f, CubeTable(f));
}

Rational gr_modulus(const DyadicFunction& f, const Rational& sigma) { return gr_profile(f).at(sigma); }

Rational gr_membership(const DyadicFunction& f) { return gr_profile(f).epsilon_global; }

LocalOscillationCheck theorem3_check(const DyadicFunction& f, const GrProfile& profile, const Rational& t) {
  require_nonnegative(f, "the local oscillation bound");
  return theorem3_check(rearrange_abs(f), profile, t);
}

LocalOscillationCheck theorem3_check(const StepFunction& star, const GrProfile& profile, const Rational& t) {
  require_t(t, "the local oscillation bound");
  LocalOscillationCheck check;
  check.t = t;
  check.hardy = hardy_average(star, t);
  check.lhs = interval_mean_oscillation(star, Rational(0), t);
  check.b_t = profile.at_sigma_t(t);
  check.rhs = pow2(profile.dim) * check.hardy * check.b_t;
  return check;
}

LocalOscillationCheck theorem3_check(const DyadicFunction& f, const Rational& t) {
  return theorem3_check(f, gr_profile(f), t);
}

ExponentSolution solve_p(const Rational& epsilon, int n) {
  if (n < 1) throw DomainError("dimension must be >= 1");
  if (epsilon < 0 || !(epsilon < gr_threshold(n))) {
    throw DomainError("the exponent equation needs epsilon in [0, 1/2^{n-1}) = [0, " + to_string(gr_threshold(n)) +
                      "), got " + to_string(epsilon));
  }
  ExponentSolution sol;
  sol.epsilon = epsilon;
  sol.n = n;
  if (sgn(epsilon) == 0) {
    sol.p = sol.p_lower = kExponentCap;
    sol.residual = std::numeric_limits<double>::infinity();
    sol.capped = true;
    return sol;
  }

  const Rational target_q = 1 / (pow2(n - 1) * epsilon);
  const HpFloat target(target_q, Round::nearest);
  const HpFloat log_target = log(target, Round::nearest);
  const HpFloat one(1L);

  // g(p) = p ln p - s ln s with s = p - 1 the bisection variable; s ln s -> 0 as s -> 0.
  auto g = [&](const HpFloat& s) {
    const HpFloat p = add(s, one, Round::nearest);
    const HpFloat a = mul(p, log(p, Round::nearest), Round::nearest);
    const HpFloat b = mul(s, log(s, Round::nearest), Round::nearest);
    return sub(a, b, Round::nearest);
  };

  HpFloat lo(Rational(0), Round::nearest);
  HpFloat hi(Rational(kExponentCap - 1), Round::nearest);
  if (g(hi) < log_target) {
    sol.p = sol.p_lower = kExponentCap;
    sol.capped = true;
  } else {
    const HpFloat half(Rational(1, 2), Round::nearest);
    for (int it = 0; it < 400; ++it) {
      const HpFloat mid = mul(add(lo, hi, Round::nearest), half, Round::nearest);
      if (!(lo < mid) || !(mid < hi)) break;
      if (g(mid) < log_target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const HpFloat p_lo = add(lo, one, Round::down);
    const HpFloat p_mid = add(mul(add(lo, hi, Round::nearest), HpFloat(Rational(1, 2), Round::nearest), Round::nearest),
                              one, Round::nearest);
    sol.p = p_mid.to_double(Round::nearest);
    // Rounding in g is ~2^-250 relative and g' >= ln(1 + 1/p) > 1e-7 on the bracket, so
    // one double ulp below the bracket's left end is safely below the root.
    const double lo_d = p_lo.to_double(Round::down);
    sol.p_lower = std::max(1.0, std::nextafter(lo_d, 0.0));
    const HpFloat value = exp(g(sub(p_mid, one, Round::nearest)), Round::nearest);
    sol.residual = std::fabs(sub(value, target, Round::nearest).to_double(Round::up));
  }
  if (sol.capped) {
    const HpFloat p(Rational(kExponentCap), Round::nearest);
    const HpFloat s = sub(p, one, Round::nearest);
    const HpFloat value = exp(sub(mul(p, log(p, Round::nearest), Round::nearest),
                                  mul(s, log(s, Round::nearest), Round::nearest), Round::nearest),
                              Round::nearest);
    sol.residual = std::fabs(sub(value, target, Round::nearest).to_double(Round::up));
  }
  return sol;
}

bool PowerDecayCheck::holds(double tol) const { return le_with_tol(lhs, rhs, tol); }

PowerDecayCheck theorem5_check(const DyadicFunction& f, const ExponentSolution& exponent, const Rational& t) {
  require_nonnegative(f, "the power decay bound");
  require_t(t, "the power decay bound");
  PowerDecayCheck check;
  check.t = t;
  check.exponent = exponent;
  check.lhs = hardy_average(rearrange_abs(f), t);

  const HpFloat p = from_exact(exponent.p_lower);
  const HpFloat one(1L);
  const HpFloat factor = div(p, sub(p, one, Round::down), Round::up);
  const HpFloat mean(f.mean(), Round::up);
  const HpFloat neg_log_t = neg(log(HpFloat(t, Round::down), Round::down));
  const HpFloat decay = exp(div(neg_log_t, p, Round::up), Round::up);
  check.rhs = mul(mul(factor, mean, Round::up), decay, Round::up).to_double(Round::up);
  return check;
}

PowerDecayCheck theorem5_check(const DyadicFunction& f, const Rational& t) {
  const Rational epsilon = gr_membership(f);
  require_gr_range(epsilon, f.dim(), "the power decay bound");
  return theorem5_check(f, solve_p(epsilon, f.dim()), t);
}

ExpIntegralConstants exp_integral_constants(int n) {
  const HpFloat e = euler(Round::up);
  const HpFloat two_n = power_of_two(n);
  ExpIntegralConstants c;
  c.c1 = mul(two_n, exp(add(mul(two_n, e, Round::up), HpFloat(1L), Round::up), Round::up), Round::up)
             .to_double(Round::up);
  c.c2 = mul(mul(power_of_two(n - 1), e, Round::up), HpFloat(static_cast<long>(n)), Round::up).to_double(Round::up);
  c.c3 = mul(HpFloat(2L), exp(HpFloat(Rational(1, n), Round::up), Round::up), Round::up).to_double(Round::up);
  c.c4 = mul(two_n, mul(e, e, Round::up), Round::up).to_double(Round::up);
  return c;
}

bool ExpIntegralCheck::holds() const { return rational_le(lhs, rhs); }

ExpIntegralCheck theorem4_bound(const DyadicFunction& f, const GrProfile& profile, const Rational& t) {
  require_nonnegative(f, "the exponential integral bound");
  const int n = f.dim();
  if (t <= 0) throw DomainError("the exponential integral bound needs t > 0, got " + to_string(t));
  {
    // t 2^n e^2 <= 1, checked with e^2 rounded up.
    const HpFloat e = euler(Round::up);
    const HpFloat scaled = mul(HpFloat(pow2(n) * t, Round::up), mul(e, e, Round::up), Round::up);
    if (HpFloat(1L) < scaled) {
      throw DomainError("the exponential integral bound needs t <= 1/(2^n e^2), got t = " + to_string(t));
    }
  }

  ExpIntegralCheck check;
  check.t = t;
  check.constants = exp_integral_constants(n);
  check.lhs = hardy_average(rearrange_abs(f), t);

  // ln(c3 t^{1/n}) = ln 2 + 1/n + (ln t)/n, rounded down so the integral is overestimated.
  const HpFloat inv_n_up(Rational(1, n), Round::up);
  const HpFloat inv_n_down(Rational(1, n), Round::down);
  const HpFloat log_t_down = log(HpFloat(t, Round::down), Round::down);
  const HpFloat log_lower = add(add(ln2(Round::down), inv_n_down, Round::down),
                                mul(log_t_down, inv_n_up, Round::down), Round::down);

  HpFloat integral;
  for (int k = 1; k <= profile.depth; ++k) {
    const Rational& v = profile.values[static_cast<std::size_t>(k)];
    if (sgn(v) == 0) continue;
    const HpFloat hi = neg(mul(HpFloat(static_cast<long>(k - 1)), ln2(Round::down), Round::down));
    HpFloat lo = neg(mul(HpFloat(static_cast<long>(k)), ln2(Round::up), Round::up));
    if (lo < log_lower) lo = log_lower;
    if (!(lo < hi)) continue;
    integral = add(integral, mul(HpFloat(v, Round::up), sub(hi, lo, Round::up), Round::up), Round::up);
  }
  check.integral = integral.to_double(Round::up);

  const HpFloat e = euler(Round::up);
  const HpFloat two_n = power_of_two(n);
  const HpFloat c1 = mul(two_n, exp(add(mul(two_n, e, Round::up), HpFloat(1L), Round::up), Round::up), Round::up);
  const HpFloat c2 = mul(mul(power_of_two(n - 1), e, Round::up), HpFloat(static_cast<long>(n)), Round::up);
  const HpFloat rhs =
      mul(mul(c1, HpFloat(f.mean(), Round::up), Round::up), exp(mul(c2, integral, Round::up), Round::up), Round::up);
  check.rhs = rhs.to_double(Round::up);
  return check;
}

ExpIntegralCheck theorem4_bound(const DyadicFunction& f, const Rational& t) {
  return theorem4_bound(f, gr_profile(f), t);
}

bool LqTailCheck::holds(double tol) const {
  if (exact) return le_with_tol(lq_exact, bound, tol);
  return lq_upper <= bound + tol;
}

LqTailCheck lq_tail_bound(const DyadicFunction& f, double q) {
  require_nonnegative(f, "the L^q bound");
  const Rational epsilon = gr_membership(f);
  require_gr_range(epsilon, f.dim(), "the L^q bound");
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("the L^q bound needs q >= 1");
  const ExponentSolution exponent = solve_p(epsilon, f.dim());
  if (!(q < exponent.p_lower)) {
    throw DomainError("the L^q bound holds for q in [1, p) with p = " + std::to_string(exponent.p) + "; got q = " +
                      std::to_string(q));
  }

  LqTailCheck check;
  check.q = q;
  check.exponent = exponent;
  const Rational measure = f.cell_measure();
  if (q == std::floor(q) && q <= 64) {
    const auto power = static_cast<unsigned long>(q);
    Rational sum;
    for (const auto& v : f.cells()) {
      Integer num, den;
      mpz_pow_ui(num.get_mpz_t(), v.get_num_mpz_t(), power);
      mpz_pow_ui(den.get_mpz_t(), v.get_den_mpz_t(), power);
      sum += Rational(num, den);
    }
    check.exact = true;
    check.lq_exact = sum * measure;
    check.lq_upper = HpFloat(check.lq_exact, Round::up).to_double(Round::up);
  } else {
    const HpFloat qf = from_exact(q);
    HpFloat sum;
    for (const auto& v : f.cells()) {
      if (sgn(v) == 0) continue;
      sum = add(sum, pow(HpFloat(v, Round::up), qf, Round::up), Round::up);
    }
    check.lq_upper = mul(sum, HpFloat(measure, Round::up), Round::up).to_double(Round::up);
  }

  const HpFloat p = from_exact(exponent.p_lower);
  const HpFloat qf = from_exact(q);
  const HpFloat one(1L);
  const HpFloat factor = div(p, sub(p, one, Round::down), Round::up);
  const HpFloat scaled = mul(factor, HpFloat(f.mean(), Round::up), Round::up);
  const HpFloat tail = div(p, sub(p, qf, Round::down), Round::up);
  check.bound = mul(pow(scaled, qf, Round::up), tail, Round::up).to_double(Round::up);
  return check;
}

std::vector<Rational> exp_integral_t_grid(int n) {
  std::vector<Rational> grid;
  for (long k = 1; k <= 16; ++k) {
    Rational t = make_rational(k, 16) * pow2(-(n + 3));
    grid.push_back(t);
  }
  return grid;
}

}  // namespace dyadic
