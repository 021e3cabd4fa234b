#pragma once

#include "dyadic/dyadic_core.hpp"
#include "dyadic/dyadic_function.hpp"
#include "dyadic/hp_float.hpp"
#include "dyadic/rational.hpp"
#include "dyadic/step_function.hpp"

#include <vector>

namespace dyadic {

/// v(f; sigma) as a step function of sigma. v jumps only at the dyadic sides 2^-k:
/// for sigma in [2^-k, 2^-k+1) it equals values[k], the largest Omega(f,Q)/f_Q over
/// cubes of level >= k. Below 2^-L it is 0.
struct GrProfile {
  int dim = 0;
  int depth = 0;
  std::vector<Rational> sigma_breaks;  // 2^-k for k = 0..L
  std::vector<Rational> values;        // values[k] = v(f; 2^-k), nonincreasing in k
  Rational epsilon_global;             // v(f; 1)

  /// v(f; sigma) for sigma in [0, 1].
  Rational at(const Rational& sigma) const;

  /// Index k* of the largest dyadic side <= sigma_t = min(2 t^{1/n}, 1); t in (0, 1].
  /// Decided with integers: the least k >= 0 with 2^{-nk} <= 2^n t.
  int sigma_t_level(const Rational& t) const;

  /// B_t = v(f; sigma_t), exact.
  Rational at_sigma_t(const Rational& t) const;
};

/// Requires f >= 0 (DomainError otherwise).
GrProfile gr_profile(const DyadicFunction& f);
GrProfile gr_profile(const DyadicFunction& f, const CubeTable& table);

/// Exact max of Omega(f,Q)/f_Q over dyadic cubes with side <= sigma; cubes with f_Q = 0 count 0.
Rational gr_modulus(const DyadicFunction& f, const Rational& sigma);

/// Smallest epsilon with f in GR_D(Q0, epsilon), i.e. v(f; 1). Always <= 2.
Rational gr_membership(const DyadicFunction& f);

/// Both sides of (1/t) int_0^t |f* - f**(t)| <= 2^n f**(t) v(f; sigma_t), exact.
struct LocalOscillationCheck {
  Rational t;
  Rational lhs;
  Rational rhs;
  Rational hardy;   // f**(t)
  Rational b_t;     // v(f; sigma_t)
  bool holds() const { return lhs <= rhs; }
};

LocalOscillationCheck theorem3_check(const DyadicFunction& f, const Rational& t);
LocalOscillationCheck theorem3_check(const DyadicFunction& f, const GrProfile& profile, const Rational& t);
/// Same, with f* = rearrange_abs(f) supplied by a caller sweeping many t.
LocalOscillationCheck theorem3_check(const StepFunction& star, const GrProfile& profile, const Rational& t);

/// The p > 1 solving p^p / (p-1)^{p-1} = 1 / (2^{n-1} epsilon).
struct ExponentSolution {
  Rational epsilon;
  int n = 1;
  double p = 0.0;        // nearest
  double p_lower = 0.0;  // certified p_lower <= p, used for conservative bounds
  double residual = 0.0; // |p^p / (p-1)^{p-1} - 1 / (2^{n-1} epsilon)| at the 256-bit midpoint
  bool capped = false;   // root beyond kExponentCap, or epsilon = 0
};

inline constexpr double kExponentCap = 1e6;

/// Bisection on g(p) = p ln p - (p-1) ln(p-1) = ln(1/(2^{n-1} epsilon)), increasing with g(1+) = 0.
/// Accepts 0 <= epsilon < 2^{-(n-1)}; epsilon = 0 returns the cap. Otherwise DomainError.
ExponentSolution solve_p(const Rational& epsilon, int n);

/// f**(t) <= (p/(p-1)) f_{Q0} t^{-1/p}. rhs uses p_lower and is rounded up.
struct PowerDecayCheck {
  Rational t;
  Rational lhs;
  double rhs = 0.0;
  ExponentSolution exponent;
  bool holds(double tol) const;
};

/// Requires f >= 0 and gr_membership(f) < 2^{-(n-1)}.
PowerDecayCheck theorem5_check(const DyadicFunction& f, const Rational& t);
PowerDecayCheck theorem5_check(const DyadicFunction& f, const ExponentSolution& exponent, const Rational& t);

struct ExpIntegralConstants {
  double c1 = 0.0;  // 2^n exp(2^n e + 1)
  double c2 = 0.0;  // 2^{n-1} e n
  double c3 = 0.0;  // 2 e^{1/n}
  double c4 = 0.0;  // 2^n e^2, the admissible range is t <= 1/c4
};

/// Constants rounded up.
ExpIntegralConstants exp_integral_constants(int n);

/// f**(t) <= c1 f_{Q0} exp(c2 int_{c3 t^{1/n}}^1 v(f; sigma) dsigma / sigma).
/// The integral is sum_k v_k times a log length; every transcendental term is rounded up.
struct ExpIntegralCheck {
  Rational t;
  Rational lhs;
  double integral = 0.0;
  double rhs = 0.0;
  ExpIntegralConstants constants;
  bool holds() const;
};

/// Requires f >= 0 and t in (0, 1/(2^n e^2)].
ExpIntegralCheck theorem4_bound(const DyadicFunction& f, const Rational& t);
ExpIntegralCheck theorem4_bound(const DyadicFunction& f, const GrProfile& profile, const Rational& t);

/// int f^q against (p/(p-1))^q f_{Q0}^q p/(p-q), from integrating the f** bound.
struct LqTailCheck {
  double q = 1.0;
  bool exact = false;
  Rational lq_exact;     // set when q is an integer
  double lq_upper = 0.0; // int f^q rounded up
  double bound = 0.0;    // rounded up, with p_lower
  ExponentSolution exponent;
  bool holds(double tol) const;
};

/// Requires f >= 0, gr_membership(f) < 2^{-(n-1)} and 1 <= q < p.
LqTailCheck lq_tail_bound(const DyadicFunction& f, double q);

/// t = k 2^{-(n+3)} / 16, k = 1..16: a grid inside (0, 1/(2^n e^2)].
std::vector<Rational> exp_integral_t_grid(int n);

}  // namespace dyadic
