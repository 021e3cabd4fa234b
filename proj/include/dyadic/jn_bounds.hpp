#pragma once

#include "dyadic/dyadic_function.hpp"
#include "dyadic/hp_float.hpp"
#include "dyadic/rational.hpp"

#include <vector>

namespace dyadic {

/// b = 1/(2^{n-1} e) and B = e. Doubles are the rounded-down b and rounded-up B.
struct JnConstants {
  int n = 1;
  double b = 0.0;
  double big_b = 0.0;
};

JnConstants jn_constants(int n);

/// f_d(t) <= 2^{n-1} e ||f||_{*,D} ln(e/t) for mean-zero f. rhs is rounded up.
struct LogBoundCheck {
  Rational t;
  Rational lhs;
  double rhs = 0.0;
  bool holds(double tol) const;
};

/// Requires the exact mean of f to be 0 and t in (0, 1].
LogBoundCheck logbound_check(const DyadicFunction& f, const Rational& t);
LogBoundCheck logbound_check(const DyadicFunction& f, const Rational& norm, const Rational& t);

/// Distribution against B exp(-b lambda / ||f||_{*,D}). bound is rounded up.
/// A zero norm makes f constant: the measure is 0 and the check passes trivially with bound 0.
struct DistributionCheck {
  Rational lambda;
  Rational measure;
  double bound = 0.0;
  bool trivial = false;
  bool holds(double tol) const;
};

/// |{f - f_{Q0} > lambda}|. Requires lambda > 0.
DistributionCheck jn_check(const DyadicFunction& f, const Rational& lambda);
DistributionCheck jn_check(const DyadicFunction& f, const Rational& norm, const Rational& lambda);

/// |{|f - f_{Q0}| > lambda}|, stated for f >= 0. Requires lambda > 0.
DistributionCheck jn_abs_check(const DyadicFunction& f, const Rational& lambda);
DistributionCheck jn_abs_check(const DyadicFunction& f, const Rational& norm, const Rational& lambda);

/// lambda_k = k * 2 range(f) / count for k = 1..count; range(f) = max - min, or 1 for constant f.
std::vector<Rational> lambda_grid(const DyadicFunction& f, int count);

/// e exp(-lambda / (2^{n-1} e norm)), rounded up; norm > 0.
double jn_bound(int n, const Rational& norm, const Rational& lambda);

}  // namespace dyadic
