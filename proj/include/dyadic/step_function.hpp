#pragma once

#include "dyadic/dyadic_function.hpp"
#include "dyadic/rational.hpp"

#include <optional>
#include <span>
#include <vector>

namespace dyadic {

/// Step function on (0,1]: value v_i on (t_{i-1}, t_i], with 0 = t_0 < ... < t_m = 1.
class StepFunction {
 public:
  StepFunction(std::vector<Rational> breakpoints, std::vector<Rational> values);

  std::size_t pieces() const noexcept { return values_.size(); }
  std::span<const Rational> breakpoints() const noexcept { return breakpoints_; }
  std::span<const Rational> values() const noexcept { return values_; }
  Rational length(std::size_t piece) const { return breakpoints_[piece + 1] - breakpoints_[piece]; }

  bool is_nonincreasing() const;

  /// Left-continuous evaluation, t in (0,1].
  Rational operator()(const Rational& t) const;

  /// Index of the piece (t_{i-1}, t_i] containing t in (0,1].
  std::size_t piece_at(const Rational& t) const;

  /// int_0^t g, t in [0,1].
  Rational integral_to(const Rational& t) const;
  Rational integral(const Rational& a, const Rational& b) const { return integral_to(b) - integral_to(a); }

  /// Equal adjacent values merged into one piece.
  StepFunction merged() const;

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  std::vector<Rational> breakpoints_;
  std::vector<Rational> values_;
  std::vector<Rational> prefix_;  // prefix_[i] = int_0^{t_i} g
};

/// f_d: the nonincreasing left-continuous rearrangement of f on (0,1].
/// Ties are ordered by ascending flat cell index before equal values merge.
StepFunction rearrange_signed(const DyadicFunction& f);

/// f*: the nonincreasing rearrangement of |f|.
StepFunction rearrange_abs(const DyadicFunction& f);

/// sup over |E| = t of inf_E |f|, by brute force over unions of cells: the k-th largest |value|
/// for t = k 2^{-nL}. Rejects t that is not a positive multiple of the cell measure.
Rational supinf_formula(const DyadicFunction& f, const Rational& t);

/// (1/t) int_0^t g, t in (0,1].
Rational hardy_average(const StepFunction& g, const Rational& t);

/// Omega(g, [a,b]) = (1/(b-a)) int_a^b |g - g_[a,b]|, for 0 <= a < b <= 1.
Rational interval_mean_oscillation(const StepFunction& g, const Rational& a, const Rational& b);

/// Mean of g over [a,b].
Rational interval_average(const StepFunction& g, const Rational& a, const Rational& b);

struct ExactInequality {
  Rational lhs;
  Rational rhs;
  bool holds() const { return lhs <= rhs; }
};

/// F(t/gamma) - F(t) against (gamma/2)(1/t) int_0^t |g - F(t)|, F the Hardy average of a
/// nonincreasing g. Requires gamma > 1 and t in (0,1].
ExactInequality hardy_gap_check(const StepFunction& g, const Rational& t, const Rational& gamma);

/// Right endpoint b in (a, 1] with interval_average(g, a, b) == target, if one exists.
/// Used to build instances of the equal-mean sub-interval comparison on monotone g.
std::optional<Rational> solve_right_endpoint(const StepFunction& g, const Rational& a, const Rational& target);

}  // namespace dyadic
