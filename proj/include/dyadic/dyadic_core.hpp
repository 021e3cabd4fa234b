#pragma once

#include "dyadic/dyadic_function.hpp"
#include "dyadic/rational.hpp"

#include <vector>

namespace dyadic {

enum class Side { above, below };

struct OscillationReport {
  CubeId cube;
  Rational average;
  Rational oscillation;
};

/// f_Q: exact mean of the cells inside q.
Rational cube_average(const DyadicFunction& f, const CubeId& q);

/// Omega(f,Q) = (1/|Q|) int_Q |f - f_Q|, with f_Q alongside.
OscillationReport mean_oscillation(const DyadicFunction& f, const CubeId& q);

/// (2/|Q|) int_{f > f_Q} (f - f_Q) for Side::above, (2/|Q|) int_{f < f_Q} (f_Q - f) for Side::below.
/// Both agree with the mean oscillation.
Rational one_sided_oscillation(const DyadicFunction& f, const CubeId& q, Side side);

/// Per-cube sums and absolute deviations for every level 0..L, computed once.
///
/// Cell values are brought to a common denominator D so that every quantity is an
/// integer: with z = D*value and c = 2^{n(L-k)} cells per level-k cube,
///   sum(k, Q)       = sum_{cells in Q} z
///   deviation(k, Q) = sum_{cells in Q} |c z - sum(k, Q)|
/// so f_Q = sum / (c D) and Omega(f, Q) = deviation / (c^2 D).
///
/// Each level is filled with an OpenMP loop over cubes. Results do not depend on
/// the thread count.
class CubeTable {
 public:
  explicit CubeTable(const DyadicFunction& f);

  int dim() const noexcept { return dim_; }
  int depth() const noexcept { return depth_; }
  const Integer& scale() const noexcept { return scale_; }
  std::size_t cube_count(int level) const noexcept { return sums_[static_cast<std::size_t>(level)].size(); }
  std::size_t cells_per_cube(int level) const noexcept { return std::size_t{1} << (dim_ * (depth_ - level)); }

  const Integer& sum(int level, std::size_t cube) const { return sums_[static_cast<std::size_t>(level)][cube]; }
  const Integer& deviation(int level, std::size_t cube) const {
    return deviations_[static_cast<std::size_t>(level)][cube];
  }

  Rational average(int level, std::size_t cube) const;
  Rational oscillation(int level, std::size_t cube) const;

 private:
  int dim_;
  int depth_;
  Integer scale_;
  std::vector<std::vector<Integer>> sums_;
  std::vector<std::vector<Integer>> deviations_;
};

struct BmoNorm {
  Rational value;
  CubeId argmax;
};

/// ||f||_{*,D}: the exact maximum of Omega(f,Q) over dyadic cubes of level 0..L.
/// Ties go to the smallest (level, flat index); cells themselves never win unless L = 0.
BmoNorm bmo_dyadic_norm(const DyadicFunction& f);
BmoNorm bmo_dyadic_norm(const CubeTable& table);

/// M_d f(x) = max over dyadic Q containing x of the average of |f| on Q; constant on cells.
DyadicFunction dyadic_maximal_function(const DyadicFunction& f);

/// |{x : f(x) - center > lambda}|, exact.
Rational distribution_above(const DyadicFunction& f, const Rational& lambda, const Rational& center);

/// |{x : |f(x) - center| > lambda}|, exact.
Rational distribution_abs(const DyadicFunction& f, const Rational& lambda, const Rational& center);

}  // namespace dyadic
