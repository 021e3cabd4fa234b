#pragma once

#include "dyadic/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dyadic {

/// Address of the dyadic cube prod_m (i_m 2^-k, (i_m + 1) 2^-k] in [0,1]^n.
struct CubeId {
  int level = 0;
  std::vector<std::int64_t> index;

  static CubeId root(int dim) { return CubeId{0, std::vector<std::int64_t>(static_cast<std::size_t>(dim), 0)}; }

  int dim() const noexcept { return static_cast<int>(index.size()); }

  /// i_1 + i_2 2^k + ... + i_n 2^{(n-1)k}
  std::size_t flat() const noexcept;

  static CubeId from_flat(int dim, int level, std::size_t flat);

  Rational measure() const { return pow2(-static_cast<long>(dim()) * level); }
  Rational side() const { return pow2(-level); }

  /// Undefined for the root; callers check level > 0.
  CubeId parent() const;
  bool contains(const CubeId& other) const noexcept;

  friend bool operator==(const CubeId&, const CubeId&) = default;
};

/// Orders by (level, flat index); the deterministic order used for sets of cubes.
struct CubeOrder {
  bool operator()(const CubeId& a, const CubeId& b) const noexcept {
    if (a.level != b.level) return a.level < b.level;
    return a.flat() < b.flat();
  }
};

/// A function on [0,1]^n that is constant on every level-L dyadic cell.
/// Cells are stored flat with i_1 fastest: flat = i_1 + i_2 2^L + ... + i_n 2^{(n-1)L}.
class DyadicFunction {
 public:
  static constexpr int kMaxCellBits = 26;

  DyadicFunction(int dim, int depth, std::vector<Rational> cells);

  static DyadicFunction constant(int dim, int depth, const Rational& value);

  int dim() const noexcept { return dim_; }
  int depth() const noexcept { return depth_; }
  std::size_t cell_count() const noexcept { return cells_.size(); }
  std::size_t cells_per_side() const noexcept { return std::size_t{1} << depth_; }
  std::span<const Rational> cells() const noexcept { return cells_; }
  const Rational& operator[](std::size_t flat) const { return cells_[flat]; }

  /// 2^{-nL}
  Rational cell_measure() const { return pow2(-static_cast<long>(dim_) * depth_); }
  Rational mean() const;
  Rational max_value() const;
  Rational min_value() const;
  bool is_nonnegative() const;
  bool is_constant() const;

  DyadicFunction plus(const Rational& c) const;
  DyadicFunction times(const Rational& c) const;
  DyadicFunction absolute() const;

  /// Throws DomainError when the cube is deeper than the cells or out of range.
  void check_cube(const CubeId& cube) const;

  /// Flat indices of the level-L cells inside `cube`, in increasing order.
  std::vector<std::size_t> cells_of(const CubeId& cube) const;

  /// Cube at `level` containing the given cell.
  CubeId cube_of_cell(std::size_t flat, int level) const;

  friend bool operator==(const DyadicFunction&, const DyadicFunction&) = default;

 private:
  int dim_;
  int depth_;
  std::vector<Rational> cells_;
};

}  // namespace dyadic
