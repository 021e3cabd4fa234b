#include "dyadic/dyadic_function.hpp"

#include "dyadic/errors.hpp"

#include <algorithm>
#include <string>

namespace dyadic {

std::size_t CubeId::flat() const noexcept {
  std::size_t flat = 0;
  for (std::size_t m = index.size(); m-- > 0;) {
    flat = (flat << level) | static_cast<std::size_t>(index[m]);
  }
  return flat;
}

CubeId CubeId::from_flat(int dim, int level, std::size_t flat) {
  CubeId cube{level, std::vector<std::int64_t>(static_cast<std::size_t>(dim))};
  const std::size_t mask = (std::size_t{1} << level) - 1;
  for (int m = 0; m < dim; ++m) {
    cube.index[static_cast<std::size_t>(m)] = static_cast<std::int64_t>((flat >> (m * level)) & mask);
  }
  return cube;
}

CubeId CubeId::parent() const {
  CubeId up{level - 1, index};
  for (auto& i : up.index) i >>= 1;
  return up;
}

bool CubeId::contains(const CubeId& other) const noexcept {
  if (other.level < level || other.index.size() != index.size()) return false;
  const int shift = other.level - level;
  for (std::size_t m = 0; m < index.size(); ++m) {
    if ((other.index[m] >> shift) != index[m]) return false;
  }
  return true;
}

DyadicFunction::DyadicFunction(int dim, int depth, std::vector<Rational> cells)
    : dim_(dim), depth_(depth), cells_(std::move(cells)) {
  if (dim < 1) throw InputError("dimension must be at least 1");
  if (depth < 0) throw InputError("level must be nonnegative");
  if (static_cast<long>(dim) * depth > kMaxCellBits) {
    throw InputError("n*level = " + std::to_string(static_cast<long>(dim) * depth) + " exceeds the supported " +
                     std::to_string(kMaxCellBits));
  }
  const std::size_t expected = std::size_t{1} << (dim * depth);
  if (cells_.size() != expected) {
    throw InputError("expected " + std::to_string(expected) + " cell values for n=" + std::to_string(dim) +
                     ", level=" + std::to_string(depth) + ", got " + std::to_string(cells_.size()));
  }
}

DyadicFunction DyadicFunction::constant(int dim, int depth, const Rational& value) {
  if (dim < 1 || depth < 0 || static_cast<long>(dim) * depth > kMaxCellBits) {
    throw InputError("invalid grid shape");
  }
  return DyadicFunction(dim, depth, std::vector<Rational>(std::size_t{1} << (dim * depth), value));
}

Rational DyadicFunction::mean() const {
  Rational sum;
  for (const auto& v : cells_) sum += v;
  return sum * cell_measure();
}

Rational DyadicFunction::max_value() const { return *std::max_element(cells_.begin(), cells_.end()); }

Rational DyadicFunction::min_value() const { return *std::min_element(cells_.begin(), cells_.end()); }

bool DyadicFunction::is_nonnegative() const {
  return std::all_of(cells_.begin(), cells_.end(), [](const Rational& v) { return sgn(v) >= 0; });
}

bool DyadicFunction::is_constant() const {
  return std::all_of(cells_.begin(), cells_.end(), [&](const Rational& v) { return v == cells_.front(); });
}

DyadicFunction DyadicFunction::plus(const Rational& c) const {
  std::vector<Rational> out(cells_.size());
  for (std::size_t i = 0; i < cells_.size(); ++i) out[i] = cells_[i] + c;
  return DyadicFunction(dim_, depth_, std::move(out));
}

DyadicFunction DyadicFunction::times(const Rational& c) const {
  std::vector<Rational> out(cells_.size());
  for (std::size_t i = 0; i < cells_.size(); ++i) out[i] = cells_[i] * c;
  return DyadicFunction(dim_, depth_, std::move(out));
}

DyadicFunction DyadicFunction::absolute() const {
  std::vector<Rational> out(cells_.size());
  for (std::size_t i = 0; i < cells_.size(); ++i) out[i] = abs(cells_[i]);
  return DyadicFunction(dim_, depth_, std::move(out));
}

void DyadicFunction::check_cube(const CubeId& cube) const {
  if (cube.dim() != dim_) {
    throw DomainError("cube has " + std::to_string(cube.dim()) + " coordinates, function has dimension " +
                      std::to_string(dim_));
  }
  if (cube.level < 0) throw DomainError("cube level must be nonnegative");
  if (cube.level > depth_) {
    throw DomainError("cube level " + std::to_string(cube.level) + " is deeper than the function level " +
                      std::to_string(depth_));
  }
  const std::int64_t side = std::int64_t{1} << cube.level;
  for (auto i : cube.index) {
    if (i < 0 || i >= side) {
      throw DomainError("cube index " + std::to_string(i) + " out of range [0, " + std::to_string(side) + ")");
    }
  }
}

std::vector<std::size_t> DyadicFunction::cells_of(const CubeId& cube) const {
  check_cube(cube);
  const int shift = depth_ - cube.level;
  const std::size_t span = std::size_t{1} << shift;
  const std::size_t per_side = cells_per_side();

  std::vector<std::size_t> base(static_cast<std::size_t>(dim_));
  for (int m = 0; m < dim_; ++m) base[static_cast<std::size_t>(m)] = static_cast<std::size_t>(cube.index[static_cast<std::size_t>(m)]) << shift;

  std::vector<std::size_t> offset(static_cast<std::size_t>(dim_), 0);
  std::vector<std::size_t> out;
  out.reserve(std::size_t{1} << (shift * dim_));
  while (true) {
    std::size_t flat = 0;
    for (std::size_t m = offset.size(); m-- > 0;) flat = flat * per_side + base[m] + offset[m];
    out.push_back(flat);
    std::size_t m = 0;
    for (; m < offset.size(); ++m) {
      if (++offset[m] < span) break;
      offset[m] = 0;
    }
    if (m == offset.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

CubeId DyadicFunction::cube_of_cell(std::size_t flat, int level) const {
  CubeId cell = CubeId::from_flat(dim_, depth_, flat);
  for (auto& i : cell.index) i >>= (depth_ - level);
  cell.level = level;
  return cell;
}

}  // namespace dyadic
