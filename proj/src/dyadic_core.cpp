#include "dyadic/dyadic_core.hpp"

#include "dyadic/errors.hpp"

#include <algorithm>
#include <cstdint>

namespace dyadic {

namespace {

/// Flat offsets (in level-L cell coordinates) of a block of 2^shift cells per side.
std::vector<std::size_t> block_offsets(int dim, int depth, int shift) {
  const std::size_t span = std::size_t{1} << shift;
  const std::size_t per_side = std::size_t{1} << depth;
  std::vector<std::size_t> out;
  out.reserve(std::size_t{1} << (dim * shift));
  std::vector<std::size_t> o(static_cast<std::size_t>(dim), 0);
  while (true) {
    std::size_t flat = 0;
    for (std::size_t m = o.size(); m-- > 0;) flat = flat * per_side + o[m];
    out.push_back(flat);
    std::size_t m = 0;
    for (; m < o.size(); ++m) {
      if (++o[m] < span) break;
      o[m] = 0;
    }
    if (m == o.size()) break;
  }
  return out;
}

/// Flat cell index of the lowest corner cell of a level-`level` cube.
std::size_t cube_base_cell(int dim, int depth, int level, std::size_t cube_flat) {
  const int shift = depth - level;
  const std::size_t mask = (std::size_t{1} << level) - 1;
  std::size_t flat = 0;
  for (int m = dim; m-- > 0;) {
    const std::size_t i = (cube_flat >> (m * level)) & mask;
    flat = (flat << depth) | (i << shift);
  }
  return flat;
}

Integer common_denominator(std::span<const Rational> values) {
  Integer lcm = 1;
  for (const auto& v : values) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  return lcm;
}

std::vector<Integer> scaled_cells(std::span<const Rational> values, const Integer& scale) {
  std::vector<Integer> z(values.size());
  const auto count = static_cast<std::int64_t>(values.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto& v = values[static_cast<std::size_t>(i)];
    Integer factor = scale / v.get_den();
    z[static_cast<std::size_t>(i)] = v.get_num() * factor;
  }
  return z;
}

/// Level-by-level cube sums, children first. sums[k][cube] for k = 0..L.
std::vector<std::vector<Integer>> cube_sums(int dim, int depth, std::vector<Integer> leaf) {
  std::vector<std::vector<Integer>> sums(static_cast<std::size_t>(depth) + 1);
  sums[static_cast<std::size_t>(depth)] = std::move(leaf);
  const std::size_t children = std::size_t{1} << dim;
  for (int level = depth; level-- > 0;) {
    const auto& below = sums[static_cast<std::size_t>(level) + 1];
    auto& here = sums[static_cast<std::size_t>(level)];
    const std::size_t count = std::size_t{1} << (dim * level);
    here.assign(count, Integer(0));
    const std::size_t mask = (std::size_t{1} << level) - 1;
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(count); ++c) {
      const auto cube = static_cast<std::size_t>(c);
      Integer acc = 0;
      for (std::size_t e = 0; e < children; ++e) {
        std::size_t child = 0;
        for (int m = dim; m-- > 0;) {
          const std::size_t i = (cube >> (m * level)) & mask;
          child = (child << (level + 1)) | ((i << 1) | ((e >> m) & 1U));
        }
        acc += below[child];
      }
      here[cube] = std::move(acc);
    }
  }
  return sums;
}

}  // namespace

CubeTable::CubeTable(const DyadicFunction& f) : dim_(f.dim()), depth_(f.depth()) {
  scale_ = common_denominator(f.cells());
  std::vector<Integer> z = scaled_cells(f.cells(), scale_);
  sums_ = cube_sums(dim_, depth_, z);

  deviations_.resize(static_cast<std::size_t>(depth_) + 1);
  deviations_[static_cast<std::size_t>(depth_)].assign(f.cell_count(), Integer(0));
  for (int level = 0; level < depth_; ++level) {
    const auto offsets = block_offsets(dim_, depth_, depth_ - level);
    const Integer cells(static_cast<unsigned long>(offsets.size()));
    const auto& sums = sums_[static_cast<std::size_t>(level)];
    auto& dev = deviations_[static_cast<std::size_t>(level)];
    dev.assign(sums.size(), Integer(0));
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(sums.size()); ++c) {
      const auto cube = static_cast<std::size_t>(c);
      const std::size_t base = cube_base_cell(dim_, depth_, level, cube);
      Integer acc = 0;
      Integer term;
      for (auto off : offsets) {
        term = cells * z[base + off] - sums[cube];
        acc += abs(term);
      }
      dev[cube] = std::move(acc);
    }
  }
}

Rational CubeTable::average(int level, std::size_t cube) const {
  Rational value(sum(level, cube), scale_ * static_cast<unsigned long>(cells_per_cube(level)));
  value.canonicalize();
  return value;
}

Rational CubeTable::oscillation(int level, std::size_t cube) const {
  const Integer c(static_cast<unsigned long>(cells_per_cube(level)));
  Rational value(deviation(level, cube), c * c * scale_);
  value.canonicalize();
  return value;
}

Rational cube_average(const DyadicFunction& f, const CubeId& q) {
  const auto cells = f.cells_of(q);
  Rational sum;
  for (auto i : cells) sum += f[i];
  return sum / static_cast<unsigned long>(cells.size());
}

OscillationReport mean_oscillation(const DyadicFunction& f, const CubeId& q) {
  const auto cells = f.cells_of(q);
  Rational avg;
  for (auto i : cells) avg += f[i];
  avg /= static_cast<unsigned long>(cells.size());
  Rational dev;
  for (auto i : cells) dev += abs(f[i] - avg);
  dev /= static_cast<unsigned long>(cells.size());
  return OscillationReport{q, avg, dev};
}

Rational one_sided_oscillation(const DyadicFunction& f, const CubeId& q, Side side) {
  const auto cells = f.cells_of(q);
  Rational avg;
  for (auto i : cells) avg += f[i];
  avg /= static_cast<unsigned long>(cells.size());
  Rational acc;
  for (auto i : cells) {
    if (side == Side::above && f[i] > avg) acc += f[i] - avg;
    if (side == Side::below && f[i] < avg) acc += avg - f[i];
  }
  return 2 * acc / static_cast<unsigned long>(cells.size());
}

BmoNorm bmo_dyadic_norm(const CubeTable& table) {
  // Omega at level k is deviation / (2^{2n(L-k)} D); comparing deviation * 2^{2nk} orders all levels.
  const int n = table.dim();
  const int top = table.depth() == 0 ? 0 : table.depth() - 1;
  Integer best_key = -1;
  int best_level = 0;
  std::size_t best_cube = 0;
  for (int level = 0; level <= top; ++level) {
    const std::size_t count = table.cube_count(level);
    std::size_t arg = 0;
    for (std::size_t c = 1; c < count; ++c) {
      if (table.deviation(level, c) > table.deviation(level, arg)) arg = c;
    }
    Integer key = table.deviation(level, arg);
    mpz_mul_2exp(key.get_mpz_t(), key.get_mpz_t(), static_cast<mp_bitcnt_t>(2 * n * level));
    if (key > best_key) {
      best_key = key;
      best_level = level;
      best_cube = arg;
    }
  }
  return BmoNorm{table.oscillation(best_level, best_cube), CubeId::from_flat(n, best_level, best_cube)};
}

BmoNorm bmo_dyadic_norm(const DyadicFunction& f) { return bmo_dyadic_norm(CubeTable(f)); }

DyadicFunction dyadic_maximal_function(const DyadicFunction& f) {
  const int n = f.dim();
  const int depth = f.depth();
  const CubeTable table(f.absolute());

  // avg at level k = sum * 2^{nk} / (2^{nL} D), so key = sum << nk is comparable across levels.
  std::vector<Integer> best(1);
  best[0] = table.sum(0, 0);
  for (int level = 1; level <= depth; ++level) {
    const std::size_t count = table.cube_count(level);
    std::vector<Integer> next(count);
    const std::size_t mask = (std::size_t{1} << level) - 1;
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(count); ++c) {
      const auto cube = static_cast<std::size_t>(c);
      std::size_t parent = 0;
      for (int m = n; m-- > 0;) {
        const std::size_t i = (cube >> (m * level)) & mask;
        parent = (parent << (level - 1)) | (i >> 1);
      }
      Integer key = table.sum(level, cube);
      mpz_mul_2exp(key.get_mpz_t(), key.get_mpz_t(), static_cast<mp_bitcnt_t>(n * level));
      next[cube] = key > best[parent] ? key : best[parent];
    }
    best = std::move(next);
  }

  std::vector<Rational> cells(best.size());
  Integer denom = table.scale();
  mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), static_cast<mp_bitcnt_t>(n * depth));
  for (std::size_t i = 0; i < best.size(); ++i) {
    cells[i] = Rational(best[i], denom);
    cells[i].canonicalize();
  }
  return DyadicFunction(n, depth, std::move(cells));
}

Rational distribution_above(const DyadicFunction& f, const Rational& lambda, const Rational& center) {
  const Rational cut = center + lambda;
  unsigned long count = 0;
  for (const auto& v : f.cells()) {
    if (v > cut) ++count;
  }
  return Rational(count) * f.cell_measure();
}

Rational distribution_abs(const DyadicFunction& f, const Rational& lambda, const Rational& center) {
  unsigned long count = 0;
  for (const auto& v : f.cells()) {
    if (abs(v - center) > lambda) ++count;
  }
  return Rational(count) * f.cell_measure();
}

}  // namespace dyadic
