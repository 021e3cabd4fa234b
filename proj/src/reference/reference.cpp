#include "reference.hpp"

#include <algorithm>
#include <map>

namespace dyadic::reference {

std::vector<std::int64_t> cell_coordinates(const DyadicFunction& f, std::size_t flat) {
  std::vector<std::int64_t> coords(static_cast<std::size_t>(f.dim()));
  const std::size_t side = f.cells_per_side();
  for (auto& c : coords) {
    c = static_cast<std::int64_t>(flat % side);
    flat /= side;
  }
  return coords;
}

bool cell_in_cube(const DyadicFunction& f, std::size_t flat, const CubeId& q) {
  const auto coords = cell_coordinates(f, flat);
  const int shift = f.depth() - q.level;
  for (std::size_t m = 0; m < coords.size(); ++m) {
    if ((coords[m] >> shift) != q.index[m]) return false;
  }
  return true;
}

Rational average(const DyadicFunction& f, const CubeId& q) {
  Rational sum;
  long count = 0;
  for (std::size_t c = 0; c < f.cell_count(); ++c) {
    if (cell_in_cube(f, c, q)) {
      sum += f[c];
      ++count;
    }
  }
  return sum / count;
}

Rational oscillation(const DyadicFunction& f, const CubeId& q) {
  const Rational avg = average(f, q);
  Rational sum;
  long count = 0;
  for (std::size_t c = 0; c < f.cell_count(); ++c) {
    if (cell_in_cube(f, c, q)) {
      sum += abs(f[c] - avg);
      ++count;
    }
  }
  return sum / count;
}

Rational bmo_norm(const DyadicFunction& f) {
  Rational best;
  const int top = f.depth() == 0 ? 0 : f.depth() - 1;
  for (int level = 0; level <= top; ++level) {
    const std::size_t count = std::size_t{1} << (f.dim() * level);
    for (std::size_t flat = 0; flat < count; ++flat) {
      best = std::max(best, oscillation(f, CubeId::from_flat(f.dim(), level, flat)));
    }
  }
  return best;
}

std::vector<Rational> maximal_function(const DyadicFunction& f) {
  const DyadicFunction a = f.absolute();
  std::vector<Rational> out(f.cell_count());
  for (std::size_t c = 0; c < f.cell_count(); ++c) {
    Rational best = a[c];
    for (int level = 0; level < f.depth(); ++level) {
      best = std::max(best, average(a, f.cube_of_cell(c, level)));
    }
    out[c] = best;
  }
  return out;
}

std::vector<Rational> gr_levels(const DyadicFunction& f) {
  std::vector<Rational> per_level(static_cast<std::size_t>(f.depth()) + 1);
  for (int level = 0; level <= f.depth(); ++level) {
    const std::size_t count = std::size_t{1} << (f.dim() * level);
    for (std::size_t flat = 0; flat < count; ++flat) {
      const CubeId q = CubeId::from_flat(f.dim(), level, flat);
      const Rational avg = average(f, q);
      if (sgn(avg) == 0) continue;
      per_level[static_cast<std::size_t>(level)] =
          std::max(per_level[static_cast<std::size_t>(level)], Rational(oscillation(f, q) / avg));
    }
  }
  for (int level = f.depth() - 1; level >= 0; --level) {
    per_level[static_cast<std::size_t>(level)] =
        std::max(per_level[static_cast<std::size_t>(level)], per_level[static_cast<std::size_t>(level) + 1]);
  }
  return per_level;
}

std::vector<std::pair<Rational, Rational>> distribution(const DyadicFunction& f) {
  std::map<Rational, Rational> mass;
  for (const auto& v : f.cells()) mass[v] += f.cell_measure();
  return {mass.begin(), mass.end()};
}

std::vector<std::pair<Rational, Rational>> distribution(const StepFunction& g) {
  std::map<Rational, Rational> mass;
  for (std::size_t i = 0; i < g.pieces(); ++i) mass[g.values()[i]] += g.length(i);
  return {mass.begin(), mass.end()};
}

Rational interval_grid_max(const StepFunction& g, long steps) {
  Rational best;
  for (long i = 0; i < steps; ++i) {
    for (long j = i + 1; j <= steps; ++j) {
      best = std::max(best, interval_mean_oscillation(g, make_rational(i, steps), make_rational(j, steps)));
    }
  }
  return best;
}

}  // namespace dyadic::reference
