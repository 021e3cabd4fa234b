#include "dyadic/cz_stopping.hpp"

#include "dyadic/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>

namespace dyadic {

namespace {

bool crosses(const Rational& average, const Rational& alpha, Direction direction) {
  return direction == Direction::above ? average > alpha : average <= alpha;
}

using CubeKey = std::pair<int, std::size_t>;

CubeKey key_of(const CubeId& q) { return {q.level, q.flat()}; }

void walk(const CubeTable& table, int level, std::size_t cube, const Rational& alpha, Direction direction,
          std::vector<CubeId>& out) {
  const int n = table.dim();
  if (crosses(table.average(level, cube), alpha, direction)) {
    out.push_back(CubeId::from_flat(n, level, cube));
    return;
  }
  if (level == table.depth()) return;
  const CubeId here = CubeId::from_flat(n, level, cube);
  const std::size_t children = std::size_t{1} << n;
  for (std::size_t e = 0; e < children; ++e) {
    CubeId child{level + 1, here.index};
    for (int m = 0; m < n; ++m) {
      child.index[static_cast<std::size_t>(m)] = 2 * child.index[static_cast<std::size_t>(m)] +
                                                 static_cast<std::int64_t>((e >> m) & 1U);
    }
    walk(table, level + 1, child.flat(), alpha, direction, out);
  }
}

Rational total_measure(const std::vector<CubeId>& cubes) {
  Rational sum;
  for (const auto& q : cubes) sum += q.measure();
  return sum;
}

std::string describe(const CubeId& q) {
  std::string s = "{level " + std::to_string(q.level) + ", index (";
  for (std::size_t m = 0; m < q.index.size(); ++m) {
    if (m) s += ",";
    s += std::to_string(q.index[m]);
  }
  return s + ")}";
}

bool pairwise_disjoint(const std::vector<CubeId>& cubes, std::string& witness) {
  std::set<CubeKey> members;
  for (const auto& q : cubes) members.insert(key_of(q));
  for (const auto& q : cubes) {
    CubeId up = q;
    while (up.level > 0) {
      up = up.parent();
      if (members.count(key_of(up))) {
        witness = describe(q) + " lies inside " + describe(up);
        return false;
      }
    }
  }
  if (members.size() != cubes.size()) {
    witness = "duplicate cube";
    return false;
  }
  return true;
}

}  // namespace

const char* to_string(Direction direction) { return direction == Direction::above ? "above" : "below"; }

CzDecomposition stopping_family(const DyadicFunction& f, const CubeTable& table, const Rational& alpha,
                                Direction direction) {
  const Rational mean = table.average(0, 0);
  if (direction == Direction::above && alpha < mean) {
    throw DomainError("stopping above alpha needs alpha >= f_Q0 (alpha = " + to_string(alpha) +
                      ", f_Q0 = " + to_string(mean) + ")");
  }
  if (direction == Direction::below && !(alpha < mean)) {
    throw DomainError("stopping below alpha needs alpha < f_Q0 (alpha = " + to_string(alpha) +
                      ", f_Q0 = " + to_string(mean) + "); otherwise Q0 itself qualifies and has no father");
  }

  CzDecomposition d;
  d.threshold = alpha;
  d.direction = direction;

  // Q0 never crosses here, so the walk splits into the 2^n independent subtrees.
  const int n = f.dim();
  if (f.depth() > 0) {
    const auto children = static_cast<std::int64_t>(std::size_t{1} << n);
    std::vector<std::vector<CubeId>> found(static_cast<std::size_t>(children));
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t e = 0; e < children; ++e) {
      walk(table, 1, static_cast<std::size_t>(e), alpha, direction, found[static_cast<std::size_t>(e)]);
    }
    for (auto& part : found) {
      for (auto& q : part) d.stopping_cubes.push_back(std::move(q));
    }
  }
  std::sort(d.stopping_cubes.begin(), d.stopping_cubes.end(), CubeOrder{});

  std::set<CubeKey> fathers;
  for (const auto& q : d.stopping_cubes) fathers.insert(key_of(q.parent()));
  for (const auto& [level, flat] : fathers) {
    CubeId father = CubeId::from_flat(n, level, flat);
    bool covered = false;
    CubeId up = father;
    while (up.level > 0 && !covered) {
      up = up.parent();
      covered = fathers.count(key_of(up)) > 0;
    }
    if (!covered) d.parent_cover.push_back(std::move(father));
  }
  std::sort(d.parent_cover.begin(), d.parent_cover.end(), CubeOrder{});

  d.measure_e = total_measure(d.stopping_cubes);
  d.measure_e_star = total_measure(d.parent_cover);
  return d;
}

CzDecomposition stopping_family(const DyadicFunction& f, const Rational& alpha, Direction direction) {
  return stopping_family(f, CubeTable(f), alpha, direction);
}

bool StoppingReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const StoppingCheck& c) { return c.passed; });
}

StoppingReport verify_stopping(const CzDecomposition& d, const DyadicFunction& f) {
  StoppingReport report;
  for (const auto& q : d.stopping_cubes) f.check_cube(q);
  for (const auto& q : d.parent_cover) f.check_cube(q);
  const CubeTable table(f);
  auto cube_average = [&](const CubeId& q) { return table.average(q.level, q.flat()); };
  const Rational& alpha = d.threshold;
  const Direction dir = d.direction;
  auto add = [&](std::string name) -> StoppingCheck& {
    report.checks.push_back(StoppingCheck{std::move(name), true, {}});
    return report.checks.back();
  };

  auto& crossing = add("stopping cubes cross the threshold");
  for (const auto& q : d.stopping_cubes) {
    const Rational avg = cube_average(q);
    if (!crosses(avg, alpha, dir)) {
      crossing.passed = false;
      crossing.witness = describe(q) + " has average " + to_string(avg);
      break;
    }
  }

  auto& maximal = add("no ancestor of a stopping cube crosses (maximality)");
  for (const auto& q : d.stopping_cubes) {
    if (q.level == 0) {
      maximal.passed = false;
      maximal.witness = "Q0 is a stopping cube";
      break;
    }
    CubeId up = q;
    while (up.level > 0 && maximal.passed) {
      up = up.parent();
      const Rational avg = cube_average(up);
      if (crosses(avg, alpha, dir)) {
        maximal.passed = false;
        maximal.witness = "ancestor " + describe(up) + " of " + describe(q) + " has average " + to_string(avg);
      }
    }
    if (!maximal.passed) break;
  }

  auto& disjoint = add("stopping cubes pairwise disjoint");
  disjoint.passed = pairwise_disjoint(d.stopping_cubes, disjoint.witness);

  auto& parents_disjoint = add("parent cover pairwise disjoint");
  parents_disjoint.passed = pairwise_disjoint(d.parent_cover, parents_disjoint.witness);

  auto& parents_side = add("parent averages on the non-crossing side");
  for (const auto& p : d.parent_cover) {
    const Rational avg = cube_average(p);
    if (crosses(avg, alpha, dir)) {
      parents_side.passed = false;
      parents_side.witness = describe(p) + " has average " + to_string(avg);
      break;
    }
  }

  auto& outside = add("cells outside E on the non-crossing side");
  {
    std::vector<bool> in_e(f.cell_count(), false);
    for (const auto& q : d.stopping_cubes) {
      for (auto c : f.cells_of(q)) in_e[c] = true;
    }
    for (std::size_t c = 0; c < f.cell_count(); ++c) {
      if (!in_e[c] && crosses(f[c], alpha, dir)) {
        outside.passed = false;
        outside.witness = "cell " + std::to_string(c) + " outside E has value " + to_string(f[c]);
        break;
      }
    }
  }

  auto& covers = add("parent cover contains every stopping cube");
  std::set<CubeKey> parents;
  for (const auto& p : d.parent_cover) parents.insert(key_of(p));
  for (const auto& q : d.stopping_cubes) {
    bool inside = false;
    for (CubeId up = q; up.level > 0 && !inside;) {
      up = up.parent();
      inside = parents.count(key_of(up)) > 0;
    }
    if (!inside) {
      covers.passed = false;
      covers.witness = describe(q) + " is not strictly inside any parent";
      break;
    }
  }

  auto& measures = add("measures |E|, |E*| match the families");
  if (total_measure(d.stopping_cubes) != d.measure_e || total_measure(d.parent_cover) != d.measure_e_star) {
    measures.passed = false;
    measures.witness = "|E| = " + to_string(d.measure_e) + ", |E*| = " + to_string(d.measure_e_star);
  }

  auto& ratio = add("|E*| <= 2^n |E|");
  const Rational bound = pow2(f.dim()) * d.measure_e;
  if (d.measure_e_star > bound) {
    ratio.passed = false;
    ratio.witness = "|E*| = " + to_string(d.measure_e_star) + " > " + to_string(bound);
  }
  return report;
}

Rational maximal_level_set(const DyadicFunction& f, const Rational& alpha) {
  const Rational mean = f.mean();
  if (alpha < mean) {
    throw DomainError("level set of M_d f needs alpha >= f_Q0 (alpha = " + to_string(alpha) + ", f_Q0 = " +
                      to_string(mean) + ")");
  }
  const DyadicFunction m = dyadic_maximal_function(f);
  return distribution_above(m, alpha, Rational(0));
}

}  // namespace dyadic
