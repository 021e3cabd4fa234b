#include "dyadic/extremal_search.hpp"

#include "dyadic/dyadic_core.hpp"
#include "dyadic/errors.hpp"
#include "dyadic/hp_float.hpp"
#include "dyadic/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <random>
#include <stdexcept>

namespace dyadic {

namespace {

constexpr double kCapMargin = 1e-6;

DyadicFunction from_lattice(int dim, int depth, const std::vector<long>& z) {
  std::vector<Rational> cells;
  cells.reserve(z.size());
  for (long v : z) cells.push_back(make_rational(v, kSearchLattice));
  return DyadicFunction(dim, depth, std::move(cells));
}

bool all_equal(const std::vector<long>& z) {
  return std::adjacent_find(z.begin(), z.end(), std::not_equal_to<>()) == z.end();
}

double cap_for(SearchObjective objective, int dim) {
  return objective == SearchObjective::ratio ? std::ldexp(1.0, dim) : euler(Round::up).to_double(Round::up);
}

// Positive deviations from the mean with the mass strictly above each one.
struct Tail {
  std::vector<Rational> levels;  // 0 = e_0 < e_1 < ... < e_m
  std::vector<Rational> mass;    // mass[j] = |{f - f_Q0 > e_j}|
};

Tail deviation_tail(const DyadicFunction& f) {
  const Rational mean = f.mean();
  std::map<Rational, long> counts;
  for (const auto& v : f.cells()) {
    Rational d = v - mean;
    if (d > 0) ++counts[d];
  }
  Tail tail;
  tail.levels.push_back(Rational(0));
  long above = 0;
  for (const auto& [level, count] : counts) above += count;
  tail.mass.push_back(Rational(above) * f.cell_measure());
  for (const auto& [level, count] : counts) {
    above -= count;
    tail.levels.push_back(level);
    tail.mass.push_back(Rational(above) * f.cell_measure());
  }
  return tail;
}

// max_j mass[j] exp(b e_{j+1} / norm) with b = 1/(2^{n-1} e), rounded in the given direction.
double jn_b_value(const DyadicFunction& f, const Rational& norm, Round round) {
  if (sgn(norm) == 0) return 0.0;
  const Tail tail = deviation_tail(f);
  const Round other = round == Round::up ? Round::down : Round::up;
  const HpFloat denom = mul(HpFloat(pow2(f.dim() - 1) * norm, other), euler(other), other);
  HpFloat best;
  for (std::size_t j = 0; j + 1 < tail.levels.size(); ++j) {
    const HpFloat exponent = div(HpFloat(tail.levels[j + 1], round), denom, round);
    const HpFloat value = mul(HpFloat(tail.mass[j], round), exp(exponent, round), round);
    if (best < value) best = value;
  }
  return best.to_double(round);
}

double estimate(const DyadicFunction& f, SearchObjective objective) {
  const Rational norm = bmo_dyadic_norm(f).value;
  if (sgn(norm) == 0) return 0.0;
  if (objective == SearchObjective::ratio) return interval_bmo_estimate(rearrange_signed(f)) / norm.get_d();
  return jn_b_value(f, norm, Round::nearest);
}

struct Scored {
  Rational exact;
  double lower = 0.0;
  double upper = 0.0;
};

Scored score(const DyadicFunction& f, SearchObjective objective, double tol) {
  Scored s;
  if (objective == SearchObjective::ratio) {
    const RatioBound r = ratio_bound(f, tol);
    s.exact = r.lower;
    s.lower = HpFloat(r.lower, Round::down).to_double(Round::down);
    s.upper = r.upper;
  } else {
    const Rational norm = bmo_dyadic_norm(f).value;
    s.lower = jn_b_value(f, norm, Round::down);
    s.upper = jn_b_value(f, norm, Round::up);
  }
  return s;
}

struct RestartOutcome {
  std::vector<long> best;
  double best_value = -1.0;
  std::vector<TraceEntry> trace;
};

RestartOutcome run_restart(const SearchConfig& cfg, int restart, double cap) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed & 0xffffffffU), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  const std::size_t cells = std::size_t{1} << (cfg.dim * cfg.depth);
  std::uniform_int_distribution<long> init(-kSearchLattice, kSearchLattice);
  std::uniform_int_distribution<std::size_t> pick(0, cells - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<long> current(cells);
  for (auto& v : current) v = init(rng);

  auto evaluate = [&](const std::vector<long>& z) {
    if (all_equal(z)) return 0.0;
    const DyadicFunction f = from_lattice(cfg.dim, cfg.depth, z);
    double value = estimate(f, cfg.objective);
    if (cfg.objective == SearchObjective::ratio && value > cap - kCapMargin) {
      // ratio_bound throws if the exact ratio really exceeds 2^n.
      value = ratio_bound(f, cfg.tol).lower.get_d();
    }
    return value;
  };

  const double step0 = std::max(1.0, Rational(cfg.initial_step * kSearchLattice).get_d());
  const double step1 = std::max(1.0, Rational(cfg.final_step * kSearchLattice).get_d());
  const double iters = std::max(1, cfg.iterations - 1);

  RestartOutcome out;
  double current_value = evaluate(current);
  out.best = current;
  out.best_value = current_value;
  out.trace.push_back(TraceEntry{restart, 0, current_value});

  for (int it = 1; it <= cfg.iterations; ++it) {
    const double frac = (it - 1) / iters;
    const double temperature = cfg.initial_temperature * std::pow(cfg.final_temperature / cfg.initial_temperature, frac);
    const auto step = static_cast<long>(std::llround(step0 * std::pow(step1 / step0, frac)));
    std::uniform_int_distribution<long> magnitude(1, std::max(1L, step));

    std::vector<long> candidate = current;
    const std::size_t cell = pick(rng);
    const long delta = magnitude(rng) * (unit(rng) < 0.5 ? -1 : 1);
    candidate[cell] = std::clamp(candidate[cell] + delta, -kSearchLattice, kSearchLattice);
    const double u = unit(rng);
    if (candidate[cell] == current[cell]) continue;

    const double value = evaluate(candidate);
    const double change = value - current_value;
    if (change >= 0 || u < std::exp(change / temperature)) {
      current = std::move(candidate);
      current_value = value;
      if (current_value > out.best_value) {
        out.best = current;
        out.best_value = current_value;
        out.trace.push_back(TraceEntry{restart, it, current_value});
      }
    }
  }
  return out;
}

}  // namespace

const char* to_string(SearchObjective objective) { return objective == SearchObjective::ratio ? "ratio" : "jnB"; }

SearchObjective parse_objective(const std::string& text) {
  if (text == "ratio" || text == "ratio_thm1") return SearchObjective::ratio;
  if (text == "jnB" || text == "jn_B_probe" || text == "jnb") return SearchObjective::jn_b;
  throw InputError("unknown search objective '" + text + "' (expected ratio or jnB)");
}

RatioBound ratio_bound(const DyadicFunction& f, double tol) {
  const Rational norm = bmo_dyadic_norm(f).value;
  if (sgn(norm) == 0) throw DomainError("the rearrangement ratio is undefined for constant f");
  const IntervalBmoBound interval = interval_bmo_norm(rearrange_signed(f), tol);
  RatioBound r;
  r.lower = interval.lower / norm;
  if (r.lower > pow2(f.dim())) {
    throw std::logic_error("rearrangement ratio " + to_string(r.lower) + " exceeds 2^n; the norm computation is wrong");
  }
  r.upper = div(HpFloat(from_double(interval.upper), Round::up), HpFloat(norm, Round::down), Round::up)
                .to_double(Round::up);
  return r;
}

double ratio_objective(const DyadicFunction& f, double tol) {
  return HpFloat(ratio_bound(f, tol).lower, Round::down).to_double(Round::down);
}

double jn_b_objective(const DyadicFunction& f) { return jn_b_value(f, bmo_dyadic_norm(f).value, Round::nearest); }

SearchResult search(const SearchConfig& cfg) {
  if (cfg.restarts < 1 || cfg.iterations < 1) throw DomainError("search needs restarts >= 1 and iterations >= 1");
  if (cfg.dim < 1 || cfg.depth < 1) throw DomainError("search needs dim >= 1 and depth >= 1");
  if (cfg.initial_step <= 0 || cfg.final_step <= 0) throw DomainError("search steps must be positive");
  if (!(cfg.initial_temperature > 0) || !(cfg.final_temperature > 0)) {
    throw DomainError("search temperatures must be positive");
  }
  const double cap = cap_for(cfg.objective, cfg.dim);
  const double rescore_tol = cfg.tol / 10;

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
  std::vector<Scored> scores(static_cast<std::size_t>(cfg.restarts));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < cfg.restarts; ++r) {
    try {
      auto& out = outcomes[static_cast<std::size_t>(r)];
      out = run_restart(cfg, r, cap);
      if (!all_equal(out.best)) {
        scores[static_cast<std::size_t>(r)] =
            score(from_lattice(cfg.dim, cfg.depth, out.best), cfg.objective, rescore_tol);
      }
    } catch (...) {
#pragma omp critical(search_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  SearchResult result{cfg, DyadicFunction::constant(cfg.dim, cfg.depth, Rational(0))};
  result.cap = cap;
  double running = -1.0;
  for (int r = 0; r < cfg.restarts; ++r) {
    const auto& out = outcomes[static_cast<std::size_t>(r)];
    result.restart_best.push_back(out.best_value);
    for (const auto& entry : out.trace) {
      if (entry.value > running) {
        running = entry.value;
        result.trace.push_back(entry);
      }
    }
    const auto& s = scores[static_cast<std::size_t>(r)];
    const bool better = cfg.objective == SearchObjective::ratio
                            ? (result.best_restart < 0 || s.exact > result.ratio_exact)
                            : (result.best_restart < 0 || s.lower > result.ratio_lower);
    if (better) {
      result.best_restart = r;
      result.best = from_lattice(cfg.dim, cfg.depth, out.best);
      result.ratio_exact = s.exact;
      result.ratio_lower = s.lower;
      result.ratio_upper = s.upper;
    }
  }
  return result;
}

SearchResult exhaustive_search(int dim, int depth, const std::vector<Rational>& values, SearchObjective objective,
                               double tol) {
  if (values.empty()) throw DomainError("exhaustive search needs at least one value");
  const std::size_t cells = std::size_t{1} << (dim * depth);
  double combos = std::pow(static_cast<double>(values.size()), static_cast<double>(cells));
  if (combos > 1e7) throw DomainError("exhaustive search space too large");

  SearchConfig cfg;
  cfg.dim = dim;
  cfg.depth = depth;
  cfg.restarts = 1;
  cfg.iterations = 1;
  cfg.objective = objective;
  cfg.tol = tol;
  SearchResult result{cfg, DyadicFunction::constant(dim, depth, Rational(0))};
  result.cap = cap_for(objective, dim);

  std::vector<std::size_t> digits(cells, 0);
  bool found = false;
  int index = 0;
  while (true) {
    std::vector<Rational> cell_values(cells);
    for (std::size_t c = 0; c < cells; ++c) cell_values[c] = values[digits[c]];
    DyadicFunction f(dim, depth, std::move(cell_values));
    if (!f.is_constant()) {
      const Scored s = score(f, objective, tol);
      const bool better = objective == SearchObjective::ratio ? (!found || s.exact > result.ratio_exact)
                                                              : (!found || s.lower > result.ratio_lower);
      if (better) {
        found = true;
        result.best = f;
        result.best_restart = 0;
        result.ratio_exact = s.exact;
        result.ratio_lower = s.lower;
        result.ratio_upper = s.upper;
        result.trace.push_back(TraceEntry{0, index, s.lower});
      }
    }
    ++index;
    std::size_t c = 0;
    while (c < cells && ++digits[c] == values.size()) digits[c++] = 0;
    if (c == cells) break;
  }
  result.restart_best.push_back(result.ratio_lower);
  return result;
}

}  // namespace dyadic
