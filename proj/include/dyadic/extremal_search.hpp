#pragma once

#include "dyadic/dyadic_function.hpp"
#include "dyadic/interval_bmo.hpp"
#include "dyadic/rational.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dyadic {

enum class SearchObjective {
  ratio,  // ||f_d||_* / ||f||_{*,D}, at most 2^n
  jn_b,   // smallest B with |{f - f_Q0 > lambda}| <= B exp(-b lambda/||f||) for this f, at most e
};

const char* to_string(SearchObjective objective);
SearchObjective parse_objective(const std::string& text);

struct SearchConfig {
  int dim = 1;
  int depth = 3;
  int restarts = 16;
  int iterations = 2000;
  Rational initial_step = make_rational(1, 4);      // largest value move
  Rational final_step = make_rational(1, 4096);     // smallest value move
  double initial_temperature = 0.5;
  double final_temperature = 1e-3;
  std::uint64_t seed = 1;
  SearchObjective objective = SearchObjective::ratio;
  double tol = kDefaultIntervalTolerance;
};

inline constexpr long kSearchLattice = 4096;  // cell values are k / 4096 in [-1, 1]

struct TraceEntry {
  int restart = 0;
  int iteration = 0;
  double value = 0.0;  // objective estimate at the improvement
};

struct SearchResult {
  SearchResult(SearchConfig cfg, DyadicFunction start) : config(std::move(cfg)), best(std::move(start)) {}

  SearchConfig config;
  DyadicFunction best;
  int best_restart = -1;
  Rational ratio_exact;      // attained ratio, ratio objective only
  double ratio_lower = 0.0;  // certified, rounded down
  double ratio_upper = 0.0;  // certified, rounded up
  double cap = 0.0;          // 2^n or e
  std::vector<double> restart_best;  // per-restart estimate
  std::vector<TraceEntry> trace;     // merged global best-so-far, strictly increasing
};

/// interval_bmo_norm(rearrange_signed(f), tol).lower / bmo_dyadic_norm(f), exact; the double
/// is rounded down. Constant f is rejected. Throws std::logic_error above 2^n.
double ratio_objective(const DyadicFunction& f, double tol = kDefaultIntervalTolerance);

struct RatioBound {
  Rational lower;    // exact attained ratio
  double upper = 0;  // from the certified upper bound of the interval norm, rounded up
};
RatioBound ratio_bound(const DyadicFunction& f, double tol = kDefaultIntervalTolerance);

/// max_j |{f - f_Q0 > e_j}| exp(b e_{j+1} / ||f||) over the positive deviations 0 = e_0 < e_1 < ...;
/// the least B for which the exponential distribution bound holds for this f.
double jn_b_objective(const DyadicFunction& f);

/// Stochastic multistart annealing over the lattice k/4096 in [-1, 1]. Deterministic given the
/// seed: restart r draws from mt19937_64 seeded with (seed, r). Restarts run in parallel.
SearchResult search(const SearchConfig& cfg);

/// Best objective over every assignment of `values` to the cells, skipping constant functions.
SearchResult exhaustive_search(int dim, int depth, const std::vector<Rational>& values,
                               SearchObjective objective = SearchObjective::ratio,
                               double tol = kDefaultIntervalTolerance);

}  // namespace dyadic
