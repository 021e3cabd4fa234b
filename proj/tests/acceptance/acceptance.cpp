// Acceptance run: eleven property criteria over randomly drawn functions, one PASS/FAIL line each.
// Exit status is 0 only when every criterion passes.

#include "dyadic/cz_stopping.hpp"
#include "dyadic/dyadic_core.hpp"
#include "dyadic/extremal_search.hpp"
#include "dyadic/generate.hpp"
#include "dyadic/gurov_reshetnyak.hpp"
#include "dyadic/interval_bmo.hpp"
#include "dyadic/jn_bounds.hpp"
#include "dyadic/step_function.hpp"
#include "reference.hpp"
#include "random_functions.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace dyadic;
using dyadic::testing::Rng;

namespace {

constexpr int kFunctions = 1000;

struct Failure {
  std::string witness;
};

void require(bool ok, const std::function<std::string()>& witness) {
  if (!ok) throw Failure{witness()};
}

std::string show(const DyadicFunction& f) {
  std::ostringstream out;
  out << "n=" << f.dim() << " L=" << f.depth() << " cells=(";
  const std::size_t shown = std::min<std::size_t>(f.cell_count(), 16);
  for (std::size_t i = 0; i < shown; ++i) out << (i ? "," : "") << to_string(f[i]);
  if (shown < f.cell_count()) out << ",...";
  out << ")";
  return out.str();
}

std::string show(const StepFunction& g) {
  std::ostringstream out;
  out << "breaks=(";
  for (std::size_t i = 0; i < g.breakpoints().size(); ++i) out << (i ? "," : "") << to_string(g.breakpoints()[i]);
  out << ") values=(";
  for (std::size_t i = 0; i < g.values().size(); ++i) out << (i ? "," : "") << to_string(g.values()[i]);
  out << ")";
  return out.str();
}

// Desk-scale shapes: n = 1 up to L = 6, n = 2 up to L = 4, n = 3 up to L = 4.
std::pair<int, int> draw_shape(Rng& rng) {
  const int n = std::uniform_int_distribution<int>(1, 3)(rng);
  const int max_depth = n == 1 ? 6 : 4;
  int depth = std::uniform_int_distribution<int>(1, max_depth)(rng);
  // 4096-cell cubes are kept but made rarer.
  if (n == 3 && depth == 4 && std::uniform_int_distribution<int>(0, 3)(rng) != 0) depth = 3;
  return {n, depth};
}

DyadicFunction draw_function(Rng& rng) {
  const auto [n, depth] = draw_shape(rng);
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0:
      return dyadic::testing::random_function(rng, n, depth, -8, 8);
    case 1:
      return dyadic::testing::random_fractional(rng, n, depth, 24, 5);
    default:
      return dyadic::testing::random_function(rng, n, depth, 0, 3);
  }
}

DyadicFunction draw_nonnegative(Rng& rng) {
  const DyadicFunction f = draw_function(rng);
  return f.plus(-f.min_value());
}

Rational cell_time(const DyadicFunction& f, std::size_t k) {
  return Rational(static_cast<unsigned long>(k)) * f.cell_measure();
}

// At most `cap` cell-aligned times, always including the first and last cell.
std::vector<Rational> cell_times(const DyadicFunction& f, std::size_t cap) {
  const std::size_t m = f.cell_count();
  const std::size_t stride = std::max<std::size_t>(1, m / cap);
  std::vector<Rational> out;
  for (std::size_t k = 1; k <= m; k += stride) out.push_back(cell_time(f, k));
  if (out.back() != 1) out.push_back(Rational(1));
  return out;
}

// 1. Omega, the above form and the below form agree exactly.
std::size_t oscillation_identity() {
  Rng rng(1001);
  std::size_t checks = 0;
  for (int i = 0; i < kFunctions; ++i) {
    const DyadicFunction f = draw_function(rng);
    for (int j = 0; j < 8; ++j) {
      const CubeId q = dyadic::testing::random_cube(rng, f.dim(), f.depth());
      const Rational omega = mean_oscillation(f, q).oscillation;
      const Rational above = one_sided_oscillation(f, q, Side::above);
      const Rational below = one_sided_oscillation(f, q, Side::below);
      require(omega == above && omega == below && omega == reference::oscillation(f, q), [&] {
        return show(f) + " cube level " + std::to_string(q.level) + " flat " + std::to_string(q.flat()) +
               ": omega " + to_string(omega) + ", above " + to_string(above) + ", below " + to_string(below);
      });
      ++checks;
    }
  }
  return checks;
}

// 2. ||f_d||_* <= 2^n ||f||_{*,D}: attained lower bound exactly, certified upper bound within 1e-9.
std::size_t rearrangement_norm_bound() {
  Rng rng(1002);
  std::size_t checks = 0;
  for (int i = 0; i < kFunctions; ++i) {
    const DyadicFunction f = draw_function(rng);
    const Rational cap = pow2(f.dim()) * bmo_dyadic_norm(f).value;
    const IntervalBmoBound b = interval_bmo_norm(rearrange_signed(f));
    require(b.lower <= cap, [&] { return show(f) + ": lower " + to_string(b.lower) + " > " + to_string(cap); });
    require(from_double(b.upper) <= cap + from_double(1e-9), [&] {
      return show(f) + ": upper " + std::to_string(b.upper) + " > " + to_string(cap) + " + 1e-9";
    });
    ++checks;
  }
  return checks;
}

// 3. Exponential distribution bound on a 32-point lambda grid, signed and, for f >= 0, absolute.
std::size_t distribution_bound() {
  Rng rng(1003);
  std::size_t checks = 0;
  for (int i = 0; i < kFunctions; ++i) {
    const DyadicFunction f = i % 2 == 0 ? draw_function(rng) : draw_nonnegative(rng);
    const Rational norm = bmo_dyadic_norm(f).value;
    for (const Rational& lambda : lambda_grid(f, 32)) {
      const DistributionCheck c = jn_check(f, norm, lambda);
      require(c.holds(1e-12), [&] {
        return show(f) + " lambda " + to_string(lambda) + ": measure " + to_string(c.measure) + " > " +
               std::to_string(c.bound);
      });
      ++checks;
      if (f.is_nonnegative()) {
        const DistributionCheck a = jn_abs_check(f, norm, lambda);
        require(a.holds(1e-12), [&] {
          return show(f) + " lambda " + to_string(lambda) + ": |f - f_Q0| measure " + to_string(a.measure) +
                 " > " + std::to_string(a.bound);
        });
        ++checks;
      }
    }
  }
  return checks;
}

// 4. f_d(t) <= 2^{n-1} e ||f||_{*,D} ln(e/t) at every breakpoint of f_d, mean-zero f.
std::size_t log_bound() {
  Rng rng(1004);
  std::size_t checks = 0;
  for (int i = 0; i < kFunctions; ++i) {
    DyadicFunction f = draw_function(rng);
    f = f.plus(-f.mean());
    const Rational norm = bmo_dyadic_norm(f).value;
    const StepFunction fd = rearrange_signed(f);
    for (const Rational& t : fd.breakpoints()) {
      if (sgn(t) == 0) continue;
      const LogBoundCheck c = logbound_check(f, norm, t);
      require(c.holds(1e-12), [&] {
        return show(f) + " t " + to_string(t) + ": " + to_string(c.lhs) + " > " + std::to_string(c.rhs);
      });
      ++checks;
    }
  }
  return checks;
}

// 5. Stopping families: the structural checks, |E| <= t at alpha = f_d**(t), agreement with M_d.
std::size_t stopping_invariants() {
  Rng rng(1005);
  std::size_t checks = 0;
  for (int i = 0; i < kFunctions; ++i) {
    const DyadicFunction f = draw_function(rng);
    const CubeTable table(f);
    const DyadicFunction abs_f = f.absolute();
    const CubeTable abs_table(abs_f);
    const StepFunction fd = rearrange_signed(f);
    const StepFunction fstar = rearrange_abs(f);
    std::vector<Rational> times;
    for (int j = 0; j < 4; ++j) {
      times.push_back(cell_time(f, std::uniform_int_distribution<std::size_t>(1, f.cell_count())(rng)));
    }
    for (const Rational& t : times) {
      const Rational alpha = hardy_average(fd, t);
      const CzDecomposition above = stopping_family(f, table, alpha, Direction::above);
      const StoppingReport report = verify_stopping(above, f);
      for (const auto& c : report.checks) {
        require(c.passed, [&] { return show(f) + " alpha " + to_string(alpha) + ": " + c.name + ": " + c.witness; });
      }
      require(above.measure_e <= t, [&] {
        return show(f) + " t " + to_string(t) + ": |E| = " + to_string(above.measure_e) + " > t";
      });

      const Rational abs_alpha = hardy_average(fstar, t);
      const Rational via_maximal = maximal_level_set(f, abs_alpha);
      const Rational via_family = stopping_family(abs_f, abs_table, abs_alpha, Direction::above).measure_e;
      require(via_maximal == via_family, [&] {
        return show(f) + " alpha " + to_string(abs_alpha) + ": |{M_d f > alpha}| " + to_string(via_maximal) +
               " != |E| " + to_string(via_family);
      });

      const Rational beta = interval_average(fd, 1 - t, Rational(1));
      if (beta < f.mean()) {
        const CzDecomposition below = stopping_family(f, table, beta, Direction::below);
        for (const auto& c : verify_stopping(below, f).checks) {
          require(c.passed, [&] { return show(f) + " below " + to_string(beta) + ": " + c.name + ": " + c.witness; });
        }
      }
      checks += 3;
    }
  }
  return checks;
}

// 6. (1/t) int_0^t |f* - f**(t)| <= 2^n f**(t) v(f; sigma_t) at every cell-aligned t, f >= 0.
std::size_t local_oscillation() {
  Rng rng(1006);
  std::size_t checks = 0;
  for (int i = 0; i < kFunctions; ++i) {
    const DyadicFunction f = draw_nonnegative(rng);
    const GrProfile p = gr_profile(f);
    const StepFunction star = rearrange_abs(f);
    for (std::size_t k = 1; k <= f.cell_count(); ++k) {
      const LocalOscillationCheck c = theorem3_check(star, p, cell_time(f, k));
      require(c.holds(), [&] {
        return show(f) + " t " + to_string(c.t) + ": " + to_string(c.lhs) + " > " + to_string(c.rhs);
      });
      ++checks;
    }
  }
  return checks;
}

// 7. f**(t) <= c1 f_Q0 exp(c2 int v(f; s) ds/s) on the t grid in (0, 1/(2^n e^2)].
std::size_t exp_integral() {
  Rng rng(1007);
  std::size_t checks = 0;
  for (int i = 0; i < kFunctions; ++i) {
    const DyadicFunction f = draw_nonnegative(rng);
    const GrProfile p = gr_profile(f);
    for (const Rational& t : exp_integral_t_grid(f.dim())) {
      const ExpIntegralCheck c = theorem4_bound(f, p, t);
      require(c.holds(), [&] {
        return show(f) + " t " + to_string(t) + ": " + to_string(c.lhs) + " > " + std::to_string(c.rhs);
      });
      ++checks;
    }
  }
  return checks;
}

// 8. The exponent equation and the power-decay and L^q consequences on cascade functions.
std::size_t power_decay() {
  std::size_t checks = 0;
  for (int n = 1; n <= 3; ++n) {
    // 1/(2^{n-1} eps) = 4 gives p = 2, and 27/4 gives p = 3.
    const ExponentSolution two = solve_p(make_rational(1, 4) / pow2(n - 1), n);
    const ExponentSolution three = solve_p(make_rational(4, 27) / pow2(n - 1), n);
    require(std::abs(two.p - 2) <= 1e-12 && two.residual <= 1e-12 && two.p_lower <= 2, [&] {
      return "n " + std::to_string(n) + ": p = " + std::to_string(two.p) + " residual " + std::to_string(two.residual);
    });
    require(std::abs(three.p - 3) <= 1e-12 && three.residual <= 1e-12 && three.p_lower <= 3, [&] {
      return "n " + std::to_string(n) + ": p = " + std::to_string(three.p) + " residual " +
             std::to_string(three.residual);
    });
    checks += 2;
  }
  Rng rng(1008);
  for (int i = 0; i < kFunctions; ++i) {
    const int n = 1 + i % 3;
    // eps uniform over a fine rational grid in (0, 2^{-(n-1)}).
    const long k = std::uniform_int_distribution<long>(1, 9999)(rng);
    const Rational eps = make_rational(k, 10000) / pow2(n - 1);
    const ExponentSolution s = solve_p(eps, n);
    require(s.residual <= 1e-12 && s.p_lower <= s.p && s.p > 1, [&] {
      return "eps " + to_string(eps) + " n " + std::to_string(n) + ": p " + std::to_string(s.p) + " residual " +
             std::to_string(s.residual);
    });
    ++checks;
  }

  GeneratorSpec spec;
  spec.kind = GeneratorKind::cascade_gr;
  spec.dim = 2;
  spec.target_epsilon = make_rational(1, 8);
  for (int i = 0; i < kFunctions; ++i) {
    spec.depth = 2 + i % 3;
    const DyadicFunction f = generate(spec, rng);
    const Rational eps = gr_membership(f);
    require(eps <= make_rational(1, 8), [&] { return show(f) + ": epsilon " + to_string(eps) + " > 1/8"; });
    const ExponentSolution p = solve_p(eps, 2);
    for (const Rational& t : cell_times(f, 64)) {
      const PowerDecayCheck c = theorem5_check(f, p, t);
      require(c.holds(1e-9), [&] {
        return show(f) + " t " + to_string(t) + ": " + to_string(c.lhs) + " > " + std::to_string(c.rhs);
      });
      ++checks;
    }
    for (double q : {1.0, 1.5, 1.0 + (std::min(p.p_lower, 4.0) - 1.0) * 0.9}) {
      const LqTailCheck c = lq_tail_bound(f, q);
      require(c.holds(1e-9), [&] {
        return show(f) + " q " + std::to_string(q) + ": " + std::to_string(c.lq_upper) + " > " +
               std::to_string(c.bound);
      });
      ++checks;
    }
  }
  return checks;
}

// Brute-force sup over unions E of k cells of min over E of `values`; subsets for small inputs.
Rational supinf_brute(const std::vector<Rational>& values, std::size_t k) {
  const std::size_t m = values.size();
  if (m <= 12) {
    Rational best;
    bool any = false;
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountll(mask)) != k) continue;
      Rational low;
      bool first = true;
      for (std::size_t c = 0; c < m; ++c) {
        if (((mask >> c) & 1U) && (first || values[c] < low)) {
          low = values[c];
          first = false;
        }
      }
      if (!any || low > best) best = low;
      any = true;
    }
    return best;
  }
  std::vector<Rational> sorted = values;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  return sorted[k - 1];
}

// 9. Equimeasurability, the sup-inf formula against brute force, and f_d = f* for f >= 0.
std::size_t rearrangement_oracles() {
  Rng rng(1009);
  std::size_t checks = 0;
  for (int i = 0; i < kFunctions; ++i) {
    const DyadicFunction f = i % 3 == 0 ? draw_nonnegative(rng) : draw_function(rng);
    const StepFunction fd = rearrange_signed(f);
    const StepFunction fstar = rearrange_abs(f);
    require(reference::distribution(fd) == reference::distribution(f), [&] { return show(f) + ": f_d distribution"; });
    require(reference::distribution(fstar) == reference::distribution(f.absolute()),
            [&] { return show(f) + ": f* distribution"; });
    // Every level: |{f > lambda}| at each cell value and midway between values.
    for (std::size_t c = 0; c < f.cell_count(); c += std::max<std::size_t>(1, f.cell_count() / 32)) {
      for (const Rational& lambda : {f[c], Rational(f[c] - make_rational(1, 7))}) {
        Rational from_step = 0;
        for (std::size_t j = 0; j < fd.values().size(); ++j) {
          if (fd.values()[j] > lambda) from_step += fd.breakpoints()[j + 1] - fd.breakpoints()[j];
        }
        require(from_step == distribution_above(f, lambda, Rational(0)),
                [&] { return show(f) + ": level " + to_string(lambda); });
      }
    }
    checks += 2;

    std::vector<Rational> abs_values(f.cells().begin(), f.cells().end());
    std::vector<Rational> signed_values = abs_values;
    for (auto& v : abs_values) v = abs(v);
    for (std::size_t k = 1; k <= f.cell_count(); k += std::max<std::size_t>(1, f.cell_count() / 256)) {
      const Rational t = cell_time(f, k);
      const Rational brute = supinf_brute(abs_values, k);
      const Rational formula = supinf_formula(f, t);
      require(formula == brute && fstar(t) == brute, [&] {
        return show(f) + " t " + to_string(t) + ": formula " + to_string(formula) + ", f*(t) " +
               to_string(fstar(t)) + ", brute force " + to_string(brute);
      });
      const Rational signed_brute = supinf_brute(signed_values, k);
      require(fd(t) == signed_brute, [&] {
        return show(f) + " t " + to_string(t) + ": f_d(t) " + to_string(fd(t)) + ", brute force " +
               to_string(signed_brute);
      });
      checks += 2;
    }
    if (f.is_nonnegative()) {
      require(fd == fstar, [&] { return show(f) + ": f_d != f* for f >= 0"; });
      ++checks;
    }
  }
  return checks;
}

StepFunction negated(const StepFunction& g) {
  std::vector<Rational> values(g.values().begin(), g.values().end());
  for (auto& v : values) v = -v;
  return StepFunction(std::vector<Rational>(g.breakpoints().begin(), g.breakpoints().end()), std::move(values));
}

// 10. Equal-mean subintervals oscillate less (monotone g), and the Hardy-average gap inequality.
std::size_t interval_inequalities() {
  Rng rng(1010);
  std::size_t checks = 0;
  std::uniform_int_distribution<long> point(0, 64);
  std::size_t subinterval = 0;
  while (subinterval < 1200) {
    const StepFunction g = dyadic::testing::random_step(rng, 7, 16, true);
    const StepFunction h = subinterval % 2 == 0 ? g : negated(g);
    long x = point(rng), y = point(rng);
    if (x == y) continue;
    if (x > y) std::swap(x, y);
    const Rational a1 = make_rational(x, 64), b1 = make_rational(y, 64);
    const Rational a = a1 + (b1 - a1) * make_rational(std::uniform_int_distribution<long>(0, 63)(rng), 128);
    const Rational mean = interval_average(h, a1, b1);
    const auto b = solve_right_endpoint(h, a, mean);
    if (!b || *b > b1 || *b <= a) continue;
    ++subinterval;
    require(interval_average(h, a, *b) == mean, [&] { return show(h) + ": endpoint does not match the mean"; });
    const Rational inner = interval_mean_oscillation(h, a, *b);
    const Rational outer = interval_mean_oscillation(h, a1, b1);
    require(inner <= outer, [&] {
      return show(h) + " I = [" + to_string(a) + "," + to_string(*b) + "], I1 = [" + to_string(a1) + "," +
             to_string(b1) + "]: " + to_string(inner) + " > " + to_string(outer);
    });
    ++checks;
  }
  std::uniform_int_distribution<long> tnum(1, 128);
  std::uniform_int_distribution<long> gnum(129, 1024);
  for (int i = 0; i < 1200; ++i) {
    const StepFunction g = dyadic::testing::random_step(rng, 9, 32, true);
    const Rational t = make_rational(tnum(rng), 128);
    const Rational gamma = make_rational(gnum(rng), 128);
    const ExactInequality e = hardy_gap_check(g, t, gamma);
    require(e.holds(), [&] {
      return show(g) + " t " + to_string(t) + " gamma " + to_string(gamma) + ": " + to_string(e.lhs) + " > " +
             to_string(e.rhs);
    });
    ++checks;
  }
  return checks;
}

// 11. Search: deterministic, never above 2^n, and the binary n = 1, L = 1 case gives exactly 1.
std::size_t extremal_search() {
  std::size_t checks = 0;
  const SearchResult exhaustive = exhaustive_search(1, 1, {make_rational(0), make_rational(1)});
  require(exhaustive.ratio_exact == 1, [&] { return "exhaustive ratio " + to_string(exhaustive.ratio_exact); });
  ++checks;

  for (int n = 1; n <= 2; ++n) {
    SearchConfig cfg;
    cfg.dim = n;
    cfg.depth = n == 1 ? 4 : 2;
    cfg.restarts = 4;
    cfg.iterations = 300;
    cfg.seed = 20 + static_cast<std::uint64_t>(n);
    const SearchResult a = search(cfg);
    const SearchResult b = search(cfg);
    bool same = a.best == b.best && a.ratio_exact == b.ratio_exact && a.restart_best == b.restart_best &&
                a.trace.size() == b.trace.size();
    for (std::size_t i = 0; same && i < a.trace.size(); ++i) {
      same = a.trace[i].restart == b.trace[i].restart && a.trace[i].iteration == b.trace[i].iteration &&
             a.trace[i].value == b.trace[i].value;
    }
    require(same, [&] { return "n " + std::to_string(n) + ": two runs with seed " + std::to_string(cfg.seed) + " differ"; });
    require(a.ratio_exact <= pow2(n) && a.ratio_upper <= a.cap, [&] {
      return "n " + std::to_string(n) + ": search ratio " + to_string(a.ratio_exact) + " upper " +
             std::to_string(a.ratio_upper);
    });
    checks += 2;
  }

  Rng rng(1011);
  for (int i = 0; i < kFunctions; ++i) {
    const DyadicFunction f = draw_function(rng);
    if (f.is_constant()) continue;
    const RatioBound r = ratio_bound(f);
    require(r.lower <= pow2(f.dim()) && from_double(r.upper) <= pow2(f.dim()) + from_double(1e-9), [&] {
      return show(f) + ": ratio " + to_string(r.lower) + " upper " + std::to_string(r.upper);
    });
    ++checks;
  }
  return checks;
}

struct Criterion {
  const char* name;
  std::size_t (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"one-sided forms of the mean oscillation agree exactly", oscillation_identity},
      {"||f_d||_* <= 2^n ||f||_{*,D} (certified interval norm)", rearrangement_norm_bound},
      {"exponential distribution bound on 32-point lambda grids", distribution_bound},
      {"f_d(t) <= 2^{n-1} e ||f|| ln(e/t) at every breakpoint", log_bound},
      {"stopping-family invariants and maximal-function agreement", stopping_invariants},
      {"local oscillation of f* bounded by 2^n f** v(f; sigma_t)", local_oscillation},
      {"f** bounded by the exponential integral of v", exp_integral},
      {"exponent root, power decay of f**, L^q bound on cascades", power_decay},
      {"equimeasurability, sup-inf brute force, f_d = f* for f >= 0", rearrangement_oracles},
      {"equal-mean subintervals and the Hardy-average gap", interval_inequalities},
      {"extremal search determinism, 2^n cap, binary exhaustive case", extremal_search},
  };

  int failures = 0;
  int index = 0;
  const auto start_all = std::chrono::steady_clock::now();
  for (const Criterion& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    std::string status = "PASS";
    std::string detail;
    try {
      detail = std::to_string(c.run()) + " checks";
    } catch (const Failure& f) {
      status = "FAIL";
      detail = "witness: " + f.witness;
    } catch (const std::exception& e) {
      status = "FAIL";
      detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (status == "FAIL") ++failures;
    std::printf("%s %2d  %s  (%s, %.1fs)\n", status.c_str(), index, c.name, detail.c_str(), seconds);
    std::fflush(stdout);
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_all).count();
  std::printf("%d/%d criteria passed in %.1fs\n", index - failures, index, total);
  return failures == 0 ? 0 : 1;
}
