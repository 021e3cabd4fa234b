#include "dyadic/verify.hpp"

#include "dyadic/cz_stopping.hpp"
#include "dyadic/dyadic_core.hpp"
#include "dyadic/errors.hpp"
#include "dyadic/gurov_reshetnyak.hpp"
#include "dyadic/interval_bmo.hpp"
#include "dyadic/jn_bounds.hpp"
#include "dyadic/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace dyadic {

namespace {

struct Context {
  const DyadicFunction& f;
  const VerifyOptions& options;
  Rational scale;  // rhs_scale as an exact rational
  Rational norm;   // ||f||_{*,D}
  StepFunction signed_rearrangement;
};

class Recorder {
 public:
  explicit Recorder(std::string name) { result_.name = std::move(name); }

  // Counts one check; the first failure keeps its witness.
  void check(bool ok, const std::function<std::string()>& witness) {
    ++result_.checks;
    if (!ok && result_.status != SuiteStatus::fail) {
      result_.status = SuiteStatus::fail;
      result_.witness = witness();
    }
  }

  SuiteResult skip(std::string reason) {
    result_.status = SuiteStatus::skipped;
    result_.witness = std::move(reason);
    return result_;
  }

  SuiteResult done() { return result_; }

 private:
  SuiteResult result_;
};

std::string cube_text(const CubeId& q) {
  std::ostringstream s;
  s << "level " << q.level << " index (";
  for (std::size_t m = 0; m < q.index.size(); ++m) s << (m ? "," : "") << q.index[m];
  s << ")";
  return s.str();
}

std::string num(double v) { return format_double(v); }

bool scaled_le(const Rational& lhs, double rhs, double scale, double tol) {
  if (std::isnan(rhs)) return false;
  if (std::isinf(rhs)) return rhs > 0;
  return lhs <= from_double(rhs) * from_double(scale) + from_double(tol);
}

// Cell-aligned t = k 2^{-nL}, thinned evenly to at most max_points values (always including 1).
std::vector<Rational> cell_times(const DyadicFunction& f, int max_points) {
  const std::size_t cells = f.cell_count();
  const std::size_t count = std::min<std::size_t>(cells, static_cast<std::size_t>(std::max(1, max_points)));
  std::vector<Rational> times;
  for (std::size_t i = 1; i <= count; ++i) {
    const std::size_t k = (i * cells) / count;
    times.push_back(Rational(static_cast<unsigned long>(k)) * f.cell_measure());
  }
  return times;
}

SuiteResult lemma21(const Context& c) {
  Recorder r("lemma21");
  for (int level = 0; level <= c.f.depth(); ++level) {
    const std::size_t count = std::size_t{1} << (c.f.dim() * level);
    for (std::size_t flat = 0; flat < count; ++flat) {
      const CubeId q = CubeId::from_flat(c.f.dim(), level, flat);
      const Rational omega = mean_oscillation(c.f, q).oscillation;
      const Rational above = one_sided_oscillation(c.f, q, Side::above) * c.scale;
      const Rational below = one_sided_oscillation(c.f, q, Side::below) * c.scale;
      r.check(omega == above && omega == below, [&] {
        return cube_text(q) + ": Omega = " + to_string(omega) + ", above form = " + to_string(above) +
               ", below form = " + to_string(below);
      });
    }
  }
  return r.done();
}

SuiteResult lemma22(const Context& c) {
  Recorder r("lemma22");
  const StepFunction& g = c.signed_rearrangement;
  // Points k/(2N) for N cells, thinned to at most 33.
  const std::size_t halves = 2 * c.f.cell_count();
  const std::size_t count = std::min<std::size_t>(halves, 32);
  std::vector<Rational> points;
  for (std::size_t i = 0; i <= count; ++i) {
    points.push_back(Rational(static_cast<unsigned long>((i * halves) / count), static_cast<unsigned long>(halves)));
    points.back().canonicalize();
  }
  std::size_t instances = 0;
  for (std::size_t i1 = 0; i1 < points.size() && instances < 2000; ++i1) {
    for (std::size_t j1 = i1 + 1; j1 < points.size() && instances < 2000; ++j1) {
      const Rational& a1 = points[i1];
      const Rational& b1 = points[j1];
      const Rational target = interval_average(g, a1, b1);
      const Rational outer = interval_mean_oscillation(g, a1, b1);
      for (std::size_t ia = i1; ia < j1; ++ia) {
        const Rational& a = points[ia];
        const auto b = solve_right_endpoint(g, a, target);
        if (!b || *b > b1) continue;
        ++instances;
        const Rational inner = interval_mean_oscillation(g, a, *b);
        r.check(inner <= outer * c.scale, [&] {
          return "I = [" + to_string(a) + ", " + to_string(*b) + "] in I1 = [" + to_string(a1) + ", " + to_string(b1) +
                 "]: Omega(I) = " + to_string(inner) + " > Omega(I1) = " + to_string(outer);
        });
      }
    }
  }
  return r.done();
}

SuiteResult lemma23(const Context& c) {
  Recorder r("lemma23");
  const StepFunction& g = c.signed_rearrangement;
  const std::vector<Rational> gammas{make_rational(5, 4), make_rational(3, 2), make_rational(2), make_rational(3),
                                     make_rational(8)};
  for (const auto& t : cell_times(c.f, c.options.max_points)) {
    for (const auto& gamma : gammas) {
      const ExactInequality e = hardy_gap_check(g, t, gamma);
      r.check(e.lhs <= e.rhs * c.scale, [&] {
        return "t = " + to_string(t) + ", gamma = " + to_string(gamma) + ": F(t/gamma) - F(t) = " + to_string(e.lhs) +
               " > " + to_string(e.rhs);
      });
    }
  }
  return r.done();
}

SuiteResult thm1(const Context& c) {
  Recorder r("thm1");
  const IntervalBmoBound b = interval_bmo_norm(c.signed_rearrangement, c.options.tol);
  const Rational cap = pow2(c.f.dim()) * c.norm;
  r.check(b.lower <= cap * c.scale, [&] {
    return "||f_d||_* >= " + to_string(b.lower) + " on [" + to_string(b.witness_a) + ", " + to_string(b.witness_b) +
           "] > 2^n ||f||_{*,D} = " + to_string(cap);
  });
  r.check(from_double(b.upper) <= cap * c.scale + from_double(c.options.tol), [&] {
    return "certified upper " + num(b.upper) + " > 2^n ||f||_{*,D} + tol = " + num(cap.get_d()) + " + " +
           num(c.options.tol);
  });
  return r.done();
}

SuiteResult thm2(const Context& c) {
  Recorder r("thm2");
  Rational previous_measure = 2;
  double previous_bound = std::numeric_limits<double>::infinity();
  for (const auto& lambda : lambda_grid(c.f, c.options.lambda_points)) {
    const DistributionCheck d = jn_check(c.f, c.norm, lambda);
    if (d.trivial) {
      r.check(sgn(d.measure) == 0, [&] { return "zero norm but |{f - f_Q0 > " + to_string(lambda) + "}| > 0"; });
      continue;
    }
    r.check(scaled_le(d.measure, d.bound, c.options.rhs_scale, c.options.exp_tol), [&] {
      return "lambda = " + to_string(lambda) + ": measure " + to_string(d.measure) + " > bound " + num(d.bound);
    });
    r.check(d.measure <= previous_measure && d.bound < previous_bound, [&] {
      return "lambda = " + to_string(lambda) + ": measure or bound not decreasing along the grid";
    });
    previous_measure = d.measure;
    previous_bound = d.bound;
  }
  return r.done();
}

SuiteResult thm31(const Context& c) {
  Recorder r("thm31");
  const DyadicFunction centred = c.f.plus(-c.f.mean());
  const StepFunction g = rearrange_signed(centred);
  const auto bps = g.breakpoints();
  for (std::size_t i = 1; i < bps.size(); ++i) {
    const LogBoundCheck l = logbound_check(centred, c.norm, bps[i]);
    r.check(scaled_le(l.lhs, l.rhs, c.options.rhs_scale, c.options.exp_tol), [&] {
      return "t = " + to_string(l.t) + ": f_d(t) = " + to_string(l.lhs) + " > " + num(l.rhs);
    });
  }
  return r.done();
}

SuiteResult remark31(const Context& c) {
  Recorder r("remark31");
  if (!c.f.is_nonnegative()) return r.skip("needs f >= 0");
  const StepFunction star = rearrange_abs(c.f);
  r.check(star == c.signed_rearrangement, [] { return std::string("f_d differs from f* for nonnegative f"); });
  const IntervalBmoBound b = interval_bmo_norm(star, c.options.tol);
  const Rational cap = pow2(c.f.dim()) * c.norm;
  r.check(b.lower <= cap * c.scale,
          [&] { return "||f*||_* >= " + to_string(b.lower) + " > 2^n ||f||_{*,D} = " + to_string(cap); });
  for (const auto& lambda : lambda_grid(c.f, c.options.lambda_points)) {
    const DistributionCheck d = jn_abs_check(c.f, c.norm, lambda);
    if (d.trivial) {
      r.check(sgn(d.measure) == 0, [&] { return "zero norm but |{|f - f_Q0| > " + to_string(lambda) + "}| > 0"; });
      continue;
    }
    r.check(scaled_le(d.measure, d.bound, c.options.rhs_scale, c.options.exp_tol), [&] {
      return "lambda = " + to_string(lambda) + ": |{|f - f_Q0| > lambda}| = " + to_string(d.measure) + " > bound " +
             num(d.bound);
    });
  }
  return r.done();
}

SuiteResult thm3(const Context& c) {
  Recorder r("thm3");
  if (!c.f.is_nonnegative()) return r.skip("needs f >= 0");
  const GrProfile profile = gr_profile(c.f);
  const StepFunction star = rearrange_abs(c.f);
  for (const auto& t : cell_times(c.f, c.options.max_points)) {
    const LocalOscillationCheck l = theorem3_check(star, profile, t);
    r.check(l.lhs <= l.rhs * c.scale, [&] {
      return "t = " + to_string(t) + ": lhs = " + to_string(l.lhs) + " > 2^n f**(t) B_t = " + to_string(l.rhs);
    });
  }
  return r.done();
}

SuiteResult thm4(const Context& c) {
  Recorder r("thm4");
  if (!c.f.is_nonnegative()) return r.skip("needs f >= 0");
  const GrProfile profile = gr_profile(c.f);
  for (const auto& t : exp_integral_t_grid(c.f.dim())) {
    const ExpIntegralCheck e = theorem4_bound(c.f, profile, t);
    r.check(scaled_le(e.lhs, e.rhs, c.options.rhs_scale, 0.0), [&] {
      return "t = " + to_string(t) + ": f**(t) = " + to_string(e.lhs) + " > " + num(e.rhs);
    });
  }
  return r.done();
}

SuiteResult thm5(const Context& c) {
  Recorder r("thm5");
  if (!c.f.is_nonnegative()) return r.skip("needs f >= 0");
  const Rational epsilon = gr_membership(c.f);
  if (!(epsilon < pow2(-(c.f.dim() - 1)))) {
    return r.skip("needs epsilon < 1/2^{n-1}; epsilon = " + to_string(epsilon));
  }
  const ExponentSolution exponent = solve_p(epsilon, c.f.dim());
  for (const auto& t : cell_times(c.f, c.options.max_points)) {
    const PowerDecayCheck p = theorem5_check(c.f, exponent, t);
    r.check(scaled_le(p.lhs, p.rhs, c.options.rhs_scale, c.options.tol), [&] {
      return "t = " + to_string(t) + ", p = " + num(exponent.p) + ": f**(t) = " + to_string(p.lhs) + " > " + num(p.rhs);
    });
  }
  return r.done();
}

SuiteResult cor1(const Context& c) {
  Recorder r("cor1");
  if (!c.f.is_nonnegative()) return r.skip("needs f >= 0");
  const Rational epsilon = gr_membership(c.f);
  if (!(epsilon < pow2(-(c.f.dim() - 1)))) {
    return r.skip("needs epsilon < 1/2^{n-1}; epsilon = " + to_string(epsilon));
  }
  const ExponentSolution exponent = solve_p(epsilon, c.f.dim());
  std::vector<double> qs{1.0};
  const double mid = 1.0 + (std::min(exponent.p_lower, 4.0) - 1.0) / 2;
  if (mid > 1.0 && mid < exponent.p_lower) qs.push_back(mid);
  for (double q : qs) {
    const LqTailCheck l = lq_tail_bound(c.f, q);
    const bool ok = l.exact ? scaled_le(l.lq_exact, l.bound, c.options.rhs_scale, c.options.tol)
                            : l.lq_upper <= l.bound * c.options.rhs_scale + c.options.tol;
    r.check(ok, [&] {
      return "q = " + num(q) + ", p = " + num(exponent.p) + ": int f^q = " + num(l.lq_upper) + " > " + num(l.bound);
    });
  }
  return r.done();
}

SuiteResult cz(const Context& c) {
  Recorder r("cz");
  const DyadicFunction& f = c.f;
  const CubeTable table(f);
  const DyadicFunction abs_f = f.absolute();
  const CubeTable abs_table(abs_f);
  const StepFunction star = rearrange_abs(f);
  const Rational mean = f.mean();
  const Rational two_n = pow2(f.dim());

  auto check_report = [&](const CzDecomposition& d, const std::string& label) {
    const StoppingReport report = verify_stopping(d, f);
    for (const auto& item : report.checks) {
      if (item.name == "|E*| <= 2^n |E|") {
        r.check(d.measure_e_star <= two_n * d.measure_e * c.scale, [&] {
          return label + ": |E*| = " + to_string(d.measure_e_star) + " > 2^n |E| = " + to_string(two_n * d.measure_e);
        });
      } else {
        r.check(item.passed, [&] { return label + ": " + item.name + ": " + item.witness; });
      }
    }
  };

  for (const auto& t : cell_times(f, std::min(c.options.max_points, 64))) {
    const Rational alpha = hardy_average(c.signed_rearrangement, t);
    const std::string label = "above, alpha = f_d average on (0," + to_string(t) + "]";
    const CzDecomposition above = stopping_family(f, table, alpha, Direction::above);
    check_report(above, label);
    r.check(above.measure_e <= t * c.scale,
            [&] { return label + ": |E| = " + to_string(above.measure_e) + " > t = " + to_string(t); });

    // {M_d f > alpha} against the stopping family of |f|.
    const Rational abs_alpha = hardy_average(star, t);
    const CzDecomposition abs_family = stopping_family(abs_f, abs_table, abs_alpha, Direction::above);
    const Rational level_set = maximal_level_set(f, abs_alpha);
    r.check(level_set == abs_family.measure_e, [&] {
      return "alpha = " + to_string(abs_alpha) + ": |{M_d f > alpha}| = " + to_string(level_set) + " but |E| = " +
             to_string(abs_family.measure_e);
    });

    if (t < 1) {
      const Rational beta = interval_average(c.signed_rearrangement, 1 - t, Rational(1));
      if (beta < mean) {
        const CzDecomposition below = stopping_family(f, table, beta, Direction::below);
        check_report(below, "below, alpha = f_d average on (" + to_string(1 - t) + ",1]");
      }
    }
  }
  return r.done();
}

using SuiteFn = SuiteResult (*)(const Context&);

const std::map<std::string, SuiteFn>& suite_table() {
  static const std::map<std::string, SuiteFn> table{
      {"lemma21", lemma21}, {"lemma22", lemma22}, {"lemma23", lemma23}, {"thm1", thm1},
      {"thm2", thm2},       {"thm31", thm31},     {"remark31", remark31}, {"thm3", thm3},
      {"thm4", thm4},       {"thm5", thm5},       {"cor1", cor1},       {"cz", cz},
  };
  return table;
}

}  // namespace

const char* to_string(SuiteStatus status) {
  switch (status) {
    case SuiteStatus::pass:
      return "pass";
    case SuiteStatus::fail:
      return "fail";
    case SuiteStatus::skipped:
      return "skipped";
  }
  return "?";
}

bool VerifyReport::passed() const {
  return std::none_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.status == SuiteStatus::fail; });
}

const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> names{"lemma21", "lemma22", "lemma23", "thm1", "thm2", "thm31",
                                              "remark31", "thm3",    "thm4",    "thm5", "cor1", "cz"};
  return names;
}

std::vector<std::string> parse_suites(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream in(list);
  std::string name;
  while (std::getline(in, name, ',')) {
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    if (name.empty()) continue;
    if (name == "all") {
      for (const auto& s : all_suites()) out.push_back(s);
      continue;
    }
    if (!suite_table().count(name)) {
      std::string known;
      for (const auto& s : all_suites()) known += (known.empty() ? "" : ", ") + s;
      throw InputError("unknown suite '" + name + "' (known: " + known + ")");
    }
    out.push_back(name);
  }
  if (out.empty()) throw InputError("no suites requested");
  return out;
}

VerifyReport verify_all(const DyadicFunction& f, const std::vector<std::string>& suites, const VerifyOptions& options) {
  for (const auto& name : suites) {
    if (!suite_table().count(name)) throw InputError("unknown suite '" + name + "'");
  }
  if (!(options.rhs_scale >= 0) || !std::isfinite(options.rhs_scale)) throw InputError("rhs_scale must be >= 0");
  const Context context{f, options, from_double(options.rhs_scale), bmo_dyadic_norm(f).value, rearrange_signed(f)};
  VerifyReport report;
  for (const auto& name : suites) report.suites.push_back(suite_table().at(name)(context));
  return report;
}

Json to_json(const VerifyReport& report) {
  Json j;
  j["passed"] = report.passed();
  Json suites = Json::array();
  for (const auto& s : report.suites) {
    Json item;
    item["suite"] = s.name;
    item["status"] = to_string(s.status);
    item["checks"] = s.checks;
    if (!s.witness.empty()) item["witness"] = s.witness;
    suites.push_back(item);
  }
  j["suites"] = suites;
  return j;
}

}  // namespace dyadic
