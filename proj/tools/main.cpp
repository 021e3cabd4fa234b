// dyadic: command-line front end. Exit status 0 on success, 1 when a checked inequality fails,
// 2 on bad input or an unmet precondition.

#include "dyadic/cz_stopping.hpp"
#include "dyadic/dyadic_core.hpp"
#include "dyadic/errors.hpp"
#include "dyadic/extremal_search.hpp"
#include "dyadic/generate.hpp"
#include "dyadic/gurov_reshetnyak.hpp"
#include "dyadic/interval_bmo.hpp"
#include "dyadic/io.hpp"
#include "dyadic/jn_bounds.hpp"
#include "dyadic/step_function.hpp"
#include "dyadic/verify.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

using namespace dyadic;

namespace {

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

struct Globals {
  std::string input;
  std::string output = "-";
  double tol = kDefaultIntervalTolerance;
  std::uint64_t seed = 1;
  int threads = 0;
};

Json read_input(const std::string& path) {
  if (path.empty()) throw InputError("--input is required");
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return parse_json(buffer.str());
  }
  return read_json_file(path);
}

DyadicFunction read_function(const Globals& g) { return function_from_json(read_input(g.input)); }

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw InputError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void write_json(const Globals& g, const Json& j) {
  Output out(g.output);
  out.stream() << dump(j);
}

std::ofstream open_file(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  return out;
}

Rational parse_rational_option(const std::string& text, const char* name) {
  try {
    return parse_rational(text);
  } catch (const InputError& e) {
    throw InputError(std::string("--") + name + ": " + e.what());
  }
}

int cmd_norm(const Globals& g) {
  const DyadicFunction f = read_function(g);
  const BmoNorm norm = bmo_dyadic_norm(f);
  Json j;
  j["norm"] = rational_json(norm.value);
  j["norm_decimal"] = double_json(norm.value.get_d());
  j["argmax"] = to_json(norm.argmax);
  j["mean"] = rational_json(f.mean());
  write_json(g, j);
  return kPass;
}

int cmd_rearrange(const Globals& g, bool absolute, int samples, const std::string& csv_path) {
  const DyadicFunction f = read_function(g);
  const StepFunction r = absolute ? rearrange_abs(f) : rearrange_signed(f);
  if (samples > 0) {
    if (csv_path.empty()) throw InputError("--samples needs --csv PATH for the sample table");
    std::ofstream out = open_file(csv_path);
    CsvWriter csv(out);
    csv.row({"t", absolute ? "f_star" : "f_d", "hardy"});
    for (int k = 1; k <= samples; ++k) {
      const Rational t = make_rational(k, samples);
      csv.row({format_double(t.get_d()), format_double(r(t).get_d()), format_double(hardy_average(r, t).get_d())});
    }
  }
  write_json(g, to_json(r));
  return kPass;
}

int cmd_interval_bmo(const Globals& g) {
  const Json in = read_input(g.input);
  Json j;
  if (in.is_object() && in.contains("breakpoints")) {
    j["interval_norm"] = to_json(interval_bmo_norm(step_function_from_json(in), g.tol));
    write_json(g, j);
    return kPass;
  }
  const DyadicFunction f = function_from_json(in);
  const IntervalBmoBound b = interval_bmo_norm(rearrange_signed(f), g.tol);
  const Rational dyadic_norm = bmo_dyadic_norm(f).value;
  const Rational cap = pow2(f.dim()) * dyadic_norm;
  const bool holds = b.lower <= cap && from_double(b.upper) <= cap + from_double(g.tol);
  j["interval_norm"] = to_json(b);
  j["dyadic_norm"] = rational_json(dyadic_norm);
  if (sgn(dyadic_norm) != 0) j["ratio"] = rational_json(b.lower / dyadic_norm);
  j["cap"] = rational_json(cap);
  j["holds"] = holds;
  write_json(g, j);
  return holds ? kPass : kViolation;
}

int cmd_cz(const Globals& g, const std::string& alpha_text, const std::string& direction_text) {
  const DyadicFunction f = read_function(g);
  const Rational alpha = parse_rational_option(alpha_text, "alpha");
  Direction dir;
  if (direction_text == "above") {
    dir = Direction::above;
  } else if (direction_text == "below") {
    dir = Direction::below;
  } else {
    throw InputError("--direction must be above or below");
  }
  const CzDecomposition d = stopping_family(f, alpha, dir);
  const StoppingReport report = verify_stopping(d, f);
  Json j = to_json(d);
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json item{{"name", c.name}, {"passed", c.passed}};
    if (!c.passed) item["witness"] = c.witness;
    checks.push_back(item);
  }
  j["report"] = checks;
  j["passed"] = report.passed();
  write_json(g, j);
  return report.passed() ? kPass : kViolation;
}

int cmd_maximal(const Globals& g, const std::string& alpha_text) {
  const DyadicFunction f = read_function(g);
  Json j;
  j["maximal"] = to_json(dyadic_maximal_function(f));
  if (!alpha_text.empty()) {
    const Rational alpha = parse_rational_option(alpha_text, "alpha");
    j["alpha"] = rational_json(alpha);
    j["level_set_measure"] = rational_json(maximal_level_set(f, alpha));
  }
  write_json(g, j);
  return kPass;
}

int cmd_jn(const Globals& g, int grid, bool absolute) {
  const DyadicFunction f = read_function(g);
  if (grid < 1) throw InputError("--lambda-grid must be >= 1");
  const Rational norm = bmo_dyadic_norm(f).value;
  Output out(g.output);
  CsvWriter csv(out.stream());
  csv.row({"lambda", "measure", "bound", "pass"});
  bool all = true;
  for (const Rational& lambda : lambda_grid(f, grid)) {
    const DistributionCheck c = absolute ? jn_abs_check(f, norm, lambda) : jn_check(f, norm, lambda);
    const bool ok = c.holds(1e-12);
    all = all && ok;
    csv.row({format_double(lambda.get_d()), format_double(c.measure.get_d()), format_double(c.bound),
             ok ? "1" : "0"});
  }
  return all ? kPass : kViolation;
}

int cmd_gr(const Globals& g) {
  const DyadicFunction f = read_function(g);
  const GrProfile p = gr_profile(f);
  std::string p_text;
  if (p.epsilon_global < pow2(-(f.dim() - 1))) p_text = format_double(solve_p(p.epsilon_global, f.dim()).p);
  const std::string eps_text = format_double(p.epsilon_global.get_d());
  Output out(g.output);
  CsvWriter csv(out.stream());
  csv.row({"sigma", "v", "epsilon", "p"});
  for (std::size_t k = 0; k < p.values.size(); ++k) {
    csv.row({format_double(p.sigma_breaks[k].get_d()), format_double(p.values[k].get_d()), eps_text, p_text});
  }
  csv.row({"0", "0", eps_text, p_text});
  return kPass;
}

int cmd_p_root(const Globals& g, int n, const std::string& eps_text) {
  if (n < 1) throw InputError("--n must be >= 1");
  write_json(g, to_json(solve_p(parse_rational_option(eps_text, "eps"), n)));
  return kPass;
}

int cmd_check(const Globals& g, const std::string& suites, const std::string& format, double rhs_scale) {
  const DyadicFunction f = read_function(g);
  VerifyOptions options;
  options.tol = g.tol;
  options.rhs_scale = rhs_scale;
  const VerifyReport report = verify_all(f, parse_suites(suites), options);
  if (format == "json") {
    write_json(g, to_json(report));
  } else if (format == "table") {
    Output out(g.output);
    for (const auto& s : report.suites) {
      out.stream() << std::left << std::setw(9) << s.name << ' ' << std::setw(7) << to_string(s.status) << ' '
                   << std::setw(7) << s.checks;
      if (!s.witness.empty()) out.stream() << ' ' << s.witness;
      out.stream() << '\n';
    }
  } else {
    throw InputError("--format must be json or table");
  }
  return report.passed() ? kPass : kViolation;
}

int cmd_search(const Globals& g, SearchConfig cfg, const std::string& objective, const std::string& best_path,
               const std::string& trace_path) {
  cfg.seed = g.seed;
  cfg.tol = g.tol;
  cfg.objective = parse_objective(objective);
  const SearchResult r = search(cfg);
  if (!best_path.empty()) {
    std::ofstream out = open_file(best_path);
    out << dump(to_json(r.best));
  }
  if (!trace_path.empty()) {
    std::ofstream out = open_file(trace_path);
    CsvWriter csv(out);
    csv.row({"restart", "iteration", "value"});
    for (const auto& e : r.trace) csv.row({std::to_string(e.restart), std::to_string(e.iteration), format_double(e.value)});
  }
  write_json(g, to_json(r));
  return kPass;
}

int cmd_generate(const Globals& g, GeneratorSpec spec, const std::string& kind, const std::string& lo,
                 const std::string& hi, const std::string& target) {
  spec.kind = parse_generator_kind(kind);
  spec.lo = parse_rational_option(lo, "lo");
  spec.hi = parse_rational_option(hi, "hi");
  spec.target_epsilon = parse_rational_option(target, "target-eps");
  spec.seed = g.seed;
  write_json(g, to_json(generate(spec)));
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dyadic BMO and Gurov-Reshetnyak functionals on piecewise-constant functions"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "dyadic 1.0.0");

  Globals g;
  app.add_option("--input,-i", g.input, "function JSON file, or - for stdin");
  app.add_option("--output,-o", g.output, "output file, - for stdout")->capture_default_str();
  app.add_option("--tol", g.tol, "interval-norm and bound tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "random seed for search and generate")->capture_default_str();
  app.add_option("--threads", g.threads, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);

  auto* norm = app.add_subcommand("norm", "dyadic BMO norm with the attaining cube");

  auto* rearrange = app.add_subcommand("rearrange", "nonincreasing rearrangement f_d (or f* with --abs)");
  bool rearrange_abs_flag = false;
  int samples = 0;
  std::string csv_path;
  rearrange->add_flag("--abs", rearrange_abs_flag, "rearrange |f|");
  rearrange->add_option("--samples", samples, "write K samples t = k/K of the rearrangement and its Hardy average")
      ->check(CLI::NonNegativeNumber);
  rearrange->add_option("--csv", csv_path, "CSV file for --samples");

  auto* interval = app.add_subcommand("interval-bmo", "interval BMO norm of f_d, or of a step function");

  auto* cz = app.add_subcommand("cz", "stopping family at a threshold, with its verification report");
  std::string alpha_text;
  std::string direction = "above";
  cz->add_option("--alpha", alpha_text, "threshold p/q")->required();
  cz->add_option("--direction", direction, "above or below")->capture_default_str();

  auto* maximal = app.add_subcommand("maximal", "dyadic maximal function");
  std::string maximal_alpha;
  maximal->add_option("--alpha", maximal_alpha, "also report |{M_d f > alpha}|");

  auto* jn = app.add_subcommand("jn", "exponential distribution bound on a lambda grid (CSV)");
  int grid = 32;
  bool jn_abs = false;
  jn->add_option("--lambda-grid", grid, "number of lambda points")->capture_default_str();
  jn->add_flag("--abs", jn_abs, "use |f - f_Q0| (f >= 0)");

  auto* gr = app.add_subcommand("gr", "Gurov-Reshetnyak modulus profile (CSV)");

  auto* p_root = app.add_subcommand("p-root", "exponent p with p^p/(p-1)^(p-1) = 1/(2^(n-1) eps)");
  int root_n = 1;
  std::string eps_text;
  p_root->add_option("--n", root_n, "dimension")->required();
  p_root->add_option("--eps", eps_text, "epsilon p/q")->required();

  auto* check = app.add_subcommand("check", "run verification suites against a function");
  std::string suites = "all";
  std::string format = "json";
  double rhs_scale = 1.0;
  check->add_option("--suite", suites, "comma-separated suites or all")->capture_default_str();
  check->add_option("--format", format, "json or table")->capture_default_str();
  check->add_option("--rhs-scale", rhs_scale, "multiply every bound by this (fault injection)")->group("");

  auto* search_cmd = app.add_subcommand("search", "multistart annealing for large norm ratios");
  SearchConfig cfg;
  std::string objective = "ratio";
  std::string best_path;
  std::string trace_path;
  search_cmd->add_option("--n", cfg.dim, "dimension")->capture_default_str();
  search_cmd->add_option("--level", cfg.depth, "depth L")->capture_default_str();
  search_cmd->add_option("--restarts", cfg.restarts)->capture_default_str();
  search_cmd->add_option("--iters", cfg.iterations)->capture_default_str();
  search_cmd->add_option("--objective", objective, "ratio or jnB")->capture_default_str();
  search_cmd->add_option("--best", best_path, "write the best function JSON here");
  search_cmd->add_option("--trace", trace_path, "write the improvement trace CSV here");

  auto* generate_cmd = app.add_subcommand("generate", "random test function");
  GeneratorSpec spec;
  std::string kind = "uniform-cells";
  std::string lo = "-8";
  std::string hi = "8";
  std::string target = "1/8";
  generate_cmd->add_option("--kind", kind, "uniform-cells, monotone-1d or cascade-gr")->capture_default_str();
  generate_cmd->add_option("--n", spec.dim)->capture_default_str();
  generate_cmd->add_option("--level", spec.depth)->capture_default_str();
  generate_cmd->add_option("--lo", lo)->capture_default_str();
  generate_cmd->add_option("--hi", hi)->capture_default_str();
  generate_cmd->add_option("--den", spec.denominator, "value denominator")->capture_default_str();
  generate_cmd->add_option("--target-eps", target, "cascade-gr: required gr_membership bound")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (g.threads > 0) omp_set_num_threads(g.threads);
    if (*norm) return cmd_norm(g);
    if (*rearrange) return cmd_rearrange(g, rearrange_abs_flag, samples, csv_path);
    if (*interval) return cmd_interval_bmo(g);
    if (*cz) return cmd_cz(g, alpha_text, direction);
    if (*maximal) return cmd_maximal(g, maximal_alpha);
    if (*jn) return cmd_jn(g, grid, jn_abs);
    if (*gr) return cmd_gr(g);
    if (*p_root) return cmd_p_root(g, root_n, eps_text);
    if (*check) return cmd_check(g, suites, format, rhs_scale);
    if (*search_cmd) return cmd_search(g, cfg, objective, best_path, trace_path);
    if (*generate_cmd) return cmd_generate(g, spec, kind, lo, hi, target);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const DomainError& e) {
    std::cerr << "precondition not met: " << e.what() << '\n';
    return kInputError;
  } catch (const std::logic_error& e) {
    // Raised only when a computed value breaks a proven cap.
    std::cerr << "violation: " << e.what() << '\n';
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
