#include "dyadic/io.hpp"

#include "dyadic/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace dyadic {

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw InputError(std::string("missing field '") + name + "'");
  return *it;
}

int int_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer()) throw InputError(std::string("field '") + name + "' must be an integer");
  return v.get<int>();
}

std::vector<Rational> rational_array(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_array()) throw InputError(std::string("field '") + name + "' must be an array");
  std::vector<Rational> out;
  out.reserve(v.size());
  for (const auto& item : v) out.push_back(rational_from_json(item));
  return out;
}

Json rational_array_json(std::span<const Rational> values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(rational_json(v));
  return arr;
}

Json cube_list(const std::vector<CubeId>& cubes) {
  Json arr = Json::array();
  for (const auto& q : cubes) arr.push_back(to_json(q));
  return arr;
}

}  // namespace

Json rational_json(const Rational& value) { return to_string(value); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return parse_rational(std::to_string(j.get<std::uint64_t>()));
    return parse_rational(std::to_string(j.get<std::int64_t>()));
  }
  throw InputError("rational values must be \"p/q\" strings or integers, got " + j.dump());
}

Json double_json(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

Json to_json(const CubeId& cube) {
  Json j;
  j["level"] = cube.level;
  j["index"] = cube.index;
  return j;
}

CubeId cube_from_json(const Json& j) {
  CubeId q;
  q.level = int_field(j, "level");
  const Json& idx = field(j, "index");
  if (!idx.is_array()) throw InputError("cube index must be an array");
  for (const auto& i : idx) {
    if (!i.is_number_integer()) throw InputError("cube index entries must be integers");
    q.index.push_back(i.get<std::int64_t>());
  }
  return q;
}

Json to_json(const DyadicFunction& f) {
  Json j;
  j["n"] = f.dim();
  j["level"] = f.depth();
  j["values"] = rational_array_json(f.cells());
  return j;
}

DyadicFunction function_from_json(const Json& j) {
  return DyadicFunction(int_field(j, "n"), int_field(j, "level"), rational_array(j, "values"));
}

Json to_json(const StepFunction& g) {
  Json j;
  j["breakpoints"] = rational_array_json(g.breakpoints());
  j["values"] = rational_array_json(g.values());
  return j;
}

StepFunction step_function_from_json(const Json& j) {
  return StepFunction(rational_array(j, "breakpoints"), rational_array(j, "values"));
}

Json to_json(const CzDecomposition& d) {
  Json j;
  j["threshold"] = rational_json(d.threshold);
  j["direction"] = to_string(d.direction);
  j["stopping_cubes"] = cube_list(d.stopping_cubes);
  j["parent_cover"] = cube_list(d.parent_cover);
  j["measure_e"] = rational_json(d.measure_e);
  j["measure_e_star"] = rational_json(d.measure_e_star);
  return j;
}

CzDecomposition cz_from_json(const Json& j) {
  CzDecomposition d;
  d.threshold = rational_from_json(field(j, "threshold"));
  const std::string dir = field(j, "direction").get<std::string>();
  if (dir == "above") {
    d.direction = Direction::above;
  } else if (dir == "below") {
    d.direction = Direction::below;
  } else {
    throw InputError("direction must be above or below");
  }
  for (const auto& q : field(j, "stopping_cubes")) d.stopping_cubes.push_back(cube_from_json(q));
  for (const auto& q : field(j, "parent_cover")) d.parent_cover.push_back(cube_from_json(q));
  d.measure_e = rational_from_json(field(j, "measure_e"));
  d.measure_e_star = rational_from_json(field(j, "measure_e_star"));
  return d;
}

Json to_json(const IntervalBmoBound& b) {
  Json j;
  j["lower"] = rational_json(b.lower);
  j["lower_decimal"] = double_json(b.lower.get_d());
  j["upper"] = double_json(b.upper);
  j["witness"] = Json::array({rational_json(b.witness_a), rational_json(b.witness_b)});
  j["gap"] = double_json(b.gap);
  j["tolerance"] = double_json(b.tolerance);
  j["gap_met"] = b.gap_met;
  return j;
}

Json to_json(const GrProfile& p) {
  Json j;
  j["dim"] = p.dim;
  j["depth"] = p.depth;
  j["sigma"] = rational_array_json(p.sigma_breaks);
  j["v"] = rational_array_json(p.values);
  j["epsilon"] = rational_json(p.epsilon_global);
  return j;
}

Json to_json(const ExponentSolution& s) {
  Json j;
  j["epsilon"] = rational_json(s.epsilon);
  j["n"] = s.n;
  j["p"] = double_json(s.p);
  j["p_lower"] = double_json(s.p_lower);
  j["residual"] = double_json(s.residual);
  j["capped"] = s.capped;
  return j;
}

Json to_json(const SearchConfig& c) {
  Json j;
  j["dim"] = c.dim;
  j["depth"] = c.depth;
  j["restarts"] = c.restarts;
  j["iterations"] = c.iterations;
  j["initial_step"] = rational_json(c.initial_step);
  j["final_step"] = rational_json(c.final_step);
  j["initial_temperature"] = double_json(c.initial_temperature);
  j["final_temperature"] = double_json(c.final_temperature);
  j["seed"] = c.seed;
  j["objective"] = to_string(c.objective);
  j["tol"] = double_json(c.tol);
  return j;
}

Json to_json(const SearchResult& r) {
  Json j;
  j["config"] = to_json(r.config);
  j["best_restart"] = r.best_restart;
  if (r.config.objective == SearchObjective::ratio) j["ratio_exact"] = rational_json(r.ratio_exact);
  j["lower"] = double_json(r.ratio_lower);
  j["upper"] = double_json(r.ratio_upper);
  j["cap"] = double_json(r.cap);
  Json restarts = Json::array();
  for (double v : r.restart_best) restarts.push_back(double_json(v));
  j["restart_best"] = restarts;
  Json trace = Json::array();
  for (const auto& e : r.trace) {
    trace.push_back(Json{{"restart", e.restart}, {"iteration", e.iteration}, {"value", double_json(e.value)}});
  }
  j["trace"] = trace;
  j["best"] = to_json(r.best);
  return j;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << fields[i];
  }
  out_ << '\n';
}

}  // namespace dyadic
