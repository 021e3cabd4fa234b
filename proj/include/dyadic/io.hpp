#pragma once

#include "dyadic/cz_stopping.hpp"
#include "dyadic/dyadic_function.hpp"
#include "dyadic/extremal_search.hpp"
#include "dyadic/gurov_reshetnyak.hpp"
#include "dyadic/interval_bmo.hpp"
#include "dyadic/step_function.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace dyadic {

using Json = nlohmann::ordered_json;

/// Rationals travel as canonical "p/q" strings; integers are accepted as shorthand on input.
Json rational_json(const Rational& value);
Rational rational_from_json(const Json& j);

/// Non-finite doubles become null.
Json double_json(double value);

Json to_json(const CubeId& cube);
CubeId cube_from_json(const Json& j);

/// {"n": n, "level": L, "values": ["p/q", ...]} with values in flat cell order.
Json to_json(const DyadicFunction& f);
DyadicFunction function_from_json(const Json& j);

/// {"breakpoints": [...], "values": [...]}
Json to_json(const StepFunction& g);
StepFunction step_function_from_json(const Json& j);

Json to_json(const CzDecomposition& d);
CzDecomposition cz_from_json(const Json& j);

Json to_json(const IntervalBmoBound& b);
Json to_json(const GrProfile& p);
Json to_json(const ExponentSolution& s);
Json to_json(const SearchConfig& c);
Json to_json(const SearchResult& r);

/// Parses text; malformed JSON becomes InputError.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

/// Two-space indented, trailing newline.
std::string dump(const Json& j);

/// Shortest round-trip decimal with '.' whatever the locale.
std::string format_double(double value);

/// Comma-separated rows with LF line endings.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

}  // namespace dyadic
