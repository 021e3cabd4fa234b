#pragma once

#include "dyadic/dyadic_function.hpp"
#include "dyadic/rational.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace dyadic {

enum class GeneratorKind { uniform_cells, monotone_1d, cascade_gr };

const char* to_string(GeneratorKind kind);
GeneratorKind parse_generator_kind(const std::string& text);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::uniform_cells;
  int dim = 1;
  int depth = 2;
  // uniform-cells and monotone-1d: values k/denominator with lo <= value <= hi.
  Rational lo = make_rational(-8);
  Rational hi = make_rational(8);
  long denominator = 1;
  // cascade-gr: child = parent * (1 + u), u = j/256 with |u| <= spread; accepted once
  // gr_membership < target (exactly). The spread halves every 4 rejections.
  Rational target_epsilon = make_rational(1, 8);
  Rational spread = make_rational(1, 2);
  int max_retries = 64;
  std::uint64_t seed = 1;
};

/// Deterministic given spec.seed. cascade-gr throws DomainError when no sample meets the
/// target within max_retries.
DyadicFunction generate(const GeneratorSpec& spec);

/// Same draws from a caller-owned engine; used by property tests.
DyadicFunction generate(const GeneratorSpec& spec, std::mt19937_64& rng);

}  // namespace dyadic
