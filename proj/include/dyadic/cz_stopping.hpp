#pragma once

#include "dyadic/dyadic_core.hpp"
#include "dyadic/dyadic_function.hpp"

#include <string>
#include <vector>

namespace dyadic {

enum class Direction { above, below };

/// Maximal dyadic cubes whose average crosses a threshold, with the cover by their fathers.
struct CzDecomposition {
  Rational threshold;
  Direction direction = Direction::above;
  std::vector<CubeId> stopping_cubes;  // sorted by (level, flat)
  std::vector<CubeId> parent_cover;    // maximal fathers, sorted by (level, flat)
  Rational measure_e;
  Rational measure_e_star;
};

/// Top-down walk from Q0 selecting the maximal cubes with average > alpha (above) or
/// <= alpha (below), then the fathers of those cubes reduced to a maximal, disjoint family.
///
/// Requires alpha >= f_{Q0} for above and alpha < f_{Q0} for below, so Q0 never
/// qualifies. Violations throw DomainError.
CzDecomposition stopping_family(const DyadicFunction& f, const Rational& alpha, Direction direction);
CzDecomposition stopping_family(const DyadicFunction& f, const CubeTable& table, const Rational& alpha,
                                Direction direction);

struct StoppingCheck {
  std::string name;
  bool passed = true;
  std::string witness;
};

struct StoppingReport {
  std::vector<StoppingCheck> checks;
  bool passed() const;
};

/// Exact itemised verification of a decomposition against the function it came from:
/// crossing, maximality, disjointness, parent averages, cells outside E, parent cover,
/// measures, and |E*| <= 2^n |E|.
StoppingReport verify_stopping(const CzDecomposition& d, const DyadicFunction& f);

/// |{M_d f > alpha}| for alpha >= f_{Q0}.
Rational maximal_level_set(const DyadicFunction& f, const Rational& alpha);

const char* to_string(Direction direction);

}  // namespace dyadic
