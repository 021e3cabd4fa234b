#pragma once

#include "dyadic/dyadic_function.hpp"
#include "dyadic/rational.hpp"
#include "dyadic/step_function.hpp"

#include <vector>

// Serial brute-force versions of the cube kernels. Each works from cell coordinates
// directly, with no shared tables, so tests can use them as independent oracles and the
// benchmark can time them against the parallel kernels.
namespace dyadic::reference {

/// Coordinates (i_1, ..., i_n) of a level-L cell.
std::vector<std::int64_t> cell_coordinates(const DyadicFunction& f, std::size_t flat);

bool cell_in_cube(const DyadicFunction& f, std::size_t flat, const CubeId& q);

Rational average(const DyadicFunction& f, const CubeId& q);
Rational oscillation(const DyadicFunction& f, const CubeId& q);

/// max over cubes of level 0..L-1 (or the single cube when L = 0).
Rational bmo_norm(const DyadicFunction& f);

/// Per cell: max over the cubes containing it of the average of |f|.
std::vector<Rational> maximal_function(const DyadicFunction& f);

/// max over cubes with level >= k of Omega/f_Q, for k = 0..L; f >= 0.
std::vector<Rational> gr_levels(const DyadicFunction& f);

/// Sorted (value, mass) pairs: the distribution of f as a multiset.
std::vector<std::pair<Rational, Rational>> distribution(const DyadicFunction& f);
std::vector<std::pair<Rational, Rational>> distribution(const StepFunction& g);

/// max of Omega(g,[a,b]) over a, b on the grid k/steps.
Rational interval_grid_max(const StepFunction& g, long steps);

}  // namespace dyadic::reference
