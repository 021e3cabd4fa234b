#pragma once

#include "dyadic/rational.hpp"
#include "dyadic/step_function.hpp"

#include <cstddef>

namespace dyadic {

/// Two-sided bound on sup over [a,b] in [0,1] of Omega(g, [a,b]).
struct IntervalBmoBound {
  Rational lower;      // attained: equals Omega(g, [witness_a, witness_b])
  double upper = 0.0;  // certified, rounded upward
  Rational witness_a;
  Rational witness_b;
  double gap = 0.0;    // upper - lower, rounded upward
  double tolerance = 0.0;
  bool gap_met = false;
};

inline constexpr double kDefaultIntervalTolerance = 1e-9;
inline constexpr int kDefaultRefinementRounds = 40;

/// Exact supremum of the interval mean oscillation of a step function.
///
/// Fix the piece i holding a, the piece j holding b, and a threshold pattern
/// (which of the pieces in the window count as above the mean). With x = t_i - a and
/// y = b - t_{j-1}, the pattern's signed oscillation is Q(x,y) / (x + y + W)^2 with Q
/// quadratic and W the interior length. Omega is the pointwise maximum of these
/// pattern functions over threshold patterns, so its supremum is the largest value any
/// pattern function takes on its rectangle: at a corner, at an edge stationary point
/// (one linear equation), or at an interior stationary point (a 2x2 linear system).
/// All candidates are rational, so the supremum is computed exactly and the upper bound
/// equals the lower bound up to the final rounding to double.
///
/// Windows are processed in parallel over the left piece; the witness is the
/// lexicographically smallest maximiser among the candidates.
IntervalBmoBound interval_bmo_norm(const StepFunction& g, double tol = kDefaultIntervalTolerance);

/// Same region analysis in double precision. Used as the inner-loop objective of the
/// extremal search; not a certified value.
double interval_bmo_estimate(const StepFunction& g);

struct RefinementCertificate {
  double lower = 0.0;
  double upper = 0.0;
  Rational witness_a;
  Rational witness_b;
  int rounds = 0;
  std::size_t boxes_evaluated = 0;
  bool gap_met = false;
};

/// Independent branch-and-bound certificate over boxes of (a,b) endpoints.
///
/// Each box gets an upper bound from the exact oscillation at its centre plus a
/// variation bound |dOmega| <= 3 R / |I| per unit endpoint move (R the range of g over
/// the box hull), and from Omega <= R/2 on boxes touching the diagonal. Boxes whose bound
/// exceeds the best centre value by more than tol are split in four. Stops after
/// max_rounds or when the active set grows past max_boxes, reporting gap_met = false.
RefinementCertificate refine_interval_bmo(const StepFunction& g, double tol, int max_rounds = kDefaultRefinementRounds,
                                          std::size_t max_boxes = 1u << 20);

}  // namespace dyadic
