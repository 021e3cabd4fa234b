#include "dyadic/step_function.hpp"

#include "dyadic/errors.hpp"

#include <algorithm>
#include <numeric>

namespace dyadic {

StepFunction::StepFunction(std::vector<Rational> breakpoints, std::vector<Rational> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.empty()) throw InputError("step function needs at least one piece");
  if (breakpoints_.size() != values_.size() + 1) {
    throw InputError("step function with " + std::to_string(values_.size()) + " values needs " +
                     std::to_string(values_.size() + 1) + " breakpoints, got " +
                     std::to_string(breakpoints_.size()));
  }
  if (breakpoints_.front() != 0 || breakpoints_.back() != 1) {
    throw InputError("step function breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i - 1] < breakpoints_[i])) throw InputError("breakpoints must be strictly increasing");
  }
  prefix_.resize(breakpoints_.size());
  prefix_[0] = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) prefix_[i + 1] = prefix_[i] + values_[i] * length(i);
}

bool StepFunction::is_nonincreasing() const {
  return std::adjacent_find(values_.begin(), values_.end(), std::less<>()) == values_.end();
}

std::size_t StepFunction::piece_at(const Rational& t) const {
  if (sgn(t) <= 0 || t > 1) throw DomainError("evaluation point must lie in (0,1]");
  // first breakpoint t_i >= t, piece index i-1
  const auto it = std::lower_bound(breakpoints_.begin() + 1, breakpoints_.end(), t);
  return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
}

Rational StepFunction::operator()(const Rational& t) const { return values_[piece_at(t)]; }

Rational StepFunction::integral_to(const Rational& t) const {
  if (sgn(t) < 0 || t > 1) throw DomainError("integration limit must lie in [0,1]");
  if (sgn(t) == 0) return Rational(0);
  const std::size_t p = piece_at(t);
  return prefix_[p] + values_[p] * (t - breakpoints_[p]);
}

StepFunction StepFunction::merged() const {
  std::vector<Rational> bps{breakpoints_.front()};
  std::vector<Rational> vals;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!vals.empty() && vals.back() == values_[i]) {
      bps.back() = breakpoints_[i + 1];
    } else {
      vals.push_back(values_[i]);
      bps.push_back(breakpoints_[i + 1]);
    }
  }
  return StepFunction(std::move(bps), std::move(vals));
}

namespace {

StepFunction rearrange_values(const std::vector<Rational>& cells, const Rational& cell_measure) {
  std::vector<std::size_t> order(cells.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cells[a] > cells[b]; });

  std::vector<Rational> bps{Rational(0)};
  std::vector<Rational> vals;
  std::size_t count = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Rational& v = cells[order[k]];
    ++count;
    if (k + 1 == order.size() || cells[order[k + 1]] != v) {
      vals.push_back(v);
      bps.push_back(Rational(static_cast<unsigned long>(count)) * cell_measure);
    }
  }
  bps.back() = 1;
  return StepFunction(std::move(bps), std::move(vals));
}

}  // namespace

StepFunction rearrange_signed(const DyadicFunction& f) {
  return rearrange_values(std::vector<Rational>(f.cells().begin(), f.cells().end()), f.cell_measure());
}

StepFunction rearrange_abs(const DyadicFunction& f) {
  std::vector<Rational> mags(f.cell_count());
  for (std::size_t i = 0; i < mags.size(); ++i) mags[i] = abs(f[i]);
  return rearrange_values(mags, f.cell_measure());
}

Rational supinf_formula(const DyadicFunction& f, const Rational& t) {
  const Rational k = t / f.cell_measure();
  if (k.get_den() != 1 || sgn(k) <= 0 || k > Rational(static_cast<unsigned long>(f.cell_count()))) {
    throw DomainError("t = " + to_string(t) + " is not a positive multiple of the cell measure " +
                      to_string(f.cell_measure()) + " in (0,1]");
  }
  const std::size_t count = k.get_num().get_ui();

  // Any E of measure t made of cells has inf_E |f| at most the count-th largest |value|;
  // the union of the count largest cells attains it.
  std::vector<Rational> mags(f.cell_count());
  for (std::size_t i = 0; i < mags.size(); ++i) mags[i] = abs(f[i]);
  std::nth_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(count - 1), mags.end(),
                   std::greater<>());
  return mags[count - 1];
}

Rational hardy_average(const StepFunction& g, const Rational& t) {
  if (sgn(t) <= 0 || t > 1) throw DomainError("Hardy average needs t in (0,1], got " + to_string(t));
  return g.integral_to(t) / t;
}

Rational interval_average(const StepFunction& g, const Rational& a, const Rational& b) {
  if (sgn(a) < 0 || b > 1 || !(a < b)) {
    throw DomainError("interval [" + to_string(a) + ", " + to_string(b) + "] is not a nondegenerate subinterval of [0,1]");
  }
  return g.integral(a, b) / (b - a);
}

Rational interval_mean_oscillation(const StepFunction& g, const Rational& a, const Rational& b) {
  const Rational mean = interval_average(g, a, b);
  const auto bps = g.breakpoints();
  const auto vals = g.values();
  Rational acc;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const Rational& lo = std::max(bps[i], a);
    const Rational& hi = std::min(bps[i + 1], b);
    if (lo < hi) acc += abs(vals[i] - mean) * (hi - lo);
  }
  return acc / (b - a);
}

ExactInequality hardy_gap_check(const StepFunction& g, const Rational& t, const Rational& gamma) {
  if (!g.is_nonincreasing()) throw DomainError("Hardy gap inequality needs a nonincreasing step function");
  if (!(gamma > 1)) throw DomainError("gamma must exceed 1, got " + to_string(gamma));
  if (sgn(t) <= 0 || t > 1) throw DomainError("t must lie in (0,1], got " + to_string(t));
  const Rational at_t = hardy_average(g, t);
  const Rational lhs = hardy_average(g, t / gamma) - at_t;
  Rational spread;
  const auto bps = g.breakpoints();
  const auto vals = g.values();
  for (std::size_t i = 0; i < vals.size() && bps[i] < t; ++i) {
    const Rational& hi = std::min(bps[i + 1], t);
    spread += abs(vals[i] - at_t) * (hi - bps[i]);
  }
  const Rational rhs = gamma / 2 * spread / t;
  return ExactInequality{lhs, rhs};
}

std::optional<Rational> solve_right_endpoint(const StepFunction& g, const Rational& a, const Rational& target) {
  if (sgn(a) < 0 || !(a < 1)) throw DomainError("left endpoint must lie in [0,1)");
  // h(b) = int_a^b (g - target) is piecewise linear in b with h(a) = 0.
  const auto bps = g.breakpoints();
  const auto vals = g.values();
  std::size_t p = (sgn(a) == 0) ? 0 : g.piece_at(a);
  if (sgn(a) > 0 && a == bps[p + 1]) ++p;
  Rational start = a;
  Rational h;
  for (; p < vals.size(); ++p) {
    const Rational& end = bps[p + 1];
    const Rational slope = vals[p] - target;
    if (start > a && sgn(h) == 0) return start;
    if (sgn(slope) == 0) {
      if (sgn(h) == 0) return end;
    } else {
      const Rational root = start - h / slope;
      if (root > start && root <= end && root > a) return root;
    }
    h += slope * (end - start);
    start = end;
  }
  if (sgn(h) == 0 && start > a) return start;
  return std::nullopt;
}

}  // namespace dyadic
