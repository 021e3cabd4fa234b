#include "dyadic/interval_bmo.hpp"

#include "dyadic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace dyadic {

namespace {

// cx*x + cy*y + c0
template <class S>
struct Linear {
  S cx, cy, c0;
};

// xx x^2 + xy x y + yy y^2 + x x + y y + c
template <class S>
struct Quadratic {
  S xx, xy, yy, x, y, c;

  S operator()(const S& px, const S& py) const {
    S value = xx * px * px;
    value += xy * px * py;
    value += yy * py * py;
    value += x * px;
    value += y * py;
    value += c;
    return value;
  }
};

template <class S>
Quadratic<S> product(const Linear<S>& a, const Linear<S>& b) {
  Quadratic<S> q;
  q.xx = a.cx * b.cx;
  q.xy = a.cx * b.cy + a.cy * b.cx;
  q.yy = a.cy * b.cy;
  q.x = a.cx * b.c0 + a.c0 * b.cx;
  q.y = a.cy * b.c0 + a.c0 * b.cy;
  q.c = a.c0 * b.c0;
  return q;
}

template <class S>
Quadratic<S> difference(const Quadratic<S>& p, const Quadratic<S>& q) {
  return Quadratic<S>{p.xx - q.xx, p.xy - q.xy, p.yy - q.yy, p.x - q.x, p.y - q.y, p.c - q.c};
}

// Best candidate seen so far; positions are in the solver's (possibly scaled) units.
template <class S>
struct Best {
  bool valid = false;
  S value;
  S a;
  S b;

  void offer(const S& v, const S& pa, const S& pb) {
    if (!valid || v > value || (v == value && (pa < a || (pa == a && pb < b)))) {
      valid = true;
      value = v;
      a = pa;
      b = pb;
    }
  }

  void merge(const Best& other) {
    if (other.valid) offer(other.value, other.a, other.b);
  }
};

template <class S>
class RegionSolver {
 public:
  RegionSolver(std::vector<S> values, std::vector<S> positions, std::vector<int> ranks, int rank_count)
      : values_(std::move(values)), pos_(std::move(positions)), rank_(std::move(ranks)), rank_count_(rank_count) {
    len_.resize(values_.size());
    for (std::size_t p = 0; p < values_.size(); ++p) len_[p] = pos_[p + 1] - pos_[p];
  }

  std::size_t pieces() const { return values_.size(); }

  // Every window whose left endpoint lies in piece i.
  void solve_from(std::size_t i, Best<S>& best) const {
    const std::size_t m = values_.size();
    const auto ranks = static_cast<std::size_t>(rank_count_);
    std::vector<S> bucket_lv(ranks, S(0));
    std::vector<S> bucket_l(ranks, S(0));
    std::vector<int> bucket_count(ranks, 0);
    S interior_sum(0);
    S interior_len(0);
    int interior_lo = rank_count_;
    int interior_hi = -1;

    for (std::size_t j = i + 1; j < m; ++j) {
      if (j > i + 1) {
        const std::size_t p = j - 1;
        const auto r = static_cast<std::size_t>(rank_[p]);
        S lv = len_[p] * values_[p];
        bucket_lv[r] += lv;
        bucket_l[r] += len_[p];
        ++bucket_count[r];
        interior_sum += lv;
        interior_len += len_[p];
        interior_lo = std::min(interior_lo, rank_[p]);
        interior_hi = std::max(interior_hi, rank_[p]);
      }
      const int ri = rank_[i];
      const int rj = rank_[j];
      const int lo = std::min({interior_lo, ri, rj});
      const int hi = std::max({interior_hi, ri, rj});

      S above_lv(0);
      S above_l(0);
      for (int r = hi; r >= lo; --r) {
        const auto ur = static_cast<std::size_t>(r);
        if (bucket_count[ur] == 0 && r != ri && r != rj) continue;
        if (r != hi) {
          S signed_sum = 2 * above_lv - interior_sum;
          S signed_len = 2 * above_l - interior_len;
          evaluate(i, j, ri > r, rj > r, signed_sum, signed_len, interior_sum, interior_len, best);
        }
        above_lv += bucket_lv[ur];
        above_l += bucket_l[ur];
      }
    }
  }

 private:
  void evaluate(std::size_t i, std::size_t j, bool i_above, bool j_above, const S& signed_sum, const S& signed_len,
                const S& interior_sum, const S& interior_len, Best<S>& best) const {
    const S& vi = values_[i];
    const S& vj = values_[j];
    const S zero(0);
    const S one(1);
    // Omega * T = U - m K with m = N / T, so Omega = (U T - N K) / T^2.
    const Linear<S> u{i_above ? S(vi) : S(-vi), j_above ? S(vj) : S(-vj), signed_sum};
    const Linear<S> k{i_above ? one : S(-one), j_above ? one : S(-one), signed_len};
    const Linear<S> n{vi, vj, interior_sum};
    const Linear<S> t{one, one, interior_len};
    const Quadratic<S> q = difference(product(u, t), product(n, k));

    const S& W = interior_len;
    const S& li = len_[i];
    const S& lj = len_[j];

    auto consider = [&](const S& x, const S& y) {
      S total = x + y + W;
      if (!(total > zero)) return;
      S value = q(x, y) / (total * total);
      S a = pos_[i + 1] - x;
      S b = pos_[j] + y;
      best.offer(value, a, b);
    };

    consider(zero, zero);
    consider(li, zero);
    consider(zero, lj);
    consider(li, lj);

    // edges y = y0: Q(x)/(x+c)^2 is stationary where (2 alpha c - beta) x = -(beta c - 2 gamma)
    for (const S* y0p : {&zero, &lj}) {
      const S& y0 = *y0p;
      S alpha = q.xx;
      S beta = q.xy * y0 + q.x;
      S gamma = q.yy * y0 * y0 + q.y * y0 + q.c;
      S c = y0 + W;
      S den = 2 * alpha * c - beta;
      if (den != zero) {
        S x = -(beta * c - 2 * gamma) / den;
        if (x > zero && x < li) consider(x, y0);
      }
    }
    for (const S* x0p : {&zero, &li}) {
      const S& x0 = *x0p;
      S alpha = q.yy;
      S beta = q.xy * x0 + q.y;
      S gamma = q.xx * x0 * x0 + q.x * x0 + q.c;
      S c = x0 + W;
      S den = 2 * alpha * c - beta;
      if (den != zero) {
        S y = -(beta * c - 2 * gamma) / den;
        if (y > zero && y < lj) consider(x0, y);
      }
    }

    // interior: Q_x = Q_y and W Q_x = (linear part of Q) + 2 (constant part)
    S a11 = 2 * q.xx - q.xy;
    S a12 = q.xy - 2 * q.yy;
    S b1 = q.y - q.x;
    S a21 = 2 * W * q.xx - q.x;
    S a22 = W * q.xy - q.y;
    S b2 = 2 * q.c - W * q.x;
    S det = a11 * a22 - a12 * a21;
    if (det != zero) {
      S x = (b1 * a22 - a12 * b2) / det;
      S y = (a11 * b2 - a21 * b1) / det;
      if (x > zero && x < li && y > zero && y < lj) consider(x, y);
    }
  }

  std::vector<S> values_;
  std::vector<S> pos_;
  std::vector<S> len_;
  std::vector<int> rank_;
  int rank_count_;
};

std::vector<int> value_ranks(std::span<const Rational> values, int& rank_count) {
  std::vector<Rational> distinct(values.begin(), values.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  rank_count = static_cast<int>(distinct.size());
  std::vector<int> ranks(values.size());
  for (std::size_t p = 0; p < values.size(); ++p) {
    ranks[p] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), values[p]) - distinct.begin());
  }
  return ranks;
}

template <class S>
Best<S> solve_all(const RegionSolver<S>& solver) {
  const auto m = static_cast<std::int64_t>(solver.pieces());
  std::vector<Best<S>> per_piece(static_cast<std::size_t>(std::max<std::int64_t>(m, 1)));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < m - 1; ++i) {
    solver.solve_from(static_cast<std::size_t>(i), per_piece[static_cast<std::size_t>(i)]);
  }
  Best<S> best;
  for (const auto& b : per_piece) best.merge(b);
  return best;
}

double round_up(const Rational& value) {
  double d = value.get_d();
  if (from_double(d) < value) d = std::nextafter(d, std::numeric_limits<double>::infinity());
  return d;
}

}  // namespace

IntervalBmoBound interval_bmo_norm(const StepFunction& g, double tol) {
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  IntervalBmoBound out;
  out.tolerance = tol;
  out.witness_a = 0;
  out.witness_b = 1;
  out.lower = 0;

  const auto bps = g.breakpoints();
  if (g.pieces() > 1) {
    // Omega is invariant under affine maps of the domain: work with integer positions.
    Integer scale = 1;
    for (const auto& t : bps) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), t.get_den_mpz_t());
    std::vector<Rational> positions(bps.size());
    for (std::size_t p = 0; p < bps.size(); ++p) positions[p] = bps[p] * scale;

    int rank_count = 0;
    auto ranks = value_ranks(g.values(), rank_count);
    const RegionSolver<Rational> solver(std::vector<Rational>(g.values().begin(), g.values().end()),
                                        std::move(positions), std::move(ranks), rank_count);
    const Best<Rational> best = solve_all(solver);
    if (best.valid) {
      out.witness_a = best.a / scale;
      out.witness_b = best.b / scale;
      out.lower = interval_mean_oscillation(g, out.witness_a, out.witness_b);
      if (out.lower != best.value) {
        throw std::logic_error("interval BMO: witness oscillation " + to_string(out.lower) +
                               " differs from region maximum " + to_string(best.value));
      }
    }
  }
  out.upper = round_up(out.lower);
  out.gap = round_up(from_double(out.upper) - out.lower);
  out.gap_met = out.gap <= tol;
  return out;
}

double interval_bmo_estimate(const StepFunction& g) {
  if (g.pieces() < 2) return 0.0;
  const auto bps = g.breakpoints();
  const auto vals = g.values();
  std::vector<double> positions(bps.size());
  std::vector<double> values(vals.size());
  for (std::size_t p = 0; p < bps.size(); ++p) positions[p] = bps[p].get_d();
  for (std::size_t p = 0; p < vals.size(); ++p) values[p] = vals[p].get_d();
  int rank_count = 0;
  auto ranks = value_ranks(vals, rank_count);
  const RegionSolver<double> solver(std::move(values), std::move(positions), std::move(ranks), rank_count);
  const Best<double> best = solve_all(solver);
  return best.valid ? std::max(best.value, 0.0) : 0.0;
}

namespace {

struct Box {
  Rational a0, a1, b0, b1;
};

double range_over(const StepFunction& g, const Rational& lo, const Rational& hi) {
  const auto bps = g.breakpoints();
  const auto vals = g.values();
  bool any = false;
  Rational mn;
  Rational mx;
  for (std::size_t p = 0; p < vals.size(); ++p) {
    if (bps[p + 1] <= lo || bps[p] >= hi) continue;
    if (!any || vals[p] < mn) mn = vals[p];
    if (!any || vals[p] > mx) mx = vals[p];
    any = true;
  }
  return any ? round_up(mx - mn) : 0.0;
}

}  // namespace

RefinementCertificate refine_interval_bmo(const StepFunction& g, double tol, int max_rounds, std::size_t max_boxes) {
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  RefinementCertificate cert;
  cert.witness_a = 0;
  cert.witness_b = 1;

  const int initial_bits = 4;
  const Rational step = pow2(-initial_bits);
  const long cells = 1L << initial_bits;
  std::vector<Box> active;
  for (long ia = 0; ia < cells; ++ia) {
    for (long ib = ia; ib < cells; ++ib) {
      active.push_back(Box{step * ia, step * (ia + 1), step * ib, step * (ib + 1)});
    }
  }

  double pruned_upper = 0.0;
  const double safety = 1e-13;
  for (int round = 0; round < max_rounds && !active.empty(); ++round) {
    cert.rounds = round + 1;
    std::vector<double> bound(active.size());
    for (std::size_t k = 0; k < active.size(); ++k) {
      const Box& box = active[k];
      const Rational ca = (box.a0 + box.a1) / 2;
      const Rational cb = (box.b0 + box.b1) / 2;
      const double range = range_over(g, box.a0, box.b1);
      double ub = range / 2;
      if (ca < cb) {
        const Rational centre = interval_mean_oscillation(g, ca, cb);
        const double centre_d = centre.get_d();
        if (centre_d > cert.lower) {
          cert.lower = centre_d;
          cert.witness_a = ca;
          cert.witness_b = cb;
        }
        if (box.a1 < box.b0) {
          const double min_len = Rational(box.b0 - box.a1).get_d();
          const double half_width = Rational((box.a1 - box.a0) / 2 + (box.b1 - box.b0) / 2).get_d();
          ub = std::min(ub, round_up(centre) + 3.0 * range / min_len * half_width);
        }
      }
      bound[k] = ub * (1 + safety) + safety;
      ++cert.boxes_evaluated;
    }

    std::vector<Box> next;
    double split_upper = 0.0;
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (bound[k] <= cert.lower + tol) {
        pruned_upper = std::max(pruned_upper, bound[k]);
        continue;
      }
      split_upper = std::max(split_upper, bound[k]);
      const Box& box = active[k];
      const Rational am = (box.a0 + box.a1) / 2;
      const Rational bm = (box.b0 + box.b1) / 2;
      const Box children[4] = {{box.a0, am, box.b0, bm}, {box.a0, am, bm, box.b1},
                               {am, box.a1, box.b0, bm}, {am, box.a1, bm, box.b1}};
      for (const auto& child : children) {
        if (child.a0 < child.b1) next.push_back(child);
      }
    }
    active = std::move(next);
    if (!active.empty() && (active.size() > max_boxes || round + 1 == max_rounds)) {
      // a parent's bound covers its children
      cert.upper = std::max({pruned_upper, split_upper, cert.lower});
      cert.gap_met = false;
      return cert;
    }
  }
  cert.upper = std::max(pruned_upper, cert.lower);
  cert.gap_met = active.empty() && cert.upper - cert.lower <= tol;
  return cert;
}

}  // namespace dyadic
