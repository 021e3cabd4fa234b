#include "dyadic/generate.hpp"

#include "dyadic/errors.hpp"
#include "dyadic/gurov_reshetnyak.hpp"

#include <algorithm>

namespace dyadic {

namespace {

constexpr long kCascadeDenominator = 256;

void check_shape(const GeneratorSpec& spec) {
  if (spec.dim < 1 || spec.depth < 0) throw InputError("generator needs dim >= 1 and depth >= 0");
  if (static_cast<long>(spec.dim) * spec.depth > DyadicFunction::kMaxCellBits) {
    throw InputError("generator: 2^{n L} cells exceeds the supported size");
  }
}

std::vector<Rational> uniform_values(const GeneratorSpec& spec, std::size_t count, std::mt19937_64& rng) {
  if (spec.denominator < 1) throw InputError("generator denominator must be >= 1");
  if (spec.hi < spec.lo) throw InputError("generator range needs lo <= hi");
  // Integers k with lo <= k/den <= hi.
  Integer k_lo = spec.lo.get_num() * spec.denominator;
  Integer k_hi = spec.hi.get_num() * spec.denominator;
  mpz_cdiv_q(k_lo.get_mpz_t(), k_lo.get_mpz_t(), spec.lo.get_den_mpz_t());
  mpz_fdiv_q(k_hi.get_mpz_t(), k_hi.get_mpz_t(), spec.hi.get_den_mpz_t());
  if (k_hi < k_lo) throw InputError("generator range contains no value with the requested denominator");
  if (!k_lo.fits_slong_p() || !k_hi.fits_slong_p()) throw InputError("generator range too wide");
  std::uniform_int_distribution<long> draw(k_lo.get_si(), k_hi.get_si());
  std::vector<Rational> values(count);
  for (auto& v : values) v = make_rational(draw(rng), spec.denominator);
  return values;
}

DyadicFunction cascade(const GeneratorSpec& spec, const Rational& spread, std::mt19937_64& rng) {
  const int n = spec.dim;
  const int depth = spec.depth;
  Integer reach_z = spread.get_num() * kCascadeDenominator;
  mpz_fdiv_q(reach_z.get_mpz_t(), reach_z.get_mpz_t(), spread.get_den_mpz_t());
  const long reach = reach_z.get_si();
  std::uniform_int_distribution<long> factor(-reach, reach);

  // Level by level: each level-k cube value spawns 2^n children.
  std::vector<Rational> level_values{Rational(1)};
  for (int k = 0; k < depth; ++k) {
    const std::size_t child_side = std::size_t{2} << k;
    std::vector<Rational> next(level_values.size() << n);
    for (std::size_t flat = 0; flat < level_values.size(); ++flat) {
      const CubeId parent = CubeId::from_flat(n, k, flat);
      for (std::size_t e = 0; e < (std::size_t{1} << n); ++e) {
        std::size_t child_flat = 0;
        std::size_t stride = 1;
        for (int m = 0; m < n; ++m) {
          const auto i = static_cast<std::size_t>(parent.index[static_cast<std::size_t>(m)]) * 2 + ((e >> m) & 1U);
          child_flat += i * stride;
          stride *= child_side;
        }
        next[child_flat] = level_values[flat] * make_rational(kCascadeDenominator + factor(rng), kCascadeDenominator);
      }
    }
    level_values = std::move(next);
  }
  return DyadicFunction(n, depth, std::move(level_values));
}

}  // namespace

const char* to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::uniform_cells:
      return "uniform-cells";
    case GeneratorKind::monotone_1d:
      return "monotone-1d";
    case GeneratorKind::cascade_gr:
      return "cascade-gr";
  }
  return "?";
}

GeneratorKind parse_generator_kind(const std::string& text) {
  if (text == "uniform-cells") return GeneratorKind::uniform_cells;
  if (text == "monotone-1d") return GeneratorKind::monotone_1d;
  if (text == "cascade-gr") return GeneratorKind::cascade_gr;
  throw InputError("unknown generator kind '" + text + "' (expected uniform-cells, monotone-1d or cascade-gr)");
}

DyadicFunction generate(const GeneratorSpec& spec, std::mt19937_64& rng) {
  check_shape(spec);
  const std::size_t cells = std::size_t{1} << (spec.dim * spec.depth);
  switch (spec.kind) {
    case GeneratorKind::uniform_cells:
      return DyadicFunction(spec.dim, spec.depth, uniform_values(spec, cells, rng));
    case GeneratorKind::monotone_1d: {
      if (spec.dim != 1) throw InputError("monotone-1d needs dim = 1");
      auto values = uniform_values(spec, cells, rng);
      std::sort(values.begin(), values.end(), std::greater<>());
      return DyadicFunction(1, spec.depth, std::move(values));
    }
    case GeneratorKind::cascade_gr: {
      if (spec.target_epsilon <= 0) throw InputError("cascade-gr needs a positive target epsilon");
      if (spec.spread <= 0 || spec.spread >= 1) throw InputError("cascade-gr spread must lie in (0, 1)");
      Rational spread = spec.spread;
      for (int attempt = 0; attempt < spec.max_retries; ++attempt) {
        if (attempt > 0 && attempt % 4 == 0) spread /= 2;
        DyadicFunction f = cascade(spec, spread, rng);
        if (gr_membership(f) < spec.target_epsilon) return f;
      }
      throw DomainError("cascade-gr: no sample with gr_membership < " + to_string(spec.target_epsilon) + " in " +
                        std::to_string(spec.max_retries) + " attempts");
    }
  }
  throw InputError("unknown generator kind");
}

DyadicFunction generate(const GeneratorSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  return generate(spec, rng);
}

}  // namespace dyadic
