#pragma once

#include "dyadic/rational.hpp"

#include <mpfr.h>

#include <string>

namespace dyadic {

enum class Round { down, up, nearest };

/// RAII wrapper over an MPFR value. Every operation names its rounding direction, so
/// bounds can be assembled with all roundings pointing the safe way.
class HpFloat {
 public:
  static constexpr mpfr_prec_t kPrecision = 256;

  HpFloat();
  explicit HpFloat(long value);
  HpFloat(const Rational& value, Round round);
  explicit HpFloat(double value);  // exact

  HpFloat(const HpFloat& other);
  HpFloat(HpFloat&& other) noexcept;
  HpFloat& operator=(const HpFloat& other);
  HpFloat& operator=(HpFloat&& other) noexcept;
  ~HpFloat();

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }

  double to_double(Round round) const;
  std::string to_string(int digits = 20) const;

  friend HpFloat add(const HpFloat& a, const HpFloat& b, Round round);
  friend HpFloat sub(const HpFloat& a, const HpFloat& b, Round round);
  friend HpFloat mul(const HpFloat& a, const HpFloat& b, Round round);
  friend HpFloat div(const HpFloat& a, const HpFloat& b, Round round);
  friend HpFloat exp(const HpFloat& a, Round round);
  friend HpFloat log(const HpFloat& a, Round round);
  friend HpFloat pow(const HpFloat& a, const HpFloat& b, Round round);
  friend HpFloat neg(const HpFloat& a);

  friend bool operator<(const HpFloat& a, const HpFloat& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator>(const HpFloat& a, const HpFloat& b) { return mpfr_greater_p(a.value_, b.value_) != 0; }
  friend bool operator<=(const HpFloat& a, const HpFloat& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }

 private:
  mpfr_t value_;
};

/// e rounded in the requested direction.
HpFloat euler(Round round);

/// Exact comparison of a rational against a double.
bool rational_le(const Rational& lhs, double rhs);

}  // namespace dyadic
