#include "dyadic/hp_float.hpp"

#include <cmath>
#include <vector>

namespace dyadic {

namespace {

mpfr_rnd_t mode(Round round) {
  switch (round) {
    case Round::down:
      return MPFR_RNDD;
    case Round::up:
      return MPFR_RNDU;
    case Round::nearest:
      break;
  }
  return MPFR_RNDN;
}

}  // namespace

HpFloat::HpFloat() {
  mpfr_init2(value_, kPrecision);
  mpfr_set_zero(value_, 1);
}

HpFloat::HpFloat(long value) {
  mpfr_init2(value_, kPrecision);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

HpFloat::HpFloat(const Rational& value, Round round) {
  mpfr_init2(value_, kPrecision);
  mpfr_set_q(value_, value.get_mpq_t(), mode(round));
}

HpFloat::HpFloat(double value) {
  mpfr_init2(value_, kPrecision);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

HpFloat::HpFloat(const HpFloat& other) {
  mpfr_init2(value_, kPrecision);
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

HpFloat::HpFloat(HpFloat&& other) noexcept {
  mpfr_init2(value_, kPrecision);
  mpfr_swap(value_, other.value_);
}

HpFloat& HpFloat::operator=(const HpFloat& other) {
  if (this != &other) mpfr_set(value_, other.value_, MPFR_RNDN);
  return *this;
}

HpFloat& HpFloat::operator=(HpFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

HpFloat::~HpFloat() { mpfr_clear(value_); }

double HpFloat::to_double(Round round) const { return mpfr_get_d(value_, mode(round)); }

std::string HpFloat::to_string(int digits) const {
  std::vector<char> buffer(static_cast<std::size_t>(digits) + 32);
  mpfr_snprintf(buffer.data(), buffer.size(), "%.*Rg", digits, value_);
  return std::string(buffer.data());
}

HpFloat add(const HpFloat& a, const HpFloat& b, Round round) {
  HpFloat out;
  mpfr_add(out.value_, a.value_, b.value_, mode(round));
  return out;
}

HpFloat sub(const HpFloat& a, const HpFloat& b, Round round) {
  HpFloat out;
  mpfr_sub(out.value_, a.value_, b.value_, mode(round));
  return out;
}

HpFloat mul(const HpFloat& a, const HpFloat& b, Round round) {
  HpFloat out;
  mpfr_mul(out.value_, a.value_, b.value_, mode(round));
  return out;
}

HpFloat div(const HpFloat& a, const HpFloat& b, Round round) {
  HpFloat out;
  mpfr_div(out.value_, a.value_, b.value_, mode(round));
  return out;
}

HpFloat exp(const HpFloat& a, Round round) {
  HpFloat out;
  mpfr_exp(out.value_, a.value_, mode(round));
  return out;
}

HpFloat log(const HpFloat& a, Round round) {
  HpFloat out;
  mpfr_log(out.value_, a.value_, mode(round));
  return out;
}

HpFloat pow(const HpFloat& a, const HpFloat& b, Round round) {
  HpFloat out;
  mpfr_pow(out.value_, a.value_, b.value_, mode(round));
  return out;
}

HpFloat neg(const HpFloat& a) {
  HpFloat out;
  mpfr_neg(out.value_, a.value_, MPFR_RNDN);
  return out;
}

HpFloat euler(Round round) { return exp(HpFloat(1L), round); }

bool rational_le(const Rational& lhs, double rhs) {
  if (std::isnan(rhs)) return false;
  if (std::isinf(rhs)) return rhs > 0;
  return lhs <= from_double(rhs);
}

}  // namespace dyadic
