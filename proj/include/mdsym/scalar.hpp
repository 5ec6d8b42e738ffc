#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>

#include "mdsym/errors.hpp"

namespace mdsym {

using Rational = mpq_class;
using Complex = std::complex<double>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  mpz_class n, d;
  mpz_set_si(n.get_mpz_t(), static_cast<long>(num));
  mpz_set_si(d.get_mpz_t(), static_cast<long>(den));
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Coefficient-ring interface used by TruncSeries.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static double magnitude(const Rational& x) { return std::fabs(x.get_d()); }
  static Rational ratio(std::int64_t num, std::int64_t den) { return make_rational(num, den); }
  static Rational reciprocal(const Rational& x) {
    if (is_zero(x)) throw NotInvertible("zero rational has no inverse");
    return Rational(1) / x;
  }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static bool is_zero(const Complex& x) { return x.real() == 0.0 && x.imag() == 0.0; }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static Complex ratio(std::int64_t num, std::int64_t den) {
    return {static_cast<double>(num) / static_cast<double>(den), 0.0};
  }
  static Complex reciprocal(const Complex& x) {
    if (is_zero(x)) throw NotInvertible("zero complex has no inverse");
    return 1.0 / x;
  }
};

}  // namespace mdsym
