#pragma once

#include <map>
#include <ostream>
#include <utility>

#include "mdsym/contfrac.hpp"
#include "mdsym/scalar.hpp"

namespace mdsym {

// Polynomial sum c_{ij} X^i Y^j with complex coefficients; exact zeros are dropped.
class BiPoly {
 public:
  using Exponent = std::pair<int, int>;

  BiPoly() = default;
  BiPoly(Complex c) { add(0, 0, c); }  // NOLINT(google-explicit-constructor)
  static BiPoly monomial(int i, int j, Complex c = 1.0);
  static BiPoly X() { return monomial(1, 0); }
  static BiPoly Y() { return monomial(0, 1); }

  const std::map<Exponent, Complex>& terms() const { return terms_; }
  Complex coeff(int i, int j) const;
  void add(int i, int j, Complex c);
  bool is_zero() const { return terms_.empty(); }
  // Largest |c_{ij}|.
  double max_abs() const;

  Complex operator()(Complex x, Complex y) const;
  // P(aX + bY, cX + dY).
  BiPoly pullback(const SL2& g) const;

  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  BiPoly& operator*=(const BiPoly& o);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator-(BiPoly a) { return a *= BiPoly(-1.0); }
  friend BiPoly operator*(BiPoly a, const BiPoly& b) { return a *= b; }
  friend bool operator==(const BiPoly&, const BiPoly&) = default;
  friend std::ostream& operator<<(std::ostream& os, const BiPoly& p);

 private:
  std::map<Exponent, Complex> terms_;
};

template <>
struct ScalarTraits<BiPoly> {
  static constexpr bool exact = false;
  static BiPoly zero() { return {}; }
  static BiPoly one() { return BiPoly(1.0); }
  static bool is_zero(const BiPoly& x) { return x.is_zero(); }
  static double magnitude(const BiPoly& x) { return x.max_abs(); }
  static BiPoly ratio(std::int64_t num, std::int64_t den) {
    return BiPoly(static_cast<double>(num) / static_cast<double>(den));
  }
  static BiPoly reciprocal(const BiPoly& x) {
    if (x.terms().size() != 1 || x.terms().begin()->first != BiPoly::Exponent{0, 0})
      throw NotInvertible("only nonzero constant polynomials are invertible");
    return BiPoly(1.0 / x.terms().begin()->second);
  }
};

}  // namespace mdsym
