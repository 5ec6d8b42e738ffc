#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mdsym/contfrac.hpp"
#include "mdsym/scalar.hpp"

namespace mdsym {

// sum c_{ij} p^i q^j with integer (possibly negative) exponents.
class LaurentPoly {
 public:
  using Exponent = std::pair<int, int>;

  LaurentPoly() = default;
  static LaurentPoly monomial(int i, int j, Complex c = 1.0);

  const std::map<Exponent, Complex>& terms() const { return terms_; }
  Complex coeff(int i, int j) const;
  void add(int i, int j, Complex c);

  Complex operator()(double p, double q) const;

  // Set of i + j over the nonzero terms.
  std::set<int> degrees() const;
  bool is_homogeneous() const { return degrees().size() <= 1; }

  // (p,q) -> (-q,p) and (p,q) -> (-p,q); exact for all exponents.
  LaurentPoly sub_rotate() const;
  LaurentPoly sub_negate_p() const;
  // (p,q) -> (p,p+q) and (p,q) -> (p+q,q); DomainError if the substituted variable
  // carries a negative exponent.
  LaurentPoly sub_shift_q() const;
  LaurentPoly sub_shift_p() const;

  // Drops terms with |c| <= tol.
  LaurentPoly pruned(double tol) const;
  double distance(const LaurentPoly& other) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  std::string to_string(int digits = 10) const;

 private:
  std::map<Exponent, Complex> terms_;
};

// Candidate monomials p^i q^j for i in [i_min, i_max], j in [j_min, j_max],
// optionally restricted to a set of total degrees.
struct ExponentBox {
  int i_min = -1, i_max = 3, j_min = -1, j_max = 3;
  std::optional<std::set<int>> degrees;
  std::vector<LaurentPoly::Exponent> monomials() const;
};

struct LaurentFit {
  LaurentPoly poly;
  double residual = 0.0;  // max |fit - sample|
};

using LaurentSample = std::pair<CoprimePair, Complex>;

// Least squares over the box: column scaling, then column-pivoted QR.
// Throws RankDeficient naming the monomials that cannot be separated.
LaurentFit laurent_fit(const std::vector<LaurentSample>& samples, const ExponentBox& box,
                       double rank_tol = 1e-10);

}  // namespace mdsym
