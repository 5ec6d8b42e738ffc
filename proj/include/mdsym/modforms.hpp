#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mdsym/scalar.hpp"

namespace mdsym {

enum class FormKind { eisenstein, cusp_delta, eisenstein_gamma02 };

// Modular form descriptor with exact Fourier coefficients.
//   eisenstein(2k):          -B_{2k}/4k + sum sigma_{2k-1}(n) q^n
//   cusp_delta():            q prod (1 - q^n)^24
//   eisenstein_gamma02(2k):  -B_{2k}/4k + sum sigma_{2k-1}(n) q^{2n}
class ModularFormSpec {
 public:
  static ModularFormSpec eisenstein(int weight);
  static ModularFormSpec cusp_delta();
  static ModularFormSpec eisenstein_gamma02(int weight);
  // "E4", "E6", ..., "Delta", "E4_2", ...; throws DomainError on unknown names.
  static ModularFormSpec parse(const std::string& name);

  FormKind kind() const { return kind_; }
  int weight() const { return weight_; }
  bool level_one() const { return kind_ != FormKind::eisenstein_gamma02; }
  std::string name() const;

  Rational coefficient(std::int64_t n) const;
  // Cached double-precision a_n.
  double coefficient_d(std::int64_t n) const;
  Rational constant_term() const { return coefficient(0); }

  friend bool operator==(const ModularFormSpec& a, const ModularFormSpec& b) {
    return a.kind_ == b.kind_ && a.weight_ == b.weight_;
  }

 private:
  ModularFormSpec(FormKind kind, int weight) : kind_(kind), weight_(weight) {}
  FormKind kind_;
  int weight_;
};

// Divisor power sum sigma_k(n).
mpz_class sigma(int k, std::int64_t n);
Rational eisenstein_coeff(int weight, std::int64_t n);
// Ramanujan tau(n).
std::int64_t delta_coeff(std::int64_t n);

struct Length1Options {
  double tol = 1e-13;
  int max_terms = 5000;
  // Defaults to q/p + i/p.
  std::optional<Complex> tau0;
};

// Length-1 Dedekind symbol D_f(p,q) of a level-one form, evaluated from its
// three-part formula with the second integral moved to infinity by the cusp matrix.
Complex dedekind_symbol_length1(const ModularFormSpec& f, std::int64_t p, std::int64_t q,
                                const Length1Options& opts = {});

struct ReciprocityLawCheck {
  Complex lhs, rhs;
  double discrepancy = 0.0;
};

// sum_{n=1}^{p-1} n Li_{2k-1}(xi^n), xi = e^{2 pi i/p}, against its Bernoulli/zeta closed form.
ReciprocityLawCheck reciprocity_law_check(int weight, std::int64_t p);

// L(E_{2k}, s) = zeta(s) zeta(s-2k+1) for integer 1 <= s <= 2k-1.
Complex eisenstein_L(int weight, int s);
// 2^{-s} L(E_{2k}, s).
Complex eisenstein_L_gamma02(int weight, int s);

struct S2S3 {
  Complex s2, s3;
};
// The two finite Hurwitz-zeta/polylog sums for weights (2a, 2b) at (p,q).
S2S3 s2_s3(int a, int b, std::int64_t p, std::int64_t q);

// coefficient * zeta(zeta_arg), kept symbolically.
struct ZetaMultiple {
  Rational coefficient;
  int zeta_arg = 3;
  double value() const;
};

ZetaMultiple gamma02_delta(int weight, std::int64_t p, std::int64_t q);
// Direct evaluation of the double sum defining delta_{2k-1}(p,q).
Complex gamma02_delta_sum(int weight, std::int64_t p, std::int64_t q, int terms = 200000);
Complex gamma02_D(int weight, std::int64_t p, std::int64_t q);
Complex gamma02_F(int weight, std::int64_t p, std::int64_t q);

}  // namespace mdsym
