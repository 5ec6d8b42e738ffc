#pragma once

#include <cstdint>
#include <vector>

#include "mdsym/errors.hpp"

namespace mdsym {

struct CoprimePair {
  std::int64_t p = 0;
  std::int64_t q = 1;
  friend bool operator==(const CoprimePair&, const CoprimePair&) = default;
  friend auto operator<=>(const CoprimePair&, const CoprimePair&) = default;
};

std::int64_t gcd64(std::int64_t a, std::int64_t b);

// Throws DomainError unless gcd(p,q) = 1 (and pq != 0 when almost).
void require_coprime(std::int64_t p, std::int64_t q, bool almost);

// (p,q) and (p',q') describe the same point of P^1(Q) (sign ambiguity only).
bool same_rational(const CoprimePair& a, const CoprimePair& b);

// Integer matrix [[a, b], [c, d]] of determinant 1.
struct SL2 {
  std::int64_t a = 1, b = 0, c = 0, d = 1;
  SL2 inverse() const { return {d, -b, -c, a}; }
  friend SL2 operator*(const SL2& x, const SL2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const SL2&, const SL2&) = default;
};

// [[q, r], [p, s]] with qs - pr = 1, so that it maps infinity to q/p.
// Minimal |r|; ties broken toward s >= 0.
SL2 cusp_matrix(std::int64_t p, std::int64_t q);

// Minus continued fraction <a0,...,an> = a0 - 1/<a1,...,an>.
class CFSeq {
 public:
  explicit CFSeq(std::vector<std::int64_t> entries);

  const std::vector<std::int64_t>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::int64_t operator[](std::size_t i) const { return entries_[i]; }
  // a_i >= 2 for all i >= 1.
  bool is_canonical() const;

  friend bool operator==(const CFSeq&, const CFSeq&) = default;

 private:
  std::vector<std::int64_t> entries_;
};

// (p,q) = (P^(n), Q^(n)) evaluated at the entries; throws DivisionByZeroTail.
CoprimePair evaluate(const CFSeq& s);

// [(p_0,q_0), ..., (p_n,q_n)] with q_i/p_i = <a_i,...,a_n>.
std::vector<CoprimePair> tails(const CFSeq& s);

// Unique representation with a_i >= 2 for i >= 1. Requires p >= 1, gcd = 1.
CFSeq canonical(std::int64_t p, std::int64_t q);

// (..., a_i+e, e, a_{i+1}+e, ...), 0 <= i < n.
CFSeq move_t1(const CFSeq& s, std::size_t i, int eps);
// (..., b, 0, c, ...) replacing a_i = b + c.
CFSeq move_t2(const CFSeq& s, std::size_t i, std::int64_t b, std::int64_t c);
// (..., a_n+e, e).
CFSeq move_t3(const CFSeq& s, int eps);

// Inverses: i is the index of the first rewritten entry.
CFSeq inverse_t1(const CFSeq& s, std::size_t i, int eps);
CFSeq inverse_t2(const CFSeq& s, std::size_t i);
CFSeq inverse_t3(const CFSeq& s, int eps);

}  // namespace mdsym
