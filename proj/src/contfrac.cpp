#include "mdsym/contfrac.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace mdsym {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("continued fraction overflow");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("continued fraction overflow");
  return r;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  // b > 0
  std::int64_t q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return q;
}

void check_eps(int eps) {
  if (eps != 1 && eps != -1) throw BadMove("epsilon must be +1 or -1");
}

CFSeq validated(std::vector<std::int64_t> a) {
  CFSeq out(std::move(a));
  (void)tails(out);
  return out;
}

}  // namespace

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

void require_coprime(std::int64_t p, std::int64_t q, bool almost) {
  if (gcd64(p, q) != 1)
    throw DomainError("(" + std::to_string(p) + "," + std::to_string(q) + ") is not a coprime pair");
  if (almost && (p == 0 || q == 0))
    throw DomainError("(" + std::to_string(p) + "," + std::to_string(q) + ") has pq = 0");
}

bool same_rational(const CoprimePair& a, const CoprimePair& b) {
  return static_cast<__int128>(a.p) * b.q == static_cast<__int128>(a.q) * b.p;
}

SL2 cusp_matrix(std::int64_t p, std::int64_t q) {
  require_coprime(p, q, false);
  if (q == 0) return {0, -p, p, 0};
  // extended Euclid on (q, -p): q*s0 + (-p)*r0 = 1
  std::int64_t old_r = q, r = -p, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t k = old_r / r;
    std::int64_t tmp = old_r - k * r;
    old_r = r;
    r = tmp;
    tmp = old_s - k * s;
    old_s = s;
    s = tmp;
    tmp = old_t - k * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_s = -old_s;
    old_t = -old_t;
  }
  std::int64_t sd = old_s, rr = old_t;  // q*sd - p*rr = 1
  // shift (rr, sd) -> (rr + k q, sd + k p) to minimize |rr|
  std::int64_t k = -rr / q;
  std::int64_t best_k = k;
  auto better = [&](std::int64_t cand) {
    const std::int64_t r1 = rr + cand * q, r0 = rr + best_k * q;
    const std::int64_t a1 = r1 < 0 ? -r1 : r1, a0 = r0 < 0 ? -r0 : r0;
    if (a1 != a0) return a1 < a0;
    return sd + cand * p >= 0 && sd + best_k * p < 0;
  };
  for (std::int64_t cand = k - 2; cand <= k + 2; ++cand)
    if (better(cand)) best_k = cand;
  rr += best_k * q;
  sd += best_k * p;
  return {q, rr, p, sd};
}

CFSeq::CFSeq(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw DomainError("continued fraction needs at least one entry");
}

bool CFSeq::is_canonical() const {
  for (std::size_t i = 1; i < entries_.size(); ++i)
    if (entries_[i] < 2) return false;
  return true;
}

std::vector<CoprimePair> tails(const CFSeq& s) {
  const std::size_t n = s.size();
  std::vector<CoprimePair> out(n);
  out[n - 1] = {1, s[n - 1]};
  for (std::size_t k = n - 1; k-- > 0;) {
    const auto& next = out[k + 1];
    if (next.p == 0)
      throw DivisionByZeroTail("tail starting at index " + std::to_string(k + 1) + " evaluates to infinity");
    out[k] = {next.q, checked_sub(checked_mul(s[k], next.q), next.p)};
  }
  if (out[0].p == 0) throw DivisionByZeroTail("continued fraction evaluates to infinity");
  return out;
}

CoprimePair evaluate(const CFSeq& s) { return tails(s).front(); }

CFSeq canonical(std::int64_t p, std::int64_t q) {
  if (p <= 0) throw DomainError("canonical continued fraction needs p >= 1");
  require_coprime(p, q, false);
  std::vector<std::int64_t> a;
  while (true) {
    const std::int64_t a0 = ceil_div(q, p);
    a.push_back(a0);
    if (q % p == 0) break;
    // next value 1/(a0 - q/p) = p/(a0 p - q)
    const std::int64_t np = checked_sub(checked_mul(a0, p), q);
    q = p;
    p = np;
  }
  return CFSeq(std::move(a));
}

CFSeq move_t1(const CFSeq& s, std::size_t i, int eps) {
  check_eps(eps);
  if (i + 1 >= s.size()) throw BadMove("T1 index out of range");
  std::vector<std::int64_t> a = s.entries();
  a[i] += eps;
  a[i + 1] += eps;
  a.insert(a.begin() + static_cast<std::ptrdiff_t>(i) + 1, eps);
  return validated(std::move(a));
}

CFSeq move_t2(const CFSeq& s, std::size_t i, std::int64_t b, std::int64_t c) {
  if (i >= s.size()) throw BadMove("T2 index out of range");
  if (b + c != s[i]) throw BadMove("T2 split does not sum to the entry");
  std::vector<std::int64_t> a = s.entries();
  a[i] = b;
  a.insert(a.begin() + static_cast<std::ptrdiff_t>(i) + 1, {0, c});
  return validated(std::move(a));
}

CFSeq move_t3(const CFSeq& s, int eps) {
  check_eps(eps);
  std::vector<std::int64_t> a = s.entries();
  a.back() += eps;
  a.push_back(eps);
  return validated(std::move(a));
}

CFSeq inverse_t1(const CFSeq& s, std::size_t i, int eps) {
  check_eps(eps);
  if (i + 2 >= s.size() || s[i + 1] != eps) throw BadMove("inverse T1 pattern not present");
  std::vector<std::int64_t> a = s.entries();
  a[i] -= eps;
  a[i + 2] -= eps;
  a.erase(a.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  return validated(std::move(a));
}

CFSeq inverse_t2(const CFSeq& s, std::size_t i) {
  if (i + 2 >= s.size() || s[i + 1] != 0) throw BadMove("inverse T2 pattern not present");
  std::vector<std::int64_t> a = s.entries();
  a[i] += a[i + 2];
  a.erase(a.begin() + static_cast<std::ptrdiff_t>(i) + 1, a.begin() + static_cast<std::ptrdiff_t>(i) + 3);
  return validated(std::move(a));
}

CFSeq inverse_t3(const CFSeq& s, int eps) {
  check_eps(eps);
  if (s.size() < 2 || s.entries().back() != eps) throw BadMove("inverse T3 pattern not present");
  std::vector<std::int64_t> a = s.entries();
  a.pop_back();
  a.back() -= eps;
  return validated(std::move(a));
}

}  // namespace mdsym
