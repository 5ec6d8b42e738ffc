#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mdsym/errors.hpp"
#include "mdsym/scalar.hpp"
#include "mdsym/word.hpp"

namespace mdsym {

// Truncated non-commutative power series: sparse map Word -> S holding only
// words of length <= trunc. Zero coefficients are never stored.
template <class S>
class TruncSeries {
 public:
  using Scalar = S;
  using Traits = ScalarTraits<S>;
  using Map = std::map<Word, S>;

  TruncSeries() = default;
  TruncSeries(AlphabetPtr alphabet, int trunc) : alphabet_(std::move(alphabet)), trunc_(trunc) {
    if (!alphabet_) throw DomainError("series needs an alphabet");
    if (trunc_ < 0) throw DomainError("negative truncation");
  }

  static TruncSeries one(AlphabetPtr alphabet, int trunc) {
    return constant(std::move(alphabet), trunc, Traits::one());
  }
  static TruncSeries constant(AlphabetPtr alphabet, int trunc, S c) {
    TruncSeries s(std::move(alphabet), trunc);
    s.set(Word{}, std::move(c));
    return s;
  }
  static TruncSeries monomial(AlphabetPtr alphabet, int trunc, const Word& w, S c) {
    TruncSeries s(std::move(alphabet), trunc);
    s.set(w, std::move(c));
    return s;
  }

  const Alphabet& alphabet() const { return *alphabet_; }
  const AlphabetPtr& alphabet_ptr() const { return alphabet_; }
  int trunc() const { return trunc_; }
  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  S coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Traits::zero() : it->second;
  }
  S constant_term() const { return coeff(Word{}); }

  void set(const Word& w, S c) {
    if (static_cast<int>(w.length()) > trunc_) return;
    if (!alphabet_->contains(w)) throw AlphabetMismatch("word not over the series alphabet");
    if (Traits::is_zero(c)) {
      terms_.erase(w);
    } else {
      terms_[w] = std::move(c);
    }
  }

  void add(const Word& w, const S& c) {
    if (static_cast<int>(w.length()) > trunc_ || Traits::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (Traits::is_zero(it->second)) terms_.erase(it);
    }
  }

  TruncSeries truncated(int n) const {
    TruncSeries out(alphabet_, std::min(n, trunc_));
    for (const auto& [w, c] : terms_)
      if (static_cast<int>(w.length()) <= out.trunc_) out.terms_.emplace(w, c);
    return out;
  }

  // Same series viewed over a larger alphabet (letters matched by id).
  TruncSeries lifted(const AlphabetPtr& target) const {
    if (target == alphabet_ || *target == *alphabet_) {
      TruncSeries out = *this;
      out.alphabet_ = target;
      return out;
    }
    std::vector<Letter> remap(alphabet_->size());
    for (std::size_t i = 0; i < alphabet_->size(); ++i) {
      const auto& sym = alphabet_->symbol(static_cast<Letter>(i));
      auto idx = target->index_of(sym.id);
      if (!idx || target->symbol(*idx).weight != sym.weight)
        throw AlphabetMismatch("cannot lift series: symbol '" + sym.id + "' missing");
      remap[i] = *idx;
    }
    TruncSeries out(target, trunc_);
    for (const auto& [w, c] : terms_) {
      std::vector<Letter> ls;
      ls.reserve(w.length());
      for (Letter a : w.letters()) ls.push_back(remap[a]);
      out.terms_.emplace(Word(std::move(ls)), c);
    }
    return out;
  }

  template <class F>
  auto map_coeffs(F f) const {
    using T = decltype(f(std::declval<const S&>()));
    TruncSeries<T> out(alphabet_, trunc_);
    for (const auto& [w, c] : terms_) out.set(w, f(c));
    return out;
  }

  // Largest coefficient magnitude of this - other over words up to the common truncation.
  double distance(const TruncSeries& other) const {
    check_compatible(other);
    const int n = std::min(trunc_, other.trunc_);
    double worst = 0.0;
    for (const auto& [w, c] : terms_) {
      if (static_cast<int>(w.length()) > n) continue;
      S d = c - other.coeff(w);
      worst = std::max(worst, Traits::magnitude(d));
    }
    for (const auto& [w, c] : other.terms_) {
      if (static_cast<int>(w.length()) > n || terms_.count(w)) continue;
      worst = std::max(worst, Traits::magnitude(c));
    }
    return worst;
  }

  // Exact equality of coefficients up to the common truncation.
  bool operator==(const TruncSeries& other) const {
    check_compatible(other);
    const int n = std::min(trunc_, other.trunc_);
    auto restrict_ = [n](const Map& m) {
      std::vector<std::pair<Word, S>> out;
      for (const auto& kv : m)
        if (static_cast<int>(kv.first.length()) <= n) out.push_back(kv);
      return out;
    };
    return restrict_(terms_) == restrict_(other.terms_);
  }

  TruncSeries& operator+=(const TruncSeries& other) {
    check_compatible(other);
    trunc_ = std::min(trunc_, other.trunc_);
    prune_long();
    for (const auto& [w, c] : other.terms_) add(w, c);
    return *this;
  }
  TruncSeries& operator-=(const TruncSeries& other) {
    check_compatible(other);
    trunc_ = std::min(trunc_, other.trunc_);
    prune_long();
    for (const auto& [w, c] : other.terms_) add(w, -c);
    return *this;
  }
  TruncSeries& operator*=(const S& c) {
    if (Traits::is_zero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= c;
      if (Traits::is_zero(it->second)) {
        it = terms_.erase(it);
      } else {
        ++it;
      }
    }
    return *this;
  }

  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator-(TruncSeries a) { return a *= -Traits::one(); }
  friend TruncSeries operator*(TruncSeries a, const S& c) { return a *= c; }
  friend TruncSeries operator*(const S& c, TruncSeries a) { return a *= c; }

  // (ST)^w = sum over uv = w of S^u T^v, truncated at min(trunc).
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.check_compatible(b);
    const int n = std::min(a.trunc_, b.trunc_);
    TruncSeries out(a.alphabet_, n);
    for (const auto& [u, x] : a.terms_) {
      const int lu = static_cast<int>(u.length());
      if (lu > n) break;
      for (const auto& [v, y] : b.terms_) {
        if (lu + static_cast<int>(v.length()) > n) break;
        out.add(u + v, x * y);
      }
    }
    return out;
  }

  void check_compatible(const TruncSeries& other) const {
    if (alphabet_ != other.alphabet_ && !(*alphabet_ == *other.alphabet_))
      throw AlphabetMismatch("series over different alphabets");
  }

 private:
  void prune_long() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (static_cast<int>(it->first.length()) > trunc_) {
        it = terms_.erase(it);
      } else {
        ++it;
      }
    }
  }

  AlphabetPtr alphabet_;
  int trunc_ = 0;
  Map terms_;
};

// Multiplicative inverse; requires a unit constant term.
template <class S>
TruncSeries<S> inverse(const TruncSeries<S>& s) {
  using Traits = ScalarTraits<S>;
  const S c = s.constant_term();
  if (Traits::is_zero(c)) throw NotInvertible("series with zero constant term");
  const S cinv = Traits::reciprocal(c);
  // s = c (1 + y); s^{-1} = c^{-1} sum_k (-y)^k, evaluated by Horner.
  TruncSeries<S> y = s * cinv;
  y.set(Word{}, Traits::zero());
  const auto one = TruncSeries<S>::one(s.alphabet_ptr(), s.trunc());
  TruncSeries<S> r = one;
  for (int k = 0; k < s.trunc(); ++k) r = one - y * r;
  return r * cinv;
}

template <class S>
TruncSeries<S> exp(const TruncSeries<S>& s) {
  using Traits = ScalarTraits<S>;
  if (!Traits::is_zero(s.constant_term())) throw DomainError("exp needs zero constant term");
  const auto one = TruncSeries<S>::one(s.alphabet_ptr(), s.trunc());
  TruncSeries<S> r = one;
  for (int k = s.trunc(); k >= 1; --k) r = one + (s * r) * Traits::ratio(1, k);
  return r;
}

template <class S>
TruncSeries<S> log(const TruncSeries<S>& s) {
  using Traits = ScalarTraits<S>;
  S c = s.constant_term();
  if (!Traits::is_zero(c - Traits::one())) throw DomainError("log needs constant term 1");
  TruncSeries<S> y = s;
  y.set(Word{}, Traits::zero());
  // log(1+y) = y (1 - y (1/2 - y (1/3 - ...))) by Horner on coefficients (-1)^{k+1}/k.
  TruncSeries<S> r(s.alphabet_ptr(), s.trunc());
  for (int k = s.trunc(); k >= 1; --k) {
    auto term = TruncSeries<S>::constant(s.alphabet_ptr(), s.trunc(), Traits::ratio(1, k));
    r = term - y * r;
  }
  return y * r;
}

struct GrouplikeReport {
  bool ok = true;
  double worst = 0.0;
  Word u, v;  // pair attaining the worst violation
};

// Checks S^u S^v = sum_{w in Sh(u,v)} S^w for all nonempty u, v with l(u)+l(v) <= trunc.
template <class S>
GrouplikeReport is_grouplike(const TruncSeries<S>& s, double tol = 0.0) {
  using Traits = ScalarTraits<S>;
  GrouplikeReport rep;
  const auto& alpha = s.alphabet();
  const int n = s.trunc();
  if (!Traits::is_zero(s.constant_term() - Traits::one())) {
    rep.ok = false;
    rep.worst = Traits::magnitude(s.constant_term() - Traits::one());
    return rep;
  }
  bool have = false;
  for (int lu = 1; lu < n; ++lu) {
    for (const auto& u : alpha.words_of_length(lu)) {
      const S su = s.coeff(u);
      for (int lv = 1; lu + lv <= n; ++lv) {
        for (const auto& v : alpha.words_of_length(lv)) {
          S diff = su * s.coeff(v);
          for (const auto& w : shuffle_set(u, v)) diff -= s.coeff(w);
          const double m = Traits::magnitude(diff);
          const bool bad = Traits::exact ? !Traits::is_zero(diff) : m > tol;
          if (bad) rep.ok = false;
          if (!have || m > rep.worst) {
            rep.worst = m;
            rep.u = u;
            rep.v = v;
            have = true;
          }
        }
      }
    }
  }
  return rep;
}

template <class S>
std::string to_string(const TruncSeries<S>& s) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : s.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")";
    if (!w.empty()) os << "*" << s.alphabet().format(w);
  }
  if (first) os << "0";
  return os.str();
}

using QSeries = TruncSeries<Rational>;
using CSeries = TruncSeries<Complex>;

extern template class TruncSeries<Rational>;
extern template class TruncSeries<Complex>;

}  // namespace mdsym
