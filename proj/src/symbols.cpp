#include "mdsym/symbols.hpp"

#include <algorithm>
#include <random>

namespace mdsym {

CoprimePair sign_key(std::int64_t p, std::int64_t q) {
  if (p < 0 || (p == 0 && q < 0)) return {-p, -q};
  return {p, q};
}

CoprimePair orbit_key(std::int64_t p, std::int64_t q, bool almost) {
  require_coprime(p, q, almost);
  auto [a, b] = sign_key(p, q);
  if (a == 0) return {0, 1};
  if (a == 1) {
    if (!almost) return {1, 0};
    return {1, b > 0 ? 1 : -1};
  }
  std::int64_t r = b % a;
  if (r < 0) r += a;
  return {a, r};
}

namespace {

template <class S>
AlphabetPtr union_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  if (a == b || *a == *b) return a;
  auto merged = a->merged(*b);
  if (merged == *a) return a;
  return make_alphabet(std::move(merged));
}

template <class S>
RecipFn<S> lift(const RecipFn<S>& f, const AlphabetPtr& target) {
  if (f.alphabet_ptr() == target || f.alphabet() == *target) return f;
  return RecipFn<S>(
      target, f.trunc(), [f, target](std::int64_t p, std::int64_t q) { return f(p, q).lifted(target); },
      f.options());
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t seed, std::int64_t p, std::int64_t q, const Word& w) {
  std::uint64_t h = splitmix(seed);
  h = splitmix(h ^ static_cast<std::uint64_t>(p));
  h = splitmix(h ^ static_cast<std::uint64_t>(q));
  h = splitmix(h ^ w.length());
  for (Letter a : w.letters()) h = splitmix(h ^ (a + 1));
  return h;
}

Rational rational_from_hash(std::uint64_t h) {
  const std::int64_t num = static_cast<std::int64_t>(h % 19) - 9;
  const std::int64_t den = static_cast<std::int64_t>((h >> 8) % 5) + 1;
  return make_rational(num, den);
}

}  // namespace

template <class S>
RecipFn<S> psi(const SymbolFn<S>& d) {
  return RecipFn<S>(
      d.alphabet_ptr(), d.trunc(),
      [d](std::int64_t p, std::int64_t q) { return d(p, q) * inverse(d(-q, p)); },
      {d.almost(), false, d.memo() == Memo::none ? Memo::none : Memo::sign});
}

template <class S>
SymbolFn<S> delta(const RecipFn<S>& f) {
  auto one = TruncSeries<S>::one(f.alphabet_ptr(), f.trunc());
  return SymbolFn<S>(
      f.alphabet_ptr(), f.trunc(),
      [f, one](std::int64_t p, std::int64_t q) {
        if (p < 0) {
          p = -p;
          q = -q;
        }
        if (p == 1) return q > 0 ? one : inverse(f(1, 1));
        const auto t = tails(canonical(p, q));
        auto out = one;
        for (std::size_t i = 1; i < t.size(); ++i) out = out * inverse(f(t[i].p, t[i].q));
        return out;
      },
      {true, true, Memo::orbit});
}

template <class S>
TruncSeries<S> delta_full(const RecipFn<S>& f, const CFSeq& rep) {
  const auto t = tails(rep);
  auto out = TruncSeries<S>::one(f.alphabet_ptr(), f.trunc());
  for (std::size_t i = 1; i < t.size(); ++i) out = out * inverse(f(t[i].p, t[i].q));
  return out;
}

template <class S>
SymbolFn<S> delta_full(const RecipFn<S>& f) {
  return SymbolFn<S>(
      f.alphabet_ptr(), f.trunc(),
      [f](std::int64_t p, std::int64_t q) {
        if (p == 0) return TruncSeries<S>::one(f.alphabet_ptr(), f.trunc());
        auto k = sign_key(p, q);
        return delta_full(f, canonical(k.p, k.q));
      },
      {false, true, Memo::orbit});
}

template <class S>
SymbolFn<S> normalize(const SymbolFn<S>& d) {
  auto opts = d.options();
  opts.normalized = true;
  return SymbolFn<S>(
      d.alphabet_ptr(), d.trunc(),
      [d](std::int64_t p, std::int64_t q) { return d(p, q) * inverse(d(1, 1)); }, opts);
}

template <class S>
RecipFn<S> bullet(const RecipFn<S>& f, const RecipFn<S>& g) {
  auto al = union_alphabet<S>(f.alphabet_ptr(), g.alphabet_ptr());
  auto fl = lift(f, al);
  auto gl = lift(g, al);
  auto d = delta(fl);
  const bool exact_memo = f.memo() != Memo::none && g.memo() != Memo::none;
  return RecipFn<S>(
      al, std::min(f.trunc(), g.trunc()),
      [d, gl](std::int64_t p, std::int64_t q) { return d(p, q) * gl(p, q) * inverse(d(-q, p)); },
      {true, false, exact_memo ? Memo::sign : Memo::none});
}

template <class S>
RecipFn<S> bullet_inverse(const RecipFn<S>& f) {
  auto d = delta(f);
  return RecipFn<S>(
      f.alphabet_ptr(), f.trunc(),
      [d](std::int64_t p, std::int64_t q) { return inverse(d(p, q)) * d(-q, p); },
      {true, false, f.memo() == Memo::none ? Memo::none : Memo::sign});
}

template <class S>
RecipFn<S> embed_exp(ScalarFn<S> f, const Word& word, AlphabetPtr alphabet, int trunc) {
  if (!alphabet->contains(word) || word.empty()) throw AlphabetMismatch("embed_exp needs a nonempty word of the alphabet");
  return RecipFn<S>(
      alphabet, trunc,
      [f = std::move(f), word, alphabet, trunc](std::int64_t p, std::int64_t q) {
        return exp(TruncSeries<S>::monomial(alphabet, trunc, word, f(p, q)));
      },
      {true, false, Memo::none});
}

template <class S>
SymbolFn<S> embed_exp_symbol(ScalarFn<S> f, const Word& word, AlphabetPtr alphabet, int trunc, Memo memo) {
  if (!alphabet->contains(word) || word.empty()) throw AlphabetMismatch("embed_exp needs a nonempty word of the alphabet");
  return SymbolFn<S>(
      alphabet, trunc,
      [f = std::move(f), word, alphabet, trunc](std::int64_t p, std::int64_t q) {
        return exp(TruncSeries<S>::monomial(alphabet, trunc, word, f(p, q)));
      },
      {true, false, memo});
}

template <class S>
RecipFn<S> from_components(const std::vector<ScalarFn<S>>& fs, AlphabetPtr alphabet, int trunc) {
  if (fs.size() != alphabet->size()) throw AlphabetMismatch("one scalar function per letter expected");
  auto out = RecipFn<S>::constant_one(alphabet, trunc);
  for (std::size_t i = 0; i < fs.size(); ++i)
    out = bullet(out, embed_exp<S>(fs[i], Word::letter(static_cast<Letter>(i)), alphabet, trunc));
  return out;
}

std::vector<std::string> AxiomReport::failed_axioms() const {
  std::vector<std::string> out;
  for (const auto& e : entries)
    if (!e.ok && std::find(out.begin(), out.end(), e.axiom) == out.end()) out.push_back(e.axiom);
  return out;
}

double AxiomReport::worst(const std::string& axiom) const {
  double w = 0.0;
  for (const auto& e : entries)
    if (e.axiom == axiom) w = std::max(w, e.magnitude);
  return w;
}

std::vector<CoprimePair> sample_pairs(std::uint64_t seed, std::size_t count, std::int64_t bound) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
  std::vector<CoprimePair> out;
  while (out.size() < count) {
    const std::int64_t p = dist(rng), q = dist(rng);
    if (p == 0 || q == 0 || gcd64(p, q) != 1) continue;
    out.push_back({p, q});
  }
  return out;
}

namespace {

template <class S>
class ReportBuilder {
 public:
  ReportBuilder(const Alphabet& al, int trunc, double tol) {
    report_.tolerance = tol;
    report_.exact = ScalarTraits<S>::exact;
    words_.push_back(Word{});
    for (const auto& w : al.words_up_to(trunc)) words_.push_back(w);
  }

  void add(const std::string& axiom, const TruncSeries<S>& lhs, const TruncSeries<S>& rhs,
           std::vector<CoprimePair> pairs) {
    for (const auto& w : words_) {
      S diff = lhs.coeff(w) - rhs.coeff(w);
      const double m = ScalarTraits<S>::magnitude(diff);
      const bool ok = ScalarTraits<S>::exact ? ScalarTraits<S>::is_zero(diff) : m <= report_.tolerance;
      auto& e = entry(axiom, w);
      if (m > e.magnitude || e.pairs.empty()) {
        e.magnitude = m;
        e.pairs = pairs;
      }
      e.ok = e.ok && ok;
    }
  }

  AxiomReport finish() {
    for (auto& [key, e] : index_) report_.entries.push_back(e);
    report_.passed = std::all_of(report_.entries.begin(), report_.entries.end(),
                                 [](const AxiomViolation& e) { return e.ok; });
    return report_;
  }

 private:
  AxiomViolation& entry(const std::string& axiom, const Word& w) {
    auto [it, inserted] = index_.try_emplace({axiom, w});
    if (inserted) {
      it->second.axiom = axiom;
      it->second.word = w;
    }
    return it->second;
  }

  AxiomReport report_;
  std::vector<Word> words_;
  std::map<std::pair<std::string, Word>, AxiomViolation> index_;
};

}  // namespace

template <class S>
AxiomReport verify_mds(const SymbolFn<S>& d, const std::vector<CoprimePair>& samples, double tol) {
  ReportBuilder<S> rb(d.alphabet(), d.trunc(), tol);
  for (const auto& [p, q] : samples) {
    if (d.almost() && (p == 0 || q == 0)) continue;
    rb.add("MDS1", d.evaluate_uncached(p, -q), d.evaluate_uncached(-p, q), {{p, -q}, {-p, q}});
    if (d.almost() && p + q == 0) continue;
    rb.add("MDS2", d.evaluate_uncached(p, q), d.evaluate_uncached(p, p + q), {{p, q}, {p, p + q}});
  }
  return rb.finish();
}

template <class S>
AxiomReport verify_mrf(const RecipFn<S>& f, const std::vector<CoprimePair>& samples, double tol) {
  ReportBuilder<S> rb(f.alphabet(), f.trunc(), tol);
  const auto one = TruncSeries<S>::one(f.alphabet_ptr(), f.trunc());
  for (const auto& [p, q] : samples) {
    if (f.almost() && (p == 0 || q == 0)) continue;
    rb.add("MRF1", f.evaluate_uncached(p, -q), f.evaluate_uncached(-p, q), {{p, -q}, {-p, q}});
    rb.add("MRF2", f.evaluate_uncached(p, q) * f.evaluate_uncached(-q, p), one, {{p, q}, {-q, p}});
    if (f.almost() && p + q == 0) continue;
    rb.add("MRF3", f.evaluate_uncached(p, p + q) * f.evaluate_uncached(p + q, q), f.evaluate_uncached(p, q),
           {{p, p + q}, {p + q, q}, {p, q}});
  }
  return rb.finish();
}

SymbolFn<Rational> random_symbol(AlphabetPtr alphabet, int trunc, std::uint64_t seed, bool almost) {
  auto words = alphabet->words_up_to(static_cast<std::size_t>(trunc));
  return SymbolFn<Rational>(
      alphabet, trunc,
      [alphabet, trunc, seed, almost, words](std::int64_t p, std::int64_t q) {
        const auto key = orbit_key(p, q, almost);
        auto s = QSeries::one(alphabet, trunc);
        for (const auto& w : words) s.set(w, rational_from_hash(mix(seed, key.p, key.q, w)));
        return s;
      },
      {almost, false, Memo::none});
}

ScalarFn<Rational> random_scalar_symbol(std::uint64_t seed, bool almost) {
  return [seed, almost](std::int64_t p, std::int64_t q) {
    const auto key = orbit_key(p, q, almost);
    return rational_from_hash(mix(seed, key.p, key.q, Word{}));
  };
}

template <class S>
Decomposition<S>::Decomposition(SymbolFn<S> target, int depth, double tol)
    : target_(std::move(target)), depth_(depth), tol_(tol), cache_(std::make_shared<Cache>()) {
  if (depth_ < 1 || depth_ > target_.trunc()) throw DomainError("decomposition depth must lie in [1, trunc]");
  words_ = target_.alphabet().words_up_to(static_cast<std::size_t>(depth_));
}

template <class S>
std::vector<S> Decomposition<S>::coefficients(std::int64_t p, std::int64_t q) const {
  const CoprimePair key{p, q};
  {
    std::shared_lock lock(cache_->mutex);
    auto it = cache_->values.find(key);
    if (it != cache_->values.end()) return it->second;
  }
  const auto t = target_.evaluate_uncached(p, q).truncated(depth_);
  auto gl = is_grouplike(t, tol_);
  if (!gl.ok)
    throw NotShuffled("symbol is not group-like at (" + std::to_string(p) + "," + std::to_string(q) + ")");
  const auto& al = target_.alphabet_ptr();
  auto current = TruncSeries<S>::one(al, depth_);
  std::vector<S> cs;
  cs.reserve(words_.size());
  for (const auto& w : words_) {
    S c = t.coeff(w) - current.coeff(w);
    cs.push_back(c);
    current = current * exp(TruncSeries<S>::monomial(al, depth_, w, c));
  }
  std::unique_lock lock(cache_->mutex);
  cache_->values.insert_or_assign(key, cs);
  return cs;
}

template <class S>
ScalarFn<S> Decomposition<S>::coefficient(std::size_t i) const {
  if (i >= words_.size()) throw DomainError("factor index out of range");
  Decomposition self = *this;
  return [self, i](std::int64_t p, std::int64_t q) { return self.coefficients(p, q)[i]; };
}

template <class S>
TruncSeries<S> Decomposition<S>::reconstruct(std::int64_t p, std::int64_t q) const {
  const auto cs = coefficients(p, q);
  const auto& al = target_.alphabet_ptr();
  auto out = TruncSeries<S>::one(al, depth_);
  for (std::size_t i = 0; i < words_.size(); ++i)
    out = out * exp(TruncSeries<S>::monomial(al, depth_, words_[i], cs[i]));
  return out;
}

template <class S>
RecipFn<S> Decomposition<S>::factor(std::size_t i) const {
  return psi(embed_exp_symbol<S>(coefficient(i), words_.at(i), target_.alphabet_ptr(), depth_));
}

template <class S>
Decomposition<S> decompose(const SymbolFn<S>& d, int depth, const std::vector<CoprimePair>& samples, double tol) {
  for (const auto& [p, q] : samples) {
    auto rep = is_grouplike(d.evaluate_uncached(p, q).truncated(depth), tol);
    if (!rep.ok)
      throw NotShuffled("symbol is not group-like at (" + std::to_string(p) + "," + std::to_string(q) +
                        "), worst pair (" + d.alphabet().format(rep.u) + "," + d.alphabet().format(rep.v) + ")");
  }
  return Decomposition<S>(d, depth, tol);
}

template <class S>
Decomposition<S> decompose(const RecipFn<S>& m, int depth, const std::vector<CoprimePair>& samples, double tol) {
  return decompose(delta(m), depth, samples, tol);
}

#define MDSYM_INSTANTIATE(S)                                                                               \
  template RecipFn<S> psi(const SymbolFn<S>&);                                                             \
  template SymbolFn<S> delta(const RecipFn<S>&);                                                           \
  template TruncSeries<S> delta_full(const RecipFn<S>&, const CFSeq&);                                     \
  template SymbolFn<S> delta_full(const RecipFn<S>&);                                                      \
  template SymbolFn<S> normalize(const SymbolFn<S>&);                                                      \
  template RecipFn<S> bullet(const RecipFn<S>&, const RecipFn<S>&);                                        \
  template RecipFn<S> bullet_inverse(const RecipFn<S>&);                                                   \
  template RecipFn<S> embed_exp(ScalarFn<S>, const Word&, AlphabetPtr, int);                               \
  template SymbolFn<S> embed_exp_symbol(ScalarFn<S>, const Word&, AlphabetPtr, int, Memo);                 \
  template RecipFn<S> from_components(const std::vector<ScalarFn<S>>&, AlphabetPtr, int);                  \
  template AxiomReport verify_mds(const SymbolFn<S>&, const std::vector<CoprimePair>&, double);            \
  template AxiomReport verify_mrf(const RecipFn<S>&, const std::vector<CoprimePair>&, double);             \
  template class Decomposition<S>;                                                                         \
  template Decomposition<S> decompose(const SymbolFn<S>&, int, const std::vector<CoprimePair>&, double);   \
  template Decomposition<S> decompose(const RecipFn<S>&, int, const std::vector<CoprimePair>&, double);

MDSYM_INSTANTIATE(Rational)
MDSYM_INSTANTIATE(Complex)

}  // namespace mdsym
