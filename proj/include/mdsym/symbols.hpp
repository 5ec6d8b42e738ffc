#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "mdsym/contfrac.hpp"
#include "mdsym/series.hpp"

namespace mdsym {

// Canonical representative of the orbit of (p,q) under (p,q) ~ (p,p+q) and
// (p,-q) ~ (-p,q). With `almost`, the relations are restricted to pq != 0.
CoprimePair orbit_key(std::int64_t p, std::int64_t q, bool almost);

// (p,q) with p > 0, or (0,1).
CoprimePair sign_key(std::int64_t p, std::int64_t q);

enum class FnKind { symbol, reciprocity };
enum class Memo { none, sign, orbit };

template <class S>
using ScalarFn = std::function<S(std::int64_t, std::int64_t)>;

// Evaluator CoprimePair -> TruncSeries with an optional per-object memo.
template <class S, FnKind K>
class PairFunction {
 public:
  using Series = TruncSeries<S>;
  using Eval = std::function<Series(std::int64_t, std::int64_t)>;

  struct Options {
    bool almost = true;
    bool normalized = false;
    Memo memo = Memo::none;
  };

  PairFunction(AlphabetPtr alphabet, int trunc, Eval eval, Options opts)
      : state_(std::make_shared<State>()) {
    state_->alphabet = std::move(alphabet);
    state_->trunc = trunc;
    state_->eval = std::move(eval);
    state_->opts = opts;
  }

  static PairFunction constant_one(AlphabetPtr alphabet, int trunc, bool almost = true) {
    auto one = Series::one(alphabet, trunc);
    return PairFunction(alphabet, trunc, [one](std::int64_t, std::int64_t) { return one; },
                        {almost, true, Memo::none});
  }

  const Alphabet& alphabet() const { return *state_->alphabet; }
  const AlphabetPtr& alphabet_ptr() const { return state_->alphabet; }
  int trunc() const { return state_->trunc; }
  bool almost() const { return state_->opts.almost; }
  bool normalized() const { return state_->opts.normalized; }
  Memo memo() const { return state_->opts.memo; }
  const Options& options() const { return state_->opts; }

  Series operator()(std::int64_t p, std::int64_t q) const {
    require_coprime(p, q, state_->opts.almost);
    if (state_->opts.memo == Memo::none) return state_->eval(p, q);
    const CoprimePair key = state_->opts.memo == Memo::orbit ? orbit_key(p, q, state_->opts.almost)
                                                             : sign_key(p, q);
    {
      std::shared_lock lock(state_->mutex);
      auto it = state_->cache.find(key);
      if (it != state_->cache.end()) return it->second;
    }
    Series value = state_->eval(key.p, key.q);
    std::unique_lock lock(state_->mutex);
    state_->cache.insert_or_assign(key, value);
    return value;
  }

  // Evaluation at exactly (p,q), bypassing the memo; used by the axiom checks.
  Series evaluate_uncached(std::int64_t p, std::int64_t q) const {
    require_coprime(p, q, state_->opts.almost);
    return state_->eval(p, q);
  }

 private:
  struct State {
    AlphabetPtr alphabet;
    int trunc = 0;
    Eval eval;
    Options opts;
    mutable std::shared_mutex mutex;
    std::map<CoprimePair, Series> cache;
  };
  std::shared_ptr<State> state_;
};

template <class S>
using SymbolFn = PairFunction<S, FnKind::symbol>;
template <class S>
using RecipFn = PairFunction<S, FnKind::reciprocity>;

// F(p,q) = D(p,q) D(-q,p)^{-1}.
template <class S>
RecipFn<S> psi(const SymbolFn<S>& d);

// Normalized almost symbol built from the canonical continued fraction of q/p.
template <class S>
SymbolFn<S> delta(const RecipFn<S>& f);

// Product of F(p_i,q_i)^{-1} over tails i = 1..n of the given representation.
template <class S>
TruncSeries<S> delta_full(const RecipFn<S>& f, const CFSeq& rep);
// Same product over the canonical representation, as a full symbol.
template <class S>
SymbolFn<S> delta_full(const RecipFn<S>& f);

// D(p,q) D(1,1)^{-1}.
template <class S>
SymbolFn<S> normalize(const SymbolFn<S>& d);

template <class S>
RecipFn<S> bullet(const RecipFn<S>& f, const RecipFn<S>& g);
template <class S>
RecipFn<S> bullet_inverse(const RecipFn<S>& f);

// (p,q) -> exp(f(p,q) * word).
template <class S>
RecipFn<S> embed_exp(ScalarFn<S> f, const Word& word, AlphabetPtr alphabet, int trunc);
template <class S>
SymbolFn<S> embed_exp_symbol(ScalarFn<S> f, const Word& word, AlphabetPtr alphabet, int trunc,
                             Memo memo = Memo::none);

// Product of embed_exp(f_i, A_i) in alphabet order; fs[i] belongs to letter i.
template <class S>
RecipFn<S> from_components(const std::vector<ScalarFn<S>>& fs, AlphabetPtr alphabet, int trunc);

struct AxiomViolation {
  std::string axiom;
  Word word;
  std::vector<CoprimePair> pairs;
  double magnitude = 0.0;
  bool ok = true;
};

struct AxiomReport {
  double tolerance = 0.0;
  bool exact = false;
  bool passed = true;
  std::vector<AxiomViolation> entries;  // worst violation per (axiom, word)
  std::vector<std::string> failed_axioms() const;
  double worst(const std::string& axiom) const;
};

// Random coprime pairs with 1 <= |p|,|q| <= bound and random signs.
std::vector<CoprimePair> sample_pairs(std::uint64_t seed, std::size_t count, std::int64_t bound);

template <class S>
AxiomReport verify_mds(const SymbolFn<S>& d, const std::vector<CoprimePair>& samples, double tol = 1e-9);
template <class S>
AxiomReport verify_mrf(const RecipFn<S>& f, const std::vector<CoprimePair>& samples, double tol = 1e-9);

// Independent random rational coefficient per (orbit key, word); constant term 1.
SymbolFn<Rational> random_symbol(AlphabetPtr alphabet, int trunc, std::uint64_t seed, bool almost = true);
// Scalar symbol with random rational value per orbit key.
ScalarFn<Rational> random_scalar_symbol(std::uint64_t seed, bool almost = true);

// Peeled factors exp(c_w w) for all words up to the given depth, in word order.
template <class S>
class Decomposition {
 public:
  using Series = TruncSeries<S>;

  Decomposition(SymbolFn<S> target, int depth, double tol);

  const std::vector<Word>& words() const { return words_; }
  int depth() const { return depth_; }
  const SymbolFn<S>& target() const { return target_; }

  // All c_w(p,q), aligned with words(); throws NotShuffled.
  std::vector<S> coefficients(std::int64_t p, std::int64_t q) const;
  ScalarFn<S> coefficient(std::size_t i) const;
  // Ordered product of exp(c_w(p,q) w).
  Series reconstruct(std::int64_t p, std::int64_t q) const;
  // T_i = psi(exp(c_w w)) as a reciprocity function.
  RecipFn<S> factor(std::size_t i) const;

 private:
  struct Cache {
    std::shared_mutex mutex;
    std::map<CoprimePair, std::vector<S>> values;
  };
  SymbolFn<S> target_;
  int depth_;
  double tol_;
  std::vector<Word> words_;
  std::shared_ptr<Cache> cache_;
};

// Checks group-likeness of D at the samples (throws NotShuffled) and peels.
template <class S>
Decomposition<S> decompose(const SymbolFn<S>& d, int depth, const std::vector<CoprimePair>& samples,
                           double tol = 1e-9);
// Peels the normalized symbol delta(M).
template <class S>
Decomposition<S> decompose(const RecipFn<S>& m, int depth, const std::vector<CoprimePair>& samples,
                           double tol = 1e-9);

}  // namespace mdsym
