#include <gtest/gtest.h>

#include <random>

#include "mdsym/symbols.hpp"

using namespace mdsym;

namespace {

AlphabetPtr ab() { return make_alphabet(Alphabet::of({"a", "b"})); }
const Word a{0}, b{1};

ScalarFn<Rational> scalar_psi(ScalarFn<Rational> d) {
  return [d](std::int64_t p, std::int64_t q) { return Rational(d(p, q) - d(-q, p)); };
}

ScalarFn<Rational> c_over_pq(Rational c) {
  return [c](std::int64_t p, std::int64_t q) { return Rational(c / Rational(static_cast<long>(p * q))); };
}

ScalarFn<Rational> p2_minus_q2() {
  return [](std::int64_t p, std::int64_t q) { return make_rational(p * p - q * q); };
}

// Random walk along the defining relations within the almost domain.
CoprimePair walk(CoprimePair x, std::mt19937_64& rng, int steps) {
  for (int i = 0; i < steps; ++i) {
    switch (rng() % 3) {
      case 0:
        if (x.q + x.p != 0) x.q += x.p;
        break;
      case 1:
        if (x.q - x.p != 0) x.q -= x.p;
        break;
      default:
        x = {-x.p, -x.q};
    }
  }
  return x;
}

std::vector<CoprimePair> with_positive(const std::vector<CoprimePair>& v) {
  auto out = v;
  out.push_back({1, 1});
  out.push_back({1, -1});
  out.push_back({2, 1});
  return out;
}

}  // namespace

TEST(Orbit, KeysAreWalkInvariant) {
  std::mt19937_64 rng(5);
  for (const auto& pq : sample_pairs(1, 300, 40)) {
    auto key = orbit_key(pq.p, pq.q, true);
    auto moved = walk(pq, rng, 20);
    ASSERT_EQ(orbit_key(moved.p, moved.q, true), key);
  }
  EXPECT_EQ(orbit_key(1, 5, true), (CoprimePair{1, 1}));
  EXPECT_EQ(orbit_key(-1, 5, true), (CoprimePair{1, -1}));
  EXPECT_EQ(orbit_key(7, -3, true), (CoprimePair{7, 4}));
  EXPECT_EQ(orbit_key(1, -5, false), (CoprimePair{1, 0}));
  EXPECT_EQ(orbit_key(0, -1, false), (CoprimePair{0, 1}));
  EXPECT_THROW(orbit_key(1, 0, true), DomainError);
  EXPECT_THROW(orbit_key(2, 4, false), DomainError);
}

TEST(RandomSymbol, DeterministicAndAxiomatic) {
  auto al = ab();
  auto d1 = random_symbol(al, 3, 99);
  auto d2 = random_symbol(al, 3, 99);
  auto d3 = random_symbol(al, 3, 100);
  bool differs = false;
  for (const auto& [p, q] : sample_pairs(2, 100, 30)) {
    ASSERT_EQ(d1(p, q), d2(p, q));
    ASSERT_EQ(d1(p, q), d1(-p, -q));
    differs = differs || !(d1(p, q) == d3(p, q));
  }
  EXPECT_TRUE(differs);
  auto rep = verify_mds(d1, sample_pairs(3, 50, 30));
  EXPECT_TRUE(rep.passed);
  EXPECT_TRUE(rep.exact);
}

TEST(Psi, Examples) {
  auto al = ab();
  auto one = SymbolFn<Rational>::constant_one(al, 3);
  auto f = psi(one);
  EXPECT_EQ(f(3, 5), QSeries::one(al, 3));

  auto single = make_alphabet(Alphabet::of({"a"}));
  auto d = random_scalar_symbol(4);
  auto dexp = embed_exp_symbol<Rational>(d, a, single, 4);
  auto fexp = psi(dexp);
  for (const auto& [p, q] : sample_pairs(5, 30, 20)) {
    auto expect = exp(QSeries::monomial(single, 4, a, d(p, q) - d(-q, p)));
    ASSERT_EQ(fexp(p, q), expect);
  }
}

TEST(Psi, RandomSymbolsGiveReciprocityFunctions) {
  auto al = ab();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto f = psi(random_symbol(al, 3, seed));
    auto rep = verify_mrf(f, sample_pairs(seed + 10, 30, 25));
    EXPECT_TRUE(rep.passed) << "seed " << seed;
  }
}

TEST(Psi, ConsistentWithAlternateForm) {
  auto al = ab();
  auto d = random_symbol(al, 3, 8);
  auto f = psi(d);
  for (const auto& [p, q] : sample_pairs(9, 50, 30)) ASSERT_EQ(f(p, q), d(p, q) * inverse(d(q, -p)));
}

TEST(Delta, Examples) {
  auto al = ab();
  auto f = psi(random_symbol(al, 3, 21));
  auto d = delta(f);
  EXPECT_EQ(d(1, 7), QSeries::one(al, 3));
  EXPECT_EQ(d(3, 5), inverse(f(1, 3)));
  EXPECT_EQ(d(1, -4), inverse(f(1, 1)));
  EXPECT_EQ(d(-3, -5), d(3, 5));
  EXPECT_THROW(d(1, 0), DomainError);
  EXPECT_TRUE(d.normalized());
}

TEST(Delta, BijectionRoundTrips) {
  auto al = ab();
  const auto pairs = with_positive(sample_pairs(31, 25, 50));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto d = random_symbol(al, 3, 1000 + seed);
    auto f = psi(d);
    auto back = delta(f);
    auto nd = normalize(d);
    auto ff = psi(back);
    for (const auto& [p, q] : pairs) {
      ASSERT_EQ(back(p, q), nd(p, q)) << "seed " << seed << " at " << p << "," << q;
      ASSERT_EQ(ff(p, q), f(p, q));
    }
  }
}

TEST(Normalize, Properties) {
  auto al = ab();
  auto d = random_symbol(al, 3, 40);
  auto nd = normalize(d);
  EXPECT_EQ(nd(1, 1), QSeries::one(al, 3));
  auto nnd = normalize(nd);
  auto f = psi(d), nf = psi(nd);
  for (const auto& [p, q] : sample_pairs(41, 40, 30)) {
    ASSERT_EQ(nnd(p, q), nd(p, q));
    ASSERT_EQ(nf(p, q), f(p, q));
  }
  auto c = random_symbol(al, 3, 42)(2, 1);
  SymbolFn<Rational> cst(al, 3, [c](std::int64_t, std::int64_t) { return c; }, {});
  EXPECT_EQ(normalize(cst)(5, 7), QSeries::one(al, 3));
}

TEST(DeltaFull, RepresentationIndependence) {
  auto al = ab();
  auto d = random_symbol(al, 3, 50, /*almost=*/false);
  auto f = psi(d);
  auto nd = normalize(d);

  EXPECT_EQ(delta_full(f, CFSeq({3})), QSeries::one(al, 3));
  auto base = CFSeq({2, 3});
  EXPECT_EQ(delta_full(f, base), delta_full(f, move_t1(base, 0, 1)));
  for (int k = 2; k <= 6; ++k) {
    auto expect = QSeries::one(al, 3);
    for (int j = k - 1; j >= 1; --j) expect = expect * inverse(f(j, j + 1));
    ASSERT_EQ(delta_full(f, CFSeq(std::vector<std::int64_t>(k, 2))), expect);
  }

  std::mt19937_64 rng(51);
  int done = 0;
  while (done < 200) {
    std::int64_t p = 1 + rng() % 40, q = static_cast<std::int64_t>(rng() % 81) - 40;
    if (gcd64(p, q) != 1) continue;
    CFSeq s = canonical(p, q);
    const auto ref = delta_full(f, s);
    ASSERT_EQ(ref, nd(p, q));
    for (int m = 0; m < 3; ++m) {
      try {
        const int kind = static_cast<int>(rng() % 3);
        const int eps = rng() % 2 ? 1 : -1;
        if (kind == 0 && s.size() >= 2) {
          s = move_t1(s, rng() % (s.size() - 1), eps);
        } else if (kind == 1) {
          std::size_t i = rng() % s.size();
          std::int64_t b = static_cast<std::int64_t>(rng() % 5) - 2;
          s = move_t2(s, i, b, s[i] - b);
        } else {
          s = move_t3(s, eps);
        }
      } catch (const DivisionByZeroTail&) {
      }
    }
    ASSERT_EQ(delta_full(f, s), ref);
    ++done;
  }
  auto dfull = delta_full(f);
  EXPECT_EQ(dfull(0, 1), QSeries::one(al, 3));
  EXPECT_EQ(dfull(-5, -7), nd(5, 7));
}

TEST(Bullet, UnitInverseAssociativity) {
  auto al = ab();
  auto one = RecipFn<Rational>::constant_one(al, 3);
  auto f = bullet(embed_exp<Rational>(scalar_psi(random_scalar_symbol(60)), a, al, 3),
                  embed_exp<Rational>(c_over_pq(make_rational(3, 7)), b, al, 3));
  auto g = embed_exp<Rational>(p2_minus_q2(), Word{0, 1}, al, 3);
  auto h = from_components<Rational>({c_over_pq(2), scalar_psi(random_scalar_symbol(61))}, al, 3);
  auto fi = bullet_inverse(f);
  auto fg_h = bullet(bullet(f, g), h);
  auto f_gh = bullet(f, bullet(g, h));
  auto left = bullet(one, f), right = bullet(f, one);
  auto i1 = bullet(f, fi), i2 = bullet(fi, f);
  for (const auto& [p, q] : sample_pairs(62, 30, 25)) {
    ASSERT_EQ(left(p, q), f(p, q));
    ASSERT_EQ(right(p, q), f(p, q));
    ASSERT_EQ(fg_h(p, q), f_gh(p, q));
    ASSERT_EQ(i1(p, q), QSeries::one(al, 3));
    ASSERT_EQ(i2(p, q), QSeries::one(al, 3));
  }
  auto ea = embed_exp<Rational>(c_over_pq(5), a, al, 3);
  auto eai = bullet_inverse(ea);
  EXPECT_EQ(eai(3, 5), exp(QSeries::monomial(al, 3, a, make_rational(-5, 15))));
}

TEST(Bullet, ComponentFormula) {
  auto al = ab();
  auto f = psi(random_symbol(al, 2, 70));
  auto g = psi(random_symbol(al, 2, 71));
  auto fg = bullet(f, g);
  auto d = delta(f);
  for (const auto& [p, q] : sample_pairs(72, 30, 25)) {
    auto lhs = fg(p, q);
    auto F = f(p, q), G = g(p, q), Dp = d(p, q), Dm = d(-q, p);
    for (const auto& w : al->words_of_length(1)) ASSERT_EQ(lhs.coeff(w), Rational(F.coeff(w) + G.coeff(w)));
    for (Letter u = 0; u < 2; ++u) {
      for (Letter v = 0; v < 2; ++v) {
        Word uv{u, v};
        Rational expect = F.coeff(uv) + G.coeff(uv) + Dp.coeff(Word{u}) * G.coeff(Word{v}) -
                          G.coeff(Word{u}) * Dm.coeff(Word{v});
        ASSERT_EQ(lhs.coeff(uv), expect);
      }
    }
  }
}

TEST(Bullet, MinimalLengthAdditivity) {
  auto al = ab();
  // F vanishes below length 2, G below length 1.
  auto f = embed_exp<Rational>(p2_minus_q2(), Word{1, 0}, al, 3);
  auto g = from_components<Rational>({c_over_pq(1), scalar_psi(random_scalar_symbol(80))}, al, 3);
  auto f2 = embed_exp<Rational>(c_over_pq(4), Word{0, 0}, al, 3);
  auto ff = bullet(f, f2);
  auto fg = bullet(f, g);
  for (const auto& [p, q] : sample_pairs(81, 20, 20)) {
    auto x = ff(p, q);
    for (const auto& w : al->words_of_length(1)) ASSERT_EQ(x.coeff(w), 0);
    for (const auto& w : al->words_of_length(2)) ASSERT_EQ(x.coeff(w), Rational(f(p, q).coeff(w) + f2(p, q).coeff(w)));
    auto y = fg(p, q);
    for (const auto& w : al->words_of_length(1)) ASSERT_EQ(y.coeff(w), g(p, q).coeff(w));
  }
}

TEST(Bullet, MergesAlphabets) {
  auto A = make_alphabet(Alphabet::of({"a"}));
  auto B = make_alphabet(Alphabet::of({"b"}));
  auto f = embed_exp<Rational>(c_over_pq(1), a, A, 2);
  auto g = embed_exp<Rational>(p2_minus_q2(), Word{0}, B, 2);
  auto fg = bullet(f, g);
  EXPECT_EQ(fg.alphabet().size(), 2u);
  auto v = fg(2, 3);
  EXPECT_EQ(v.coeff(Word{0}), make_rational(1, 6));
  EXPECT_EQ(v.coeff(Word{1}), -5);
}

TEST(EmbedExp, Basics) {
  auto al = ab();
  auto zero = embed_exp<Rational>([](std::int64_t, std::int64_t) { return Rational(0); }, a, al, 3);
  EXPECT_EQ(zero(4, 9), QSeries::one(al, 3));
  auto f = c_over_pq(3);
  auto e = embed_exp<Rational>(f, a, al, 3);
  for (const auto& [p, q] : sample_pairs(90, 20, 20)) {
    auto v = e(p, q);
    ASSERT_EQ(v.coeff(Word{0, 0}), Rational(f(p, q) * f(p, q) / 2));
    ASSERT_TRUE(is_grouplike(v).ok);
  }
}

TEST(FromComponents, LengthOneComponentsAndAxioms) {
  auto al = ab();
  auto f1 = c_over_pq(make_rational(-2, 3));
  auto f2 = scalar_psi(random_scalar_symbol(100));
  auto f = from_components<Rational>({f1, f2}, al, 3);
  for (const auto& [p, q] : sample_pairs(101, 30, 30)) {
    auto v = f(p, q);
    ASSERT_EQ(v.coeff(a), f1(p, q));
    ASSERT_EQ(v.coeff(b), f2(p, q));
  }
  EXPECT_TRUE(verify_mrf(f, sample_pairs(102, 50, 30)).passed);
}

TEST(Verify, ControlsAndNegatives) {
  auto al = ab();
  auto samples = sample_pairs(110, 40, 30);
  EXPECT_TRUE(verify_mrf(RecipFn<Rational>::constant_one(al, 3), samples).passed);
  EXPECT_TRUE(verify_mds(SymbolFn<Rational>::constant_one(al, 3), samples).passed);
  EXPECT_TRUE(verify_mrf(embed_exp<Rational>(c_over_pq(7), a, al, 3), samples).passed);

  // Corrupt MRF2 only: a term that is symmetric under (p,q) -> (-q,p).
  auto bad = embed_exp<Rational>(
      [](std::int64_t p, std::int64_t q) { return make_rational(p * p + q * q); }, a, al, 3);
  auto rep = verify_mrf(bad, samples);
  EXPECT_FALSE(rep.passed);
  auto failed = rep.failed_axioms();
  EXPECT_NE(std::find(failed.begin(), failed.end(), "MRF2"), failed.end());
  EXPECT_EQ(std::find(failed.begin(), failed.end(), "MRF1"), failed.end());

  auto d = random_symbol(al, 2, 111);
  SymbolFn<Rational> broken(
      al, 2,
      [d, al](std::int64_t p, std::int64_t q) {
        auto s = d(p, q);
        s.add(Word{1}, make_rational(q));
        return s;
      },
      {});
  auto mds = verify_mds(broken, samples);
  EXPECT_FALSE(mds.passed);
  EXPECT_GT(mds.worst("MDS2"), 0.0);
}

TEST(Shuffle, DeltaOfShuffledFunctionsIsGrouplike) {
  auto al = ab();
  auto f = from_components<Rational>({c_over_pq(make_rational(1, 12)), scalar_psi(random_scalar_symbol(120))}, al, 3);
  auto d = delta(f);
  auto g = scalar_psi(random_scalar_symbol(121));
  auto bad = delta(bullet(f, embed_exp<Rational>(g, Word{0, 1}, al, 3)));
  bool broke = false;
  for (const auto& [p, q] : with_positive(sample_pairs(122, 40, 30))) {
    ASSERT_TRUE(is_grouplike(d(p, q)).ok);
    broke = broke || !is_grouplike(bad(p, q)).ok;
  }
  EXPECT_TRUE(broke);
}

TEST(Decompose, SingleExponential) {
  auto single = make_alphabet(Alphabet::of({"a"}));
  auto f = scalar_psi(random_scalar_symbol(130));
  auto m = embed_exp<Rational>(f, a, single, 3);
  auto dec = decompose(m, 3, sample_pairs(131, 10, 20));
  ASSERT_EQ(dec.words().size(), 3u);
  auto dm = delta(m);
  for (const auto& [p, q] : sample_pairs(132, 20, 20)) {
    auto cs = dec.coefficients(p, q);
    ASSERT_EQ(cs[0], dm(p, q).coeff(a));
    ASSERT_EQ(cs[1], 0);
    ASSERT_EQ(cs[2], 0);
    ASSERT_EQ(dec.reconstruct(p, q), dm(p, q));
  }
}

TEST(Decompose, RecoversProductOfExponentials) {
  auto al = ab();
  auto fa = c_over_pq(make_rational(5, 2));
  auto fb = scalar_psi(random_scalar_symbol(140));
  auto m = bullet(embed_exp<Rational>(fa, a, al, 3), embed_exp<Rational>(fb, b, al, 3));
  auto dec = decompose(m, 3, sample_pairs(141, 10, 20));
  auto target = delta(m);
  auto da = delta(embed_exp<Rational>(fa, a, al, 3));
  auto db = delta(embed_exp<Rational>(fb, b, al, 3));
  for (const auto& [p, q] : with_positive(sample_pairs(142, 30, 25))) {
    auto cs = dec.coefficients(p, q);
    ASSERT_EQ(cs[0], da(p, q).coeff(a));
    ASSERT_EQ(cs[1], db(p, q).coeff(b));
    for (std::size_t i = 2; i < cs.size(); ++i) ASSERT_EQ(cs[i], 0);
    ASSERT_EQ(dec.reconstruct(p, q), target(p, q));
  }
  // The ● product of the factor reciprocity functions gives back M.
  auto prod = dec.factor(0);
  for (std::size_t i = 1; i < dec.words().size(); ++i) prod = bullet(prod, dec.factor(i));
  for (const auto& [p, q] : sample_pairs(143, 15, 20)) ASSERT_EQ(prod(p, q), m(p, q));
}

TEST(Decompose, FactorsAreSymbols) {
  auto al = ab();
  auto m = from_components<Rational>({c_over_pq(3), p2_minus_q2()}, al, 3);
  m = bullet(m, from_components<Rational>({scalar_psi(random_scalar_symbol(150)), c_over_pq(-1)}, al, 3));
  auto dec = decompose(m, 2, sample_pairs(151, 10, 20));
  auto samples = sample_pairs(152, 30, 25);
  for (std::size_t i = 0; i < dec.words().size(); ++i) {
    SymbolFn<Rational> ci(
        al, 1,
        [c = dec.coefficient(i), al](std::int64_t p, std::int64_t q) {
          return QSeries::monomial(al, 1, Word{0}, c(p, q)) + QSeries::one(al, 1);
        },
        {});
    ASSERT_TRUE(verify_mds(ci, samples).passed) << "factor " << i;
  }
  for (const auto& [p, q] : samples) ASSERT_EQ(dec.reconstruct(p, q), delta(m)(p, q).truncated(2));
}

TEST(Decompose, RejectsNonShuffled) {
  auto al = ab();
  auto d = random_symbol(al, 2, 160);
  EXPECT_THROW(decompose(d, 2, sample_pairs(161, 5, 20)), NotShuffled);
}
