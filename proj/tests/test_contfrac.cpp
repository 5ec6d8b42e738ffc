#include <gtest/gtest.h>

#include <random>

#include "mdsym/contfrac.hpp"
#include "mdsym/scalar.hpp"

using namespace mdsym;

namespace {

// Oracle: nested fraction a0 - 1/(a1 - 1/(...)) in exact rationals; nullopt on a zero denominator.
std::optional<Rational> nested(const CFSeq& s) {
  Rational x = static_cast<long>(s.entries().back());
  for (std::size_t k = s.size() - 1; k-- > 0;) {
    if (sgn(x) == 0) return std::nullopt;
    x = Rational(static_cast<long>(s[k])) - Rational(1) / x;
  }
  return x;
}

bool projectively_equal(const CoprimePair& a, const CoprimePair& b) {
  return (a.p == b.p && a.q == b.q) || (a.p == -b.p && a.q == -b.q);
}

}  // namespace

TEST(ContFrac, EvaluateExamples) {
  EXPECT_EQ(evaluate(CFSeq({3})), (CoprimePair{1, 3}));
  EXPECT_EQ(evaluate(CFSeq({2, 3})), (CoprimePair{3, 5}));
  EXPECT_EQ(evaluate(CFSeq({4, 1})), (CoprimePair{1, 3}));
  auto x = nested(CFSeq({2, 3}));
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, make_rational(5, 3));
}

TEST(ContFrac, EvaluateMatchesNestedOracle) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> entry(-6, 6), len(1, 6);
  int checked = 0;
  for (int it = 0; it < 2000; ++it) {
    std::vector<std::int64_t> a(len(rng));
    for (auto& v : a) v = entry(rng);
    CFSeq s(a);
    std::optional<CoprimePair> pq;
    try {
      pq = evaluate(s);
    } catch (const DivisionByZeroTail&) {
    }
    auto x = nested(s);
    if (!pq) continue;
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(gcd64(pq->p, pq->q), 1);
    EXPECT_EQ(make_rational(pq->q, pq->p), *x);
    ++checked;
  }
  EXPECT_GT(checked, 1000);
}

TEST(ContFrac, Tails) {
  auto t = tails(CFSeq({2, 3}));
  EXPECT_EQ(t, (std::vector<CoprimePair>{{3, 5}, {1, 3}}));
  EXPECT_EQ(tails(CFSeq({3})), (std::vector<CoprimePair>{{1, 3}}));
  for (int k = 1; k <= 8; ++k) {
    auto tk = tails(CFSeq(std::vector<std::int64_t>(k, 2)));
    for (int i = 0; i < k; ++i) EXPECT_EQ(tk[i], (CoprimePair{k - i, k - i + 1}));
  }
}

TEST(ContFrac, DivisionByZeroTail) {
  EXPECT_THROW(evaluate(CFSeq({1, 0})), DivisionByZeroTail);
  EXPECT_THROW(evaluate(CFSeq({3, 1, 1})), DivisionByZeroTail);
}

TEST(ContFrac, CanonicalExamples) {
  EXPECT_EQ(canonical(3, 5), CFSeq({2, 3}));
  EXPECT_EQ(canonical(1, 3), CFSeq({3}));
  EXPECT_EQ(canonical(2, 3), CFSeq({2, 2}));
  EXPECT_EQ(canonical(1, -4), CFSeq({-4}));
  EXPECT_THROW(canonical(0, 1), DomainError);
  EXPECT_THROW(canonical(-3, 5), DomainError);
  EXPECT_THROW(canonical(4, 6), DomainError);
}

TEST(ContFrac, CanonicalRoundTripAndTails) {
  for (std::int64_t p = 1; p <= 200; ++p) {
    for (std::int64_t q = -200; q <= 200; ++q) {
      if (q == 0 || gcd64(p, q) != 1) continue;
      auto s = canonical(p, q);
      ASSERT_TRUE(s.is_canonical());
      ASSERT_EQ(evaluate(s), (CoprimePair{p, q}));
      auto t = tails(s);
      for (std::size_t i = 1; i < t.size(); ++i) {
        auto sub = canonical(t[i].p, t[i].q);
        ASSERT_EQ(sub.entries(), std::vector<std::int64_t>(s.entries().begin() + i, s.entries().end()));
      }
      ASSERT_EQ(canonical(evaluate(s).p, evaluate(s).q), s);
    }
  }
}

TEST(ContFrac, MoveExamples) {
  auto t3 = move_t3(CFSeq({3}), 1);
  EXPECT_EQ(t3, CFSeq({4, 1}));
  EXPECT_EQ(evaluate(t3), evaluate(CFSeq({3})));
  auto t2 = move_t2(CFSeq({5}), 0, 2, 3);
  EXPECT_EQ(t2, CFSeq({2, 0, 3}));
  EXPECT_TRUE(projectively_equal(evaluate(t2), {1, 5}));
  auto t1 = move_t1(CFSeq({2, 3}), 0, 1);
  EXPECT_EQ(t1, CFSeq({3, 1, 4}));
  EXPECT_EQ(inverse_t1(t1, 0, 1), CFSeq({2, 3}));
  EXPECT_EQ(inverse_t2(t2, 0), CFSeq({5}));
  EXPECT_EQ(inverse_t3(t3, 1), CFSeq({3}));
}

TEST(ContFrac, MoveErrors) {
  EXPECT_THROW(move_t1(CFSeq({3}), 0, 1), BadMove);
  EXPECT_THROW(move_t1(CFSeq({2, 3}), 0, 2), BadMove);
  EXPECT_THROW(move_t2(CFSeq({5}), 0, 2, 2), BadMove);
  EXPECT_THROW(move_t2(CFSeq({5}), 1, 2, 3), BadMove);
  EXPECT_THROW(inverse_t2(CFSeq({5, 1, 3}), 0), BadMove);
  // T2 splitting the last entry as (b, 0, 0) leaves a zero tail.
  EXPECT_THROW(move_t2(CFSeq({2, 3}), 1, 3, 0), DivisionByZeroTail);
}

TEST(ContFrac, RandomMovesPreserveValue) {
  std::mt19937_64 rng(2024);
  int applied = 0;
  CFSeq s = canonical(7, 19);
  while (applied < 500) {
    if (s.size() > 12 || rng() % 25 == 0) {
      std::int64_t p = 1 + rng() % 60, q = static_cast<std::int64_t>(rng() % 121) - 60;
      if (q == 0 || gcd64(p, q) != 1) continue;
      s = canonical(p, q);
    }
    const auto before = evaluate(s);
    const int kind = static_cast<int>(rng() % 3);
    const int eps = rng() % 2 ? 1 : -1;
    std::optional<CFSeq> next;
    try {
      if (kind == 0 && s.size() >= 2) {
        std::size_t i = rng() % (s.size() - 1);
        next = move_t1(s, i, eps);
        ASSERT_EQ(inverse_t1(*next, i, eps), s);
      } else if (kind == 1) {
        std::size_t i = rng() % s.size();
        std::int64_t b = static_cast<std::int64_t>(rng() % 7) - 3;
        next = move_t2(s, i, b, s[i] - b);
        ASSERT_EQ(inverse_t2(*next, i), s);
      } else {
        next = move_t3(s, eps);
        ASSERT_EQ(inverse_t3(*next, eps), s);
      }
    } catch (const DivisionByZeroTail&) {
      continue;
    }
    if (!next) continue;
    ASSERT_TRUE(projectively_equal(evaluate(*next), before));
    s = *next;
    ++applied;
  }
}
