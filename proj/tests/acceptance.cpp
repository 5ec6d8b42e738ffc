// End-to-end acceptance checks. One PASS/FAIL line per criterion; exit code 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "mdsym/eichler.hpp"
#include "mdsym/laurent.hpp"
#include "mdsym/special.hpp"

using namespace mdsym;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double magnitude(const CSeries& s) {
  double m = 0.0;
  for (const auto& [w, c] : s.terms()) m = std::max(m, std::abs(c));
  return m;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

ScalarFn<Rational> scalar_psi(ScalarFn<Rational> d) {
  return [d](std::int64_t p, std::int64_t q) { return Rational(d(p, q) - d(-q, p)); };
}

ScalarFn<Rational> c_over_pq(Rational c) {
  return [c](std::int64_t p, std::int64_t q) { return Rational(c / Rational(static_cast<long>(p * q))); };
}

ScalarFn<Rational> p2_minus_q2() {
  return [](std::int64_t p, std::int64_t q) { return make_rational(p * p - q * q, 1); };
}

AlphabetPtr two_letters() { return make_alphabet(Alphabet::of({"a", "b"})); }

HAssignment e4e6() { return HAssignment::parse("A=E4,B=E6"); }

Outcome reciprocity_law() {
  double worst = 0.0;
  for (int w : {4, 6, 8})
    for (std::int64_t p = 2; p <= 13; ++p) worst = std::max(worst, reciprocity_law_check(w, p).discrepancy);
  return {worst < 1e-8, "max discrepancy " + fmt("%.2e", worst)};
}

Outcome bijection() {
  auto al = two_letters();
  std::vector<CoprimePair> pairs = sample_pairs(42, 30, 50);
  pairs.push_back({1, 1});
  pairs.push_back({50, -49});
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    const auto d = random_symbol(al, 3, 4200 + i);
    const auto f = psi(d);
    const auto back = delta(f);
    const auto nd = normalize(d);
    const auto ff = psi(back);
    for (const auto& [p, q] : pairs)
      if (!(back(p, q) == nd(p, q)) || !(ff(p, q) == f(p, q))) ++bad;
  }
  return {bad == 0, std::to_string(bad) + " mismatches over 100 symbols x " + std::to_string(pairs.size()) + " pairs"};
}

Outcome shuffle() {
  auto al = two_letters();
  const auto pairs = sample_pairs(43, 50, 40);
  int bad = 0;
  for (int i = 0; i < 20; ++i) {
    auto f = from_components<Rational>({c_over_pq(make_rational(i + 1, 12)), scalar_psi(random_scalar_symbol(500 + i))},
                                       al, 3);
    const auto d = delta(f);
    for (const auto& [p, q] : pairs)
      if (!is_grouplike(d(p, q)).ok) ++bad;
  }
  auto f = from_components<Rational>({c_over_pq(make_rational(1, 12)), scalar_psi(random_scalar_symbol(600))}, al, 3);
  const auto control = delta(bullet(f, embed_exp<Rational>(scalar_psi(random_scalar_symbol(601)), Word{0, 1}, al, 3)));
  bool caught = false;
  for (const auto& [p, q] : pairs) caught = caught || !is_grouplike(control(p, q)).ok;
  return {bad == 0 && caught,
          std::to_string(bad) + " failures in 20x50, corrupted control " + (caught ? "rejected" : "accepted")};
}

Outcome bullet_algebra() {
  auto al = two_letters();
  const Word a{0}, b{1};
  const auto one = RecipFn<Rational>::constant_one(al, 3);
  const auto f = bullet(embed_exp<Rational>(scalar_psi(random_scalar_symbol(60)), a, al, 3),
                        embed_exp<Rational>(c_over_pq(make_rational(3, 7)), b, al, 3));
  const auto g = embed_exp<Rational>(p2_minus_q2(), Word{0, 1}, al, 3);
  const auto h = from_components<Rational>({c_over_pq(2), scalar_psi(random_scalar_symbol(61))}, al, 3);
  const auto fi = bullet_inverse(f);
  const auto fg_h = bullet(bullet(f, g), h), f_gh = bullet(f, bullet(g, h));
  const auto left = bullet(one, f), right = bullet(f, one);
  const auto i1 = bullet(f, fi), i2 = bullet(fi, f);
  const auto unit = QSeries::one(al, 3);
  int bad = 0;
  for (const auto& [p, q] : sample_pairs(62, 30, 25)) {
    bad += !(fg_h(p, q) == f_gh(p, q));
    bad += !(left(p, q) == f(p, q)) + !(right(p, q) == f(p, q));
    bad += !(i1(p, q) == unit) + !(i2(p, q) == unit);
  }
  return {bad == 0, std::to_string(bad) + " exact mismatches over 30 pairs"};
}

Outcome eichler_length_one() {
  IntegratorConfig cfg;
  cfg.trunc = 1;
  const auto hd = HAssignment::parse("A=Delta");
  const auto delta_form = ModularFormSpec::cusp_delta();
  double cusp = 0.0;
  for (const auto& [p, q] : sample_pairs(5, 10, 20)) {
    // The integral runs in the opposite orientation from the closed form.
    const Complex d = build_D(hd, p, q, cfg).coeff(Word{0});
    const Complex f = dedekind_symbol_length1(delta_form, p, q);
    cusp = std::max(cusp, std::abs(d + f) / std::max(1.0, std::abs(f)));
  }

  const auto h = e4e6();
  const auto d = eichler_symbol(h, cfg);
  double spread = 0.0;
  Complex first[2];
  bool have = false;
  std::vector<LaurentSample> sa, sb;
  for (const auto& [p, q] : sample_pairs(77, 40, 15)) {
    const auto dpq = d(p, q);
    Complex disc[2];
    for (Letter l : {0, 1}) {
      const auto& form = *h.form(Word{l});
      disc[l] = dpq.coeff(Word{l}) + dedekind_symbol_length1(form, p, q);
    }
    if (!have) {
      first[0] = disc[0];
      first[1] = disc[1];
      have = true;
    }
    spread = std::max({spread, std::abs(disc[0] - first[0]), std::abs(disc[1] - first[1])});
    const auto m = dpq * inverse(d(-q, p));
    sa.push_back({{p, q}, m.coeff(Word{0})});
    sb.push_back({{p, q}, m.coeff(Word{1})});
  }
  const auto fa = laurent_fit(sa, {-1, 3, -1, 3, std::set<int>{2, -2}});
  const auto fb = laurent_fit(sb, {-1, 5, -1, 5, std::set<int>{4, -2}});
  const double residual = std::max(fa.residual, fb.residual);
  const bool pole = std::abs(fa.poly.coeff(-1, -1) + 1.0 / 240.0) < 1e-8 && std::abs(fb.poly.coeff(-1, -1) - 1.0 / 504.0) < 1e-8;
  return {cusp < 1e-8 && spread < 1e-8 && residual < 1e-8 && pole,
          "Delta err " + fmt("%.1e", cusp) + ", E4/E6 constant " + fmt("%.1e", std::abs(first[0])) + "/" +
              fmt("%.1e", std::abs(first[1])) + " spread " + fmt("%.1e", spread) + ", Laurent residual " +
              fmt("%.1e", residual) + (pole ? ", 1/pq term -a0" : ", 1/pq term wrong")};
}

Outcome eichler_length_two() {
  const auto h = e4e6();
  const auto d = eichler_symbol(h);
  double mds = 0.0, recip = 0.0, shuffle = 0.0;
  for (const auto& [p, q] : sample_pairs(2024, 20, 20)) {
    const auto dpq = d(p, q);
    const double scale = std::max(1.0, magnitude(dpq));
    mds = std::max({mds, dpq.distance(d(p, p + q)) / scale, d(p, -q).distance(d(-p, q)) / scale});
    const auto f = build_F(h, p, q);
    recip = std::max(recip, (dpq * build_E(h, p, q, 2) * inverse(d(-q, p))).distance(f) / std::max(1.0, magnitude(f)));
    shuffle = std::max(shuffle, is_grouplike(dpq, 0.0).worst / scale);
  }
  return {mds < 1e-8 && recip < 1e-8 && shuffle < 1e-8,
          "MDS " + fmt("%.1e", mds) + ", reciprocity " + fmt("%.1e", recip) + ", group-like " + fmt("%.1e", shuffle) +
              " (relative to max(1,|D|))"};
}

Outcome decomposition() {
  const auto h = e4e6();
  const auto m = psi(eichler_symbol(h, {}, Memo::sign));
  const auto samples = sample_pairs(99, 20, 12);
  const auto dec = decompose(m, 2, samples, 1e-8);
  double recon = 0.0;
  for (const auto& [p, q] : samples) {
    const auto t = dec.target()(p, q);
    recon = std::max(recon, dec.reconstruct(p, q).distance(t) / std::max(1.0, magnitude(t)));
  }
  int bad = 0;
  for (std::size_t i = 0; i < dec.words().size(); ++i) {
    const auto c = embed_exp_symbol(dec.coefficient(i), dec.words()[i], h.alphabet_ptr(), 2);
    bad += !verify_mds(c, samples, 1e-8).passed;
  }
  return {recon < 1e-8 && bad == 0, "reconstruction " + fmt("%.1e", recon) + ", " + std::to_string(bad) + " of " +
                                        std::to_string(dec.words().size()) + " factors fail MDS"};
}

Outcome gamma02() {
  const auto a = gamma02_delta(4, 2, 1), b = gamma02_delta(4, 3, 1);
  const bool exact = a.coefficient == Rational(2) && a.zeta_arg == 3 && b.coefficient == make_rational(1, 9) &&
                     b.zeta_arg == 3;
  const bool numeric = std::abs(b.value() - zeta(3) / 9.0) < 1e-10 && std::abs(a.value() - 2.0 * zeta(3)) < 1e-10;
  double sym = 0.0;
  for (const auto& [p, q] : sample_pairs(8, 20, 20)) {
    sym = std::max(sym, std::abs(gamma02_D(4, p, q) - gamma02_D(4, -p, -q)));
    const Complex f = gamma02_F(4, p, q);
    sym = std::max(sym, std::abs(f - gamma02_F(4, -p, -q)) / std::max(1.0, std::abs(f)));
  }
  return {exact && numeric && sym < 1e-9, std::string(exact ? "2*zeta(3), 1/9*zeta(3) exact" : "symbolic mismatch") +
                                              ", symmetry " + fmt("%.1e", sym)};
}

Outcome continued_fractions() {
  int bad = 0, pairs = 0;
  for (std::int64_t p = 1; p <= 200; ++p) {
    for (std::int64_t q = -200; q <= 200; ++q) {
      if (q == 0 || gcd64(p, q) != 1) continue;
      ++pairs;
      const auto s = canonical(p, q);
      const auto e = evaluate(s);
      bad += !(s.is_canonical() && e == CoprimePair{p, q});
    }
  }
  std::mt19937_64 rng(2024);
  int applied = 0, moved_bad = 0;
  CFSeq s = canonical(7, 19);
  while (applied < 500) {
    if (s.size() > 12 || rng() % 25 == 0) {
      const std::int64_t p = 1 + rng() % 60, q = static_cast<std::int64_t>(rng() % 121) - 60;
      if (q == 0 || gcd64(p, q) != 1) continue;
      s = canonical(p, q);
    }
    const auto before = evaluate(s);
    const int kind = static_cast<int>(rng() % 3);
    const int eps = rng() % 2 ? 1 : -1;
    try {
      CFSeq next = s;
      if (kind == 0) {
        if (s.size() < 2) continue;
        const std::size_t i = rng() % (s.size() - 1);
        next = move_t1(s, i, eps);
        moved_bad += !(inverse_t1(next, i, eps) == s);
      } else if (kind == 1) {
        const std::size_t i = rng() % s.size();
        const std::int64_t b = static_cast<std::int64_t>(rng() % 7) - 3;
        next = move_t2(s, i, b, s[i] - b);
        moved_bad += !(inverse_t2(next, i) == s);
      } else {
        next = move_t3(s, eps);
        moved_bad += !(inverse_t3(next, eps) == s);
      }
      moved_bad += !same_rational(evaluate(next), before);
      s = next;
      ++applied;
    } catch (const DivisionByZeroTail&) {
    }
  }
  return {bad == 0 && moved_bad == 0, std::to_string(pairs) + " pairs with " + std::to_string(bad) +
                                          " failures, 500 moves with " + std::to_string(moved_bad) + " failures"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"reciprocity law for Eisenstein weights 4,6,8", reciprocity_law},
      {"symbol/reciprocity bijection", bijection},
      {"shuffle equivalence", shuffle},
      {"bullet product algebra", bullet_algebra},
      {"Eichler length-1 cross-check", eichler_length_one},
      {"Eichler length-2 symbol axioms", eichler_length_two},
      {"product decomposition", decomposition},
      {"Gamma0(2) closed forms", gamma02},
      {"continued-fraction kernel", continued_fractions},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %zu %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
