#include "mdsym/special.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>
#include <vector>

namespace mdsym {

namespace {

constexpr double kPi = std::numbers::pi;

struct BernoulliTable {
  std::shared_mutex mutex;
  std::vector<Rational> values{Rational(1)};
};

BernoulliTable& bernoulli_table() {
  static BernoulliTable table;
  return table;
}

// Li_s(e^mu) = sum_{k != s-1} zeta(s-k) mu^k/k! + mu^{s-1}/(s-1)! (H_{s-1} - log(-mu)), |mu| < 2 pi.
// Coefficients zeta(s-k)/k! in double, cached per s.
const std::vector<double>& log_series_coeffs(int s) {
  static std::shared_mutex mutex;
  static std::map<int, std::vector<double>> cache;
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(s);
    if (it != cache.end()) return it->second;
  }
  constexpr int kTerms = 160;
  std::vector<double> c(kTerms, 0.0);
  for (int k = 0; k < kTerms; ++k) {
    if (k == s - 1) continue;
    const int arg = s - k;
    if (arg >= 2) {
      c[k] = zeta(arg) / factorial(k).get_d();
    } else {
      // zeta(-m) = (-1)^m B_{m+1}/(m+1), m = k - s >= 0
      const int m = -arg;
      Rational z = bernoulli(m + 1) / (m + 1);
      if (m % 2 == 1) z = -z;
      c[k] = Rational(z / factorial(k)).get_d();
    }
  }
  std::unique_lock lock(mutex);
  return cache.emplace(s, std::move(c)).first->second;
}

}  // namespace

Rational bernoulli(int n) {
  if (n < 0) throw DomainError("bernoulli index must be nonnegative");
  auto& t = bernoulli_table();
  {
    std::shared_lock lock(t.mutex);
    if (static_cast<std::size_t>(n) < t.values.size()) return t.values[n];
  }
  std::unique_lock lock(t.mutex);
  // sum_{k=0}^{m} C(m+1,k) B_k = 0
  for (int m = static_cast<int>(t.values.size()); m <= n; ++m) {
    Rational acc = 0;
    for (int k = 0; k < m; ++k) acc += binomial(m + 1, k) * t.values[k];
    t.values.push_back(Rational(-acc / (m + 1)));
  }
  return t.values[n];
}

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

Rational factorial(int n) {
  if (n < 0) throw DomainError("factorial of a negative integer");
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(r);
}

double bernoulli_poly(int n, double x) {
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) acc += Rational(binomial(n, k) * bernoulli(k)).get_d() * std::pow(x, n - k);
  return acc;
}

double harmonic(int n) {
  double h = 0.0;
  for (int k = 1; k <= n; ++k) h += 1.0 / k;
  return h;
}

double zeta(int s) {
  if (s == 1) throw DomainError("zeta has a pole at s = 1");
  if (s <= 0) {
    const int m = -s;
    Rational z = bernoulli(m + 1) / (m + 1);
    if (m % 2 == 1) z = -z;
    return z.get_d();
  }
  if (s % 2 == 0) {
    // zeta(2k) = (-1)^{k+1} B_{2k} (2 pi)^{2k} / (2 (2k)!)
    return std::fabs(bernoulli(s).get_d()) / factorial(s).get_d() / 2.0 * std::pow(2.0 * kPi, s);
  }
  return hurwitz_zeta(s, 1.0);
}

double hurwitz_zeta(double s, double a) {
  if (a <= 0.0) throw DomainError("hurwitz zeta needs a > 0");
  if (s == 1.0) throw DomainError("hurwitz zeta has a pole at s = 1");
  if (s <= 0.0) {
    if (std::floor(s) != s) throw DomainError("hurwitz zeta for non-integer s <= 0 is not supported");
    const int m = static_cast<int>(-s);
    return -bernoulli_poly(m + 1, a) / (m + 1);
  }
  if (s < 1.0) throw DomainError("hurwitz zeta for 0 < s < 1 is not supported");
  // Euler-Maclaurin with N shifted terms and K correction terms.
  constexpr int N = 12, K = 12;
  double sum = 0.0;
  for (int n = 0; n < N; ++n) sum += std::pow(n + a, -s);
  const double x = N + a;
  sum += std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
  double rising = s;  // s (s+1) ... (s+2k-2)
  double xpow = std::pow(x, -s - 1.0);
  for (int k = 1; k <= K; ++k) {
    const double term = bernoulli(2 * k).get_d() / factorial(2 * k).get_d() * rising * xpow;
    sum += term;
    rising *= (s + 2 * k - 1) * (s + 2 * k);
    xpow /= x * x;
  }
  return sum;
}

Complex polylog(int s, Complex z) {
  if (s < 1) throw DomainError("polylog order must be >= 1");
  const double r = std::abs(z);
  if (r > 1.0 + 1e-12) throw DomainError("polylog argument outside the closed unit disc");
  if (r == 0.0) return {0.0, 0.0};
  if (s == 1) {
    if (z == Complex(1.0, 0.0)) throw DomainError("Li_1 diverges at z = 1");
    return -std::log(1.0 - z);
  }
  if (std::abs(z - Complex(1.0, 0.0)) == 0.0) return {zeta(s), 0.0};
  if (r < 0.75) {
    Complex sum = 0.0, zn = 1.0;
    for (int n = 1; n < 400; ++n) {
      zn *= z;
      const Complex term = zn / std::pow(static_cast<double>(n), s);
      sum += term;
      if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) return sum;
    }
    throw NonConvergence("polylog series did not converge");
  }
  const Complex mu = std::log(z);
  const auto& c = log_series_coeffs(s);
  Complex sum = 0.0, mk = 1.0;
  bool converged = false;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (static_cast<int>(k) != s - 1) {
      sum += c[k] * mk;
      // |zeta(s-k)/k!| <= 4/(2 pi)^{k-s+1} once k >= s
      const int m = static_cast<int>(k) - s;
      if (m >= 0 && 4.0 * std::abs(mk) / std::pow(2.0 * kPi, m + 1) < 1e-18 * std::max(1.0, std::abs(sum))) {
        converged = true;
        break;
      }
    }
    mk *= mu;
  }
  if (!converged) throw NonConvergence("polylog log-series did not converge");
  const Complex mus1 = std::pow(mu, s - 1);
  sum += mus1 / factorial(s - 1).get_d() * (harmonic(s - 1) - std::log(-mu));
  return sum;
}

}  // namespace mdsym
