#include "mdsym/modforms.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <vector>

#include "mdsym/contfrac.hpp"
#include "mdsym/special.hpp"

namespace mdsym {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

void check_eisenstein_weight(int weight) {
  if (weight < 4 || weight % 2 != 0) throw DomainError("Eisenstein weight must be even and >= 4");
}

// e^{2 pi i m/n} with the phase reduced exactly first.
Complex root_of_unity(std::int64_t m, std::int64_t n) {
  std::int64_t r = m % n;
  if (r < 0) r += n;
  if (r == 0) return {1.0, 0.0};
  const double t = 2.0 * kPi * static_cast<double>(r) / static_cast<double>(n);
  return {std::cos(t), std::sin(t)};
}

// Coefficients of prod (1-q^n)^24 up to q^N, via the Jacobi series of prod (1-q^n)^3.
std::vector<std::int64_t> eta24_coeffs(std::size_t N) {
  std::vector<__int128> e3(N + 1, 0);
  for (std::int64_t k = 0;; ++k) {
    const std::size_t e = static_cast<std::size_t>(k * (k + 1) / 2);
    if (e > N) break;
    e3[e] = (k % 2 == 0 ? 1 : -1) * (2 * k + 1);
  }
  auto square = [N](const std::vector<__int128>& a) {
    std::vector<__int128> out(N + 1, 0);
    for (std::size_t i = 0; i <= N; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; i + j <= N; ++j) out[i + j] += a[i] * a[j];
    }
    return out;
  };
  auto e24 = square(square(square(e3)));
  std::vector<std::int64_t> out(N + 1);
  for (std::size_t i = 0; i <= N; ++i) {
    if (e24[i] > INT64_MAX || e24[i] < INT64_MIN) throw std::overflow_error("tau(n) exceeds 64 bits");
    out[i] = static_cast<std::int64_t>(e24[i]);
  }
  return out;
}

struct CoefficientCache {
  std::shared_mutex mutex;
  std::map<std::pair<int, int>, std::vector<double>> tables;
};

CoefficientCache& coefficient_cache() {
  static CoefficientCache cache;
  return cache;
}

}  // namespace

mpz_class sigma(int k, std::int64_t n) {
  if (n < 1) throw DomainError("sigma needs n >= 1");
  mpz_class total = 0, pw;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
    total += pw;
    const std::int64_t e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(k));
      total += pw;
    }
  }
  return total;
}

Rational eisenstein_coeff(int weight, std::int64_t n) {
  check_eisenstein_weight(weight);
  if (n < 0) throw DomainError("negative Fourier index");
  if (n == 0) return Rational(-bernoulli(weight) / (2 * weight));
  return Rational(sigma(weight - 1, n));
}

std::int64_t delta_coeff(std::int64_t n) {
  if (n < 1) throw DomainError("tau(n) needs n >= 1");
  static std::shared_mutex mutex;
  static std::vector<std::int64_t> table;
  {
    std::shared_lock lock(mutex);
    if (static_cast<std::size_t>(n) <= table.size()) return table[n - 1];
  }
  std::unique_lock lock(mutex);
  if (static_cast<std::size_t>(n) > table.size()) {
    std::size_t N = std::max<std::size_t>(64, table.size());
    while (N < static_cast<std::size_t>(n)) N *= 2;
    table = eta24_coeffs(N - 1);
  }
  return table[n - 1];
}

ModularFormSpec ModularFormSpec::eisenstein(int weight) {
  check_eisenstein_weight(weight);
  return {FormKind::eisenstein, weight};
}

ModularFormSpec ModularFormSpec::cusp_delta() { return {FormKind::cusp_delta, 12}; }

ModularFormSpec ModularFormSpec::eisenstein_gamma02(int weight) {
  check_eisenstein_weight(weight);
  return {FormKind::eisenstein_gamma02, weight};
}

ModularFormSpec ModularFormSpec::parse(const std::string& name) {
  if (name == "Delta" || name == "D12" || name == "Δ") return cusp_delta();
  if (name.size() >= 2 && name[0] == 'E') {
    std::string body = name.substr(1);
    bool gamma02 = false;
    if (auto pos = body.find('_'); pos != std::string::npos) {
      if (body.substr(pos + 1) != "2") throw DomainError("unknown form '" + name + "'");
      gamma02 = true;
      body = body.substr(0, pos);
    }
    if (body.empty() || body.find_first_not_of("0123456789") != std::string::npos)
      throw DomainError("unknown form '" + name + "'");
    const int w = std::stoi(body);
    return gamma02 ? eisenstein_gamma02(w) : eisenstein(w);
  }
  throw DomainError("unknown form '" + name + "'");
}

std::string ModularFormSpec::name() const {
  switch (kind_) {
    case FormKind::eisenstein:
      return "E" + std::to_string(weight_);
    case FormKind::cusp_delta:
      return "Delta";
    case FormKind::eisenstein_gamma02:
      return "E" + std::to_string(weight_) + "_2";
  }
  return "?";
}

Rational ModularFormSpec::coefficient(std::int64_t n) const {
  if (n < 0) throw DomainError("negative Fourier index");
  switch (kind_) {
    case FormKind::eisenstein:
      return eisenstein_coeff(weight_, n);
    case FormKind::cusp_delta:
      return n == 0 ? Rational(0) : make_rational(delta_coeff(n));
    case FormKind::eisenstein_gamma02:
      if (n == 0) return eisenstein_coeff(weight_, 0);
      if (n % 2 != 0) return Rational(0);
      return eisenstein_coeff(weight_, n / 2);
  }
  return Rational(0);
}

double ModularFormSpec::coefficient_d(std::int64_t n) const {
  auto& cache = coefficient_cache();
  const std::pair<int, int> key{static_cast<int>(kind_), weight_};
  {
    std::shared_lock lock(cache.mutex);
    auto it = cache.tables.find(key);
    if (it != cache.tables.end() && static_cast<std::size_t>(n) < it->second.size()) return it->second[n];
  }
  std::size_t size = 64;
  while (size <= static_cast<std::size_t>(n)) size *= 2;
  std::vector<double> table(size);
  for (std::size_t i = 0; i < size; ++i) table[i] = coefficient(static_cast<std::int64_t>(i)).get_d();
  std::unique_lock lock(cache.mutex);
  auto& slot = cache.tables[key];
  if (slot.size() < table.size()) slot = std::move(table);
  return slot[n];
}

Complex dedekind_symbol_length1(const ModularFormSpec& f, std::int64_t p, std::int64_t q,
                                const Length1Options& opts) {
  if (!f.level_one()) throw DomainError("length-1 symbol formula needs a level-one form");
  require_coprime(p, q, true);
  if (p < 0) {
    p = -p;
    q = -q;
  }
  const int w = f.weight() - 2;
  const SL2 g = cusp_matrix(p, q);  // [[q, r], [p, s]]
  const double pd = static_cast<double>(p), qd = static_cast<double>(q);
  const Complex tau0 = opts.tau0.value_or(Complex(qd / pd, 1.0 / pd));
  if (tau0.imag() <= 0.0) throw DomainError("base point must lie in the upper half-plane");
  const Complex sigma0 = (static_cast<double>(g.d) * tau0 - static_cast<double>(g.b)) / (-pd * tau0 + qd);
  const Complex u = pd * tau0 - qd;  // p tau0 - q

  // P^{(j)}(tau0) for P(t) = (p t - q)^w
  std::vector<Complex> deriv(w + 1);
  for (int j = 0; j <= w; ++j) {
    double c = 1.0;
    for (int i = 0; i < j; ++i) c *= (w - i);
    deriv[j] = c * std::pow(pd, j) * std::pow(u, w - j);
  }

  const double ymin = std::min(tau0.imag(), sigma0.imag());
  const int n_peak = static_cast<int>((w + 2) / (2.0 * kPi * ymin)) + 1;
  Complex sum = 0.0;
  int quiet = 0;
  bool converged = false;
  for (int n = 1; n <= opts.max_terms; ++n) {
    const double an = f.coefficient_d(n);
    const Complex c = 2.0 * kPi * kI * static_cast<double>(n);
    // int_{tau0}^{i inf} e^{c t} P(t) dt = -e^{c tau0} sum_j (-1)^j P^{(j)}(tau0)/c^{j+1}
    Complex inner = 0.0, cpow = c;
    for (int j = 0; j <= w; ++j) {
      inner += (j % 2 == 0 ? 1.0 : -1.0) * deriv[j] / cpow;
      cpow *= c;
    }
    const Complex first = -an * std::exp(c * tau0) * inner;
    // second integral after tau = gamma(sigma): int_{i inf}^{sigma0} (f - a0) d sigma
    const Complex second = an * std::exp(c * sigma0) / c;
    sum += first + second;
    const double mag = std::abs(first) + std::abs(second);
    if (n > n_peak && mag < 1e-3 * opts.tol * std::max(1.0, std::abs(sum))) {
      if (++quiet >= 3) {
        converged = true;
        break;
      }
    } else {
      quiet = 0;
    }
  }
  if (!converged) throw NonConvergence("Fourier sum for the length-1 symbol hit the term cap");
  const double a0 = f.constant_term().get_d();
  if (a0 != 0.0) sum -= a0 * (std::pow(u, w + 1) / ((w + 1) * pd) + 1.0 / (pd * u));
  return sum;
}

ReciprocityLawCheck reciprocity_law_check(int weight, std::int64_t p) {
  check_eisenstein_weight(weight);
  if (p < 2) throw DomainError("reciprocity law needs p >= 2");
  const int k2 = weight;
  ReciprocityLawCheck out;
  for (std::int64_t n = 1; n < p; ++n)
    out.lhs += static_cast<double>(n) * polylog(k2 - 1, root_of_unity(n, p));

  const Complex c = std::pow(2.0 * kPi * kI, k2 - 1);
  const double pd = static_cast<double>(p);
  Complex bsum = 0.0;
  for (int n = -1; n <= k2 - 1; n += 2) {
    const Rational coef = bernoulli(n + 1) * bernoulli(k2 - n - 1) / (factorial(n + 1) * factorial(k2 - n - 1));
    bsum += coef.get_d() * std::pow(pd, 1 - n);
  }
  const Rational tail = bernoulli(k2) / (Rational(2 * k2) * factorial(k2 - 2));
  out.rhs = -c / 2.0 * bsum - c * tail.get_d() * std::pow(pd, 2 - k2) +
            zeta(k2 - 1) / 2.0 * (std::pow(pd, 3 - k2) - pd);
  out.discrepancy = std::abs(out.lhs - out.rhs);
  return out;
}

Complex eisenstein_L(int weight, int s) {
  check_eisenstein_weight(weight);
  if (s < 1) throw DomainError("L-value argument must be >= 1");
  if (s == weight) throw DomainError("L(E, 2k) sits on the pole of zeta(s - 2k + 1)");
  if (s == 1) {
    // zeta(s) ~ 1/(s-1) against the trivial zero of zeta(s-2k+1): limit is zeta'(2-2k).
    const int m = weight / 2 - 1;
    const double sign = m % 2 == 0 ? 1.0 : -1.0;
    return sign * factorial(2 * m).get_d() * zeta(2 * m + 1) / (2.0 * std::pow(2.0 * kPi, 2 * m));
  }
  return zeta(s) * zeta(s - weight + 1);
}

Complex eisenstein_L_gamma02(int weight, int s) { return std::pow(2.0, -s) * eisenstein_L(weight, s); }

S2S3 s2_s3(int a, int b, std::int64_t p, std::int64_t q) {
  if (a < 2 || b < 2) throw DomainError("s2_s3 needs a, b >= 2");
  if (p < 1) throw DomainError("s2_s3 needs p >= 1");
  require_coprime(p, q, false);
  const int n = 2 * a + 2 * b - 2;
  const double pd = static_cast<double>(p);
  const double gam = factorial(n - 1).get_d() / std::pow(2.0 * kPi, n);
  const double sign = (a + b) % 2 == 0 ? 1.0 : -1.0;
  Complex sa = 0.0, sb = 0.0;
  for (std::int64_t l = 1; l <= p; ++l) {
    const Complex li = polylog(n, root_of_unity(l * q, p));
    const double t = static_cast<double>(l) / pd;
    sa += hurwitz_zeta(2 * a - 1, t) * li;
    sb += hurwitz_zeta(2 * b - 1, t) * li;
  }
  const double ca = sign * Rational(bernoulli(2 * a) / (4 * a * (2 * a - 1))).get_d() * std::pow(pd, 2 * b - 3) * gam;
  const double cb = sign * Rational(bernoulli(2 * b) / (4 * b * (2 * b - 1))).get_d() * std::pow(pd, 2 * a - 3) * gam;
  return {ca * sa, cb * sb};
}

double ZetaMultiple::value() const { return coefficient.get_d() * zeta(zeta_arg); }

ZetaMultiple gamma02_delta(int weight, std::int64_t p, std::int64_t q) {
  check_eisenstein_weight(weight);
  require_coprime(p, q, true);
  const std::int64_t ap = p < 0 ? -p : p;
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(ap), static_cast<unsigned long>(weight - 2));
  Rational coef(1);
  if (ap % 2 == 0) {
    mpz_class two;
    mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(weight - 1));
    coef = Rational(two);
  }
  coef /= Rational(den);
  return {coef, weight - 1};
}

Complex gamma02_delta_sum(int weight, std::int64_t p, std::int64_t q, int terms) {
  check_eisenstein_weight(weight);
  require_coprime(p, q, true);
  const std::int64_t ap = p < 0 ? -p : p;
  const std::int64_t qq = p < 0 ? -q : q;
  Complex total = 0.0;
  for (std::int64_t l = 1; l <= ap; ++l)
    for (std::int64_t m = 1; m <= terms; ++m)
      total += root_of_unity(2 * m * l * qq, ap) / std::pow(static_cast<double>(m), weight - 1);
  return total;
}

Complex gamma02_D(int weight, std::int64_t p, std::int64_t q) {
  check_eisenstein_weight(weight);
  require_coprime(p, q, true);
  const std::int64_t ap = p < 0 ? -p : p;
  const std::int64_t qq = p < 0 ? -q : q;  // keeps the ratio q/p
  const int k2 = weight;
  Complex bracket = 0.0;
  for (std::int64_t l = 1; l < ap; ++l)
    bracket += static_cast<double>(l) / static_cast<double>(ap) * polylog(k2 - 1, root_of_unity(2 * l * qq, ap));
  bracket += zeta(k2 - 1) - 0.5 * gamma02_delta(weight, p, q).value();
  const Complex pre = std::pow(static_cast<double>(ap), k2 - 2) * factorial(k2 - 2).get_d() /
                      std::pow(4.0 * kPi * kI, k2 - 1);
  return pre * bracket;
}

Complex gamma02_F(int weight, std::int64_t p, std::int64_t q) {
  check_eisenstein_weight(weight);
  require_coprime(p, q, true);
  const int k2 = weight;
  const double pd = static_cast<double>(p), qd = static_cast<double>(q);
  Complex total = 0.0;
  for (int r = 0; r <= k2 - 2; ++r) {
    const Complex ipow = std::pow(kI, 1 - r);
    total += ipow * binomial(k2 - 2, r).get_d() * std::pow(2.0, -r - 1) * eisenstein_L(weight, r + 1) *
             std::pow(pd, r) * std::pow(qd, k2 - 2 - r);
  }
  const double b = bernoulli(k2).get_d();
  total -= b / (2.0 * k2 * (k2 - 1)) * (std::pow(qd, k2 - 1) / pd + std::pow(pd, k2 - 1) / qd);
  total -= b / (2.0 * k2) / (pd * qd);
  return total;
}

}  // namespace mdsym
