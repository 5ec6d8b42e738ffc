#include "mdsym/eichler.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <vector>

#include "mdsym/special.hpp"

namespace mdsym {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex kI(0.0, 1.0);

using Poly = std::vector<Complex>;  // ascending powers of the path variable

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

void poly_addto(Poly& acc, const Poly& p, Complex s) {
  if (s == Complex(0.0)) return;
  if (acc.size() < p.size()) acc.resize(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) acc[i] += s * p[i];
}

Poly poly_deriv(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * static_cast<double>(i);
  return out;
}

// Antiderivative vanishing at 0.
Poly poly_antideriv(const Poly& p) {
  Poly out(p.size() + 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) out[i + 1] = p[i] / static_cast<double>(i + 1);
  return out;
}

Complex poly_eval(const Poly& p, Complex t) {
  Complex s = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * t + *it;
  return s;
}

// (x0 - y t)^w.
Poly linear_power(Complex x0, Complex y, int w) {
  Poly out(w + 1);
  for (int k = 0; k <= w; ++k) out[k] = binomial(w, k).get_d() * std::pow(x0, w - k) * std::pow(-y, k);
  return out;
}

// Q with int_tau^{i inf} e^{ct} P(t) dt = e^{c tau} Q(tau).
Poly integrate_to_infinity(const Poly& p, Complex c) {
  Poly q;
  Poly d = p;
  Complex cpow = c;
  double sign = -1.0;
  while (!d.empty()) {
    poly_addto(q, d, sign / cpow);
    d = poly_deriv(d);
    cpow *= c;
    sign = -sign;
  }
  return q;
}

double series_magnitude(const CSeries& s) {
  double m = 0.0;
  for (const auto& [w, c] : s.terms()) m = std::max(m, std::abs(c));
  return m;
}

bool close(const CSeries& a, const CSeries& b, double tol) {
  return a.distance(b) <= tol * std::max(1.0, series_magnitude(b));
}

std::vector<double> form_coeffs(const ModularFormSpec& f, int m) {
  std::vector<double> a(m + 1);
  for (int n = 0; n <= m; ++n) a[n] = f.coefficient_d(n);
  return a;
}

Complex form_value(const ModularFormSpec& f, Complex tau, const IntegratorConfig& cfg) {
  const double y = tau.imag();
  if (!(y > 0.0)) throw DomainError("modular form evaluated off the upper half-plane");
  const Complex q = std::exp(kI * kTwoPi * tau);
  const double n_peak = (f.weight() + 1) / (kTwoPi * y);
  Complex sum = f.coefficient_d(0);
  Complex qn = 1.0;
  int quiet = 0;
  for (int n = 1; n <= cfg.max_fourier; ++n) {
    qn *= q;
    const double an = f.coefficient_d(n);
    sum += an * qn;
    const double bound = std::abs(an) * std::exp(-kTwoPi * n * y);
    if (n > n_peak && bound < 1e-3 * cfg.tol * std::max(1.0, std::abs(sum))) {
      if (++quiet >= 3) return sum;
    } else {
      quiet = 0;
    }
  }
  throw NonConvergence("Fourier series of " + f.name() + " did not converge within max_fourier terms");
}

// G(tau) = I(tau, i inf) at fixed (X, Y) as sums over N of e^{2 pi i N tau} P_N(tau),
// with all products truncated at total frequency M.
class FourierG {
 public:
  FourierG(const HAssignment& h, XYPoint xy, int trunc, int m) : alphabet_(h.alphabet_ptr()), trunc_(trunc), m_(m) {
    const auto& alpha = h.alphabet();
    std::map<Word, std::vector<double>> coeffs;
    std::map<Word, Poly> pw;
    auto prep = [&](const Word& b) -> const ModularFormSpec* {
      const auto* f = h.form(b);
      if (f && !coeffs.count(b)) {
        coeffs.emplace(b, form_coeffs(*f, m_));
        pw.emplace(b, linear_power(xy.first, xy.second, alpha.weight(b)));
      }
      return f;
    };
    for (const auto& w : alpha.words_up_to(trunc)) {
      const std::size_t len = w.length();
      std::vector<Poly> integrand(m_ + 1);
      for (std::size_t lb = 1; lb <= len; ++lb) {
        const Word b = w.slice(0, lb);
        if (!prep(b)) continue;
        const auto& a = coeffs.at(b);
        const auto& pb = pw.at(b);
        if (lb == len) {
          for (int n = 1; n <= m_; ++n) poly_addto(integrand[n], pb, a[n]);
          continue;
        }
        const auto& gv = g_.at(w.slice(lb, len - lb));
        for (int big = 1; big <= m_; ++big) {
          if (gv[big].empty()) continue;
          const Poly t = poly_mul(pb, gv[big]);
          for (int n = 1; n + big <= m_; ++n) poly_addto(integrand[n + big], t, a[n]);
          poly_addto(integrand[big], t, a[0]);
        }
      }
      for (std::size_t lb = 1; lb < len; ++lb) {
        const Word b = w.slice(len - lb, lb);
        if (!prep(b)) continue;
        const double a0 = coeffs.at(b)[0];
        if (a0 == 0.0) continue;
        const auto& gv = g_.at(w.slice(0, len - lb));
        for (int big = 1; big <= m_; ++big)
          if (!gv[big].empty()) poly_addto(integrand[big], poly_mul(pw.at(b), gv[big]), -a0);
      }
      std::vector<Poly> g(m_ + 1);
      for (int big = 1; big <= m_; ++big)
        if (!integrand[big].empty()) g[big] = integrate_to_infinity(integrand[big], kI * (kTwoPi * big));
      g_.emplace(w, std::move(g));
    }
  }

  CSeries eval(Complex tau) const {
    auto out = CSeries::one(alphabet_, trunc_);
    const Complex e = std::exp(kI * kTwoPi * tau);
    for (const auto& [w, g] : g_) {
      Complex s = 0.0, en = 1.0;
      for (int big = 1; big <= m_; ++big) {
        en *= e;
        if (!g[big].empty()) s += en * poly_eval(g[big], tau);
      }
      out.set(w, s);
    }
    return out;
  }

 private:
  AlphabetPtr alphabet_;
  int trunc_;
  int m_;
  std::map<Word, std::vector<Poly>> g_;
};

// Frequency cutoff grown until two cutoffs agree at tau.
FourierG make_g(const HAssignment& h, XYPoint xy, Complex tau, const IntegratorConfig& cfg) {
  const double y = tau.imag();
  if (!(y > 0.0)) throw DomainError("base point must lie in the upper half-plane");
  int m = static_cast<int>(std::ceil((std::log(1.0 / cfg.tol) + 2.0) / (kTwoPi * y))) + 2;
  if (m > cfg.max_fourier) throw NonConvergence("height too small for the Fourier budget");
  FourierG g(h, xy, cfg.trunc, m);
  CSeries v = g.eval(tau);
  while (true) {
    const int next = m + std::max(2, m / 2);
    if (next > cfg.max_fourier) throw NonConvergence("Fourier expansion of I(tau, i inf) did not settle");
    FourierG g2(h, xy, cfg.trunc, next);
    CSeries v2 = g2.eval(tau);
    if (close(v, v2, 0.1 * cfg.tol)) return g2;
    m = next;
    g = std::move(g2);
    v = std::move(v2);
  }
}

XYPoint act(const SL2& g, XYPoint xy) {
  return {static_cast<double>(g.a) * xy.first + static_cast<double>(g.b) * xy.second,
          static_cast<double>(g.c) * xy.first + static_cast<double>(g.d) * xy.second};
}

Complex act(const SL2& g, Complex tau) {
  return (static_cast<double>(g.a) * tau + static_cast<double>(g.b)) /
         (static_cast<double>(g.c) * tau + static_cast<double>(g.d));
}

CoprimePair normalized_point(std::int64_t p, std::int64_t q) {
  if (p < 0 || (p == 0 && q < 0)) return {-p, -q};
  return {p, q};
}

CoprimePair act(const SL2& g, CoprimePair pt) {
  return normalized_point(g.c * pt.q + g.d * pt.p, g.a * pt.q + g.b * pt.p);
}

double finite_value(CoprimePair pt) {
  if (pt.p == 0) throw DomainError("direction at infinity must be finite");
  return static_cast<double>(pt.q) / static_cast<double>(pt.p);
}

// Matrix sending infinity to the point.
SL2 frame_of(CoprimePair pt) {
  pt = normalized_point(pt.p, pt.q);
  if (pt.p == 0) return {};
  return cusp_matrix(pt.p, pt.q);
}

void check_point(CoprimePair pt) {
  if (pt.p == 0 && pt.q == 0) throw DomainError("(0,0) is not a point of P^1(Q)");
  if (gcd64(pt.p, pt.q) != 1) throw DomainError("point must be given by a coprime pair");
}

// G at tau, evaluated after the translation moving Re tau near 0.
CSeries g_at(const HAssignment& h, Complex tau, XYPoint xy, const IntegratorConfig& cfg) {
  const double m = std::round(tau.real());
  const XYPoint shifted{xy.first - m * xy.second, xy.second};
  const Complex t = tau - m;
  return make_g(h, shifted, t, cfg).eval(t);
}

// I(i, a + i) from the closed form on both ends.
CSeries horizontal_step(const HAssignment& h, std::int64_t a, XYPoint xy, const IntegratorConfig& cfg) {
  const CSeries g0 = g_at(h, kI, xy, cfg);
  const CSeries g1 = g_at(h, kI, {xy.first - static_cast<double>(a) * xy.second, xy.second}, cfg);
  return g0 * i_infinity(h, kI, static_cast<double>(a) + kI, xy, cfg.trunc) * inverse(g1);
}

// I(direction s at infinity, direction t at the finite cusp c).
CSeries chain_from_infinity(const HAssignment& h, CoprimePair s, CoprimePair c, CoprimePair t, XYPoint xy,
                            const IntegratorConfig& cfg) {
  const CFSeq cf = canonical(c.p, c.q);
  const std::int64_t a0 = cf[0];
  CSeries out = inverse(reg_to_cusp(h, static_cast<double>(a0) + kI, s, xy, cfg));
  SL2 m{a0, -1, 1, 0};
  for (std::size_t k = 1; k < cf.size(); ++k) {
    out = out * horizontal_step(h, cf[k], act(m.inverse(), xy), cfg);
    m = m * SL2{cf[k], -1, 1, 0};
  }
  if (m.a != c.q || m.c != c.p) throw DomainError("continued-fraction frame does not reach the cusp");
  const SL2 mi = m.inverse();
  return out * reg_to_cusp(h, kI, act(mi, t), act(mi, xy), cfg);
}

}  // namespace

HAssignment::HAssignment(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {
  if (!alphabet_) throw DomainError("assignment needs an alphabet");
}

HAssignment HAssignment::parse(const std::string& text) {
  std::vector<std::pair<std::string, ModularFormSpec>> entries;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw DomainError("form assignment '" + item + "' is not of the form LETTER=FORM");
    entries.emplace_back(item.substr(0, eq), ModularFormSpec::parse(item.substr(eq + 1)));
  }
  if (entries.empty()) throw DomainError("empty form assignment");
  std::vector<AlphabetSymbol> symbols;
  for (const auto& [lhs, f] : entries)
    if (lhs.find('.') == std::string::npos) symbols.push_back({lhs, f.weight() - 2});
  HAssignment h(make_alphabet(Alphabet(std::move(symbols))));
  for (const auto& [lhs, f] : entries) h.assign(h.alphabet().parse(lhs), f);
  return h;
}

void HAssignment::assign(const Word& w, const ModularFormSpec& f) {
  if (w.empty()) throw DomainError("forms are assigned to nonempty words");
  if (!alphabet_->contains(w)) throw AlphabetMismatch("word not over the assignment alphabet");
  if (!f.level_one()) throw DomainError(f.name() + " is not a level-one form");
  const int expected = alphabet_->weight(w) + 2;
  if (f.weight() != expected)
    throw DomainError("word " + alphabet_->format(w) + " needs a form of weight " + std::to_string(expected) +
                      ", got " + f.name());
  forms_.insert_or_assign(w, f);
}

const ModularFormSpec* HAssignment::form(const Word& w) const {
  auto it = forms_.find(w);
  return it == forms_.end() ? nullptr : &it->second;
}

bool HAssignment::cusp_only() const {
  return std::all_of(forms_.begin(), forms_.end(), [](const auto& kv) { return kv.second.coefficient_d(0) == 0.0; });
}

TangentialBasePoint TangentialBasePoint::make(CoprimePair base, CoprimePair direction) {
  check_point(base);
  check_point(direction);
  base = normalized_point(base.p, base.q);
  direction = normalized_point(direction.p, direction.q);
  if (base == direction) throw DomainError("tangential base point needs direction != base");
  return {base, direction};
}

void IntegratorConfig::validate() const {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (trunc < 1) throw DomainError("truncation length must be >= 1");
  if (!(height0 > 0.0) || height_cap < height0) throw DomainError("bad regularization height schedule");
  if (nodes < 2 || max_panels < 1 || max_fourier < 1) throw DomainError("bad quadrature budget");
}

CSeries omega(const HAssignment& h, Complex tau, XYPoint xy, const IntegratorConfig& cfg) {
  CSeries out(h.alphabet_ptr(), cfg.trunc);
  for (const auto& [b, f] : h.forms()) {
    if (static_cast<int>(b.length()) > cfg.trunc) continue;
    out.set(b, form_value(f, tau, cfg) * std::pow(xy.first - xy.second * tau, h.alphabet().weight(b)));
  }
  return out;
}

CSeries omega_inf(const HAssignment& h, Complex tau, XYPoint xy, int trunc) {
  CSeries out(h.alphabet_ptr(), trunc);
  for (const auto& [b, f] : h.forms()) {
    if (static_cast<int>(b.length()) > trunc) continue;
    out.set(b, f.coefficient_d(0) * std::pow(xy.first - xy.second * tau, h.alphabet().weight(b)));
  }
  return out;
}

CSeries i_infinity(const HAssignment& h, Complex tau0, Complex tau1, XYPoint xy, int trunc) {
  // Iterated antiderivatives in u = t - tau0.
  const auto& alpha = h.alphabet();
  const Complex x0 = xy.first - xy.second * tau0;
  const Complex du = tau1 - tau0;
  std::map<Word, Poly> j;
  j.emplace(Word{}, Poly{1.0});
  auto out = CSeries::one(h.alphabet_ptr(), trunc);
  for (const auto& w : alpha.words_up_to(trunc)) {
    const std::size_t len = w.length();
    Poly acc;
    for (std::size_t lb = 1; lb <= len; ++lb) {
      const Word b = w.slice(len - lb, lb);
      const auto* f = h.form(b);
      if (!f) continue;
      const double a0 = f->coefficient_d(0);
      if (a0 == 0.0) continue;
      const auto& jv = j.at(w.slice(0, len - lb));
      if (jv.empty()) continue;
      poly_addto(acc, poly_antideriv(poly_mul(jv, linear_power(x0, xy.second, alpha.weight(b)))), a0);
    }
    out.set(w, poly_eval(acc, du));
    j.emplace(w, std::move(acc));
  }
  return out;
}

namespace {

struct Legendre {
  std::vector<double> x, w;
  std::vector<std::vector<double>> q;  // q[i][j] = int_{-1}^{x_i} l_j
};

const Legendre& legendre(int n) {
  static std::mutex mu;
  static std::map<int, Legendre> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // P_0..P_n at x.
  auto eval = [n](double x) {
    std::vector<double> p(n + 2);
    p[0] = 1.0;
    p[1] = x;
    for (int k = 1; k <= n; ++k) p[k + 1] = ((2.0 * k + 1.0) * x * p[k] - k * p[k - 1]) / (k + 1.0);
    return p;
  };
  Legendre L;
  L.x.resize(n);
  L.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it2 = 0; it2 < 100; ++it2) {
      const auto p = eval(x);
      const double dp = n * (x * p[n] - p[n - 1]) / (x * x - 1.0);
      const double dx = p[n] / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const auto p = eval(x);
    const double dp = n * (x * p[n] - p[n - 1]) / (x * x - 1.0);
    L.x[i] = x;
    L.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  L.q.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    const auto pi = eval(L.x[i]);
    std::vector<double> ip(n);
    ip[0] = L.x[i] + 1.0;
    for (int k = 1; k < n; ++k) ip[k] = (pi[k + 1] - pi[k - 1]) / (2.0 * k + 1.0);
    for (int j2 = 0; j2 < n; ++j2) {
      const auto pj = eval(L.x[j2]);
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += (2.0 * k + 1.0) / 2.0 * pj[k] * ip[k];
      L.q[i][j2] = L.w[j2] * s;
    }
  }
  return cache.emplace(n, std::move(L)).first->second;
}

}  // namespace

CSeries i_numeric(const HAssignment& h, Complex tau0, Complex tau1, XYPoint xy, const IntegratorConfig& cfg) {
  cfg.validate();
  if (!(tau0.imag() > 0.0) || !(tau1.imag() > 0.0)) throw DomainError("i_numeric endpoints must lie in the upper half-plane");
  const auto& alpha = h.alphabet();
  const auto words = alpha.words_up_to(cfg.trunc);
  const Legendre& gl = legendre(cfg.nodes);
  const int n = cfg.nodes;
  const Complex span = tau1 - tau0;

  auto panel = [&](double t0, double t1) {
    const Complex scale = span * ((t1 - t0) / 2.0);
    std::map<Word, std::vector<Complex>> vals;
    for (int k = 0; k < n; ++k) {
      const Complex tau = tau0 + span * (t0 + (t1 - t0) * (gl.x[k] + 1.0) / 2.0);
      const CSeries om = omega(h, tau, xy, cfg);
      for (const auto& [b, c] : om.terms()) {
        auto& v = vals[b];
        v.resize(n, 0.0);
        v[k] = c * scale;
      }
    }
    std::map<Word, std::vector<Complex>> j;
    j.emplace(Word{}, std::vector<Complex>(n, 1.0));
    auto out = CSeries::one(h.alphabet_ptr(), cfg.trunc);
    for (const auto& w : words) {
      const std::size_t len = w.length();
      std::vector<Complex> jw(n, 0.0);
      Complex total = 0.0;
      for (std::size_t lb = 1; lb <= len; ++lb) {
        auto vb = vals.find(w.slice(len - lb, lb));
        if (vb == vals.end()) continue;
        const auto& jv = j.at(w.slice(0, len - lb));
        std::vector<Complex> f(n);
        for (int k = 0; k < n; ++k) f[k] = jv[k] * vb->second[k];
        for (int k = 0; k < n; ++k) {
          total += gl.w[k] * f[k];
          for (int k2 = 0; k2 < n; ++k2) jw[k] += gl.q[k][k2] * f[k2];
        }
      }
      out.set(w, total);
      j.emplace(w, std::move(jw));
    }
    return out;
  };

  struct Piece {
    double t0, t1;
    CSeries value;
  };
  auto result = CSeries::one(h.alphabet_ptr(), cfg.trunc);
  if (tau0 == tau1) return result;
  std::vector<Piece> stack{{0.0, 1.0, panel(0.0, 1.0)}};
  int panels = 1;
  while (!stack.empty()) {
    Piece pc = std::move(stack.back());
    stack.pop_back();
    const double mid = 0.5 * (pc.t0 + pc.t1);
    CSeries left = panel(pc.t0, mid);
    CSeries right = panel(mid, pc.t1);
    panels += 2;
    CSeries both = left * right;
    if (close(pc.value, both, cfg.tol)) {
      result = result * both;
      continue;
    }
    if (panels > cfg.max_panels) throw NonConvergence("i_numeric exceeded its panel budget");
    stack.push_back({mid, pc.t1, std::move(right)});
    stack.push_back({pc.t0, mid, std::move(left)});
  }
  return result;
}

CSeries i_to_infinity(const HAssignment& h, Complex tau, XYPoint xy, const IntegratorConfig& cfg) {
  cfg.validate();
  return g_at(h, tau, xy, cfg);
}

CSeries reg_to_cusp(const HAssignment& h, Complex tau, CoprimePair s, XYPoint xy, const IntegratorConfig& cfg) {
  cfg.validate();
  check_point(s);
  // Translate so that Re tau is near 0; directions and (X, Y) move with it.
  const double m = std::round(tau.real());
  const XYPoint sxy{xy.first - m * xy.second, xy.second};
  const Complex t = tau - m;
  const double sv = finite_value(s) - m;
  const FourierG g = make_g(h, sxy, t, cfg);
  const CSeries g0 = g.eval(t);
  const CSeries base = i_infinity(h, t, sv, sxy, cfg.trunc);
  const auto one = CSeries::one(h.alphabet_ptr(), cfg.trunc);
  // I(t, eps) I^inf(eps, s) written as G(t)(I^inf(t, s) + C) so that no large terms cancel.
  auto at_height = [&](double height) {
    const Complex eps(t.real(), height);
    const CSeries corr = i_infinity(h, t, eps, sxy, cfg.trunc) * (inverse(g.eval(eps)) - one) *
                         i_infinity(h, eps, sv, sxy, cfg.trunc);
    return g0 * (base + corr);
  };
  double height = std::max(cfg.height0, 2.0 * t.imag());
  CSeries prev = at_height(height);
  while (2.0 * height <= cfg.height_cap) {
    height *= 2.0;
    CSeries next = at_height(height);
    if (close(prev, next, cfg.tol)) return next;
    prev = std::move(next);
  }
  throw NonConvergence("regularization did not settle below the height cap");
}

PSeries pullback(const SL2& g, const PSeries& s) {
  return s.map_coeffs([&](const BiPoly& c) { return c.pullback(g); });
}

CSeries pullback(const SL2&, const CSeries&) {
  throw DomainError("pullback needs symbolic (polynomial) coefficients");
}

CSeries full_integral(const HAssignment& h, const TangentialBasePoint& tb0, const TangentialBasePoint& tb1,
                      XYPoint xy, const IntegratorConfig& cfg) {
  cfg.validate();
  const SL2 gi = frame_of(tb0.base).inverse();
  const CoprimePair d0 = act(gi, tb0.direction);
  const CoprimePair c1 = act(gi, tb1.base);
  const CoprimePair d1 = act(gi, tb1.direction);
  const XYPoint gxy = act(gi, xy);
  if (c1.p == 0) return i_infinity(h, finite_value(d0), finite_value(d1), gxy, cfg.trunc);
  return chain_from_infinity(h, d0, c1, d1, gxy, cfg);
}

CSeries integral_to(const HAssignment& h, Complex tau, const TangentialBasePoint& tb, XYPoint xy,
                    const IntegratorConfig& cfg) {
  const SL2 gi = frame_of(tb.base).inverse();
  return reg_to_cusp(h, act(gi, tau), act(gi, tb.direction), act(gi, xy), cfg);
}

CSeries integral_from(const HAssignment& h, const TangentialBasePoint& tb, Complex tau, XYPoint xy,
                      const IntegratorConfig& cfg) {
  return inverse(integral_to(h, tau, tb, xy, cfg));
}

CSeries full_integral_via(const HAssignment& h, const TangentialBasePoint& tb0, Complex tau1,
                          const TangentialBasePoint& tb1, XYPoint xy, const IntegratorConfig& cfg) {
  return integral_from(h, tb0, tau1, xy, cfg) * integral_to(h, tau1, tb1, xy, cfg);
}

PSeries interpolate_symbolic(const std::function<CSeries(XYPoint)>& numeric, const AlphabetPtr& alphabet,
                             int trunc) {
  const auto words = alphabet->words_up_to(trunc);
  int deg = 0;
  for (const auto& w : words) deg = std::max(deg, alphabet->weight(w));
  const int npts = deg + 1;
  std::vector<Complex> ys(npts);
  std::vector<CSeries> vals;
  for (int j = 0; j < npts; ++j) {
    ys[j] = std::polar(1.0, kTwoPi * j / npts);
    vals.push_back(numeric({1.0, ys[j]}));
  }
  auto out = PSeries::one(alphabet, trunc);
  for (const auto& w : words) {
    const int d = alphabet->weight(w);
    BiPoly poly;
    for (int k = 0; k <= d; ++k) {
      Complex c = 0.0;
      for (int j = 0; j < npts; ++j) c += vals[j].coeff(w) * std::pow(std::conj(ys[j]), k);
      poly.add(d - k, k, c / static_cast<double>(npts));
    }
    out.set(w, poly);
  }
  return out;
}

namespace {

// Samples sit on |Y/X| = 1 and the interpolant is evaluated far from it, so sampling noise
// is amplified by up to |Y/X|^degree.
IntegratorConfig sampling_config(const IntegratorConfig& cfg) {
  IntegratorConfig out = cfg;
  out.tol = std::min(cfg.tol, 1e-14);
  return out;
}

}  // namespace

PSeries full_integral_symbolic(const HAssignment& h, const TangentialBasePoint& tb0, const TangentialBasePoint& tb1,
                               const IntegratorConfig& cfg) {
  const IntegratorConfig sc = sampling_config(cfg);
  return interpolate_symbolic([&](XYPoint xy) { return full_integral(h, tb0, tb1, xy, sc); }, h.alphabet_ptr(),
                              cfg.trunc);
}

PSeries integral_to_symbolic(const HAssignment& h, Complex tau, const TangentialBasePoint& tb,
                             const IntegratorConfig& cfg) {
  const IntegratorConfig sc = sampling_config(cfg);
  return interpolate_symbolic([&](XYPoint xy) { return integral_to(h, tau, tb, xy, sc); }, h.alphabet_ptr(),
                              cfg.trunc);
}

CSeries evaluate_at(const PSeries& s, XYPoint xy) {
  return s.map_coeffs([&](const BiPoly& c) { return c(xy.first, xy.second); });
}

CSeries build_D(const HAssignment& h, std::int64_t p, std::int64_t q, const IntegratorConfig& cfg) {
  require_coprime(p, q, true);
  const CoprimePair c = normalized_point(p, q);
  const XYPoint xy{static_cast<double>(q), static_cast<double>(p)};
  return full_integral(h, TangentialBasePoint::make(infinity_point(), c), TangentialBasePoint::make(c, infinity_point()),
                       xy, cfg);
}

CSeries build_F(const HAssignment& h, std::int64_t p, std::int64_t q, const IntegratorConfig& cfg) {
  require_coprime(p, q, true);
  const CoprimePair c = normalized_point(p, q);
  const XYPoint xy{static_cast<double>(q), static_cast<double>(p)};
  return full_integral(h, TangentialBasePoint::make(infinity_point(), c),
                       TangentialBasePoint::make(rational_point(0, 1), c), xy, cfg);
}

CSeries build_E(const HAssignment& h, std::int64_t p, std::int64_t q, int trunc) {
  require_coprime(p, q, true);
  CSeries x(h.alphabet_ptr(), trunc);
  const double pq = static_cast<double>(p) * static_cast<double>(q);
  for (const auto& [b, f] : h.forms()) x.set(b, f.coefficient_d(0) / pq);
  return exp(x);
}

SymbolFn<Complex> eichler_symbol(const HAssignment& h, const IntegratorConfig& cfg, Memo memo) {
  return SymbolFn<Complex>(
      h.alphabet_ptr(), cfg.trunc, [h, cfg](std::int64_t p, std::int64_t q) { return build_D(h, p, q, cfg); },
      {true, false, memo});
}

RecipFn<Complex> eichler_reciprocity(const HAssignment& h, const IntegratorConfig& cfg) {
  return RecipFn<Complex>(
      h.alphabet_ptr(), cfg.trunc, [h, cfg](std::int64_t p, std::int64_t q) { return build_F(h, p, q, cfg); },
      {true, false, Memo::none});
}

}  // namespace mdsym
