#include "mdsym/laurent.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>

#include "mdsym/errors.hpp"
#include "mdsym/special.hpp"

namespace mdsym {

namespace {

std::string monomial_name(int i, int j) {
  std::string s;
  auto part = [&](char v, int e) {
    if (e == 0) return;
    if (!s.empty()) s += "*";
    s += v;
    if (e != 1) s += "^" + std::to_string(e);
  };
  part('p', i);
  part('q', j);
  return s.empty() ? "1" : s;
}

// (x + y)^e as a coefficient list over k: C(e,k) x^{e-k} y^k.
template <typename Emit>
void expand_binomial(int e, Emit emit) {
  for (int k = 0; k <= e; ++k) emit(k, binomial(e, k).get_d());
}

}  // namespace

LaurentPoly LaurentPoly::monomial(int i, int j, Complex c) {
  LaurentPoly out;
  out.add(i, j, c);
  return out;
}

Complex LaurentPoly::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void LaurentPoly::add(int i, int j, Complex c) {
  if (c == Complex(0.0)) return;
  auto [it, fresh] = terms_.try_emplace({i, j}, c);
  if (!fresh) {
    it->second += c;
    if (it->second == Complex(0.0)) terms_.erase(it);
  }
}

Complex LaurentPoly::operator()(double p, double q) const {
  Complex s = 0.0;
  for (const auto& [e, c] : terms_) s += c * std::pow(p, e.first) * std::pow(q, e.second);
  return s;
}

std::set<int> LaurentPoly::degrees() const {
  std::set<int> out;
  for (const auto& [e, c] : terms_) out.insert(e.first + e.second);
  return out;
}

LaurentPoly LaurentPoly::sub_rotate() const {
  // p^i q^j -> (-q)^i p^j
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.add(e.second, e.first, (e.first % 2 == 0) ? c : -c);
  return out;
}

LaurentPoly LaurentPoly::sub_negate_p() const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.add(e.first, e.second, (e.first % 2 == 0) ? c : -c);
  return out;
}

LaurentPoly LaurentPoly::sub_shift_q() const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) {
    if (e.second < 0) throw DomainError("(p,q) -> (p,p+q) needs a nonnegative q exponent");
    // p^i (p+q)^j
    expand_binomial(e.second, [&](int k, double b) { out.add(e.first + e.second - k, k, b * c); });
  }
  return out;
}

LaurentPoly LaurentPoly::sub_shift_p() const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) {
    if (e.first < 0) throw DomainError("(p,q) -> (p+q,q) needs a nonnegative p exponent");
    // (p+q)^i q^j
    expand_binomial(e.first, [&](int k, double b) { out.add(e.first - k, e.second + k, b * c); });
  }
  return out;
}

LaurentPoly LaurentPoly::pruned(double tol) const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_)
    if (std::abs(c) > tol) out.terms_.emplace(e, c);
  return out;
}

double LaurentPoly::distance(const LaurentPoly& other) const {
  double worst = 0.0;
  for (const auto& [e, c] : (*this - other).terms_) worst = std::max(worst, std::abs(c));
  return worst;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add(e.first, e.second, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add(e.first, e.second, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add(ea.first + eb.first, ea.second + eb.second, ca * cb);
  return out;
}

std::string LaurentPoly::to_string(int digits) const {
  if (terms_.empty()) return "0";
  std::string out;
  char buf[96];
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::snprintf(buf, sizeof buf, "(%.*g%+.*gi)", digits, c.real(), digits, c.imag());
    out += buf;
    if (e.first != 0 || e.second != 0) out += "*" + monomial_name(e.first, e.second);
  }
  return out;
}

std::vector<LaurentPoly::Exponent> ExponentBox::monomials() const {
  std::vector<LaurentPoly::Exponent> out;
  for (int i = i_min; i <= i_max; ++i)
    for (int j = j_min; j <= j_max; ++j)
      if (!degrees || degrees->count(i + j)) out.emplace_back(i, j);
  return out;
}

LaurentFit laurent_fit(const std::vector<LaurentSample>& samples, const ExponentBox& box, double rank_tol) {
  const auto mons = box.monomials();
  const auto n = static_cast<Eigen::Index>(mons.size());
  const auto m = static_cast<Eigen::Index>(samples.size());
  if (n == 0) throw DomainError("empty exponent box");
  if (m < n) throw DomainError("laurent_fit needs at least as many samples as monomials");

  Eigen::MatrixXd A(m, n);
  Eigen::MatrixXcd b(m, 1);
  for (Eigen::Index r = 0; r < m; ++r) {
    const auto& [pq, v] = samples[r];
    if (pq.p == 0 || pq.q == 0) throw DomainError("laurent_fit samples need pq != 0");
    for (Eigen::Index c = 0; c < n; ++c)
      A(r, c) = std::pow(static_cast<double>(pq.p), mons[c].first) * std::pow(static_cast<double>(pq.q), mons[c].second);
    b(r, 0) = v;
  }
  Eigen::VectorXd scale = A.colwise().norm().transpose();
  for (Eigen::Index c = 0; c < n; ++c) A.col(c) /= scale(c);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(rank_tol);
  if (qr.rank() < n) {
    std::string names;
    const auto& idx = qr.colsPermutation().indices();
    for (Eigen::Index k = qr.rank(); k < n; ++k)
      names += (names.empty() ? "" : ", ") + monomial_name(mons[idx(k)].first, mons[idx(k)].second);
    throw RankDeficient("laurent_fit is rank deficient in: " + names);
  }
  const Eigen::VectorXd xr = qr.solve(b.real().col(0));
  const Eigen::VectorXd xi = qr.solve(b.imag().col(0));

  LaurentFit out;
  for (Eigen::Index c = 0; c < n; ++c)
    out.poly.add(mons[c].first, mons[c].second, Complex(xr(c), xi(c)) / scale(c));
  for (const auto& [pq, v] : samples)
    out.residual = std::max(out.residual, std::abs(out.poly(static_cast<double>(pq.p), static_cast<double>(pq.q)) - v));
  return out;
}

}  // namespace mdsym
