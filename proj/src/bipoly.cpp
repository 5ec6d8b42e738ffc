#include "mdsym/bipoly.hpp"

#include <cmath>
#include <vector>

#include "mdsym/series.hpp"

namespace mdsym {

BiPoly BiPoly::monomial(int i, int j, Complex c) {
  BiPoly out;
  out.add(i, j, c);
  return out;
}

Complex BiPoly::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void BiPoly::add(int i, int j, Complex c) {
  if (i < 0 || j < 0) throw DomainError("BiPoly exponents must be nonnegative");
  if (c == Complex(0.0)) return;
  auto [it, fresh] = terms_.try_emplace({i, j}, c);
  if (!fresh) {
    it->second += c;
    if (it->second == Complex(0.0)) terms_.erase(it);
  }
}

double BiPoly::max_abs() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

Complex BiPoly::operator()(Complex x, Complex y) const {
  Complex s = 0.0;
  for (const auto& [e, c] : terms_) s += c * std::pow(x, e.first) * std::pow(y, e.second);
  return s;
}

BiPoly BiPoly::pullback(const SL2& g) const {
  const BiPoly nx = monomial(1, 0, static_cast<double>(g.a)) + monomial(0, 1, static_cast<double>(g.b));
  const BiPoly ny = monomial(1, 0, static_cast<double>(g.c)) + monomial(0, 1, static_cast<double>(g.d));
  std::vector<BiPoly> xp{BiPoly(1.0)}, yp{BiPoly(1.0)};
  BiPoly out;
  for (const auto& [e, c] : terms_) {
    while (static_cast<int>(xp.size()) <= e.first) xp.push_back(xp.back() * nx);
    while (static_cast<int>(yp.size()) <= e.second) yp.push_back(yp.back() * ny);
    out += xp[e.first] * yp[e.second] * BiPoly(c);
  }
  return out;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  for (const auto& [e, c] : o.terms_) add(e.first, e.second, c);
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
  for (const auto& [e, c] : o.terms_) add(e.first, e.second, -c);
  return *this;
}

BiPoly& BiPoly::operator*=(const BiPoly& o) {
  BiPoly out;
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) out.add(ea.first + eb.first, ea.second + eb.second, ca * cb);
  *this = std::move(out);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const BiPoly& p) {
  if (p.terms_.empty()) return os << "0";
  bool first = true;
  for (const auto& [e, c] : p.terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    if (e.first) os << "*X^" << e.first;
    if (e.second) os << "*Y^" << e.second;
  }
  return os;
}

template class TruncSeries<BiPoly>;

}  // namespace mdsym
