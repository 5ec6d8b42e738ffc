#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>

#include "mdsym/bipoly.hpp"
#include "mdsym/contfrac.hpp"
#include "mdsym/modforms.hpp"
#include "mdsym/series.hpp"
#include "mdsym/symbols.hpp"

namespace mdsym {

using PSeries = TruncSeries<BiPoly>;
// Point (X, Y) at which polynomial coefficients are evaluated.
using XYPoint = std::pair<Complex, Complex>;

// Modular forms attached to nonempty words; unassigned words carry the zero form.
class HAssignment {
 public:
  explicit HAssignment(AlphabetPtr alphabet);
  // "A=E4,B=E6" creates letters of weight (form weight - 2); "A.B=E8" assigns a word
  // over letters introduced earlier in the same string.
  static HAssignment parse(const std::string& text);

  // Throws DomainError unless the form is level one of weight w(B) + 2.
  void assign(const Word& w, const ModularFormSpec& f);

  const Alphabet& alphabet() const { return *alphabet_; }
  const AlphabetPtr& alphabet_ptr() const { return alphabet_; }
  const std::map<Word, ModularFormSpec>& forms() const { return forms_; }
  const ModularFormSpec* form(const Word& w) const;
  bool cusp_only() const;

 private:
  AlphabetPtr alphabet_;
  std::map<Word, ModularFormSpec> forms_;
};

// Points of P^1(Q) use CoprimePair{p, q} for q/p; {0, 1} is infinity.
inline CoprimePair infinity_point() { return {0, 1}; }
inline CoprimePair rational_point(std::int64_t num, std::int64_t den) { return {den, num}; }

struct TangentialBasePoint {
  CoprimePair base;
  CoprimePair direction;
  // Throws DomainError when base == direction or a pair is not coprime.
  static TangentialBasePoint make(CoprimePair base, CoprimePair direction);
};

enum class EvalMode { numeric, symbolic };

struct IntegratorConfig {
  int trunc = 2;
  double tol = 1e-12;
  // Largest Fourier index used by any expansion.
  int max_fourier = 4000;
  double height0 = 4.0;
  double height_cap = 64.0;
  // Gauss-Legendre nodes per panel and the panel budget of i_numeric.
  int nodes = 16;
  int max_panels = 4000;
  EvalMode mode = EvalMode::numeric;
  void validate() const;
};

CSeries omega(const HAssignment& h, Complex tau, XYPoint xy, const IntegratorConfig& cfg = {});
// Constant-term part of omega.
CSeries omega_inf(const HAssignment& h, Complex tau, XYPoint xy, int trunc);

CSeries i_infinity(const HAssignment& h, Complex tau0, Complex tau1, XYPoint xy, int trunc);
CSeries i_numeric(const HAssignment& h, Complex tau0, Complex tau1, XYPoint xy, const IntegratorConfig& cfg = {});

// I(tau, direction s at infinity); s must be finite.
CSeries reg_to_cusp(const HAssignment& h, Complex tau, CoprimePair s, XYPoint xy, const IntegratorConfig& cfg = {});

// The same value through the Fourier closed form of I(tau, i infinity); used as a cross-check.
CSeries i_to_infinity(const HAssignment& h, Complex tau, XYPoint xy, const IntegratorConfig& cfg = {});

PSeries pullback(const SL2& g, const PSeries& s);
// Pullback needs polynomial coefficients; always throws DomainError.
CSeries pullback(const SL2& g, const CSeries& s);

CSeries full_integral(const HAssignment& h, const TangentialBasePoint& tb0, const TangentialBasePoint& tb1,
                      XYPoint xy, const IntegratorConfig& cfg = {});
// Composition through an explicit interior point tau1.
CSeries full_integral_via(const HAssignment& h, const TangentialBasePoint& tb0, Complex tau1,
                          const TangentialBasePoint& tb1, XYPoint xy, const IntegratorConfig& cfg = {});
// Value at a point of the upper half-plane against a tangential base point, in either order.
CSeries integral_from(const HAssignment& h, const TangentialBasePoint& tb, Complex tau, XYPoint xy,
                      const IntegratorConfig& cfg = {});
CSeries integral_to(const HAssignment& h, Complex tau, const TangentialBasePoint& tb, XYPoint xy,
                    const IntegratorConfig& cfg = {});

// Recovers homogeneous polynomial coefficients from numeric evaluations at (1, y).
PSeries interpolate_symbolic(const std::function<CSeries(XYPoint)>& numeric, const AlphabetPtr& alphabet, int trunc);
PSeries full_integral_symbolic(const HAssignment& h, const TangentialBasePoint& tb0, const TangentialBasePoint& tb1,
                               const IntegratorConfig& cfg = {});
PSeries integral_to_symbolic(const HAssignment& h, Complex tau, const TangentialBasePoint& tb,
                             const IntegratorConfig& cfg = {});
// Substitutes (X, Y) into every coefficient.
CSeries evaluate_at(const PSeries& s, XYPoint xy);

// Series at (X, Y) = (q, p). Throws DomainError when pq = 0.
CSeries build_D(const HAssignment& h, std::int64_t p, std::int64_t q, const IntegratorConfig& cfg = {});
CSeries build_F(const HAssignment& h, std::int64_t p, std::int64_t q, const IntegratorConfig& cfg = {});
CSeries build_E(const HAssignment& h, std::int64_t p, std::int64_t q, int trunc);

SymbolFn<Complex> eichler_symbol(const HAssignment& h, const IntegratorConfig& cfg = {}, Memo memo = Memo::none);
RecipFn<Complex> eichler_reciprocity(const HAssignment& h, const IntegratorConfig& cfg = {});

}  // namespace mdsym
