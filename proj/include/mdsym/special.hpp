#pragma once

#include <cstdint>

#include "mdsym/scalar.hpp"

namespace mdsym {

// B_n with B_1 = -1/2.
Rational bernoulli(int n);
// Bernoulli polynomial B_n(x).
double bernoulli_poly(int n, double x);
Rational binomial(int n, int k);
Rational factorial(int n);

// Riemann zeta at an integer s != 1. Even s >= 2 use the exact pi-power formula;
// s <= 0 use Bernoulli numbers; odd s >= 3 use Euler-Maclaurin.
double zeta(int s);
// Hurwitz zeta for real s > 1 and a > 0, or integer s <= 0 via Bernoulli polynomials.
double hurwitz_zeta(double s, double a);

// Li_s(z) for integer s >= 1 and |z| <= 1 (z != 1 when s = 1).
Complex polylog(int s, Complex z);

double harmonic(int n);

}  // namespace mdsym
