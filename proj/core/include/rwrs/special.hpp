#pragma once

#include <cstdint>

namespace rwrs::special {

// Riemann zeta for s > 1: partial sum over k <= n_terms plus the
// Euler-Maclaurin remainder. Absolute error well below 1e-12 for s in (1,2]
// at the default term count.
double zeta(double s, std::int64_t n_terms = 1 << 20);

// sum_{k > n} k^(-s), Euler-Maclaurin remainder of the zeta partial sum.
double zeta_tail(double s, std::int64_t n);

double normal_cdf(double x);
double normal_sf(double x);

// Inverse standard normal CDF. Rational approximation polished with one
// Halley step against erfc, abs error < 1e-14 over (0,1).
double normal_quantile(double p);

inline double normal_isf(double q) { return -normal_quantile(q); }

// Regularized incomplete gamma functions, P + Q = 1.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Upper tail of the chi-square distribution with df degrees of freedom.
double chi_square_sf(double x, double df);

}  // namespace rwrs::special
