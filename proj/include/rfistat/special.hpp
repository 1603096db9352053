#pragma once

#include <span>
#include <stdexcept>

namespace rfistat::special {

// Gamma function for x > 0. Throws std::domain_error otherwise.
double gamma_fn(double x);

double log_gamma(double x);

// Generalized binomial coefficient C(x, k) for real x and integer k >= 0,
// evaluated as the finite product prod_{j=1..k} (x - j + 1) / j. Exact at the
// poles a naive Gamma-ratio evaluation would hit (e.g. x = n - 1, k = n).
double binomial_real(double x, int k);

// Gauss hypergeometric 2F1(a, b; c; x) on 0 <= x < 1 by power series with
// Aitken acceleration. Throws std::invalid_argument for c a non-positive
// integer or x outside [0,1); std::runtime_error if the series fails to
// converge within the term cap.
double gauss_2f1(double a, double b, double c, double x);

// Generalized Laguerre polynomial L_n^(a)(v), real a.
double gen_laguerre(int n, double a, double v);

// Partial (incomplete) Bell polynomial B_{n,i}(coeffs[0..n-i]). coeffs[j]
// supplies a_{j+1}; throws std::invalid_argument if fewer than n-i+1 entries.
double partial_bell(int n, int i, std::span<const double> coeffs);

// Modified Bessel I0: power series for small arguments, asymptotic expansion
// beyond. bessel_i0_scaled returns e^{-x} I0(x), finite for all x >= 0.
double bessel_i0(double x);
double bessel_i0_scaled(double x);

// First-order Marcum Q: Q1(a, b) = \int_b^inf t exp(-(t^2+a^2)/2) I0(at) dt.
double marcum_q1(double a, double b);

}  // namespace rfistat::special
