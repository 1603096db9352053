#include "rfistat/special.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace rfistat::special {

double gamma_fn(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma_fn: requires x > 0");
    return std::tgamma(x);
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
    return std::lgamma(x);
}

double binomial_real(double x, int k) {
    if (k < 0) throw std::domain_error("binomial_real: requires k >= 0");
    double result = 1.0;
    for (int j = 1; j <= k; ++j) result *= (x - j + 1) / j;
    return result;
}

double gauss_2f1(double a, double b, double c, double x) {
    if (c <= 0.0 && c == std::floor(c))
        throw std::invalid_argument("gauss_2f1: c is a non-positive integer");
    if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("gauss_2f1: requires 0 <= x < 1");

    constexpr std::size_t kMaxTerms = 100000;
    const double eps = 1e-15;

    double term = 1.0;
    double sum = 1.0;
    // Rolling window of partial sums for Aitken delta-squared extrapolation.
    double s0 = 0.0, s1 = 0.0, s2 = 1.0;
    double aitken_prev = std::numeric_limits<double>::quiet_NaN();
    int small_terms = 0;

    for (std::size_t k = 0; k < kMaxTerms; ++k) {
        const double kk = static_cast<double>(k);
        term *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)) * x;
        sum += term;
        s0 = s1;
        s1 = s2;
        s2 = sum;

        if (std::fabs(term) <= eps * std::fabs(sum)) {
            if (++small_terms >= 2) return sum;
        } else {
            small_terms = 0;
        }

        if (k >= 2 && x > 0.5) {
            const double d2 = s2 - 2.0 * s1 + s0;
            if (d2 != 0.0) {
                const double accel = s2 - (s2 - s1) * (s2 - s1) / d2;
                if (std::isfinite(accel) && std::fabs(accel - aitken_prev) <=
                                                1e-14 * std::fabs(accel) + 1e-300)
                    return accel;
                aitken_prev = accel;
            }
        }
    }
    throw std::runtime_error("gauss_2f1: series did not converge within term cap");
}

double gen_laguerre(int n, double a, double v) {
    if (n < 0) throw std::domain_error("gen_laguerre: requires n >= 0");
    double sum = 0.0;
    double vpow = 1.0;
    double ifact = 1.0;
    for (int i = 0; i <= n; ++i) {
        if (i > 0) {
            vpow *= v;
            ifact *= i;
        }
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        sum += sign * binomial_real(n + a, n - i) * vpow / ifact;
    }
    return sum;
}

double partial_bell(int n, int i, std::span<const double> coeffs) {
    if (n < 1 || i < 1 || i > n) throw std::invalid_argument("partial_bell: need 1 <= i <= n");
    if (static_cast<int>(coeffs.size()) < n - i + 1)
        throw std::invalid_argument("partial_bell: coefficient list too short (need n-i+1)");

    // B[m][j] over the recurrence B_{m,j} = sum_k C(m-1, k-1) a_k B_{m-k, j-1}.
    std::vector<std::vector<double>> B(n + 1, std::vector<double>(i + 1, 0.0));
    B[0][0] = 1.0;
    for (int m = 1; m <= n; ++m) {
        for (int j = 1; j <= std::min(m, i); ++j) {
            double acc = 0.0;
            for (int k = 1; k <= m - j + 1; ++k) {
                const double ak = (k - 1 < static_cast<int>(coeffs.size())) ? coeffs[k - 1] : 0.0;
                acc += binomial_real(m - 1, k - 1) * ak * B[m - k][j - 1];
            }
            B[m][j] = acc;
        }
    }
    return B[n][i];
}

double bessel_i0(double x) {
    x = std::fabs(x);
    if (x <= 15.0) {
        const double q = 0.25 * x * x;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 200; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term <= 1e-17 * sum) break;
        }
        return sum;
    }
    return bessel_i0_scaled(x) * std::exp(x);
}

double bessel_i0_scaled(double x) {
    x = std::fabs(x);
    if (x <= 15.0) return bessel_i0(x) * std::exp(-x);
    // e^{-x} I0(x) ~ (2 pi x)^{-1/2} sum_k prod_{j<=k} (2j-1)^2 / (8x k!)
    const double inv8x = 1.0 / (8.0 * x);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd * inv8x / static_cast<double>(k);
        sum += term;
        if (term <= 1e-17 * sum) break;
    }
    return sum / std::sqrt(2.0 * M_PI * x);
}

double marcum_q1(double a, double b) {
    if (a < 0.0 || b < 0.0) throw std::domain_error("marcum_q1: requires a, b >= 0");
    if (b == 0.0) return 1.0;
    const double ha = 0.5 * a * a;
    const double hb = 0.5 * b * b;
    if (a == 0.0) return std::exp(-hb);
    if (a > 35.0 || b > 700.0) {
        // Beyond the exp(-x^2/2) underflow scale; Gaussian asymptotic form.
        return 0.5 * std::erfc((b - a) / std::sqrt(2.0));
    }

    // Q1(a,b) = sum_k Pois(k; a^2/2) * Q(k+1, b^2/2), all terms positive.
    double w = std::exp(-ha);          // Poisson weight at k
    double wsum = w;                   // cumulative weight
    double gterm = std::exp(-hb);      // e^{-hb} hb^k / k!
    double g = gterm;                  // Q(k+1, hb) upper regularized gamma
    double sum = w * g;
    for (int k = 1; k < 4000; ++k) {
        w *= ha / k;
        gterm *= hb / k;
        g += gterm;
        sum += w * g;
        wsum += w;
        // remaining Poisson mass bounds the tail since Q(k+1, hb) <= 1
        if (1.0 - wsum <= 1e-14 * sum && k > ha) break;
    }
    return std::min(sum, 1.0);
}

}  // namespace rfistat::special
