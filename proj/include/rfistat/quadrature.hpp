#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace rfistat {

struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 200;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw std::invalid_argument("QuadratureSpec: tolerances must be > 0");
        if (max_subdivisions < 1)
            throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
    }
};

struct QuadratureResult {
    double value = 0.0;
    double error_bound = 0.0;
    int subdivisions = 0;
};

class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, double best, double bound)
        : std::runtime_error(what), best_estimate(best), error_bound(bound) {}
    double best_estimate;
    double error_bound;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights (QUADPACK dqk15).
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kGK15WeightsK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGK15WeightsG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gk15(const F& f, double a, double b, double& value, double& error) {
    const double c = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    double fv[15];
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(c - hl * kGK15Nodes[j]);
        fv[14 - j] = f(c + hl * kGK15Nodes[j]);
    }
    fv[7] = f(c);
    double resk = 0.0, resg = 0.0;
    for (int j = 0; j < 7; ++j) resk += kGK15WeightsK[j] * (fv[j] + fv[14 - j]);
    resk += kGK15WeightsK[7] * fv[7];
    for (int j = 0; j < 3; ++j) resg += kGK15WeightsG[j] * (fv[2 * j + 1] + fv[13 - 2 * j]);
    resg += kGK15WeightsG[3] * fv[7];
    value = resk * hl;
    const double diff = std::fabs((resk - resg) * hl);
    error = diff;
    // QUADPACK's sharpened error estimate
    double resabs = 0.0;
    for (int j = 0; j < 7; ++j) resabs += kGK15WeightsK[j] * (std::fabs(fv[j]) + std::fabs(fv[14 - j]));
    resabs += kGK15WeightsK[7] * std::fabs(fv[7]);
    resabs *= std::fabs(hl);
    if (resabs > 0.0 && diff > 0.0) {
        const double scaled = std::pow(200.0 * diff / resabs, 1.5);
        if (scaled < 1.0) error = resabs * scaled;
    }
}

struct Segment {
    double a, b, value, error;
};

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration on [a, b].
template <class F>
QuadratureResult integrate(const F& f, double a, double b, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (a == b) return {0.0, 0.0, 0};
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }

    std::vector<detail::Segment> segs;
    segs.reserve(64);
    detail::Segment s0{a, b, 0.0, 0.0};
    detail::gk15(f, a, b, s0.value, s0.error);
    segs.push_back(s0);

    double total = s0.value, err = s0.error;
    int splits = 0;
    while (err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total))) {
        if (splits >= spec.max_subdivisions)
            throw QuadratureError("integrate: tolerance not met within max_subdivisions",
                                  sign * total, err);
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].error > segs[worst].error) worst = i;
        const detail::Segment seg = segs[worst];
        const double mid = 0.5 * (seg.a + seg.b);
        if (mid <= seg.a || mid >= seg.b)
            throw QuadratureError("integrate: interval too small to subdivide", sign * total, err);
        detail::Segment left{seg.a, mid, 0.0, 0.0}, right{mid, seg.b, 0.0, 0.0};
        detail::gk15(f, left.a, left.b, left.value, left.error);
        detail::gk15(f, right.a, right.b, right.value, right.error);
        segs[worst] = left;
        segs.push_back(right);
        ++splits;
        total = 0.0;
        err = 0.0;
        for (const auto& s : segs) {
            total += s.value;
            err += s.error;
        }
    }
    return {sign * total, err, splits};
}

// Integration over [a, inf) through x = a + u/(1-u), dx = du/(1-u)^2.
template <class F>
QuadratureResult integrate_semi_infinite(const F& f, double a, const QuadratureSpec& spec = {}) {
    auto mapped = [&](double u) {
        const double om = 1.0 - u;
        const double x = a + u / om;
        const double jac = 1.0 / (om * om);
        const double v = f(x);
        return v * jac;
    };
    return integrate(mapped, 0.0, 1.0, spec);
}

}  // namespace rfistat
