#include "rfistat/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rfistat/special.hpp"

namespace rfistat {

namespace {

constexpr double kSpeedOfLight = 3.0e8;
constexpr double kRmaxSigmas = 12.0;  // truncation of the Rician tail
constexpr double kZmaxSigmas = 9.0;

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

struct GLRule {
    std::vector<double> x, w;
    explicit GLRule(int n) { gauss_legendre(n, x, w); }
};

}  // namespace

void IntraClusterParams::validate() const {
    if (!(lambda_bs >= 0.0)) throw std::invalid_argument("intra.lambda_bs: must be >= 0");
    if (!(sigma_c_m > 0.0)) throw std::invalid_argument("intra.sigma_c_km: must be > 0");
    if (!(p_tx_w > 0.0)) throw std::invalid_argument("intra.p_tx_w: must be > 0");
    if (!(alpha_intra > 2.0)) throw std::invalid_argument("intra.alpha: must be > 2");
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("intra.bandwidth_hz: must be > 0");
    if (!(carrier_hz > 0.0)) throw std::invalid_argument("intra.carrier_hz: must be > 0");
}

double noise_power_w(const IntraClusterParams& p) {
    return std::pow(10.0, p.noise_density_dbm_hz / 10.0) * 1e-3 * p.bandwidth_hz;
}

double ue_center_distance_pdf(double z, double sigma_c) {
    if (z < 0.0) return 0.0;
    const double s2 = sigma_c * sigma_c;
    return z / s2 * std::exp(-z * z / (2.0 * s2));
}

double bs_ue_distance_pdf(double r, double z, double sigma_c) {
    if (r < 0.0) return 0.0;
    const double s2 = sigma_c * sigma_c;
    // r/s^2 exp(-(r^2+z^2)/2s^2) I0(rz/s^2), with the Bessel factor scaled to
    // keep the product finite for large rz.
    const double t = r * z / s2;
    return r / s2 * std::exp(-(r - z) * (r - z) / (2.0 * s2)) * special::bessel_i0_scaled(t);
}

double bs_ue_distance_cdf(double r, double z, double sigma_c) {
    if (r <= 0.0) return 0.0;
    return 1.0 - special::marcum_q1(z / sigma_c, r / sigma_c);
}

double serving_distance_pdf(double q, double z, double lambda_bs, double sigma_c) {
    return lambda_bs * bs_ue_distance_pdf(q, z, sigma_c) *
           std::exp(-lambda_bs * bs_ue_distance_cdf(q, z, sigma_c));
}

namespace detail {

struct LaplaceTables::Impl {
    double lam = 0.0;
    double alpha = 4.0;
    double up = 0.0;  // u * p_tx in the km-anchored convention

    struct QNode {
        double w_serv;                 // f_serv(q|z) * quadrature weight
        std::vector<double> w_fr;      // f_R(r|z) * weight over [q, rmax]
        std::vector<double> r_alpha;   // r^-alpha at the same nodes
    };
    struct ZNode {
        double w_fz;                   // f_Z(z) * quadrature weight
        std::vector<double> lp_w;      // f_R(r|z) * weight over [0, rmax]
        std::vector<double> lp_ralpha;
        std::vector<QNode> qnodes;
    };
    std::vector<ZNode> znodes;

    void build(const IntraClusterParams& p);
    double lp(double s) const;
    double li(double s) const;
};

namespace {

// Composite rule over [lo, rmax]: geometric (octave) segments so the
// s-dependent path-loss sigmoid is resolved wherever it lands, with a
// Gauss-Legendre panel per segment. lo = 0 gets a tiny leading panel whose
// integrand is O(r^(1+alpha)).
void radial_nodes(const GLRule& gl, double lo, double rmax, double r_floor, double z,
                  double sigma, double alpha, std::vector<double>& w_fr,
                  std::vector<double>& r_alpha) {
    std::vector<double> edges;
    edges.push_back(lo);
    double e = std::max(lo, r_floor);
    while (e < rmax) {
        edges.push_back(e);
        e *= 2.0;
    }
    edges.push_back(rmax);
    w_fr.clear();
    r_alpha.clear();
    for (std::size_t seg = 0; seg + 1 < edges.size(); ++seg) {
        const double a = edges[seg], b = edges[seg + 1];
        if (b <= a) continue;
        for (std::size_t i = 0; i < gl.x.size(); ++i) {
            const double r = 0.5 * (b - a) * (gl.x[i] + 1.0) + a;
            const double w = 0.5 * (b - a) * gl.w[i];
            const double fr = bs_ue_distance_pdf(r, z, sigma) * w;
            if (fr <= 0.0) continue;
            w_fr.push_back(fr);
            r_alpha.push_back(std::pow(r, -alpha));
        }
    }
}

}  // namespace

void LaplaceTables::Impl::build(const IntraClusterParams& p) {
    p.validate();
    lam = p.lambda_bs;
    alpha = p.alpha_intra;
    const double sigma = p.sigma_c_m * 1e-3;  // km; path loss anchored at 1 km
    const double u_km = std::pow(kSpeedOfLight / (4.0 * M_PI * p.carrier_hz), 2) * 1e-6;
    up = u_km * p.p_tx_w;
    if (lam == 0.0) return;

    static const GLRule gl_z(40), gl_r(12), gl_q(16);
    // Leading radial panel small enough that its mass, amplified by lambda
    // in the exponent, stays below ~1e-6.
    const double r_floor = sigma * 3e-3;

    const double zmax = kZmaxSigmas * sigma;
    znodes.reserve(gl_z.x.size());
    for (std::size_t iz = 0; iz < gl_z.x.size(); ++iz) {
        const double z = 0.5 * zmax * (gl_z.x[iz] + 1.0);
        const double wz = 0.5 * zmax * gl_z.w[iz];
        ZNode zn;
        zn.w_fz = ue_center_distance_pdf(z, sigma) * wz;
        const double rmax = z + kRmaxSigmas * sigma;

        radial_nodes(gl_r, 0.0, rmax, r_floor, z, sigma, alpha, zn.lp_w, zn.lp_ralpha);

        // Serving-distance integral: locate the scale where the nearest-BS
        // CDF turns over, then cover [0, q_cap] with geometric segments.
        auto lam_cdf = [&](double q) { return lam * bs_ue_distance_cdf(q, z, sigma); };
        auto solve = [&](double target) {
            double hi = sigma * 1e-3;
            while (lam_cdf(hi) < target && hi < rmax) hi *= 2.0;
            hi = std::min(hi, rmax);
            double lo = 0.0;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                (lam_cdf(mid) < target ? lo : hi) = mid;
            }
            return hi;
        };
        const double q_half = solve(0.7);
        const double q_cap = (lam_cdf(rmax) > 45.0) ? solve(45.0) : rmax;

        std::vector<double> edges{0.0, 0.25 * q_half};
        while (edges.back() < q_cap) edges.push_back(std::min(2.0 * edges.back(), q_cap));

        for (std::size_t seg = 0; seg + 1 < edges.size(); ++seg) {
            const double qa = edges[seg], qb = edges[seg + 1];
            for (std::size_t iq = 0; iq < gl_q.x.size(); ++iq) {
                const double q = 0.5 * (qb - qa) * (gl_q.x[iq] + 1.0) + qa;
                const double wq = 0.5 * (qb - qa) * gl_q.w[iq];
                QNode qn;
                qn.w_serv = serving_distance_pdf(q, z, lam, sigma) * wq;
                if (qn.w_serv <= 0.0) continue;
                radial_nodes(gl_r, q, rmax, r_floor, z, sigma, alpha, qn.w_fr, qn.r_alpha);
                zn.qnodes.push_back(std::move(qn));
            }
        }
        znodes.push_back(std::move(zn));
    }
}

double LaplaceTables::Impl::lp(double s) const {
    if (lam == 0.0) return 1.0;
    const double ups = up * s;
    double total = 0.0;
    for (const auto& zn : znodes) {
        double inner = 0.0;
        for (std::size_t ir = 0; ir < zn.lp_w.size(); ++ir)
            inner += zn.lp_w[ir] / (1.0 + ups * zn.lp_ralpha[ir]);
        total += zn.w_fz * std::exp(-lam * (1.0 - inner));
    }
    return total;
}

double LaplaceTables::Impl::li(double s) const {
    if (lam == 0.0) return 1.0;
    const double ups = up * s;
    double total = std::exp(-lam);  // empty-cluster atom
    for (const auto& zn : znodes) {
        double over_q = 0.0;
        for (const auto& qn : zn.qnodes) {
            double inner = 0.0;
            for (std::size_t ir = 0; ir < qn.w_fr.size(); ++ir) {
                const double t = ups * qn.r_alpha[ir];
                inner += qn.w_fr[ir] * t / (1.0 + t);
            }
            over_q += qn.w_serv * std::exp(-lam * inner);
        }
        total += zn.w_fz * over_q;
    }
    return total;
}

LaplaceTables::LaplaceTables(const IntraClusterParams& p) : impl_(new Impl) { impl_->build(p); }
LaplaceTables::~LaplaceTables() = default;
LaplaceTables::LaplaceTables(LaplaceTables&&) noexcept = default;
double LaplaceTables::total_power(double s) const { return impl_->lp(s); }
double LaplaceTables::interference(double s) const { return impl_->li(s); }

}  // namespace detail

double laplace_total_power(double s, const IntraClusterParams& p) {
    if (s < 0.0) throw std::domain_error("laplace_total_power: requires s >= 0");
    if (s == 0.0) return 1.0;
    return detail::LaplaceTables(p).total_power(s);
}

double laplace_interference(double s, const IntraClusterParams& p) {
    if (s < 0.0) throw std::domain_error("laplace_interference: requires s >= 0");
    if (s == 0.0) return 1.0;
    return detail::LaplaceTables(p).interference(s);
}

double spectral_efficiency(const IntraClusterParams& p, const QuadratureSpec& spec) {
    p.validate();
    if (p.lambda_bs == 0.0) return 0.0;
    const detail::LaplaceTables tables(p);
    const double sigma_km = p.sigma_c_m * 1e-3;
    const double u_km = std::pow(kSpeedOfLight / (4.0 * M_PI * p.carrier_hz), 2) * 1e-6;
    const double up = u_km * p.p_tx_w;
    const double noise = noise_power_w(p);

    const double s_min = 1e-12 * std::pow(sigma_km, p.alpha_intra) / up;
    const double s_max = 50.0 / noise;

    auto integrand = [&](double t) {
        const double s = std::exp(t);
        const double d = tables.interference(s) - tables.total_power(s);
        return std::exp(-s * noise) * d;
    };
    const auto r = integrate(integrand, std::log(s_min), std::log(s_max), spec);
    // Leading small-s correction: L_I - L_P ~ C s^{2/alpha} below s_min, so
    // the dropped head integrates to (alpha/2) times the boundary value.
    const double head = 0.5 * p.alpha_intra *
                        (tables.interference(s_min) - tables.total_power(s_min));
    return r.value + head;
}

double sum_throughput_nats(double s_e, const Geometry& geo, double lambda_bs,
                           double lambda_c_per_km2, double bandwidth_hz) {
    const double cap_km2 = exposed_cap_area_m2(geo) * 1e-6;
    return bandwidth_hz * s_e * lambda_bs * lambda_c_per_km2 * cap_km2;
}

}  // namespace rfistat
