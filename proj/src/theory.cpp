#include "lsh/theory.hpp"

#include <array>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "lsh/combinatorics.hpp"
#include "lsh/errors.hpp"
#include "lsh/geometry.hpp"

namespace lsh {

namespace {

struct GammaComponent {
    double shape;
    double scale;
};

double gamma_cdf(const GammaComponent& g, double t) {
    if (t <= 0.0) return 0.0;
    return boost::math::gamma_p(g.shape, t / g.scale);
}

double gamma_pdf(const GammaComponent& g, double t) {
    if (t <= 0.0) return 0.0;
    return std::exp((g.shape - 1.0) * std::log(t) - t / g.scale -
                    std::lgamma(g.shape) - g.shape * std::log(g.scale));
}

// CDF of the sum of independent gamma components at t, by folding one pdf
// against the CDF of the rest. The shape-1/2 singularity at zero is removed
// with the z = s^2 substitution; plain Gauss-Legendre handles the rest.
double convolution_cdf(const std::vector<GammaComponent>& components, double t);

double fold_cdf(const GammaComponent& head, const std::vector<GammaComponent>& tail, double t) {
    // 128-node Gauss-Legendre on [0, sqrt(t)] after z = s^2.
    constexpr int nodes = 128;
    static const auto rule = [] {
        // Nodes/weights for Legendre on [-1, 1] by Newton iteration on P_n.
        const double pi = std::acos(-1.0);
        std::array<std::pair<double, double>, nodes> out{};
        for (int i = 0; i < nodes; ++i) {
            double x = std::cos(pi * (i + 0.75) / (nodes + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int j = 2; j <= nodes; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                pp = nodes * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / pp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            out[static_cast<std::size_t>(i)] = {x, 2.0 / ((1.0 - x * x) * pp * pp)};
        }
        return out;
    }();

    const double s_max = std::sqrt(t);
    double acc = 0.0;
    for (const auto& [xi, wi] : rule) {
        const double s = 0.5 * s_max * (xi + 1.0);
        const double z = s * s;
        acc += wi * 2.0 * s * gamma_pdf(head, z) * convolution_cdf(tail, t - z);
    }
    return acc * 0.5 * s_max;
}

double convolution_cdf(const std::vector<GammaComponent>& components, double t) {
    if (t <= 0.0) return 0.0;
    if (components.size() == 1) return gamma_cdf(components[0], t);
    std::vector<GammaComponent> tail(components.begin() + 1, components.end());
    return fold_cdf(components.front(), tail, t);
}

} // namespace

double p_edge_order2(const Eigen::MatrixXd& sigma, double r2,
                     std::vector<std::string>* warnings) {
    const int d = static_cast<int>(sigma.rows());
    if (sigma.cols() != d || (d != 2 && d != 3))
        throw ConfigError("p_edge_order2: Sigma must be 2x2 or 3x3");
    if (r2 < 0.0) throw ConfigError("p_edge_order2: radius must be non-negative");
    if (r2 == 0.0) return 0.0;

    double off = 0.0, scale = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j)
                scale = std::max(scale, std::abs(sigma(i, j)));
            else
                off = std::max(off, std::abs(sigma(i, j)));
        }
    if (off > 1e-12 * std::max(scale, 1.0)) {
        if (warnings)
            warnings->push_back(
                "p_edge_order2: Sigma is not diagonal; falling back to Monte Carlo");
        RngStream rng = RngStream::named(20240229u, "p_edge_order2_mc");
        return p_edge_mc(Eigen::VectorXd::Zero(d), sigma, r2, 2, 200000, rng).value;
    }

    // Squared distance = sum_l Gamma(1/2, 4 sigma_l^2); merge equal variances
    // into Gamma(m/2, theta) blocks.
    std::vector<GammaComponent> components;
    for (int l = 0; l < d; ++l) {
        const double var = sigma(l, l);
        if (!(var > 0.0)) throw ConfigError("p_edge_order2: Sigma must be positive definite");
        const double theta = 4.0 * var;
        bool merged = false;
        for (auto& c : components)
            if (std::abs(c.scale - theta) <= 1e-12 * theta) {
                c.shape += 0.5;
                merged = true;
                break;
            }
        if (!merged) components.push_back({0.5, theta});
    }

    const double t = 4.0 * r2 * r2;
    return std::min(1.0, convolution_cdf(components, t));
}

McEstimate p_edge_mc(const Eigen::VectorXd& mu, const Eigen::MatrixXd& sigma, double r, int k,
                     long n_samples, RngStream& rng) {
    if (k < 2) throw ConfigError("p_edge_mc: order must be >= 2");
    if (n_samples < 1000) throw ConfigError("p_edge_mc: need at least 1000 samples");
    const int d = static_cast<int>(mu.size());

    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success)
        throw ConfigError("p_edge_mc: Sigma must be positive definite");
    const Eigen::MatrixXd chol = llt.matrixL();

    Eigen::MatrixXd pts(k, d);
    Edge all(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) all[static_cast<std::size_t>(i)] = i;

    long hits = 0;
    for (long s = 0; s < n_samples; ++s) {
        for (int i = 0; i < k; ++i) {
            Eigen::VectorXd z(d);
            for (int l = 0; l < d; ++l) z(l) = rng.normal();
            pts.row(i) = (mu + chol * z).transpose();
        }
        if (miniball_radius(pts, all) <= r) ++hits;
    }

    McEstimate est;
    est.n_samples = n_samples;
    est.value = static_cast<double>(hits) / static_cast<double>(n_samples);
    est.std_error = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(n_samples));
    return est;
}

double expected_degree(int n_nodes, int max_order, std::span<const double> p_ek,
                       std::span<const double> phi) {
    if (static_cast<int>(p_ek.size()) != max_order - 1 || p_ek.size() != phi.size())
        throw ConfigError("expected_degree: lists must cover orders 2..K");
    double total = 0.0;
    for (int k = 2; k <= max_order; ++k) {
        const double p = p_ek[static_cast<std::size_t>(k - 2)];
        const double f = phi[static_cast<std::size_t>(k - 2)];
        if (!(p >= 0.0 && p <= 1.0 && f >= 0.0 && f <= 1.0))
            throw ConfigError("expected_degree: probabilities must lie in [0,1]");
        total += static_cast<double>(binomial(n_nodes - 1, k - 1)) *
                 ((1.0 - f) * p + f * (1.0 - p));
    }
    return total;
}

std::vector<double> degree_dist_order2(int n_nodes, double p_e2, double phi2) {
    if (!(p_e2 >= 0.0 && p_e2 <= 1.0 && phi2 >= 0.0 && phi2 <= 1.0))
        throw ConfigError("degree_dist_order2: probabilities must lie in [0,1]");
    const int n = n_nodes - 1;
    const double p = (1.0 - phi2) * p_e2 + phi2 * (1.0 - p_e2);

    std::vector<double> pmf(static_cast<std::size_t>(n + 1), 0.0);
    if (p <= 0.0) {
        pmf[0] = 1.0;
        return pmf;
    }
    if (p >= 1.0) {
        pmf[static_cast<std::size_t>(n)] = 1.0;
        return pmf;
    }
    const double lp = std::log(p), lq = std::log1p(-p);
    for (int j = 0; j <= n; ++j)
        pmf[static_cast<std::size_t>(j)] =
            std::exp(std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) +
                     j * lp + (n - j) * lq);
    return pmf;
}

double PoissonDegreeDist::pmf(int degree) const {
    if (degree < 0) return 0.0;
    if (rate <= 0.0) return degree == 0 ? 1.0 : 0.0;
    return std::exp(-rate + degree * std::log(rate) - std::lgamma(degree + 1.0));
}

std::vector<double> PoissonDegreeDist::table(int len) const {
    std::vector<double> out(static_cast<std::size_t>(len));
    for (int j = 0; j < len; ++j) out[static_cast<std::size_t>(j)] = pmf(j);
    return out;
}

PoissonDegreeDist degree_dist_order3(int n_nodes, double p_e3, double phi3,
                                     std::vector<std::string>* warnings) {
    if (!(p_e3 >= 0.0 && p_e3 <= 1.0 && phi3 >= 0.0 && phi3 <= 1.0))
        throw ConfigError("degree_dist_order3: probabilities must lie in [0,1]");
    const double p_eff = (1.0 - phi3) * p_e3 + phi3 * (1.0 - p_e3);
    PoissonDegreeDist dist;
    dist.rate = static_cast<double>(binomial(n_nodes - 1, 2)) * p_eff;
    if (warnings && dist.rate > 5.0)
        warnings->push_back("degree_dist_order3: rate " + std::to_string(dist.rate) +
                            " is large; the Poisson approximation degrades");
    return dist;
}

double total_variation(std::span<const double> pmf, std::span<const double> empirical) {
    double acc = 0.0;
    const std::size_t len = std::max(pmf.size(), empirical.size());
    for (std::size_t j = 0; j < len; ++j) {
        const double a = j < pmf.size() ? pmf[j] : 0.0;
        const double b = j < empirical.size() ? empirical[j] : 0.0;
        acc += std::abs(a - b);
    }
    return 0.5 * acc;
}

} // namespace lsh
