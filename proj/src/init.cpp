#include "lsh/init.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lsh/bookstein.hpp"
#include "lsh/inference.hpp"

namespace lsh {

std::vector<int> default_anchors(const Hypergraph& h, int d) {
    if (d != 2 && d != 3) throw ConfigError("anchors: dimension must be 2 or 3");
    const DegreeVector deg = degree_sequence(h);
    std::vector<int> order(static_cast<std::size_t>(h.n_nodes()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&deg](int a, int b) { return deg.total(a) > deg.total(b); });
    return std::vector<int>(order.begin(), order.begin() + d);
}

Eigen::MatrixXd gmds_distance_matrix(const Hypergraph& h, double lambda_weight) {
    const int n = h.n_nodes();
    const double inf = std::numeric_limits<double>::infinity();
    Eigen::MatrixXd dist = Eigen::MatrixXd::Constant(n, n, inf);
    for (int i = 0; i < n; ++i) dist(i, i) = 0.0;

    // Co-membership in a hyperedge of order > 2 outweighs a plain pairwise tie.
    for (const Edge& e : h.edges()) {
        const double w = e.size() == 2 ? 1.0 : lambda_weight;
        for (std::size_t a = 0; a < e.size(); ++a)
            for (std::size_t b = a + 1; b < e.size(); ++b) {
                const int i = e[a], j = e[b];
                dist(i, j) = std::min(dist(i, j), w);
                dist(j, i) = dist(i, j);
            }
    }

    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            if (dist(i, k) == inf) continue;
            for (int j = 0; j < n; ++j) {
                const double via = dist(i, k) + dist(k, j);
                if (via < dist(i, j)) dist(i, j) = via;
            }
        }

    double max_finite = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (dist(i, j) != inf) max_finite = std::max(max_finite, dist(i, j));
    const double surrogate = max_finite + 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (dist(i, j) == inf) dist(i, j) = surrogate;
    return dist;
}

Eigen::MatrixXd classical_mds(const Eigen::MatrixXd& dist, int d) {
    const Eigen::Index n = dist.rows();
    if (d < 1 || d > 3) throw ConfigError("mds: target dimension must be 1..3");
    const Eigen::MatrixXd sq = dist.array().square();
    const Eigen::MatrixXd h =
        Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    const Eigen::MatrixXd b = -0.5 * h * sq * h;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
    if (solver.info() != Eigen::Success) throw NumericError("mds: eigendecomposition failed");

    // Eigenvalues come out ascending; take the top d and clamp negatives.
    Eigen::MatrixXd coords(n, d);
    for (int l = 0; l < d; ++l) {
        const Eigen::Index idx = n - 1 - l;
        const double lambda = std::max(solver.eigenvalues()(idx), 0.0);
        coords.col(l) = solver.eigenvectors().col(idx) * std::sqrt(lambda);
    }
    return coords;
}

Eigen::MatrixXd init_latents_gmds(const Hypergraph& h, double lambda_weight, int d,
                                  const std::vector<int>& anchors) {
    if (h.n_edges() == 0) throw DataError("gmds init: hypergraph has no edges");
    if (!(lambda_weight > 0.0)) throw ConfigError("gmds init: weight must be positive");
    if (d != 2 && d != 3) throw ConfigError("gmds init: dimension must be 2 or 3");

    const Eigen::MatrixXd dist = gmds_distance_matrix(h, lambda_weight);
    Eigen::MatrixXd coords = classical_mds(dist, d);

    if (d == 2) {
        auto [out, t] = bookstein_2d(coords, {anchors.at(0), anchors.at(1)});
        return out;
    }
    auto [out, t] = bookstein_3d(coords, {anchors.at(0), anchors.at(1), anchors.at(2)});
    return out;
}

RadiusSchedule init_radii(const Hypergraph& h, const Eigen::MatrixXd& u) {
    const int K = h.max_order();
    RadiusSchedule schedule;
    schedule.radii.assign(static_cast<std::size_t>(K - 1), 0.0);

    for (int k = 2; k <= K; ++k) {
        double needed = 0.0;
        for (const Edge& e : h.edges_of_order(k))
            needed = std::max(needed, miniball_radius(u, e));
        schedule.radii[static_cast<std::size_t>(k - 2)] = needed;
    }

    // Orders with no observed edges inherit the previous radius, then the
    // whole schedule is nudged into strict increase.
    double floor = 0.0;
    for (double& rk : schedule.radii) {
        if (rk <= floor) rk = floor > 0.0 ? floor * 1.05 : 0.1;
        floor = rk;
    }
    schedule.validate();
    return schedule;
}

Eigen::Vector3d abc_summary(const Hypergraph& h) {
    const int n = h.n_nodes();
    std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n),
                                       std::vector<bool>(static_cast<std::size_t>(n), false));
    for (const Edge& e : h.edges_of_order(2)) {
        adj[static_cast<std::size_t>(e[0])][static_cast<std::size_t>(e[1])] = true;
        adj[static_cast<std::size_t>(e[1])][static_cast<std::size_t>(e[0])] = true;
    }
    double triangles = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (!adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) continue;
            for (int k = j + 1; k < n; ++k)
                if (adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] &&
                    adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)])
                    triangles += 1.0;
        }

    Eigen::Vector3d t;
    t << static_cast<double>(h.n_edges(2)),
        static_cast<double>(h.max_order() >= 3 ? h.n_edges(3) : 0), triangles;
    return t;
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> init_abc(const Hypergraph& h,
                                                     const Eigen::VectorXd& m_mu,
                                                     const Eigen::MatrixXd& sigma_mu,
                                                     const Eigen::MatrixXd& iw_scale, double iw_dof,
                                                     const RadiusSchedule& r0,
                                                     const NoiseParams& noise0,
                                                     const AbcOptions& opts, RngStream& rng,
                                                     int order_cap) {
    if (opts.n_smp < 1) throw ConfigError("abc init: sample count must be >= 1");
    if (!(opts.eps > 0.0)) throw ConfigError("abc init: tolerance must be positive or infinite");

    const Eigen::Vector3d target = abc_summary(h);
    const int d = static_cast<int>(m_mu.size());
    const int n = h.n_nodes();

    Eigen::VectorXd mu_sum = Eigen::VectorXd::Zero(d);
    Eigen::MatrixXd sigma_sum = Eigen::MatrixXd::Zero(d, d);
    int accepted = 0;
    long attempts = 0;

    while (accepted < opts.n_smp) {
        if (attempts >= opts.max_attempts)
            throw NumericError("abc init: acceptance rate below floor after " +
                               std::to_string(attempts) +
                               " attempts; increase abc_eps or loosen the priors");
        ++attempts;

        const Eigen::VectorXd mu_star = sample_mvn(m_mu, sigma_mu, rng);
        const Eigen::MatrixXd sigma_star = sample_inverse_wishart(iw_scale, iw_dof, rng);

        Eigen::MatrixXd u_star(n, d);
        Eigen::LLT<Eigen::MatrixXd> llt(sigma_star);
        if (llt.info() != Eigen::Success) continue;
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXd z(d);
            for (int l = 0; l < d; ++l) z(l) = rng.normal();
            u_star.row(i) = (mu_star + llt.matrixL() * z).transpose();
        }

        const Hypergraph induced = build_nsrgh(u_star, r0, order_cap);
        const Hypergraph simulated = apply_modification(induced, noise0, rng);
        const double l1 = (abc_summary(simulated) - target).lpNorm<1>();
        if (l1 < opts.eps) {
            mu_sum += mu_star;
            sigma_sum += sigma_star;
            ++accepted;
        }
    }
    return {mu_sum / accepted, sigma_sum / accepted};
}

} // namespace lsh
