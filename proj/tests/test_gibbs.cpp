#include <doctest.h>

#include <boost/math/special_functions/beta.hpp>
#include <cmath>

#include "lsh/inference.hpp"
#include "oracles.hpp"

using namespace lsh;

TEST_CASE("gibbs_mu analytic cases") {
    RngStream rng(501);
    Priors priors = Priors::defaults(2, 2);
    priors.sigma_mu = Eigen::Matrix2d::Identity();
    priors.m_mu = Eigen::Vector2d::Zero();

    // no data: the draw comes from the prior
    {
        const Eigen::MatrixXd empty(0, 2);
        const int n = 100000;
        Eigen::Vector2d mean = Eigen::Vector2d::Zero();
        for (int s = 0; s < n; ++s) mean += gibbs_mu(empty, Eigen::Matrix2d::Identity(), priors, rng);
        mean /= n;
        CHECK(mean.norm() < 3.0 * std::sqrt(2.0 / n));
    }

    // single observation at (2, 0) with unit covariances: posterior N((1,0), I/2)
    {
        Eigen::MatrixXd u(1, 2);
        u << 2, 0;
        const int n = 100000;
        Eigen::Vector2d mean = Eigen::Vector2d::Zero();
        Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
        std::vector<Eigen::Vector2d> draws;
        draws.reserve(n);
        for (int s = 0; s < n; ++s) {
            const Eigen::VectorXd x = gibbs_mu(u, Eigen::Matrix2d::Identity(), priors, rng);
            draws.push_back(x);
            mean += x;
        }
        mean /= n;
        for (const auto& x : draws) cov += (x - mean) * (x - mean).transpose();
        cov /= n - 1;

        const double se = std::sqrt(0.5 / n);
        CHECK(std::abs(mean(0) - 1.0) < 3 * se);
        CHECK(std::abs(mean(1) - 0.0) < 3 * se);
        CHECK(std::abs(cov(0, 0) - 0.5) < 3 * 0.5 * std::sqrt(2.0 / n));
        CHECK(std::abs(cov(1, 1) - 0.5) < 3 * 0.5 * std::sqrt(2.0 / n));
        CHECK(std::abs(cov(0, 1)) < 3 * 0.5 * std::sqrt(1.0 / n));
    }
}

TEST_CASE("gibbs_mu matches the general analytic conditional") {
    RngStream rng(502);
    Priors priors = Priors::defaults(2, 2);
    priors.m_mu = Eigen::Vector2d(0.5, -0.5);
    priors.sigma_mu << 2.0, 0.3, 0.3, 1.0;

    Eigen::MatrixXd u(4, 2);
    u << 1, 0, 0, 1, -1, 2, 2, 2;
    Eigen::Matrix2d sigma;
    sigma << 0.8, 0.2, 0.2, 0.5;

    const Eigen::Matrix2d sigma_inv = sigma.inverse();
    const Eigen::Matrix2d prior_inv = priors.sigma_mu.inverse();
    const Eigen::Matrix2d post_cov = (4.0 * sigma_inv + prior_inv).inverse();
    const Eigen::Vector2d post_mean =
        post_cov * (sigma_inv * u.colwise().sum().transpose() + prior_inv * priors.m_mu);

    const int n = 100000;
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    for (int s = 0; s < n; ++s) mean += gibbs_mu(u, sigma, priors, rng);
    mean /= n;
    for (int l = 0; l < 2; ++l)
        CHECK(std::abs(mean(l) - post_mean(l)) < 3.0 * std::sqrt(post_cov(l, l) / n));
}

TEST_CASE("gibbs_sigma prior draw and posterior mean identity") {
    RngStream rng(503);
    Priors priors = Priors::defaults(2, 2);
    priors.iw_scale << 2.0, 0.4, 0.4, 1.5;
    priors.iw_dof = 7.0;

    // N = 0: draws are inverse-Wishart(Phi, nu) with mean Phi / (nu - d - 1)
    {
        const Eigen::MatrixXd empty(0, 2);
        const int n = 100000;
        Eigen::Matrix2d mean = Eigen::Matrix2d::Zero();
        std::vector<Eigen::Matrix2d> draws;
        draws.reserve(n);
        for (int s = 0; s < n; ++s) {
            const Eigen::Matrix2d x = gibbs_sigma(empty, Eigen::Vector2d::Zero(), priors, rng);
            draws.push_back(x);
            mean += x;
        }
        mean /= n;
        const Eigen::Matrix2d expect = priors.iw_scale / (priors.iw_dof - 3.0);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double var = 0.0;
                for (const auto& x : draws) var += std::pow(x(i, j) - mean(i, j), 2);
                var /= n - 1;
                CHECK(std::abs(mean(i, j) - expect(i, j)) < 3.0 * std::sqrt(var / n));
            }
    }

    // coincident points at mu contribute no scatter: posterior scale is Phi
    {
        Eigen::MatrixXd u(3, 2);
        u << 0.7, -0.1, 0.7, -0.1, 0.7, -0.1;
        const Eigen::Vector2d mu(0.7, -0.1);
        const int n = 50000;
        Eigen::Matrix2d mean = Eigen::Matrix2d::Zero();
        for (int s = 0; s < n; ++s) mean += gibbs_sigma(u, mu, priors, rng);
        mean /= n;
        const Eigen::Matrix2d expect = priors.iw_scale / (priors.iw_dof + 3.0 - 3.0);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(std::abs(mean(i, j) - expect(i, j)) <
                      4.0 * std::abs(expect(i, i)) / std::sqrt(static_cast<double>(n)));
    }
}

TEST_CASE("gibbs_psi posterior parameters") {
    RngStream rng(504);
    Priors priors = Priors::defaults(2, 2);
    priors.a0 = {1.0};
    priors.b0 = {1.0};
    priors.a1 = {1.0};
    priors.b1 = {1.0};

    DiscrepancyCounts counts;
    counts.max_order = 2;
    counts.rows.assign(1, {});
    counts.order(2).d01 = 3;
    counts.order(2).d00 = 7;
    counts.order(2).d10 = 2;
    counts.order(2).d11 = 4;

    // psi0 ~ Beta(4, 8), psi1 ~ Beta(3, 5)
    const int n = 100000;
    double sum0 = 0.0, sum1 = 0.0;
    for (int s = 0; s < n; ++s) {
        auto [psi0, psi1] = gibbs_psi(counts, priors, {}, rng);
        sum0 += psi0[0];
        sum1 += psi1[0];
    }
    const double m0 = 4.0 / 12.0, m1 = 3.0 / 8.0;
    const double se0 = std::sqrt(m0 * (1 - m0) / (13.0 * n));
    const double se1 = std::sqrt(m1 * (1 - m1) / (9.0 * n));
    CHECK(std::abs(sum0 / n - m0) < 3 * se0);
    CHECK(std::abs(sum1 / n - m1) < 3 * se1);
}

TEST_CASE("truncated beta draws") {
    RngStream rng(505);

    // cap = 1 matches the untruncated distribution (KS against the Beta CDF)
    {
        std::vector<double> draws;
        for (int s = 0; s < 20000; ++s) draws.push_back(sample_beta_truncated(2.0, 5.0, 1.0, rng));
        const double d = oracle::ks_statistic(
            draws, [](double x) { return boost::math::ibeta(2.0, 5.0, x); });
        CHECK(d < oracle::ks_critical(0.01, draws.size()));
    }

    // cap = 0.05: all draws below the cap and matching the truncated CDF
    {
        const double cap = 0.05;
        const double mass = boost::math::ibeta(1.0, 1.0, cap);
        std::vector<double> draws;
        for (int s = 0; s < 100000; ++s)
            draws.push_back(sample_beta_truncated(1.0, 1.0, cap, rng));
        for (double x : draws) CHECK(x <= cap);
        const double d = oracle::ks_statistic(draws, [cap, mass](double x) {
            if (x >= cap) return 1.0;
            return boost::math::ibeta(1.0, 1.0, x) / mass;
        });
        CHECK(d < oracle::ks_critical(0.01, draws.size()));
    }
}

TEST_CASE("gibbs_phi symmetric conditional") {
    RngStream rng(506);
    Priors priors = Priors::defaults(2, 2);
    priors.a0 = {2.0};
    priors.b0 = {3.0};

    DiscrepancyCounts counts;
    counts.max_order = 2;
    counts.rows.assign(1, {});
    counts.order(2).d10 = 1;
    counts.order(2).d01 = 2;
    counts.order(2).d11 = 5;
    counts.order(2).d00 = 2;

    // phi ~ Beta(d10 + d01 + a, d11 + d00 + b) = Beta(5, 10)
    const int n = 100000;
    double sum = 0.0;
    for (int s = 0; s < n; ++s) sum += gibbs_phi(counts, priors, {}, rng)[0];
    const double m = 5.0 / 15.0;
    CHECK(std::abs(sum / n - m) < 3 * std::sqrt(m * (1 - m) / (16.0 * n)));
}
