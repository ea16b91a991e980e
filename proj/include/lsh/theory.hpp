#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "lsh/rng.hpp"

namespace lsh {

/// P(||U_i - U_j|| <= 2 r2) for U iid N(mu, Sigma) with diagonal Sigma: the
/// squared distance is a convolution of Gamma(1/2, 4 sigma_l^2) terms
/// (shape-scale), evaluated in closed form for the isotropic case and by
/// quadrature otherwise. mu drops out by translation invariance. A
/// non-diagonal Sigma falls back to a fixed-seed Monte Carlo estimate with a
/// warning.
double p_edge_order2(const Eigen::MatrixXd& sigma, double r2,
                     std::vector<std::string>* warnings = nullptr);

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long n_samples = 0;
};

/// Monte Carlo connection probability for any order: fraction of draws of k
/// iid N(mu, Sigma) points whose miniball radius is <= r, with binomial
/// standard error.
McEstimate p_edge_mc(const Eigen::VectorXd& mu, const Eigen::MatrixXd& sigma, double r, int k,
                     long n_samples, RngStream& rng);

/// Expected total degree: sum_k C(N-1, k-1) [(1 - phi_k) p_ek + phi_k (1 - p_ek)].
double expected_degree(int n_nodes, int max_order, std::span<const double> p_ek,
                       std::span<const double> phi);

/// Order-2 degree: Binomial(N-1, (1 - phi2) p_e2 + phi2 (1 - p_e2)) pmf over 0..N-1.
std::vector<double> degree_dist_order2(int n_nodes, double p_e2, double phi2);

/// Order-3 degree: Poisson approximation with rate C(N-1, 2) p3_eff; only
/// appropriate for small effective probability (warns when the rate is
/// large).
struct PoissonDegreeDist {
    double rate = 0.0;
    double pmf(int degree) const;
    std::vector<double> table(int len) const;
};

PoissonDegreeDist degree_dist_order3(int n_nodes, double p_e3, double phi3,
                                     std::vector<std::string>* warnings = nullptr);

/// Total-variation distance (1/2 L1) between a pmf and an empirical histogram.
double total_variation(std::span<const double> pmf, std::span<const double> empirical);

} // namespace lsh
