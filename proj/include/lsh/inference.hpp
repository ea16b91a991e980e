#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "lsh/genmodel.hpp"
#include "lsh/geometry.hpp"
#include "lsh/hypergraph.hpp"
#include "lsh/rng.hpp"

namespace lsh {

/// Prior hyperparameters: mu ~ N(m_mu, Sigma_mu), Sigma ~ IW(Phi, nu),
/// r_k ~ Exp(lambda_k), and Beta priors on the noise parameters. In
/// symmetric mode (a0, b0) doubles as the (a_k, b_k) prior for phi_k.
struct Priors {
    Eigen::VectorXd m_mu;
    Eigen::MatrixXd sigma_mu;
    Eigen::MatrixXd iw_scale;
    double iw_dof = 0.0;
    std::vector<double> r_rates;
    std::vector<double> a0, b0;
    std::vector<double> a1, b1;

    static Priors defaults(int d, int max_order);
    void validate(int d, int max_order, NoiseParams::Mode mode) const;
};

struct MCMCConfig {
    long iterations = 1000;
    long burn_in = 0;
    int n_blocks = 1;
    double sigma_u = 0.1;
    double sigma_r = 0.02;
    std::vector<int> anchors; // empty: pick the highest-degree nodes
    long thin = 1;
    long thin_latent = 0; // 0: keep no latent snapshots
    std::uint64_t seed = 1;
    int dim = 2;
    int order_cap = 6;
    NoiseParams::Mode noise_mode = NoiseParams::Mode::asymmetric;
    std::vector<double> noise_caps; // empty: uncapped
    double gmds_weight = 0.5;
    int abc_n_smp = 0; // 0: initialise mu/Sigma at their prior means
    double abc_eps = std::numeric_limits<double>::infinity();
    long abc_max_attempts = 100000;

    void validate() const;
};

struct TraceRow {
    long iteration = 0;
    double loglik = 0.0;
    Eigen::VectorXd mu;
    Eigen::MatrixXd sigma;
    std::vector<double> r;
    std::vector<double> psi0;
    std::vector<double> psi1;
    bool accept_r = false;
    std::vector<bool> accept_u;
};

struct PosteriorTrace {
    std::vector<TraceRow> rows;
    std::vector<std::pair<long, Eigen::MatrixXd>> latents; // thinned snapshots
};

/// Posterior summary alongside the raw trace.
struct FitResult {
    PosteriorTrace trace;
    Eigen::MatrixXd u_mean;
    Eigen::VectorXd mu_mean;
    Eigen::MatrixXd sigma_mean;
    std::vector<double> r_mean;
    std::vector<double> psi0_mean;
    std::vector<double> psi1_mean;
    std::vector<int> anchors;
    Eigen::MatrixXd u_init;
    double accept_rate_r = 0.0;
    std::vector<double> accept_rate_u;
    /// Per order: fraction of observed hyperedges present in the nsRGH
    /// induced by (u_mean, r_mean); NaN where the order has no observed edges.
    std::vector<double> explained;
    double final_loglik = 0.0;
};

// Conjugate conditionals (Gibbs steps).

/// mu | U, Sigma ~ N((N Sig^-1 + Sig_mu^-1)^-1 (Sig^-1 sum u_i + Sig_mu^-1 m_mu), (N Sig^-1 + Sig_mu^-1)^-1)
Eigen::VectorXd gibbs_mu(const Eigen::MatrixXd& u, const Eigen::MatrixXd& sigma,
                         const Priors& priors, RngStream& rng);

/// Sigma | U, mu ~ IW(Phi + sum (u_i - mu)(u_i - mu)^T, nu + N), sampled via
/// the Bartlett decomposition of the Wishart for the precision.
Eigen::MatrixXd gibbs_sigma(const Eigen::MatrixXd& u, const Eigen::VectorXd& mu,
                            const Priors& priors, RngStream& rng);

/// Inverse-Wishart draw used by gibbs_sigma and the ABC initialiser.
Eigen::MatrixXd sample_inverse_wishart(const Eigen::MatrixXd& scale, double dof, RngStream& rng);

/// Beta(a, b) draw restricted to [0, cap] by inverse-CDF sampling.
double sample_beta_truncated(double a, double b, double cap, RngStream& rng);

/// Noise conditionals: psi0_k ~ Beta(d01 + a0, d00 + b0), psi1_k ~ Beta(d10 + a1, d11 + b1),
/// truncated to the caps when given. Symmetric mode draws one phi_k ~
/// Beta(d10 + d01 + a, d11 + d00 + b) per order.
std::pair<std::vector<double>, std::vector<double>> gibbs_psi(const DiscrepancyCounts& counts,
                                                              const Priors& priors,
                                                              const std::vector<double>& caps,
                                                              RngStream& rng);
std::vector<double> gibbs_phi(const DiscrepancyCounts& counts, const Priors& priors,
                              const std::vector<double>& caps, RngStream& rng);

/// Chain state with the induced hypergraph, discrepancy counts and
/// log-likelihood cached for the current (U, r).
struct McmcState {
    Eigen::MatrixXd u;
    RadiusSchedule r;
    std::vector<double> psi0, psi1; // equal in symmetric mode
    Eigen::VectorXd mu;
    Eigen::MatrixXd sigma;
    NoiseParams::Mode noise_mode = NoiseParams::Mode::asymmetric;
    int order_cap = 6;

    Hypergraph induced{2, 2};
    DiscrepancyCounts counts;
    double loglik = 0.0;

    void refresh(const Hypergraph& observed);
    double noise_loglik(const DiscrepancyCounts& c) const;
};

/// Joint Gaussian random-walk proposal for one block of latent rows; anchors
/// never move. Returns the accept flag.
bool mh_update_latents(McmcState& state, const Hypergraph& observed, const std::vector<int>& block,
                       double sigma_u, RngStream& rng);

/// Joint random-walk proposal on all radii; proposals that violate positivity
/// or strict ordering are rejected outright.
bool mh_update_radii(McmcState& state, const Hypergraph& observed, double sigma_r,
                     const Priors& priors, RngStream& rng);

/// Full Metropolis-within-Gibbs driver. `sink` (when given) receives every
/// retained trace row as soon as it is produced, so partial runs remain
/// inspectable.
FitResult run_mcmc(const Hypergraph& observed, const Priors& priors, const MCMCConfig& config,
                   const std::function<void(const TraceRow&)>& sink = nullptr);

} // namespace lsh
