#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "lsh/geometry.hpp"
#include "lsh/hypergraph.hpp"
#include "lsh/rng.hpp"

namespace lsh {

/// Hyperedge modification noise, per order k = 2..K. Symmetric mode uses one
/// flip probability phi_k; asymmetric mode distinguishes absent-to-present
/// (psi0) from present-to-absent (psi1). Optional per-order caps bound every
/// parameter of that order.
struct NoiseParams {
    enum class Mode { symmetric, asymmetric };

    Mode mode = Mode::symmetric;
    std::vector<double> phi;
    std::vector<double> psi0;
    std::vector<double> psi1;
    std::vector<double> caps; // empty = uncapped

    static NoiseParams symmetric(std::vector<double> phi_values);
    static NoiseParams asymmetric(std::vector<double> psi0_values, std::vector<double> psi1_values);

    int max_order() const;
    double flip_on(int k) const;  // absent -> present probability
    double flip_off(int k) const; // present -> absent probability
    double cap(int k) const;      // 1.0 if uncapped
    void validate() const;
};

/// Distribution of the latent coordinates. The Gaussian case is the model's
/// own prior; the mixture and Poisson-process cases are misspecification
/// generators for robustness studies.
struct GaussianMixture {
    std::vector<double> weights;
    std::vector<Eigen::VectorXd> means;
    std::vector<Eigen::MatrixXd> covs;
};

struct PoissonProcess {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
    double intensity = 0.0; // per unit volume
};

struct LatentPrior {
    enum class Kind { gaussian, mixture, poisson };

    Kind kind = Kind::gaussian;
    Eigen::VectorXd mu;
    Eigen::MatrixXd sigma;
    GaussianMixture mix;
    PoissonProcess pp;

    static LatentPrior gaussian(Eigen::VectorXd mean, Eigen::MatrixXd cov);
    static LatentPrior mixture(GaussianMixture m);
    static LatentPrior poisson(PoissonProcess p);

    int dim() const;
    void validate() const;
};

/// One draw from N(mean, cov); cov = 0 is supported as a degenerate test hook.
Eigen::VectorXd sample_mvn(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov,
                           RngStream& rng);

/// N iid rows from the configured generator. The Poisson-process generator
/// draws its own Poisson(intensity * volume) row count and ignores `n`.
Eigen::MatrixXd sample_latents(const LatentPrior& prior, int n, RngStream& rng);

/// Uniform draw from the order-k increasing index tuples on n nodes by
/// incremental index sampling (never materialises the tuple space).
Edge sample_uniform_edge(int n, int k, RngStream& rng);

/// Bernoulli state modification of every possible hyperedge, implemented
/// without enumerating the hyperedge space: present edges flip directly and
/// the number of absent-to-present flips is drawn binomially, then placed by
/// incremental sampling with rejection of occupied tuples.
Hypergraph apply_modification(const Hypergraph& g, const NoiseParams& noise, RngStream& rng);

/// Full generative model: latents, induced nsRGH, then modification noise.
std::pair<Hypergraph, Eigen::MatrixXd> sample_hypergraph(const LatentPrior& prior,
                                                         const RadiusSchedule& radii,
                                                         const NoiseParams& noise, int n,
                                                         RngStream& rng, int order_cap = 6);

} // namespace lsh
