#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lsh/genmodel.hpp"
#include "lsh/geometry.hpp"
#include "lsh/hypergraph.hpp"
#include "lsh/motifs.hpp"
#include "lsh/rng.hpp"

namespace lsh {

enum class Placement { gaussian, peripheral };

/// Fitted (or true) model parameters driving predictive simulation.
struct PredictiveModel {
    Eigen::MatrixXd u_hat; // N x d fitted coordinates, held fixed
    RadiusSchedule r_hat;
    NoiseParams noise_hat;
    Eigen::VectorXd mu_hat;
    Eigen::MatrixXd sigma_hat;
    int order_cap = 6;
};

/// New-node coordinates: `gaussian` draws n_star rows from N(mu, Sigma);
/// `peripheral` draws N + n_star rows and keeps the n_star farthest from mu.
Eigen::MatrixXd place_new_nodes(const PredictiveModel& model, int n_star, Placement placement,
                                RngStream& rng);

/// One predictive replicate: the union of h_obs with the noisy hyperedges
/// involving at least one new node, evaluated on the enlarged configuration.
Hypergraph predictive_replicate(const Hypergraph& h_obs, const PredictiveModel& model,
                                const Eigen::MatrixXd& new_coords, RngStream& rng);

/// Per-replicate degree vectors of the enlarged hypergraph.
std::vector<DegreeVector> predictive_degrees(const Hypergraph& h_obs, const PredictiveModel& model,
                                             int n_star, int n_rep, Placement placement,
                                             RngStream& rng);

struct PredictiveMotifs {
    std::vector<std::string> names;
    // [rep][spec]: embeddings using at least one new node / all embeddings
    std::vector<std::vector<std::int64_t>> attributed;
    std::vector<std::vector<std::int64_t>> total;
};

PredictiveMotifs predictive_motifs(const Hypergraph& h_obs, const PredictiveModel& model,
                                   int n_star, int n_rep, const std::vector<MotifSpec>& specs,
                                   Placement placement, RngStream& rng);

/// Matched quantiles (1..99 percent) of two samples, for qq tables.
struct QqTable {
    std::vector<double> percents;
    std::vector<double> a;
    std::vector<double> b;
};

QqTable qq_table(std::vector<double> sample_a, std::vector<double> sample_b);

} // namespace lsh
