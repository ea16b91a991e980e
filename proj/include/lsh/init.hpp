#pragma once

#include <Eigen/Dense>
#include <limits>
#include <utility>
#include <vector>

#include "lsh/genmodel.hpp"
#include "lsh/geometry.hpp"
#include "lsh/hypergraph.hpp"
#include "lsh/rng.hpp"

namespace lsh {

/// Default anchors: the d highest-degree nodes, ties broken by index.
std::vector<int> default_anchors(const Hypergraph& h, int d);

/// Weighted shortest-path distances for the GMDS initialiser. A pair
/// connected by a hyperedge of order > 2 gets weight `lambda_weight`;
/// a pair connected only by an order-2 edge gets weight 1. Unreachable
/// pairs are set to (max finite shortest path) + 1.
Eigen::MatrixXd gmds_distance_matrix(const Hypergraph& h, double lambda_weight);

/// Classical MDS: double-centred squared distances, top-d eigenpairs with
/// negative eigenvalues clamped to zero.
Eigen::MatrixXd classical_mds(const Eigen::MatrixXd& dist, int d);

/// GMDS initialisation of the latent coordinates, Bookstein-transformed onto
/// the given anchors.
Eigen::MatrixXd init_latents_gmds(const Hypergraph& h, double lambda_weight, int d,
                                  const std::vector<int>& anchors);

/// Smallest radii inducing every observed hyperedge given coordinates, nudged
/// up where needed to keep the schedule strictly increasing.
RadiusSchedule init_radii(const Hypergraph& h, const Eigen::MatrixXd& u);

/// Summary vector for ABC: (#order-2 edges, #order-3 edges, #triangles).
Eigen::Vector3d abc_summary(const Hypergraph& h);

struct AbcOptions {
    int n_smp = 50;
    double eps = std::numeric_limits<double>::infinity();
    long max_attempts = 100000;
};

/// Rejection-ABC initialiser for (mu, Sigma): draw from the priors, simulate
/// a hypergraph under (r0, noise0), accept when the L1 summary distance is
/// below eps; returns the means of the accepted draws. Throws when the
/// acceptance rate falls below 'n_smp / max_attempts'.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> init_abc(const Hypergraph& h,
                                                     const Eigen::VectorXd& m_mu,
                                                     const Eigen::MatrixXd& sigma_mu,
                                                     const Eigen::MatrixXd& iw_scale, double iw_dof,
                                                     const RadiusSchedule& r0,
                                                     const NoiseParams& noise0,
                                                     const AbcOptions& opts, RngStream& rng,
                                                     int order_cap = 6);

} // namespace lsh
