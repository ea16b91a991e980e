#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lsh/errors.hpp"
#include "lsh/hypergraph.hpp"

namespace lsh {

/// Latent coordinates: row i of `coords` is u_i, d in {2, 3}. When
/// `bookstein` is set, the anchor rows must sit exactly at the canonical
/// anchor positions (+-1/2 on the first axis, zeros elsewhere).
struct LatentConfiguration {
    Eigen::MatrixXd coords;
    bool bookstein = false;
    std::vector<int> anchors;

    int n() const { return static_cast<int>(coords.rows()); }
    int dim() const { return static_cast<int>(coords.cols()); }
    void validate() const;
};

/// Ordered radii (r_2, ..., r_K), strictly increasing and positive.
struct RadiusSchedule {
    std::vector<double> radii;

    int max_order() const { return static_cast<int>(radii.size()) + 1; }
    double r(int k) const { return radii[static_cast<std::size_t>(k - 2)]; }
    void validate() const;
};

struct Ball {
    Eigen::VectorXd center;
    double radius = 0.0;
};

/// Smallest enclosing ball via move-to-front Welzl with exact boundary
/// solves for at most d+1 support points. Points are the rows of `points`.
Ball miniball(const Eigen::MatrixXd& points);

/// Radius-only variant used on hot paths.
double miniball_radius(const Eigen::MatrixXd& coords, const Edge& edge);

/// Closed-ball convention: the hyperedge is present iff the miniball radius
/// of its coordinates is <= r (ties count as present).
bool hyperedge_present(const Eigen::MatrixXd& coords, const Edge& edge, double r);

/// Order-k sets of the Cech complex C_r: pairwise graph at ||u_i - u_j|| <= 2r,
/// k-clique expansion as the simplicial necessary condition, miniball filter.
/// Output in lexicographic order.
std::vector<Edge> cech_k_layer(const Eigen::MatrixXd& coords, double r, int k);

/// Non-simplicial random geometric hypergraph: union over k of the exactly
/// order-k layer of C_{r_k}. `order_cap` guards against clique explosion for
/// large K; pass a larger cap deliberately to raise it.
Hypergraph build_nsrgh(const Eigen::MatrixXd& coords, const RadiusSchedule& radii,
                       int order_cap = 6);

} // namespace lsh
