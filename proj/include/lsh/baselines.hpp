#pragma once

#include <utility>
#include <vector>

#include "lsh/hypergraph.hpp"
#include "lsh/rng.hpp"

namespace lsh {

/// Node-parameter hypergraph model: every hyperedge e = {i_1..i_k} is present
/// independently with logistic(beta_{i_1} + ... + beta_{i_k}).
struct BetaModelParams {
    std::vector<double> beta;
    int max_order = 2;

    int n_nodes() const { return static_cast<int>(beta.size()); }
    void validate() const;
};

/// Latent class hypergraph model: each of the M hyperedges draws a topic t
/// and size label s, then includes node i with probability alpha_s phi_it.
struct LcaModelParams {
    int n_nodes = 0;
    int n_edges = 0;                             // M
    std::vector<double> topic_probs;             // pi, length T
    std::vector<double> size_probs;              // tau, length S
    std::vector<double> alpha;                   // length S, alpha_S = 1
    std::vector<std::vector<double>> membership; // phi, N x T

    void validate() const;
};

/// Enumerates the full hyperedge space (guarded by the overflow-checked
/// binomial bound) and flips each hyperedge independently.
Hypergraph sample_beta_model(const BetaModelParams& params, RngStream& rng);

/// One raw membership draw (topic, size, included nodes); may have fewer than
/// two members.
std::vector<int> lca_draw_members(const LcaModelParams& params, RngStream& rng);

struct LcaSample {
    std::vector<std::vector<int>> memberships; // per hyperedge, sorted node lists
    Hypergraph hypergraph;
};

/// Draws M hyperedges; draws with fewer than two members are redrawn (up to
/// 1000 retries each) because the hypergraph type excludes them.
LcaSample sample_lca_model(const LcaModelParams& params, RngStream& rng);

} // namespace lsh
