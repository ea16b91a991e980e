#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lsh/hypergraph.hpp"

namespace lsh {

/// A small hypergraph template; occurrences are counted as non-induced
/// subgraph embeddings up to template automorphisms.
struct MotifSpec {
    std::string name;
    Hypergraph pattern;
};

/// The motif library used in the simulation studies: triangle, 3-star,
/// 4-star, one order-3 hyperedge (h1), an order-3 hyperedge with a pendant
/// pairwise edge (h2), two order-3 hyperedges sharing two nodes (h3), the
/// 2-path (m1), the 4-cycle (m2) and the triangle again under its study
/// alias (m3).
std::vector<MotifSpec> default_motifs();

/// Number of node-subset embeddings of the template into h: template edges
/// must be present, extra edges among the image are allowed, counted up to
/// template automorphisms. Templates are capped at 5 nodes.
std::int64_t count_motif(const Hypergraph& h, const MotifSpec& spec);

/// Per-order densities, degree and hyperedge-order percentiles
/// (5/25/50/75/95) and motif counts.
struct SummaryPanel {
    std::vector<double> density_by_order; // index k - 2
    std::array<double, 5> degree_percentiles{};
    std::array<double, 5> order_percentiles{};
    std::vector<std::pair<std::string, std::int64_t>> motif_counts;
};

SummaryPanel summarize(const Hypergraph& h, const std::vector<MotifSpec>& specs);

} // namespace lsh
