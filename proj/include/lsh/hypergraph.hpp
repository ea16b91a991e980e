#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "lsh/errors.hpp"

namespace lsh {

/// A hyperedge: strictly increasing tuple of 0-based node indices, length >= 2.
using Edge = std::vector<int>;

/// Orders edges by (order, lexicographic tuple) for deterministic iteration.
struct EdgeOrderLess {
    bool operator()(const Edge& a, const Edge& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

using EdgeSet = std::set<Edge, EdgeOrderLess>;

/// Hypergraph on N labelled nodes with hyperedges of order 2..K.
/// Immutable in practice: operations elsewhere treat it as a value type.
class Hypergraph {
public:
    Hypergraph(int n_nodes, int max_order);

    static Hypergraph from_edges(int n_nodes, int max_order, const std::vector<Edge>& edges);

    int n_nodes() const { return n_nodes_; }
    int max_order() const { return max_order_; }

    /// Inserts a validated edge; returns false if it was already present.
    bool add_edge(Edge e);
    bool contains(const Edge& e) const { return edges_.count(e) > 0; }

    std::size_t n_edges() const { return edges_.size(); }
    std::size_t n_edges(int order) const;

    const EdgeSet& edges() const { return edges_; }
    std::vector<Edge> edges_of_order(int order) const;

    bool operator==(const Hypergraph& other) const = default;

private:
    void validate_edge(const Edge& e) const;

    int n_nodes_;
    int max_order_;
    EdgeSet edges_;
};

/// Per-node, per-order hyperedge membership counts.
class DegreeVector {
public:
    DegreeVector(int n_nodes, int max_order);

    int n_nodes() const { return n_nodes_; }
    int max_order() const { return max_order_; }

    /// Count of order-k hyperedges containing node i.
    int at(int node, int order) const;
    int& at(int node, int order);
    /// Total degree of node i across all orders.
    int total(int node) const;

private:
    int n_nodes_;
    int max_order_;
    std::vector<int> counts_; // (order - 2) * n_nodes + node
};

/// Per-order contingency counts between an induced hypergraph g and an
/// observed hypergraph h over all possible hyperedges:
///   d11 present in both, d10 only in g, d01 only in h, d00 in neither.
struct DiscrepancyCounts {
    struct Row {
        std::int64_t d11 = 0;
        std::int64_t d10 = 0;
        std::int64_t d01 = 0;
        std::int64_t d00 = 0;
        std::int64_t total() const { return d11 + d10 + d01 + d00; }
    };

    int max_order = 1;
    std::vector<Row> rows; // index k - 2

    const Row& order(int k) const;
    Row& order(int k);
};

DegreeVector degree_sequence(const Hypergraph& h);

/// Counts via per-order edge-set intersection; never enumerates the full
/// hyperedge space.
DiscrepancyCounts discrepancy_counts(const Hypergraph& g, const Hypergraph& h);

/// Hamming distance d10 + d01 restricted to order k.
std::int64_t hamming_distance(const Hypergraph& g, const Hypergraph& h, int k);

/// Pairwise projection: {i,j} is an edge iff some hyperedge contains both.
Hypergraph project_to_graph(const Hypergraph& h);

} // namespace lsh
