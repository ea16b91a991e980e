#include "lsh/hypergraph.hpp"

#include <algorithm>
#include <string>

#include "lsh/combinatorics.hpp"

namespace lsh {

namespace {

std::string edge_to_string(const Edge& e) {
    std::string s = "{";
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(e[i]);
    }
    return s + "}";
}

} // namespace

Hypergraph::Hypergraph(int n_nodes, int max_order) : n_nodes_(n_nodes), max_order_(max_order) {
    if (n_nodes < 1) throw ConfigError("hypergraph: node count must be positive");
    if (max_order < 2 || max_order > n_nodes)
        throw ConfigError("hypergraph: max order must satisfy 2 <= K <= N, got K=" +
                          std::to_string(max_order) + " N=" + std::to_string(n_nodes));
}

Hypergraph Hypergraph::from_edges(int n_nodes, int max_order, const std::vector<Edge>& edges) {
    Hypergraph h(n_nodes, max_order);
    for (const Edge& e : edges) h.add_edge(e);
    return h;
}

void Hypergraph::validate_edge(const Edge& e) const {
    if (e.size() < 2)
        throw DataError("hyperedge " + edge_to_string(e) + " has order < 2");
    if (static_cast<int>(e.size()) > max_order_)
        throw DataError("hyperedge " + edge_to_string(e) + " exceeds max order " +
                        std::to_string(max_order_));
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] < 0 || e[i] >= n_nodes_)
            throw DataError("hyperedge " + edge_to_string(e) + " has node index out of [0, " +
                            std::to_string(n_nodes_) + ")");
        if (i > 0 && e[i] <= e[i - 1])
            throw DataError("hyperedge " + edge_to_string(e) + " is not strictly increasing");
    }
}

bool Hypergraph::add_edge(Edge e) {
    validate_edge(e);
    return edges_.insert(std::move(e)).second;
}

std::size_t Hypergraph::n_edges(int order) const {
    std::size_t n = 0;
    for (const Edge& e : edges_)
        if (static_cast<int>(e.size()) == order) ++n;
    return n;
}

std::vector<Edge> Hypergraph::edges_of_order(int order) const {
    std::vector<Edge> out;
    for (const Edge& e : edges_)
        if (static_cast<int>(e.size()) == order) out.push_back(e);
    return out;
}

DegreeVector::DegreeVector(int n_nodes, int max_order)
    : n_nodes_(n_nodes),
      max_order_(max_order),
      counts_(static_cast<std::size_t>(n_nodes) * (max_order - 1), 0) {}

int DegreeVector::at(int node, int order) const {
    return counts_[static_cast<std::size_t>(order - 2) * n_nodes_ + node];
}

int& DegreeVector::at(int node, int order) {
    return counts_[static_cast<std::size_t>(order - 2) * n_nodes_ + node];
}

int DegreeVector::total(int node) const {
    int sum = 0;
    for (int k = 2; k <= max_order_; ++k) sum += at(node, k);
    return sum;
}

const DiscrepancyCounts::Row& DiscrepancyCounts::order(int k) const {
    if (k < 2 || k > max_order) throw ConfigError("discrepancy: order out of range");
    return rows[static_cast<std::size_t>(k - 2)];
}

DiscrepancyCounts::Row& DiscrepancyCounts::order(int k) {
    if (k < 2 || k > max_order) throw ConfigError("discrepancy: order out of range");
    return rows[static_cast<std::size_t>(k - 2)];
}

DegreeVector degree_sequence(const Hypergraph& h) {
    DegreeVector deg(h.n_nodes(), h.max_order());
    for (const Edge& e : h.edges())
        for (int node : e) ++deg.at(node, static_cast<int>(e.size()));
    return deg;
}

DiscrepancyCounts discrepancy_counts(const Hypergraph& g, const Hypergraph& h) {
    if (g.n_nodes() != h.n_nodes() || g.max_order() != h.max_order())
        throw DataError("discrepancy: hypergraphs must share N and K");

    DiscrepancyCounts counts;
    counts.max_order = g.max_order();
    counts.rows.assign(static_cast<std::size_t>(g.max_order() - 1), {});

    std::vector<std::int64_t> ng(g.max_order() + 1, 0), nh(g.max_order() + 1, 0);
    for (const Edge& e : g.edges()) ++ng[e.size()];
    for (const Edge& e : h.edges()) ++nh[e.size()];

    // d11 by intersection of the stored edge sets; the remaining cells follow
    // from per-order totals without touching the full hyperedge space.
    std::vector<std::int64_t> d11(g.max_order() + 1, 0);
    const Hypergraph& small = g.n_edges() <= h.n_edges() ? g : h;
    const Hypergraph& large = g.n_edges() <= h.n_edges() ? h : g;
    for (const Edge& e : small.edges())
        if (large.contains(e)) ++d11[e.size()];

    for (int k = 2; k <= g.max_order(); ++k) {
        auto& row = counts.order(k);
        row.d11 = d11[k];
        row.d10 = ng[k] - d11[k];
        row.d01 = nh[k] - d11[k];
        row.d00 = binomial(g.n_nodes(), k) - row.d11 - row.d10 - row.d01;
    }
    return counts;
}

std::int64_t hamming_distance(const Hypergraph& g, const Hypergraph& h, int k) {
    if (k < 2 || k > g.max_order())
        throw ConfigError("hamming distance: order " + std::to_string(k) + " out of range");
    const auto counts = discrepancy_counts(g, h);
    const auto& row = counts.order(k);
    return row.d10 + row.d01;
}

Hypergraph project_to_graph(const Hypergraph& h) {
    Hypergraph graph(h.n_nodes(), 2);
    for (const Edge& e : h.edges())
        for (std::size_t a = 0; a < e.size(); ++a)
            for (std::size_t b = a + 1; b < e.size(); ++b)
                graph.add_edge({e[a], e[b]});
    return graph;
}

} // namespace lsh
