#include "lsh/motifs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lsh/combinatorics.hpp"

namespace lsh {

std::vector<MotifSpec> default_motifs() {
    std::vector<MotifSpec> specs;
    auto add = [&specs](const std::string& name, int n, int k, std::vector<Edge> edges) {
        specs.push_back({name, Hypergraph::from_edges(n, k, edges)});
    };
    add("triangle", 3, 2, {{0, 1}, {0, 2}, {1, 2}});
    add("star3", 4, 2, {{0, 1}, {0, 2}, {0, 3}});
    add("star4", 5, 2, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    add("h1", 3, 3, {{0, 1, 2}});
    add("h2", 4, 3, {{0, 1, 2}, {0, 3}});
    add("h3", 4, 3, {{0, 1, 2}, {0, 1, 3}});
    add("m1", 3, 2, {{0, 1}, {1, 2}});
    add("m2", 4, 2, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    add("m3", 3, 2, {{0, 1}, {0, 2}, {1, 2}});
    return specs;
}

namespace {

std::int64_t automorphism_count(const Hypergraph& pattern) {
    const int m = pattern.n_nodes();
    std::vector<int> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    std::int64_t autos = 0;
    do {
        bool ok = true;
        for (const Edge& e : pattern.edges()) {
            Edge image;
            image.reserve(e.size());
            for (int v : e) image.push_back(perm[static_cast<std::size_t>(v)]);
            std::sort(image.begin(), image.end());
            if (!pattern.contains(image)) {
                ok = false;
                break;
            }
        }
        if (ok) ++autos;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return autos;
}

struct EmbeddingSearch {
    const Hypergraph& host;
    const Hypergraph& pattern;
    // pattern edges indexed by the template node that completes them
    std::vector<std::vector<Edge>> edges_by_last;
    std::vector<int> assignment;
    std::vector<bool> used;
    std::int64_t count = 0;

    EmbeddingSearch(const Hypergraph& h, const Hypergraph& p)
        : host(h),
          pattern(p),
          edges_by_last(static_cast<std::size_t>(p.n_nodes())),
          assignment(static_cast<std::size_t>(p.n_nodes()), -1),
          used(static_cast<std::size_t>(h.n_nodes()), false) {
        for (const Edge& e : p.edges())
            edges_by_last[static_cast<std::size_t>(e.back())].push_back(e);
    }

    bool edges_ok(int t) {
        for (const Edge& e : edges_by_last[static_cast<std::size_t>(t)]) {
            Edge image;
            image.reserve(e.size());
            for (int v : e) image.push_back(assignment[static_cast<std::size_t>(v)]);
            std::sort(image.begin(), image.end());
            if (!host.contains(image)) return false;
        }
        return true;
    }

    void search(int t) {
        if (t == pattern.n_nodes()) {
            ++count;
            return;
        }
        for (int v = 0; v < host.n_nodes(); ++v) {
            if (used[static_cast<std::size_t>(v)]) continue;
            assignment[static_cast<std::size_t>(t)] = v;
            used[static_cast<std::size_t>(v)] = true;
            if (edges_ok(t)) search(t + 1);
            used[static_cast<std::size_t>(v)] = false;
            assignment[static_cast<std::size_t>(t)] = -1;
        }
    }
};

double percentile(std::vector<double> values, double pct) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const double pos = pct / 100.0 * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
    const double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

} // namespace

std::int64_t count_motif(const Hypergraph& h, const MotifSpec& spec) {
    if (spec.pattern.n_nodes() > 5)
        throw ConfigError("motif '" + spec.name + "': templates are capped at 5 nodes");
    if (spec.pattern.n_nodes() > h.n_nodes()) return 0;
    for (const Edge& e : spec.pattern.edges())
        if (static_cast<int>(e.size()) > h.max_order()) return 0;

    EmbeddingSearch search(h, spec.pattern);
    search.search(0);
    return search.count / automorphism_count(spec.pattern);
}

SummaryPanel summarize(const Hypergraph& h, const std::vector<MotifSpec>& specs) {
    SummaryPanel panel;
    for (int k = 2; k <= h.max_order(); ++k)
        panel.density_by_order.push_back(static_cast<double>(h.n_edges(k)) /
                                         static_cast<double>(binomial(h.n_nodes(), k)));

    const DegreeVector deg = degree_sequence(h);
    std::vector<double> totals;
    totals.reserve(static_cast<std::size_t>(h.n_nodes()));
    for (int i = 0; i < h.n_nodes(); ++i) totals.push_back(deg.total(i));

    std::vector<double> sizes;
    sizes.reserve(h.n_edges());
    for (const Edge& e : h.edges()) sizes.push_back(static_cast<double>(e.size()));

    const std::array<double, 5> pct{5.0, 25.0, 50.0, 75.0, 95.0};
    for (std::size_t i = 0; i < pct.size(); ++i) {
        panel.degree_percentiles[i] = percentile(totals, pct[i]);
        panel.order_percentiles[i] = percentile(sizes, pct[i]);
    }

    for (const MotifSpec& spec : specs)
        panel.motif_counts.emplace_back(spec.name, count_motif(h, spec));
    return panel;
}

} // namespace lsh
