#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "lsh/motifs.hpp"
#include "oracles.hpp"

using namespace lsh;

namespace {

// brute-force: enumerate every injective edge-preserving map via subsets and
// permutations, then divide by the pattern's self-map count
std::int64_t ordered_embeddings(const Hypergraph& h, const Hypergraph& pattern,
                                const std::vector<int>& subset) {
    std::vector<int> perm(subset);
    std::sort(perm.begin(), perm.end());
    std::int64_t hits = 0;
    do {
        bool ok = true;
        for (const Edge& e : pattern.edges()) {
            Edge image;
            for (int v : e) image.push_back(perm[static_cast<std::size_t>(v)]);
            std::sort(image.begin(), image.end());
            if (!h.contains(image)) {
                ok = false;
                break;
            }
        }
        if (ok) ++hits;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return hits;
}

std::int64_t brute_count(const Hypergraph& h, const Hypergraph& pattern) {
    const int m = pattern.n_nodes();
    std::int64_t total = 0;
    oracle::for_each_subset(h.n_nodes(), m, [&](const std::vector<int>& subset) {
        total += ordered_embeddings(h, pattern, subset);
    });
    std::vector<int> self(static_cast<std::size_t>(m));
    std::iota(self.begin(), self.end(), 0);
    return total / ordered_embeddings(pattern, pattern, self);
}

MotifSpec spec_of(const std::string& name) {
    for (auto& spec : default_motifs())
        if (spec.name == name) return spec;
    throw std::runtime_error("unknown motif " + name);
}

} // namespace

TEST_CASE("count_motif worked examples") {
    // triangles in K4: C(4,3) = 4
    std::vector<Edge> k4;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) k4.push_back({i, j});
    const auto complete4 = Hypergraph::from_edges(4, 2, k4);
    CHECK(count_motif(complete4, spec_of("triangle")) == 4);

    // one order-3 hyperedge template counts stored order-3 edges
    const auto h = Hypergraph::from_edges(6, 3, {{0, 1, 2}, {1, 2, 3}, {3, 4, 5}});
    CHECK(count_motif(h, spec_of("h1")) == 3);

    // h3: the first two hyperedges share exactly two nodes
    CHECK(count_motif(h, spec_of("h3")) == 1);

    // star counts follow the degree formula
    const auto star = Hypergraph::from_edges(5, 2, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CHECK(count_motif(star, spec_of("star3")) == 4); // C(4,3)
    CHECK(count_motif(star, spec_of("star4")) == 1); // C(4,4)
    CHECK(count_motif(star, spec_of("m1")) == 6);    // C(4,2) 2-paths through the hub

    // m2: a 4-cycle
    const auto cycle = Hypergraph::from_edges(4, 2, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    CHECK(count_motif(cycle, spec_of("m2")) == 1);
    CHECK(count_motif(complete4, spec_of("m2")) == 3);
}

TEST_CASE("count_motif equals subset enumeration on random instances") {
    RngStream rng(901);
    const auto specs = default_motifs();
    for (int rep = 0; rep < 12; ++rep) {
        const Hypergraph h = oracle::random_hypergraph(7, 3, 0.25, rng);
        for (const auto& spec : specs)
            CHECK(count_motif(h, spec) == brute_count(h, spec.pattern));

        // degree-formula identities for the star family and 2-paths
        std::int64_t star3 = 0, star4 = 0, paths = 0;
        const Hypergraph pairs_only =
            Hypergraph::from_edges(h.n_nodes(), 2, h.edges_of_order(2));
        const DegreeVector d2 = degree_sequence(pairs_only);
        for (int i = 0; i < h.n_nodes(); ++i) {
            const std::int64_t di = d2.at(i, 2);
            star3 += di * (di - 1) * (di - 2) / 6;
            star4 += di * (di - 1) * (di - 2) * (di - 3) / 24;
            paths += di * (di - 1) / 2;
        }
        CHECK(count_motif(h, spec_of("star3")) == star3);
        CHECK(count_motif(h, spec_of("star4")) == star4);
        CHECK(count_motif(h, spec_of("m1")) == paths);
    }
}

TEST_CASE("count_motif is invariant under node relabelling") {
    RngStream rng(902);
    const Hypergraph h = oracle::random_hypergraph(7, 3, 0.3, rng);

    // relabel by a fixed permutation
    std::vector<int> perm{3, 5, 0, 6, 1, 4, 2};
    Hypergraph relabelled(7, 3);
    for (const Edge& e : h.edges()) {
        Edge image;
        for (int v : e) image.push_back(perm[static_cast<std::size_t>(v)]);
        std::sort(image.begin(), image.end());
        relabelled.add_edge(image);
    }
    for (const auto& spec : default_motifs())
        CHECK(count_motif(h, spec) == count_motif(relabelled, spec));
}

TEST_CASE("oversized template is rejected") {
    std::vector<Edge> edges;
    for (int i = 1; i < 6; ++i) edges.push_back({0, i});
    const MotifSpec big{"star5", Hypergraph::from_edges(6, 2, edges)};
    const auto h = Hypergraph::from_edges(3, 2, {{0, 1}});
    CHECK_THROWS_AS(count_motif(h, big), ConfigError);
}

TEST_CASE("summarize panels") {
    const auto specs = default_motifs();

    const Hypergraph empty(5, 3);
    const SummaryPanel zero = summarize(empty, specs);
    CHECK(zero.density_by_order[0] == 0.0);
    CHECK(zero.density_by_order[1] == 0.0);
    for (double p : zero.degree_percentiles) CHECK(p == 0.0);
    for (const auto& [name, count] : zero.motif_counts) CHECK(count == 0);

    std::vector<Edge> k4;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) k4.push_back({i, j});
    const SummaryPanel full = summarize(Hypergraph::from_edges(4, 2, k4), specs);
    CHECK(full.density_by_order[0] == 1.0);
    CHECK(full.degree_percentiles[2] == 3.0); // every node has degree 3
    CHECK(full.order_percentiles[0] == 2.0);

    // densities recompute from edge counts
    RngStream rng(903);
    const Hypergraph h = oracle::random_hypergraph(8, 3, 0.2, rng);
    const SummaryPanel panel = summarize(h, specs);
    CHECK(panel.density_by_order[0] ==
          doctest::Approx(static_cast<double>(h.n_edges(2)) / 28.0));
    CHECK(panel.density_by_order[1] ==
          doctest::Approx(static_cast<double>(h.n_edges(3)) / 56.0));
}
