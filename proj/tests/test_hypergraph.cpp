#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "lsh/combinatorics.hpp"
#include "lsh/hypergraph.hpp"
#include "lsh/hypergraph_io.hpp"
#include "oracles.hpp"

using namespace lsh;

TEST_CASE("hypergraph validation") {
    Hypergraph h(5, 3);
    CHECK(h.add_edge({0, 1}));
    CHECK_FALSE(h.add_edge({0, 1})); // set semantics
    CHECK(h.add_edge({0, 1, 2}));
    CHECK_THROWS_AS(h.add_edge({1}), DataError);
    CHECK_THROWS_AS(h.add_edge({0, 1, 2, 3}), DataError);
    CHECK_THROWS_AS(h.add_edge({1, 0}), DataError);
    CHECK_THROWS_AS(h.add_edge({0, 5}), DataError);
    CHECK_THROWS_AS(Hypergraph(3, 4), ConfigError);
    CHECK(h.n_edges() == 2);
    CHECK(h.n_edges(2) == 1);
}

TEST_CASE("degree_sequence examples") {
    Hypergraph empty(5, 2);
    const DegreeVector zero = degree_sequence(empty);
    for (int i = 0; i < 5; ++i) CHECK(zero.total(i) == 0);

    const auto h = Hypergraph::from_edges(3, 3, {{0, 1}, {0, 1, 2}});
    const DegreeVector deg = degree_sequence(h);
    CHECK(deg.total(0) == 2);
    CHECK(deg.total(1) == 2);
    CHECK(deg.total(2) == 1);
    CHECK(deg.at(0, 2) == 1);
    CHECK(deg.at(0, 3) == 1);
}

TEST_CASE("degree_sequence matches membership scan and sum rule") {
    RngStream rng(41);
    for (int rep = 0; rep < 20; ++rep) {
        const Hypergraph h = oracle::random_hypergraph(8, 3, 0.25, rng);
        const DegreeVector deg = degree_sequence(h);
        for (int i = 0; i < 8; ++i)
            for (int k = 2; k <= 3; ++k) {
                int count = 0;
                for (const Edge& e : h.edges())
                    if (static_cast<int>(e.size()) == k &&
                        std::find(e.begin(), e.end(), i) != e.end())
                        ++count;
                CHECK(deg.at(i, k) == count);
            }
        for (int k = 2; k <= 3; ++k) {
            long total = 0;
            for (int i = 0; i < 8; ++i) total += deg.at(i, k);
            CHECK(total == static_cast<long>(k * h.n_edges(k)));
        }
    }
}

TEST_CASE("discrepancy_counts examples") {
    const auto g = Hypergraph::from_edges(3, 2, {{0, 1}});
    const auto h = Hypergraph::from_edges(3, 2, {{0, 1}, {0, 2}});
    const auto counts = discrepancy_counts(g, h);
    CHECK(counts.order(2).d11 == 1);
    CHECK(counts.order(2).d10 == 0);
    CHECK(counts.order(2).d01 == 1);
    CHECK(counts.order(2).d00 == 1);

    // identical hypergraphs
    const auto same = discrepancy_counts(h, h);
    CHECK(same.order(2).d10 == 0);
    CHECK(same.order(2).d01 == 0);
    CHECK(same.order(2).d11 == 2);
    CHECK(same.order(2).d00 == 1);

    const auto other = Hypergraph::from_edges(4, 2, {{0, 1}});
    CHECK_THROWS_AS(discrepancy_counts(g, other), DataError);
}

TEST_CASE("discrepancy_counts equals naive enumeration and is swap-symmetric") {
    RngStream rng(7);
    for (int rep = 0; rep < 30; ++rep) {
        const Hypergraph g = oracle::random_hypergraph(8, 3, 0.2, rng);
        const Hypergraph h = oracle::random_hypergraph(8, 3, 0.2, rng);
        const auto fast = discrepancy_counts(g, h);
        const auto swapped = discrepancy_counts(h, g);
        for (int k = 2; k <= 3; ++k) {
            const auto naive = oracle::naive_discrepancy(g, h, k);
            CHECK(fast.order(k).d11 == naive.d11);
            CHECK(fast.order(k).d10 == naive.d10);
            CHECK(fast.order(k).d01 == naive.d01);
            CHECK(fast.order(k).d00 == naive.d00);
            CHECK(fast.order(k).total() == lsh::binomial(8, k));
            CHECK(swapped.order(k).d10 == fast.order(k).d01);
            CHECK(swapped.order(k).d01 == fast.order(k).d10);
            CHECK(swapped.order(k).d11 == fast.order(k).d11);
        }
    }
}

TEST_CASE("hamming_distance examples and metric properties") {
    const auto g = Hypergraph::from_edges(3, 2, {{0, 1}});
    const auto h = Hypergraph::from_edges(3, 2, {{0, 1}, {0, 2}});
    CHECK(hamming_distance(g, h, 2) == 1);
    CHECK(hamming_distance(g, g, 2) == 0);
    CHECK_THROWS_AS(hamming_distance(g, h, 3), ConfigError);

    const auto a = Hypergraph::from_edges(6, 2, {{0, 1}, {2, 3}});
    const auto b = Hypergraph::from_edges(6, 2, {{0, 2}, {1, 3}, {4, 5}});
    CHECK(hamming_distance(a, b, 2) == 5); // disjoint edge sets: 2 + 3

    RngStream rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        const Hypergraph x = oracle::random_hypergraph(6, 2, 0.3, rng);
        const Hypergraph y = oracle::random_hypergraph(6, 2, 0.3, rng);
        const Hypergraph z = oracle::random_hypergraph(6, 2, 0.3, rng);
        const auto dxy = hamming_distance(x, y, 2);
        const auto dyx = hamming_distance(y, x, 2);
        CHECK(dxy == dyx);
        CHECK(hamming_distance(x, y, 2) <= hamming_distance(x, z, 2) + hamming_distance(z, y, 2));
        if (dxy == 0) CHECK(x == y);
    }
}

TEST_CASE("project_to_graph examples") {
    const auto clique = project_to_graph(Hypergraph::from_edges(3, 3, {{0, 1, 2}}));
    CHECK(clique.n_edges() == 3);
    CHECK(clique.contains({0, 1}));
    CHECK(clique.contains({0, 2}));
    CHECK(clique.contains({1, 2}));

    const auto pair = project_to_graph(Hypergraph::from_edges(3, 2, {{0, 1}}));
    CHECK(pair.n_edges() == 1);

    // two hyperedges {0,1} and {0,1,2} project onto the complete graph on 3 nodes
    const auto fig = project_to_graph(Hypergraph::from_edges(3, 3, {{0, 1}, {0, 1, 2}}));
    CHECK(fig.n_edges() == 3);
}

TEST_CASE("hypergraph file round-trip") {
    std::istringstream in(
        "# a comment\n"
        "nodes=5 max_order=3\n"
        "0,1\n"
        "2,1,0\n"
        "3\n"
        "0,1\n"
        "4,4,3\n");
    std::vector<std::string> warnings;
    const Hypergraph h = parse_hypergraph(in, &warnings);
    CHECK(h.n_nodes() == 5);
    CHECK(h.max_order() == 3);
    CHECK(h.contains({0, 1}));
    CHECK(h.contains({0, 1, 2}));
    CHECK(h.contains({3, 4}));              // repeated index collapsed
    CHECK(warnings.size() == 3);            // order-1 drop, duplicate, repeated index

    std::ostringstream out;
    serialize_hypergraph(h, out);
    std::istringstream again(out.str());
    const Hypergraph h2 = parse_hypergraph(again);
    CHECK(h == h2);

    std::ostringstream out2;
    serialize_hypergraph(h2, out2);
    CHECK(out.str() == out2.str());
}

TEST_CASE("hypergraph file errors") {
    std::istringstream no_header("0,1\n");
    CHECK_THROWS_AS(parse_hypergraph(no_header), DataError);

    std::istringstream too_big(
        "nodes=4 max_order=2\n"
        "0,1,2\n");
    CHECK_THROWS_AS(parse_hypergraph(too_big), DataError);

    std::istringstream bad_index(
        "nodes=4 max_order=2\n"
        "0,9\n");
    CHECK_THROWS_AS(parse_hypergraph(bad_index), DataError);

    std::istringstream garbage(
        "nodes=4 max_order=2\n"
        "0,x\n");
    CHECK_THROWS_AS(parse_hypergraph(garbage), DataError);
}

TEST_CASE("binomial overflow guard") {
    CHECK(lsh::binomial(8, 3) == 56);
    CHECK(lsh::binomial(5, 0) == 1);
    CHECK(lsh::binomial(4, 5) == 0);
    CHECK_THROWS_AS(lsh::binomial(300, 150), NumericError);
}
