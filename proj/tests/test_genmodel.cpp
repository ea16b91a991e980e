#include <doctest.h>

#include <cmath>
#include <map>

#include "lsh/combinatorics.hpp"
#include "lsh/genmodel.hpp"
#include "oracles.hpp"

using namespace lsh;

TEST_CASE("noise params validation") {
    CHECK_THROWS_AS(NoiseParams::symmetric({1.2}), ConfigError);
    CHECK_THROWS_AS(NoiseParams::asymmetric({0.1}, {}), ConfigError);
    NoiseParams capped = NoiseParams::symmetric({0.1, 0.2});
    capped.caps = {0.05, 0.3};
    CHECK_THROWS_AS(capped.validate(), ConfigError);
    capped.caps = {0.15, 0.3};
    capped.validate();
}

TEST_CASE("sample_latents gaussian cases") {
    RngStream rng(301);

    // degenerate covariance test hook
    const LatentPrior point = LatentPrior::gaussian(Eigen::Vector2d(1.5, -2.0),
                                                    Eigen::Matrix2d::Zero());
    const Eigen::MatrixXd fixed = sample_latents(point, 4, rng);
    for (int i = 0; i < 4; ++i) {
        CHECK(fixed(i, 0) == 1.5);
        CHECK(fixed(i, 1) == -2.0);
    }

    // Monte Carlo mean bound at 10^5 draws
    const LatentPrior std2 = LatentPrior::gaussian(Eigen::Vector2d::Zero(),
                                                   Eigen::Matrix2d::Identity());
    const Eigen::MatrixXd draws = sample_latents(std2, 100000, rng);
    const double bound = 3.0 * std::sqrt(1.0 / 100000.0);
    CHECK(std::abs(draws.col(0).mean()) < bound);
    CHECK(std::abs(draws.col(1).mean()) < bound);

    Eigen::Matrix2d bad;
    bad << 1.0, 2.0, 2.0, 1.0; // indefinite
    CHECK_THROWS_AS(sample_latents(LatentPrior::gaussian(Eigen::Vector2d::Zero(), bad), 3, rng),
                    ConfigError);
}

TEST_CASE("sample_latents poisson process counts") {
    RngStream rng(302);
    PoissonProcess pp;
    pp.lower = Eigen::Vector2d(0, 0);
    pp.upper = Eigen::Vector2d(1, 1);
    pp.intensity = 50.0;
    const LatentPrior prior = LatentPrior::poisson(pp);

    // counts should follow Poisson(50): KS on the discrete CDF via jittering
    // is overkill; compare mean and variance instead, plus box containment.
    const int reps = 1000;
    double sum = 0.0, sumsq = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
        const Eigen::MatrixXd pts = sample_latents(prior, 0, rng);
        const double c = static_cast<double>(pts.rows());
        sum += c;
        sumsq += c * c;
        for (Eigen::Index i = 0; i < pts.rows(); ++i) {
            CHECK(pts(i, 0) >= 0.0);
            CHECK(pts(i, 0) <= 1.0);
        }
    }
    const double mean = sum / reps;
    const double var = sumsq / reps - mean * mean;
    CHECK(std::abs(mean - 50.0) < 3.0 * std::sqrt(50.0 / reps));
    CHECK(std::abs(var - 50.0) < 3.0 * 50.0 * std::sqrt(2.0 / reps)); // ~3 SE of a Poisson variance estimate
}

TEST_CASE("sample_latents mixture hits every component") {
    RngStream rng(303);
    GaussianMixture mix;
    mix.weights = {0.5, 0.5};
    mix.means = {Eigen::Vector2d(-10, 0), Eigen::Vector2d(10, 0)};
    mix.covs = {Eigen::Matrix2d::Identity() * 0.01, Eigen::Matrix2d::Identity() * 0.01};
    const Eigen::MatrixXd pts = sample_latents(LatentPrior::mixture(mix), 2000, rng);
    int left = 0;
    for (Eigen::Index i = 0; i < pts.rows(); ++i)
        if (pts(i, 0) < 0) ++left;
    CHECK(left > 800);
    CHECK(left < 1200);
}

TEST_CASE("sample_uniform_edge is uniform over tuples") {
    RngStream rng(304);
    std::map<Edge, long> counts;
    const long reps = 60000;
    for (long i = 0; i < reps; ++i) ++counts[sample_uniform_edge(6, 3, rng)];
    CHECK(counts.size() == 20);
    std::vector<long> observed;
    for (const auto& [e, c] : counts) observed.push_back(c);
    const std::vector<double> expected(20, 1.0 / 20.0);
    CHECK(oracle::chi_square_pvalue(observed, expected, reps) > 0.01);
}

TEST_CASE("apply_modification trivial cases") {
    RngStream rng(305);
    const auto g = Hypergraph::from_edges(5, 3, {{0, 1}, {1, 2, 3}});

    const Hypergraph same = apply_modification(g, NoiseParams::symmetric({0.0, 0.0}), rng);
    CHECK(same == g);

    // certain flip on an empty input yields the complete order-2 hypergraph
    const Hypergraph empty(4, 2);
    const Hypergraph full = apply_modification(empty, NoiseParams::symmetric({1.0}), rng);
    CHECK(full.n_edges(2) == 6);

    // certain flip on a full input empties it
    const Hypergraph emptied = apply_modification(full, NoiseParams::symmetric({1.0}), rng);
    CHECK(emptied.n_edges() == 0);
}

TEST_CASE("apply_modification per-edge marginals") {
    // phi = 0.05, N = 10, empty input: each pair present with frequency 0.05
    RngStream rng(306);
    const Hypergraph empty(10, 2);
    const NoiseParams noise = NoiseParams::symmetric({0.05});
    const int reps = 10000;
    std::map<Edge, long> hits;
    for (int rep = 0; rep < reps; ++rep) {
        const Hypergraph out = apply_modification(empty, noise, rng);
        for (const Edge& e : out.edges()) ++hits[e];
    }
    // 45 simultaneous checks: Bonferroni-adjusted z for familywise 1%
    const double se = std::sqrt(0.05 * 0.95 / reps);
    long pooled = 0;
    for (int i = 0; i < 10; ++i)
        for (int j = i + 1; j < 10; ++j) {
            const double freq = static_cast<double>(hits[{i, j}]) / reps;
            CHECK(std::abs(freq - 0.05) < 3.9 * se + 1e-12);
            pooled += hits[{i, j}];
        }
    const double pooled_freq = static_cast<double>(pooled) / (45.0 * reps);
    CHECK(std::abs(pooled_freq - 0.05) < 3.0 * se / std::sqrt(45.0));
}

TEST_CASE("fast modification matches per-edge Bernoulli flipping in distribution") {
    // N = 4, K = 2: 6 possible pairs, 64 joint states. Under independent
    // Bernoulli flips the state law is a product over edges.
    RngStream rng(307);
    const auto g = Hypergraph::from_edges(4, 2, {{0, 1}, {2, 3}});
    const double phi = 0.3;
    const NoiseParams noise = NoiseParams::symmetric({phi});

    std::vector<long> observed(64, 0);
    const long reps = 10000;
    for (long rep = 0; rep < reps; ++rep) {
        const Hypergraph out = apply_modification(g, noise, rng);
        int state = 0, bit = 0;
        oracle::for_each_subset(4, 2, [&](const std::vector<int>& e) {
            if (out.contains(e)) state |= 1 << bit;
            ++bit;
        });
        ++observed[static_cast<std::size_t>(state)];
    }

    std::vector<double> expected(64, 0.0);
    for (int state = 0; state < 64; ++state) {
        double p = 1.0;
        int bit = 0;
        oracle::for_each_subset(4, 2, [&](const std::vector<int>& e) {
            const bool present_in_g = g.contains(e);
            const bool present_out = (state >> bit) & 1;
            const double flip = present_in_g != present_out ? phi : 1.0 - phi;
            p *= flip;
            ++bit;
        });
        expected[static_cast<std::size_t>(state)] = p;
    }
    CHECK(oracle::chi_square_pvalue(observed, expected, reps) > 0.01);
}

TEST_CASE("modified-state marginal and flip independence") {
    // P(present in g*) = (1 - phi) [y=1] + phi [y=0], and flips of distinct
    // edges are uncorrelated.
    RngStream rng(308);
    const auto g = Hypergraph::from_edges(5, 2, {{0, 1}, {0, 2}, {3, 4}});
    const double phi = 0.2;
    const NoiseParams noise = NoiseParams::symmetric({phi});
    const long reps = 20000;

    const Edge present{0, 1}, absent{1, 2}, other{0, 2};
    long hit_present = 0, hit_absent = 0, joint = 0, hit_other = 0;
    for (long rep = 0; rep < reps; ++rep) {
        const Hypergraph out = apply_modification(g, noise, rng);
        const bool a = out.contains(present);
        const bool b = out.contains(other);
        hit_present += a;
        hit_other += b;
        joint += a && b;
        hit_absent += out.contains(absent);
    }
    const double se = std::sqrt(0.2 * 0.8 / static_cast<double>(reps));
    CHECK(std::abs(hit_present / static_cast<double>(reps) - 0.8) < 3 * se);
    CHECK(std::abs(hit_absent / static_cast<double>(reps) - 0.2) < 3 * se);

    const double pa = hit_present / static_cast<double>(reps);
    const double pb = hit_other / static_cast<double>(reps);
    const double cov = joint / static_cast<double>(reps) - pa * pb;
    CHECK(std::abs(cov) < 4.0 / std::sqrt(static_cast<double>(reps)));
}

TEST_CASE("sample_hypergraph noiseless identity and table-2 smoke") {
    RngStream rng(309);
    const LatentPrior prior = LatentPrior::gaussian(Eigen::Vector2d::Zero(),
                                                    Eigen::Matrix2d::Identity() * 0.25);
    RadiusSchedule radii{{0.18, 0.3, 0.35}};

    // zero noise: output equals the induced nsRGH of the same latents
    RngStream rng_a(5150), rng_b(5150);
    auto [h, u] = sample_hypergraph(prior, radii, NoiseParams::symmetric({0, 0, 0}), 20, rng_a);
    const Eigen::MatrixXd u_replay = sample_latents(prior, 20, rng_b);
    CHECK((u - u_replay).cwiseAbs().maxCoeff() == 0.0);
    CHECK(h == build_nsrgh(u, radii));

    // strongly correlated latent covariance, asymmetric noise
    Eigen::Matrix2d corr;
    corr << 1.0, 0.9, 0.9, 1.0;
    const LatentPrior lsh1 = LatentPrior::gaussian(Eigen::Vector2d::Zero(), 0.25 * corr);
    const NoiseParams noise =
        NoiseParams::asymmetric({0.01, 0.01, 0.01}, {0.01, 0.01, 0.01});
    auto [h1, u1] = sample_hypergraph(lsh1, radii, noise, 50, rng);
    CHECK(h1.n_nodes() == 50);
    CHECK(h1.max_order() == 4);
    CHECK(h1.n_edges() > 0);

    // tiny radii and zero noise give an empty hypergraph
    auto [h2, u2] = sample_hypergraph(prior, RadiusSchedule{{0.001, 0.002}},
                                      NoiseParams::symmetric({0, 0}), 10, rng);
    CHECK(h2.n_edges() == 0);
}

TEST_CASE("nsrgh sample can be non-simplicial") {
    // With r3 well above r2, order-3 layers routinely contain triples whose
    // pairs are absent; find a witness across seeds.
    RngStream rng(310);
    const LatentPrior prior = LatentPrior::gaussian(Eigen::Vector2d::Zero(),
                                                    Eigen::Matrix2d::Identity() * 0.25);
    RadiusSchedule radii{{0.1, 0.4}};
    bool witness = false;
    for (int rep = 0; rep < 200 && !witness; ++rep) {
        const Eigen::MatrixXd u = sample_latents(prior, 12, rng);
        const Hypergraph g = build_nsrgh(u, radii);
        for (const Edge& t : g.edges_of_order(3)) {
            for (std::size_t a = 0; a < 3 && !witness; ++a)
                for (std::size_t b = a + 1; b < 3 && !witness; ++b)
                    if (!g.contains({t[a], t[b]})) witness = true;
        }
    }
    CHECK(witness);
}
