#include "lsh/predictive.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lsh/combinatorics.hpp"

namespace lsh {

Eigen::MatrixXd place_new_nodes(const PredictiveModel& model, int n_star, Placement placement,
                                RngStream& rng) {
    const int d = static_cast<int>(model.mu_hat.size());
    if (n_star == 0) return Eigen::MatrixXd(0, d);

    const int n_obs = static_cast<int>(model.u_hat.rows());
    const int n_draw = placement == Placement::gaussian ? n_star : n_obs + n_star;

    Eigen::MatrixXd draws(n_draw, d);
    Eigen::LLT<Eigen::MatrixXd> llt(model.sigma_hat);
    if (llt.info() != Eigen::Success)
        throw ConfigError("predictive: Sigma must be positive definite");
    for (int i = 0; i < n_draw; ++i) {
        Eigen::VectorXd z(d);
        for (int l = 0; l < d; ++l) z(l) = rng.normal();
        draws.row(i) = (model.mu_hat + llt.matrixL() * z).transpose();
    }
    if (placement == Placement::gaussian) return draws;

    // Keep the n_star coordinates farthest from mu.
    std::vector<int> idx(static_cast<std::size_t>(n_draw));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return (draws.row(a).transpose() - model.mu_hat).squaredNorm() >
               (draws.row(b).transpose() - model.mu_hat).squaredNorm();
    });
    Eigen::MatrixXd out(n_star, d);
    for (int i = 0; i < n_star; ++i) out.row(i) = draws.row(idx[static_cast<std::size_t>(i)]);
    return out;
}

namespace {

bool involves_new_node(const Edge& e, int n_obs) { return e.back() >= n_obs; }

} // namespace

Hypergraph predictive_replicate(const Hypergraph& h_obs, const PredictiveModel& model,
                                const Eigen::MatrixXd& new_coords, RngStream& rng) {
    const int n_obs = h_obs.n_nodes();
    const int n_star = static_cast<int>(new_coords.rows());
    const int n_total = n_obs + n_star;
    const int K = h_obs.max_order();

    Hypergraph out(n_total, K);
    for (const Edge& e : h_obs.edges()) out.add_edge(e);
    if (n_star == 0) return out;

    Eigen::MatrixXd coords(n_total, new_coords.cols());
    coords.topRows(n_obs) = model.u_hat;
    coords.bottomRows(n_star) = new_coords;

    // Candidate space: hyperedges involving at least one new node. The
    // geometric layer is the nsRGH on the enlarged configuration restricted
    // to those candidates; noise flips act on the same candidate space only,
    // leaving the observed hyperedges untouched.
    const Hypergraph induced = build_nsrgh(coords, model.r_hat, model.order_cap);

    for (int k = 2; k <= K; ++k) {
        const double p_off = model.noise_hat.flip_off(k);
        const double p_on = model.noise_hat.flip_on(k);

        EdgeSet present;
        for (const Edge& e : induced.edges_of_order(k))
            if (involves_new_node(e, n_obs)) present.insert(e);

        EdgeSet kept;
        for (const Edge& e : present)
            if (!rng.bernoulli(p_off)) kept.insert(e);

        const std::int64_t candidates = binomial(n_total, k) - binomial(n_obs, k);
        const std::int64_t absent = candidates - static_cast<std::int64_t>(present.size());
        const long n_flip = rng.binomial(absent, p_on);
        long placed = 0;
        long guard = 0;
        while (placed < n_flip) {
            if (++guard > 1000000)
                throw NumericError("predictive: modification sampling stalled");
            Edge e = sample_uniform_edge(n_total, k, rng);
            if (!involves_new_node(e, n_obs)) continue;
            if (present.count(e) || kept.count(e)) continue;
            kept.insert(std::move(e));
            ++placed;
        }

        for (const Edge& e : kept)
            if (!out.contains(e)) out.add_edge(e);
    }
    return out;
}

std::vector<DegreeVector> predictive_degrees(const Hypergraph& h_obs, const PredictiveModel& model,
                                             int n_star, int n_rep, Placement placement,
                                             RngStream& rng) {
    std::vector<DegreeVector> reps;
    reps.reserve(static_cast<std::size_t>(n_rep));
    for (int rep = 0; rep < n_rep; ++rep) {
        const Eigen::MatrixXd coords = place_new_nodes(model, n_star, placement, rng);
        const Hypergraph h_star = predictive_replicate(h_obs, model, coords, rng);
        reps.push_back(degree_sequence(h_star));
    }
    return reps;
}

PredictiveMotifs predictive_motifs(const Hypergraph& h_obs, const PredictiveModel& model,
                                   int n_star, int n_rep, const std::vector<MotifSpec>& specs,
                                   Placement placement, RngStream& rng) {
    PredictiveMotifs out;
    for (const MotifSpec& spec : specs) out.names.push_back(spec.name);

    // Embeddings whose image avoids the new nodes see exactly the observed
    // edge set, so the per-spec baseline is constant across replicates.
    std::vector<std::int64_t> baseline;
    for (const MotifSpec& spec : specs) baseline.push_back(count_motif(h_obs, spec));

    for (int rep = 0; rep < n_rep; ++rep) {
        const Eigen::MatrixXd coords = place_new_nodes(model, n_star, placement, rng);
        const Hypergraph h_star = predictive_replicate(h_obs, model, coords, rng);
        std::vector<std::int64_t> totals, attributed;
        for (std::size_t s = 0; s < specs.size(); ++s) {
            const std::int64_t total = count_motif(h_star, specs[s]);
            totals.push_back(total);
            attributed.push_back(total - baseline[s]);
        }
        out.total.push_back(std::move(totals));
        out.attributed.push_back(std::move(attributed));
    }
    return out;
}

QqTable qq_table(std::vector<double> sample_a, std::vector<double> sample_b) {
    if (sample_a.empty() || sample_b.empty())
        throw ConfigError("qq table: samples must be non-empty");
    std::sort(sample_a.begin(), sample_a.end());
    std::sort(sample_b.begin(), sample_b.end());

    auto quantile = [](const std::vector<double>& sorted, double pct) {
        const double pos = pct / 100.0 * static_cast<double>(sorted.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
        const double frac = pos - static_cast<double>(lo);
        return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
    };

    QqTable table;
    for (int p = 1; p <= 99; ++p) {
        table.percents.push_back(p);
        table.a.push_back(quantile(sample_a, p));
        table.b.push_back(quantile(sample_b, p));
    }
    return table;
}

} // namespace lsh
