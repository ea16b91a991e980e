#include "lsh/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lsh/combinatorics.hpp"

namespace lsh {

void BetaModelParams::validate() const {
    if (beta.size() < 2) throw ConfigError("beta model: need at least two nodes");
    if (max_order < 2 || max_order > n_nodes())
        throw ConfigError("beta model: max order must satisfy 2 <= K <= N");
    for (double b : beta)
        if (!std::isfinite(b)) throw ConfigError("beta model: parameters must be finite");
}

void LcaModelParams::validate() const {
    if (n_nodes < 2) throw ConfigError("lca model: need at least two nodes");
    if (n_edges < 1) throw ConfigError("lca model: need at least one hyperedge");
    const std::size_t t = topic_probs.size(), s = size_probs.size();
    if (t == 0 || s == 0) throw ConfigError("lca model: empty simplex");
    auto simplex = [](const std::vector<double>& v, const char* name) {
        double total = 0.0;
        for (double p : v) {
            if (!(p >= 0.0)) throw ConfigError(std::string("lca model: ") + name + " must be >= 0");
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw ConfigError(std::string("lca model: ") + name + " must sum to 1");
    };
    simplex(topic_probs, "pi");
    simplex(size_probs, "tau");
    if (alpha.size() != s) throw ConfigError("lca model: alpha length must match tau");
    if (std::abs(alpha.back() - 1.0) > 1e-12)
        throw ConfigError("lca model: alpha_S must be 1 for identifiability");
    if (membership.size() != static_cast<std::size_t>(n_nodes))
        throw ConfigError("lca model: phi must have one row per node");
    for (const auto& row : membership) {
        if (row.size() != t) throw ConfigError("lca model: phi rows must have T entries");
        for (std::size_t j = 0; j < t; ++j)
            for (std::size_t l = 0; l < s; ++l)
                if (!(alpha[l] * row[j] >= 0.0 && alpha[l] * row[j] <= 1.0))
                    throw ConfigError("lca model: alpha_s * phi_it must lie in [0,1]");
    }
}

Hypergraph sample_beta_model(const BetaModelParams& params, RngStream& rng) {
    params.validate();
    const int n = params.n_nodes();
    const int K = params.max_order;

    // This model has no sparse shortcut: the hyperedge space is enumerated.
    std::int64_t space = 0;
    for (int k = 2; k <= K; ++k) {
        space += binomial(n, k);
        if (space > (std::int64_t{1} << 24))
            throw ConfigError("beta model: hyperedge space too large to enumerate (N=" +
                              std::to_string(n) + ", K=" + std::to_string(K) + ")");
    }

    Hypergraph h(n, K);
    for (int k = 2; k <= K; ++k) {
        Edge e(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) e[static_cast<std::size_t>(j)] = j;
        while (true) {
            double s = 0.0;
            for (int v : e) s += params.beta[static_cast<std::size_t>(v)];
            const double p = 1.0 / (1.0 + std::exp(-s));
            if (rng.bernoulli(p)) h.add_edge(e);

            int j = k - 1;
            while (j >= 0 && e[static_cast<std::size_t>(j)] == n - k + j) --j;
            if (j < 0) break;
            ++e[static_cast<std::size_t>(j)];
            for (int m = j + 1; m < k; ++m)
                e[static_cast<std::size_t>(m)] = e[static_cast<std::size_t>(m - 1)] + 1;
        }
    }
    return h;
}

std::vector<int> lca_draw_members(const LcaModelParams& params, RngStream& rng) {
    auto pick = [&rng](const std::vector<double>& probs) {
        const double u = rng.uniform();
        double acc = 0.0;
        for (std::size_t c = 0; c < probs.size(); ++c) {
            acc += probs[c];
            if (u <= acc) return c;
        }
        return probs.size() - 1;
    };
    const std::size_t t = pick(params.topic_probs);
    const std::size_t s = pick(params.size_probs);

    std::vector<int> members;
    for (int i = 0; i < params.n_nodes; ++i)
        if (rng.bernoulli(params.alpha[s] * params.membership[static_cast<std::size_t>(i)][t]))
            members.push_back(i);
    return members;
}

LcaSample sample_lca_model(const LcaModelParams& params, RngStream& rng) {
    params.validate();
    constexpr int retry_limit = 1000;

    std::vector<std::vector<int>> memberships;
    int max_size = 2;
    for (int j = 0; j < params.n_edges; ++j) {
        std::vector<int> members;
        int tries = 0;
        do {
            if (++tries > retry_limit)
                throw ConfigError("lca model: degenerate parameters, hyperedges keep drawing "
                                  "fewer than two members");
            members = lca_draw_members(params, rng);
        } while (members.size() < 2);
        max_size = std::max(max_size, static_cast<int>(members.size()));
        memberships.push_back(std::move(members));
    }

    LcaSample out{std::move(memberships), Hypergraph(params.n_nodes, max_size)};
    for (const auto& members : out.memberships) out.hypergraph.add_edge(members);
    return out;
}

} // namespace lsh
