#include "lsh/genmodel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "lsh/combinatorics.hpp"

namespace lsh {

NoiseParams NoiseParams::symmetric(std::vector<double> phi_values) {
    NoiseParams p;
    p.mode = Mode::symmetric;
    p.phi = std::move(phi_values);
    p.validate();
    return p;
}

NoiseParams NoiseParams::asymmetric(std::vector<double> psi0_values,
                                    std::vector<double> psi1_values) {
    NoiseParams p;
    p.mode = Mode::asymmetric;
    p.psi0 = std::move(psi0_values);
    p.psi1 = std::move(psi1_values);
    p.validate();
    return p;
}

int NoiseParams::max_order() const {
    const auto& v = mode == Mode::symmetric ? phi : psi0;
    return static_cast<int>(v.size()) + 1;
}

double NoiseParams::flip_on(int k) const {
    return mode == Mode::symmetric ? phi[static_cast<std::size_t>(k - 2)]
                                   : psi0[static_cast<std::size_t>(k - 2)];
}

double NoiseParams::flip_off(int k) const {
    return mode == Mode::symmetric ? phi[static_cast<std::size_t>(k - 2)]
                                   : psi1[static_cast<std::size_t>(k - 2)];
}

double NoiseParams::cap(int k) const {
    if (caps.empty()) return 1.0;
    return caps[static_cast<std::size_t>(k - 2)];
}

void NoiseParams::validate() const {
    auto check = [this](const std::vector<double>& v, const char* name) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!(v[i] >= 0.0 && v[i] <= 1.0))
                throw ConfigError(std::string(name) + " must lie in [0,1]");
            if (!caps.empty() && v[i] > caps[i] + 1e-15)
                throw ConfigError(std::string(name) + " exceeds its cap");
        }
    };
    if (mode == Mode::symmetric) {
        if (phi.empty()) throw ConfigError("noise: phi list is empty");
        check(phi, "phi");
    } else {
        if (psi0.empty() || psi0.size() != psi1.size())
            throw ConfigError("noise: psi0/psi1 lists must be non-empty and equal length");
        check(psi0, "psi0");
        check(psi1, "psi1");
    }
    if (!caps.empty()) {
        const auto& v = mode == Mode::symmetric ? phi : psi0;
        if (caps.size() != v.size()) throw ConfigError("noise: caps list has wrong length");
        for (double c : caps)
            if (!(c >= 0.0 && c <= 1.0)) throw ConfigError("noise caps must lie in [0,1]");
    }
}

LatentPrior LatentPrior::gaussian(Eigen::VectorXd mean, Eigen::MatrixXd cov) {
    LatentPrior p;
    p.kind = Kind::gaussian;
    p.mu = std::move(mean);
    p.sigma = std::move(cov);
    p.validate();
    return p;
}

LatentPrior LatentPrior::mixture(GaussianMixture m) {
    LatentPrior p;
    p.kind = Kind::mixture;
    p.mix = std::move(m);
    p.validate();
    return p;
}

LatentPrior LatentPrior::poisson(PoissonProcess pp) {
    LatentPrior p;
    p.kind = Kind::poisson;
    p.pp = std::move(pp);
    p.validate();
    return p;
}

int LatentPrior::dim() const {
    switch (kind) {
        case Kind::gaussian: return static_cast<int>(mu.size());
        case Kind::mixture: return static_cast<int>(mix.means.at(0).size());
        case Kind::poisson: return static_cast<int>(pp.lower.size());
    }
    return 0;
}

void LatentPrior::validate() const {
    const int d = dim();
    if (d != 2 && d != 3) throw ConfigError("latent prior: dimension must be 2 or 3");
    switch (kind) {
        case Kind::gaussian:
            if (sigma.rows() != d || sigma.cols() != d)
                throw ConfigError("latent prior: covariance shape mismatch");
            break;
        case Kind::mixture: {
            if (mix.weights.empty() || mix.weights.size() != mix.means.size() ||
                mix.weights.size() != mix.covs.size())
                throw ConfigError("latent prior: mixture component lists mismatch");
            double total = 0.0;
            for (double w : mix.weights) {
                if (!(w >= 0.0)) throw ConfigError("latent prior: mixture weights must be >= 0");
                total += w;
            }
            if (std::abs(total - 1.0) > 1e-9)
                throw ConfigError("latent prior: mixture weights must sum to 1");
            for (const auto& m : mix.means)
                if (m.size() != d) throw ConfigError("latent prior: mixture mean shape mismatch");
            for (const auto& c : mix.covs)
                if (c.rows() != d || c.cols() != d)
                    throw ConfigError("latent prior: mixture covariance shape mismatch");
            break;
        }
        case Kind::poisson:
            if (pp.upper.size() != d) throw ConfigError("latent prior: box bounds mismatch");
            for (int l = 0; l < d; ++l)
                if (!(pp.upper(l) > pp.lower(l)))
                    throw ConfigError("latent prior: box must have positive extent");
            if (!(pp.intensity > 0.0)) throw ConfigError("latent prior: intensity must be > 0");
            break;
    }
}

Eigen::VectorXd sample_mvn(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov,
                           RngStream& rng) {
    if (cov.isZero(0.0)) return mean;
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success)
        throw ConfigError("gaussian sample: covariance is not positive definite");
    Eigen::VectorXd z(mean.size());
    for (Eigen::Index l = 0; l < z.size(); ++l) z(l) = rng.normal();
    return mean + llt.matrixL() * z;
}

Eigen::MatrixXd sample_latents(const LatentPrior& prior, int n, RngStream& rng) {
    prior.validate();
    const int d = prior.dim();

    switch (prior.kind) {
        case LatentPrior::Kind::gaussian: {
            Eigen::MatrixXd u(n, d);
            if (prior.sigma.isZero(0.0)) {
                for (int i = 0; i < n; ++i) u.row(i) = prior.mu.transpose();
                return u;
            }
            Eigen::LLT<Eigen::MatrixXd> llt(prior.sigma);
            if (llt.info() != Eigen::Success)
                throw ConfigError("latent prior: covariance is not positive definite");
            for (int i = 0; i < n; ++i) {
                Eigen::VectorXd z(d);
                for (int l = 0; l < d; ++l) z(l) = rng.normal();
                u.row(i) = (prior.mu + llt.matrixL() * z).transpose();
            }
            return u;
        }
        case LatentPrior::Kind::mixture: {
            Eigen::MatrixXd u(n, d);
            std::vector<double> cum(prior.mix.weights.size());
            double acc = 0.0;
            for (std::size_t c = 0; c < cum.size(); ++c) cum[c] = (acc += prior.mix.weights[c]);
            for (int i = 0; i < n; ++i) {
                const double pick = rng.uniform() * acc;
                std::size_t c = 0;
                while (c + 1 < cum.size() && pick > cum[c]) ++c;
                u.row(i) = sample_mvn(prior.mix.means[c], prior.mix.covs[c], rng).transpose();
            }
            return u;
        }
        case LatentPrior::Kind::poisson: {
            double volume = 1.0;
            for (int l = 0; l < d; ++l) volume *= prior.pp.upper(l) - prior.pp.lower(l);
            const long count = rng.poisson(prior.pp.intensity * volume);
            Eigen::MatrixXd u(count, d);
            for (long i = 0; i < count; ++i)
                for (int l = 0; l < d; ++l)
                    u(i, l) = rng.uniform(prior.pp.lower(l), prior.pp.upper(l));
            return u;
        }
    }
    throw ConfigError("latent prior: unknown generator");
}

Edge sample_uniform_edge(int n, int k, RngStream& rng) {
    // Position j holds index i_j; conditional weights are the counts of
    // completions C(n - 1 - i_j, k - 1 - j), giving the uniform law over
    // increasing tuples.
    Edge e(static_cast<std::size_t>(k));
    int lo = 0;
    for (int j = 0; j < k; ++j) {
        const int remaining = k - 1 - j;
        const int hi = n - 1 - remaining;
        double total = 0.0;
        for (int v = lo; v <= hi; ++v)
            total += static_cast<double>(binomial(n - 1 - v, remaining));
        double pick = rng.uniform() * total;
        int chosen = hi;
        for (int v = lo; v <= hi; ++v) {
            pick -= static_cast<double>(binomial(n - 1 - v, remaining));
            if (pick <= 0.0) {
                chosen = v;
                break;
            }
        }
        e[static_cast<std::size_t>(j)] = chosen;
        lo = chosen + 1;
    }
    return e;
}

namespace {

// Enumerate all order-k increasing tuples; only used on the dense-flip path
// where the complement is a large fraction of a small tuple space.
void enumerate_edges(int n, int k, const std::function<void(const Edge&)>& visit) {
    Edge e(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) e[static_cast<std::size_t>(j)] = j;
    while (true) {
        visit(e);
        int j = k - 1;
        while (j >= 0 && e[static_cast<std::size_t>(j)] == n - k + j) --j;
        if (j < 0) break;
        ++e[static_cast<std::size_t>(j)];
        for (int m = j + 1; m < k; ++m)
            e[static_cast<std::size_t>(m)] = e[static_cast<std::size_t>(m - 1)] + 1;
    }
}

} // namespace

Hypergraph apply_modification(const Hypergraph& g, const NoiseParams& noise, RngStream& rng) {
    noise.validate();
    if (noise.max_order() != g.max_order())
        throw ConfigError("modification: noise parameters cover orders 2.." +
                          std::to_string(noise.max_order()) + " but hypergraph has K=" +
                          std::to_string(g.max_order()));

    const int n = g.n_nodes();
    Hypergraph out(n, g.max_order());

    for (int k = 2; k <= g.max_order(); ++k) {
        const double p_off = noise.flip_off(k);
        const double p_on = noise.flip_on(k);
        const auto present = g.edges_of_order(k);

        EdgeSet kept;
        for (const Edge& e : present)
            if (!rng.bernoulli(p_off)) kept.insert(e);

        const std::int64_t total = binomial(n, k);
        const std::int64_t absent = total - static_cast<std::int64_t>(present.size());
        const long n_flip = rng.binomial(absent, p_on);

        EdgeSet flipped;
        if (n_flip > 0) {
            const bool dense = total <= (1 << 20) && n_flip * 4 >= absent;
            if (dense) {
                // The complement is about to be mostly consumed: enumerate the
                // absent tuples and take a random subset of size n_flip.
                std::vector<Edge> pool;
                pool.reserve(static_cast<std::size_t>(absent));
                enumerate_edges(n, k, [&](const Edge& e) {
                    if (!g.contains(e)) pool.push_back(e);
                });
                for (long i = 0; i < n_flip; ++i) {
                    const long j = rng.uniform_int(i, static_cast<long>(pool.size()) - 1);
                    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
                    flipped.insert(pool[static_cast<std::size_t>(i)]);
                }
            } else {
                long placed = 0;
                while (placed < n_flip) {
                    Edge e = sample_uniform_edge(n, k, rng);
                    if (g.contains(e) || flipped.count(e)) continue;
                    flipped.insert(std::move(e));
                    ++placed;
                }
            }
        }

        for (const Edge& e : kept) out.add_edge(e);
        for (const Edge& e : flipped) out.add_edge(e);
    }
    return out;
}

std::pair<Hypergraph, Eigen::MatrixXd> sample_hypergraph(const LatentPrior& prior,
                                                         const RadiusSchedule& radii,
                                                         const NoiseParams& noise, int n,
                                                         RngStream& rng, int order_cap) {
    radii.validate();
    Eigen::MatrixXd u = sample_latents(prior, n, rng);
    if (u.rows() < radii.max_order())
        throw NumericError("sample_hypergraph: generator produced fewer points than max order");
    const Hypergraph induced = build_nsrgh(u, radii, order_cap);
    Hypergraph modified = apply_modification(induced, noise, rng);
    return {std::move(modified), std::move(u)};
}

} // namespace lsh
