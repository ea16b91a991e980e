#include "lsh/inference.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <string>

#include "lsh/init.hpp"
#include "lsh/likelihood.hpp"

namespace lsh {

Priors Priors::defaults(int d, int max_order) {
    Priors p;
    p.m_mu = Eigen::VectorXd::Zero(d);
    p.sigma_mu = Eigen::MatrixXd::Identity(d, d) * 100.0;
    p.iw_scale = Eigen::MatrixXd::Identity(d, d);
    p.iw_dof = d + 2;
    const std::size_t orders = static_cast<std::size_t>(max_order - 1);
    p.r_rates.assign(orders, 1.0);
    p.a0.assign(orders, 1.0);
    p.b0.assign(orders, 9.0);
    p.a1.assign(orders, 1.0);
    p.b1.assign(orders, 9.0);
    return p;
}

void Priors::validate(int d, int max_order, NoiseParams::Mode mode) const {
    const std::size_t orders = static_cast<std::size_t>(max_order - 1);
    if (m_mu.size() != d || sigma_mu.rows() != d || sigma_mu.cols() != d)
        throw ConfigError("priors: mu prior shape mismatch");
    if (iw_scale.rows() != d || iw_scale.cols() != d)
        throw ConfigError("priors: inverse-Wishart scale shape mismatch");
    if (!(iw_dof > d - 1)) throw ConfigError("priors: inverse-Wishart dof must exceed d-1");
    if (r_rates.size() != orders) throw ConfigError("priors: radius rate list has wrong length");
    for (double l : r_rates)
        if (!(l > 0.0)) throw ConfigError("priors: radius rates must be positive");
    auto check_beta = [orders](const std::vector<double>& a, const std::vector<double>& b,
                               const char* name) {
        if (a.size() != orders || b.size() != orders)
            throw ConfigError(std::string("priors: ") + name + " list has wrong length");
        for (std::size_t i = 0; i < orders; ++i)
            if (!(a[i] > 0.0 && b[i] > 0.0))
                throw ConfigError(std::string("priors: ") + name + " parameters must be positive");
    };
    check_beta(a0, b0, "beta(0)");
    if (mode == NoiseParams::Mode::asymmetric) check_beta(a1, b1, "beta(1)");
    Eigen::LLT<Eigen::MatrixXd> l1(sigma_mu), l2(iw_scale);
    if (l1.info() != Eigen::Success || l2.info() != Eigen::Success)
        throw ConfigError("priors: covariance hyperparameters must be positive definite");
}

void MCMCConfig::validate() const {
    if (iterations < 1) throw ConfigError("mcmc: iterations must be >= 1");
    if (burn_in < 0 || burn_in >= iterations)
        throw ConfigError("mcmc: burn-in must lie in [0, iterations)");
    if (n_blocks < 1) throw ConfigError("mcmc: block count must be >= 1");
    if (!(sigma_u >= 0.0) || !(sigma_r >= 0.0))
        throw ConfigError("mcmc: proposal scales must be non-negative");
    if (thin < 1) throw ConfigError("mcmc: thinning must be >= 1");
    if (dim != 2 && dim != 3) throw ConfigError("mcmc: latent dimension must be 2 or 3");
}

Eigen::VectorXd gibbs_mu(const Eigen::MatrixXd& u, const Eigen::MatrixXd& sigma,
                         const Priors& priors, RngStream& rng) {
    const double n = static_cast<double>(u.rows());
    const Eigen::MatrixXd sigma_inv = sigma.llt().solve(Eigen::MatrixXd::Identity(sigma.rows(), sigma.cols()));
    const Eigen::MatrixXd prior_inv =
        priors.sigma_mu.llt().solve(Eigen::MatrixXd::Identity(sigma.rows(), sigma.cols()));
    const Eigen::MatrixXd precision = n * sigma_inv + prior_inv;
    Eigen::LLT<Eigen::MatrixXd> llt(precision);
    if (llt.info() != Eigen::Success) throw NumericError("gibbs_mu: singular precision matrix");
    const Eigen::MatrixXd cov = llt.solve(Eigen::MatrixXd::Identity(sigma.rows(), sigma.cols()));
    Eigen::VectorXd weighted = prior_inv * priors.m_mu;
    if (u.rows() > 0) weighted += sigma_inv * u.colwise().sum().transpose();
    const Eigen::VectorXd mean = cov * weighted;
    return sample_mvn(mean, cov, rng);
}

Eigen::MatrixXd sample_inverse_wishart(const Eigen::MatrixXd& scale, double dof, RngStream& rng) {
    const int d = static_cast<int>(scale.rows());
    if (!(dof > d - 1)) throw ConfigError("inverse-Wishart: dof must exceed d-1");
    Eigen::LLT<Eigen::MatrixXd> llt(scale.llt().solve(Eigen::MatrixXd::Identity(d, d)));
    if (llt.info() != Eigen::Success)
        throw NumericError("inverse-Wishart: scale must be positive definite");
    const Eigen::MatrixXd l = llt.matrixL();

    // Bartlett: W = L A A^T L^T ~ Wishart(scale^-1, dof), then Sigma = W^-1.
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        a(i, i) = std::sqrt(rng.chi_squared(dof - i));
        for (int j = 0; j < i; ++j) a(i, j) = rng.normal();
    }
    const Eigen::MatrixXd la = l * a;
    const Eigen::MatrixXd w = la * la.transpose();
    Eigen::LLT<Eigen::MatrixXd> wllt(w);
    if (wllt.info() != Eigen::Success) throw NumericError("inverse-Wishart: degenerate draw");
    return wllt.solve(Eigen::MatrixXd::Identity(d, d));
}

Eigen::MatrixXd gibbs_sigma(const Eigen::MatrixXd& u, const Eigen::VectorXd& mu,
                            const Priors& priors, RngStream& rng) {
    const int d = static_cast<int>(mu.size());
    Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        const Eigen::VectorXd c = u.row(i).transpose() - mu;
        scatter += c * c.transpose();
    }
    return sample_inverse_wishart(priors.iw_scale + scatter, priors.iw_dof + u.rows(), rng);
}

double sample_beta_truncated(double a, double b, double cap, RngStream& rng) {
    if (!(a > 0.0 && b > 0.0)) throw ConfigError("beta sample: parameters must be positive");
    if (!(cap > 0.0)) throw ConfigError("beta sample: cap must be positive");
    const double u = rng.uniform();
    const double mass = cap >= 1.0 ? 1.0 : boost::math::ibeta(a, b, cap);
    // When the Beta mass below the cap underflows, the truncated law
    // degenerates onto the cap itself; and a draw must never round to an
    // exact 0, which would poison the log-likelihood.
    if (mass < std::numeric_limits<double>::min()) return std::min(cap, 1.0);
    const double x = boost::math::ibeta_inv(a, b, u * mass);
    return std::clamp(x, std::numeric_limits<double>::min(), std::min(cap, 1.0));
}

std::pair<std::vector<double>, std::vector<double>> gibbs_psi(const DiscrepancyCounts& counts,
                                                              const Priors& priors,
                                                              const std::vector<double>& caps,
                                                              RngStream& rng) {
    const int K = counts.max_order;
    std::vector<double> psi0, psi1;
    for (int k = 2; k <= K; ++k) {
        const auto& row = counts.order(k);
        const std::size_t i = static_cast<std::size_t>(k - 2);
        const double cap = caps.empty() ? 1.0 : caps[i];
        psi0.push_back(sample_beta_truncated(static_cast<double>(row.d01) + priors.a0[i],
                                             static_cast<double>(row.d00) + priors.b0[i], cap, rng));
        psi1.push_back(sample_beta_truncated(static_cast<double>(row.d10) + priors.a1[i],
                                             static_cast<double>(row.d11) + priors.b1[i], cap, rng));
    }
    return {std::move(psi0), std::move(psi1)};
}

std::vector<double> gibbs_phi(const DiscrepancyCounts& counts, const Priors& priors,
                              const std::vector<double>& caps, RngStream& rng) {
    const int K = counts.max_order;
    std::vector<double> phi;
    for (int k = 2; k <= K; ++k) {
        const auto& row = counts.order(k);
        const std::size_t i = static_cast<std::size_t>(k - 2);
        const double cap = caps.empty() ? 1.0 : caps[i];
        phi.push_back(sample_beta_truncated(static_cast<double>(row.d10 + row.d01) + priors.a0[i],
                                            static_cast<double>(row.d11 + row.d00) + priors.b0[i],
                                            cap, rng));
    }
    return phi;
}

double McmcState::noise_loglik(const DiscrepancyCounts& c) const {
    if (noise_mode == NoiseParams::Mode::symmetric) return log_likelihood_symmetric(c, psi0);
    return log_likelihood_asymmetric(c, psi0, psi1);
}

void McmcState::refresh(const Hypergraph& observed) {
    induced = build_nsrgh(u, r, order_cap);
    counts = discrepancy_counts(induced, observed);
    loglik = noise_loglik(counts);
}

namespace {

double log_normal_density(const Eigen::VectorXd& x, const Eigen::VectorXd& mu,
                          const Eigen::LLT<Eigen::MatrixXd>& sigma_llt) {
    // Normalising constant cancels in MH ratios; keep only the quadratic form.
    const Eigen::VectorXd sol = sigma_llt.solve(x - mu);
    return -0.5 * (x - mu).dot(sol);
}

} // namespace

bool mh_update_latents(McmcState& state, const Hypergraph& observed, const std::vector<int>& block,
                       double sigma_u, RngStream& rng) {
    const int d = static_cast<int>(state.u.cols());
    Eigen::MatrixXd proposal = state.u;
    for (int idx : block)
        for (int l = 0; l < d; ++l) proposal(idx, l) += rng.normal(0.0, sigma_u);

    const Hypergraph induced = build_nsrgh(proposal, state.r, state.order_cap);
    const DiscrepancyCounts counts = discrepancy_counts(induced, observed);
    const double loglik = state.noise_loglik(counts);

    Eigen::LLT<Eigen::MatrixXd> sigma_llt(state.sigma);
    if (sigma_llt.info() != Eigen::Success)
        throw NumericError("latent update: state covariance not positive definite");
    double log_prior_ratio = 0.0;
    for (int idx : block) {
        log_prior_ratio += log_normal_density(proposal.row(idx).transpose(), state.mu, sigma_llt);
        log_prior_ratio -= log_normal_density(state.u.row(idx).transpose(), state.mu, sigma_llt);
    }

    const double log_ratio = loglik - state.loglik + log_prior_ratio;
    const bool accept = std::log(rng.uniform()) < log_ratio;
    if (accept) {
        state.u = std::move(proposal);
        state.induced = induced;
        state.counts = counts;
        state.loglik = loglik;
    }
    return accept;
}

bool mh_update_radii(McmcState& state, const Hypergraph& observed, double sigma_r,
                     const Priors& priors, RngStream& rng) {
    RadiusSchedule proposal = state.r;
    for (double& rk : proposal.radii) rk += rng.normal(0.0, sigma_r);

    // Hard Def.-4 constraint: orderings and positivity reject outright.
    bool valid = proposal.radii[0] > 0.0;
    for (std::size_t i = 1; valid && i < proposal.radii.size(); ++i)
        valid = proposal.radii[i] > proposal.radii[i - 1];
    if (!valid) {
        rng.uniform(); // keep the stream aligned with the accept/reject draw
        return false;
    }

    const Hypergraph induced = build_nsrgh(state.u, proposal, state.order_cap);
    const DiscrepancyCounts counts = discrepancy_counts(induced, observed);
    const double loglik = state.noise_loglik(counts);

    double log_prior_ratio = 0.0;
    for (std::size_t i = 0; i < proposal.radii.size(); ++i)
        log_prior_ratio -= priors.r_rates[i] * (proposal.radii[i] - state.r.radii[i]);

    const double log_ratio = loglik - state.loglik + log_prior_ratio;
    const bool accept = std::log(rng.uniform()) < log_ratio;
    if (accept) {
        state.r = std::move(proposal);
        state.induced = induced;
        state.counts = counts;
        state.loglik = loglik;
    }
    return accept;
}

namespace {

std::vector<std::vector<int>> make_blocks(int n, const std::vector<int>& anchors, int n_blocks) {
    std::vector<bool> is_anchor(static_cast<std::size_t>(n), false);
    for (int a : anchors) is_anchor[static_cast<std::size_t>(a)] = true;
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(n_blocks));
    int slot = 0;
    for (int i = 0; i < n; ++i) {
        if (is_anchor[static_cast<std::size_t>(i)]) continue;
        blocks[static_cast<std::size_t>(slot % n_blocks)].push_back(i);
        ++slot;
    }
    return blocks;
}

} // namespace

FitResult run_mcmc(const Hypergraph& observed, const Priors& priors, const MCMCConfig& config,
                   const std::function<void(const TraceRow&)>& sink) {
    config.validate();
    priors.validate(config.dim, observed.max_order(), config.noise_mode);
    if (!config.noise_caps.empty() &&
        static_cast<int>(config.noise_caps.size()) != observed.max_order() - 1)
        throw ConfigError("mcmc: noise cap list has wrong length");

    const int d = config.dim;
    const int K = observed.max_order();
    const std::size_t orders = static_cast<std::size_t>(K - 1);

    RngStream rng = RngStream::named(config.seed, "mcmc");
    RngStream init_rng = RngStream::named(config.seed, "init");

    // Initialisation per the staged scheme: GMDS latents, minimal radii,
    // prior-sampled noise, then ABC (or prior means) for mu and Sigma.
    std::vector<int> anchors = config.anchors.empty() ? default_anchors(observed, d)
                                                      : config.anchors;
    if (static_cast<int>(anchors.size()) != d)
        throw ConfigError("mcmc: expected " + std::to_string(d) + " anchor indices");

    McmcState state;
    state.noise_mode = config.noise_mode;
    state.order_cap = config.order_cap;
    state.u = init_latents_gmds(observed, config.gmds_weight, d, anchors);
    state.r = init_radii(observed, state.u);

    state.psi0.resize(orders);
    state.psi1.resize(orders);
    for (std::size_t i = 0; i < orders; ++i) {
        const double cap = config.noise_caps.empty() ? 1.0 : config.noise_caps[i];
        state.psi0[i] = sample_beta_truncated(priors.a0[i], priors.b0[i], cap, init_rng);
        state.psi1[i] = config.noise_mode == NoiseParams::Mode::symmetric
                            ? state.psi0[i]
                            : sample_beta_truncated(priors.a1[i], priors.b1[i], cap, init_rng);
    }

    if (config.abc_n_smp > 0) {
        NoiseParams noise0;
        if (config.noise_mode == NoiseParams::Mode::symmetric)
            noise0 = NoiseParams::symmetric(state.psi0);
        else
            noise0 = NoiseParams::asymmetric(state.psi0, state.psi1);
        AbcOptions opts;
        opts.n_smp = config.abc_n_smp;
        opts.eps = config.abc_eps;
        opts.max_attempts = config.abc_max_attempts;
        std::tie(state.mu, state.sigma) =
            init_abc(observed, priors.m_mu, priors.sigma_mu, priors.iw_scale, priors.iw_dof,
                     state.r, noise0, opts, init_rng, config.order_cap);
    } else {
        state.mu = priors.m_mu;
        state.sigma = priors.iw_scale / (priors.iw_dof - d - 1 > 0 ? priors.iw_dof - d - 1 : 1.0);
    }
    state.refresh(observed);

    const auto blocks = make_blocks(observed.n_nodes(), anchors, config.n_blocks);

    FitResult result;
    result.anchors = anchors;
    result.u_init = state.u;
    result.u_mean = Eigen::MatrixXd::Zero(state.u.rows(), state.u.cols());
    result.mu_mean = Eigen::VectorXd::Zero(d);
    result.sigma_mean = Eigen::MatrixXd::Zero(d, d);
    result.r_mean.assign(orders, 0.0);
    result.psi0_mean.assign(orders, 0.0);
    result.psi1_mean.assign(orders, 0.0);
    result.accept_rate_u.assign(blocks.size(), 0.0);

    long kept = 0;
    long accept_r_count = 0;
    std::vector<long> accept_u_count(blocks.size(), 0);

    for (long iter = 1; iter <= config.iterations; ++iter) {
        state.mu = gibbs_mu(state.u, state.sigma, priors, rng);
        state.sigma = gibbs_sigma(state.u, state.mu, priors, rng);

        std::vector<bool> accept_u(blocks.size(), false);
        for (std::size_t l = 0; l < blocks.size(); ++l) {
            accept_u[l] = mh_update_latents(state, observed, blocks[l], config.sigma_u, rng);
            if (accept_u[l]) ++accept_u_count[l];
        }

        const bool accept_r = mh_update_radii(state, observed, config.sigma_r, priors, rng);
        if (accept_r) ++accept_r_count;

        if (config.noise_mode == NoiseParams::Mode::symmetric) {
            state.psi0 = gibbs_phi(state.counts, priors, config.noise_caps, rng);
            state.psi1 = state.psi0;
        } else {
            std::tie(state.psi0, state.psi1) = gibbs_psi(state.counts, priors, config.noise_caps, rng);
        }
        state.loglik = state.noise_loglik(state.counts);

        if (iter > config.burn_in) {
            ++kept;
            result.u_mean += state.u;
            result.mu_mean += state.mu;
            result.sigma_mean += state.sigma;
            for (std::size_t i = 0; i < orders; ++i) {
                result.r_mean[i] += state.r.radii[i];
                result.psi0_mean[i] += state.psi0[i];
                result.psi1_mean[i] += state.psi1[i];
            }

            if ((iter - config.burn_in) % config.thin == 0) {
                TraceRow row;
                row.iteration = iter;
                row.loglik = state.loglik;
                row.mu = state.mu;
                row.sigma = state.sigma;
                row.r = state.r.radii;
                row.psi0 = state.psi0;
                row.psi1 = state.psi1;
                row.accept_r = accept_r;
                row.accept_u = accept_u;
                if (sink) sink(row);
                result.trace.rows.push_back(std::move(row));
                if (config.thin_latent > 0 &&
                    (iter - config.burn_in) % (config.thin * config.thin_latent) == 0)
                    result.trace.latents.emplace_back(iter, state.u);
            }
        }
    }

    const double denom = static_cast<double>(kept);
    result.u_mean /= denom;
    result.mu_mean /= denom;
    result.sigma_mean /= denom;
    for (std::size_t i = 0; i < orders; ++i) {
        result.r_mean[i] /= denom;
        result.psi0_mean[i] /= denom;
        result.psi1_mean[i] /= denom;
    }
    // Fixed anchor rows are exact, not averaged-with-rounding.
    for (int a : anchors) result.u_mean.row(a) = state.u.row(a);

    result.accept_rate_r = static_cast<double>(accept_r_count) / config.iterations;
    for (std::size_t l = 0; l < blocks.size(); ++l)
        result.accept_rate_u[l] = static_cast<double>(accept_u_count[l]) / config.iterations;
    result.final_loglik = state.loglik;

    // Explained fraction: observed hyperedges reproduced by the posterior-mean
    // geometry alone.
    RadiusSchedule r_mean{result.r_mean};
    bool mean_valid = r_mean.radii[0] > 0.0;
    for (std::size_t i = 1; i < r_mean.radii.size(); ++i)
        mean_valid = mean_valid && r_mean.radii[i] > r_mean.radii[i - 1];
    result.explained.assign(orders, std::numeric_limits<double>::quiet_NaN());
    if (mean_valid) {
        const Hypergraph mean_induced = build_nsrgh(result.u_mean, r_mean, config.order_cap);
        for (int k = 2; k <= K; ++k) {
            const auto observed_k = observed.edges_of_order(k);
            if (observed_k.empty()) continue;
            std::size_t hit = 0;
            for (const Edge& e : observed_k)
                if (mean_induced.contains(e)) ++hit;
            result.explained[static_cast<std::size_t>(k - 2)] =
                static_cast<double>(hit) / static_cast<double>(observed_k.size());
        }
    }
    return result;
}

} // namespace lsh
