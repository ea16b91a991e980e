#include "commands.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lsh/baselines.hpp"
#include "lsh/combinatorics.hpp"
#include "lsh/genmodel.hpp"
#include "lsh/hypergraph_io.hpp"
#include "lsh/inference.hpp"
#include "lsh/init.hpp"
#include "lsh/motifs.hpp"
#include "lsh/predictive.hpp"
#include "lsh/theory.hpp"

namespace lsh::cli {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += fmt(v[i]);
    }
    return out;
}

std::string join_ints(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

std::string join_matrix(const Eigen::MatrixXd& m) {
    std::string out;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i || j) out += ",";
            out += fmt(m(i, j));
        }
    return out;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write output file '" + path.string() + "'");
    return out;
}

struct OutputPaths {
    fs::path dir;
    std::string prefix;

    fs::path file(const std::string& suffix) const { return dir / (prefix + "_" + suffix); }
};

OutputPaths resolve_outputs(RunConfig& config, const std::string& command) {
    OutputPaths paths;
    paths.dir = config.get_string("out", ".");
    paths.prefix = config.get_string("prefix", command);
    fs::create_directories(paths.dir);
    return paths;
}

void write_manifest(const RunConfig& config, const OutputPaths& paths, std::uint64_t seed) {
    auto out = open_out(paths.file("manifest.txt"));
    char hash[20];
    std::snprintf(hash, sizeof(hash), "%016" PRIx64, config.content_hash());
    out << "tool=" << kToolVersion << "\n"
        << "config_hash=" << hash << "\n"
        << "seed=" << seed << "\n";
}

void write_config_echo(const RunConfig& config, const OutputPaths& paths) {
    auto out = open_out(paths.file("config.cfg"));
    out << config.canonical_text();
}

void write_coords_csv(const Eigen::MatrixXd& u, const fs::path& path) {
    auto out = open_out(path);
    out << "node";
    for (Eigen::Index l = 0; l < u.cols(); ++l) out << ",u" << (l + 1);
    out << "\n";
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        out << i;
        for (Eigen::Index l = 0; l < u.cols(); ++l) out << "," << fmt(u(i, l));
        out << "\n";
    }
}

Eigen::MatrixXd read_coords_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open coordinates file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw DataError("coordinates file '" + path + "' is empty");
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string token;
        std::vector<double> row;
        bool first = true;
        while (std::getline(ls, token, ',')) {
            if (first) {
                first = false;
                continue; // node index column
            }
            row.push_back(std::stod(token));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError("coordinates file '" + path + "' has no rows");
    Eigen::MatrixXd u(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw DataError("coordinates file '" + path + "': ragged rows");
        for (std::size_t l = 0; l < rows[i].size(); ++l)
            u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l)) = rows[i][l];
    }
    return u;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

std::vector<double> broadcast(std::vector<double> v, std::size_t len, const char* key) {
    if (v.size() == 1) return std::vector<double>(len, v[0]);
    if (v.size() != len)
        throw ConfigError(std::string("config key '") + key + "': expected 1 or " +
                          std::to_string(len) + " values");
    return v;
}

// Noise settings shared by simulate and predict. Symmetric mode comes from
// `phi`, asymmetric from `psi0`/`psi1`; exactly one must be given.
NoiseParams noise_from_config(const RunConfig& config, int max_order) {
    const std::size_t orders = static_cast<std::size_t>(max_order - 1);
    const bool has_phi = config.has("phi");
    const bool has_psi = config.has("psi0") || config.has("psi1");
    if (has_phi && has_psi)
        throw ConfigError("config: give either phi (symmetric) or psi0/psi1 (asymmetric)");
    if (has_phi)
        return NoiseParams::symmetric(broadcast(config.get_doubles("phi"), orders, "phi"));
    if (!config.has("psi0") || !config.has("psi1"))
        throw ConfigError("config: asymmetric noise needs both psi0 and psi1");
    return NoiseParams::asymmetric(broadcast(config.get_doubles("psi0"), orders, "psi0"),
                                   broadcast(config.get_doubles("psi1"), orders, "psi1"));
}

LatentPrior latent_prior_from_config(const RunConfig& config, int d) {
    const std::string generator = config.get_string("generator", "gaussian");
    if (generator == "gaussian") {
        return LatentPrior::gaussian(
            config.get_vector_opt("mu", d).value_or(Eigen::VectorXd::Zero(d)),
            config.get_matrix_opt("sigma", d).value_or(Eigen::MatrixXd::Identity(d, d)));
    }
    if (generator == "mixture") {
        GaussianMixture mix;
        mix.weights = config.get_doubles("mixture_weights");
        for (const auto& row : config.get_rows("mixture_means")) {
            if (row.size() != static_cast<std::size_t>(d))
                throw ConfigError("mixture_means: each row needs d values");
            mix.means.push_back(Eigen::Map<const Eigen::VectorXd>(row.data(), d));
        }
        for (const auto& row : config.get_rows("mixture_covs")) {
            Eigen::MatrixXd cov(d, d);
            if (row.size() == 1)
                cov = Eigen::MatrixXd::Identity(d, d) * row[0];
            else if (row.size() == static_cast<std::size_t>(d * d))
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j)
                        cov(i, j) = row[static_cast<std::size_t>(i * d + j)];
            else
                throw ConfigError("mixture_covs: each row needs 1 or d*d values");
            mix.covs.push_back(cov);
        }
        return LatentPrior::mixture(std::move(mix));
    }
    if (generator == "poisson") {
        PoissonProcess pp;
        pp.lower = config.get_vector("poisson_lower", d);
        pp.upper = config.get_vector("poisson_upper", d);
        pp.intensity = config.get_double("poisson_intensity");
        return LatentPrior::poisson(std::move(pp));
    }
    throw ConfigError("config: unknown generator '" + generator + "'");
}

Priors priors_from_config(const RunConfig& config, int d, int max_order) {
    Priors priors = Priors::defaults(d, max_order);
    const std::size_t orders = static_cast<std::size_t>(max_order - 1);
    if (auto v = config.get_vector_opt("prior_m_mu", d)) priors.m_mu = *v;
    if (auto m = config.get_matrix_opt("prior_sigma_mu", d)) priors.sigma_mu = *m;
    if (auto m = config.get_matrix_opt("prior_iw_scale", d)) priors.iw_scale = *m;
    priors.iw_dof = config.get_double("prior_iw_dof", priors.iw_dof);
    if (auto v = config.get_doubles_opt("prior_r_rates"))
        priors.r_rates = broadcast(*v, orders, "prior_r_rates");
    if (auto v = config.get_doubles_opt("prior_a0")) priors.a0 = broadcast(*v, orders, "prior_a0");
    if (auto v = config.get_doubles_opt("prior_b0")) priors.b0 = broadcast(*v, orders, "prior_b0");
    if (auto v = config.get_doubles_opt("prior_a1")) priors.a1 = broadcast(*v, orders, "prior_a1");
    if (auto v = config.get_doubles_opt("prior_b1")) priors.b1 = broadcast(*v, orders, "prior_b1");
    return priors;
}

std::vector<double> caps_from_config(const RunConfig& config, const Hypergraph& h) {
    if (config.has("noise_caps") && config.has("noise_cap_factor"))
        throw ConfigError("config: give noise_caps or noise_cap_factor, not both");
    const std::size_t orders = static_cast<std::size_t>(h.max_order() - 1);
    if (config.has("noise_caps"))
        return broadcast(config.get_doubles("noise_caps"), orders, "noise_caps");
    if (config.has("noise_cap_factor")) {
        const double factor = config.get_double("noise_cap_factor");
        if (!(factor > 0.0)) throw ConfigError("noise_cap_factor must be positive");
        std::vector<double> caps;
        for (int k = 2; k <= h.max_order(); ++k) {
            const double density = static_cast<double>(h.n_edges(k)) /
                                   static_cast<double>(binomial(h.n_nodes(), k));
            caps.push_back(std::clamp(factor * density, 1e-6, 1.0));
        }
        return caps;
    }
    return {};
}

} // namespace

int cmd_simulate(RunConfig& config) {
    const auto paths = resolve_outputs(config, "simulate");
    const std::uint64_t seed = static_cast<std::uint64_t>(config.get_long("seed", 1));
    const std::string model = config.get_string("model", "lsh");

    if (model == "lsh") {
        const int d = static_cast<int>(config.get_long("d", 2));
        const int n = static_cast<int>(config.get_long("n"));
        const int order_cap = static_cast<int>(config.get_long("order_cap", 6));
        RadiusSchedule radii{config.get_doubles("radii")};
        radii.validate();
        const NoiseParams noise = noise_from_config(config, radii.max_order());
        const LatentPrior prior = latent_prior_from_config(config, d);

        RngStream rng = RngStream::named(seed, "latents");
        RngStream noise_rng = RngStream::named(seed, "noise");
        Eigen::MatrixXd u = sample_latents(prior, n, rng);
        if (u.rows() < radii.max_order())
            throw NumericError("simulate: generator produced fewer points than max order");
        const Hypergraph induced = build_nsrgh(u, radii, order_cap);
        const Hypergraph h = apply_modification(induced, noise, noise_rng);

        config.reject_unknown();
        write_hypergraph(h, paths.file("hypergraph.txt").string());
        write_coords_csv(u, paths.file("coords.csv"));
        write_config_echo(config, paths);
        write_manifest(config, paths, seed);
        return 0;
    }

    if (model == "beta") {
        BetaModelParams params;
        const int n = static_cast<int>(config.get_long("n"));
        params.beta = broadcast(config.get_doubles("beta"), static_cast<std::size_t>(n), "beta");
        params.max_order = static_cast<int>(config.get_long("k_max", 2));
        RngStream rng = RngStream::named(seed, "baseline");
        const Hypergraph h = sample_beta_model(params, rng);

        config.reject_unknown();
        write_hypergraph(h, paths.file("hypergraph.txt").string());
        write_config_echo(config, paths);
        write_manifest(config, paths, seed);
        return 0;
    }

    if (model == "lca") {
        LcaModelParams params;
        params.n_nodes = static_cast<int>(config.get_long("n"));
        params.n_edges = static_cast<int>(config.get_long("lca_edges"));
        params.topic_probs = config.get_doubles("lca_pi");
        params.size_probs = config.get_doubles("lca_tau");
        params.alpha = config.get_doubles("lca_alpha");
        const std::size_t topics = params.topic_probs.size();

        if (config.has("lca_blocks")) {
            const std::vector<int> blocks = config.get_ints("lca_blocks");
            const auto block_phi = config.get_rows("lca_block_phi");
            if (block_phi.size() != blocks.size())
                throw ConfigError("lca_block_phi: one row per block required");
            int total = 0;
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                if (block_phi[b].size() != topics)
                    throw ConfigError("lca_block_phi: rows need T entries");
                for (int i = 0; i < blocks[b]; ++i) params.membership.push_back(block_phi[b]);
                total += blocks[b];
            }
            if (total != params.n_nodes)
                throw ConfigError("lca_blocks: block sizes must sum to n");
        } else {
            const auto rows = config.get_rows("lca_phi");
            if (rows.size() == 1)
                params.membership.assign(static_cast<std::size_t>(params.n_nodes), rows[0]);
            else if (rows.size() == static_cast<std::size_t>(params.n_nodes))
                params.membership = rows;
            else
                throw ConfigError("lca_phi: give one row (broadcast) or one row per node");
        }

        RngStream rng = RngStream::named(seed, "baseline");
        const LcaSample sample = sample_lca_model(params, rng);

        config.reject_unknown();
        write_hypergraph(sample.hypergraph, paths.file("hypergraph.txt").string());
        auto members = open_out(paths.file("memberships.csv"));
        members << "hyperedge,nodes\n";
        for (std::size_t j = 0; j < sample.memberships.size(); ++j) {
            members << j << ",";
            for (std::size_t i = 0; i < sample.memberships[j].size(); ++i) {
                if (i) members << " ";
                members << sample.memberships[j][i];
            }
            members << "\n";
        }
        write_config_echo(config, paths);
        write_manifest(config, paths, seed);
        return 0;
    }

    throw ConfigError("config key 'model': unknown model '" + model + "'");
}

namespace {

void write_trace_header(std::ostream& out, int d, int max_order, int blocks) {
    out << "iteration,loglik";
    for (int l = 1; l <= d; ++l) out << ",mu_" << l;
    for (int i = 1; i <= d; ++i)
        for (int j = i; j <= d; ++j) out << ",sigma_" << i << j;
    for (int k = 2; k <= max_order; ++k) out << ",r_" << k;
    for (int k = 2; k <= max_order; ++k) out << ",psi0_" << k;
    for (int k = 2; k <= max_order; ++k) out << ",psi1_" << k;
    out << ",accept_r";
    for (int l = 1; l <= blocks; ++l) out << ",accept_u_" << l;
    out << "\n";
}

void write_trace_row(std::ostream& out, const TraceRow& row) {
    out << row.iteration << "," << fmt(row.loglik);
    for (Eigen::Index l = 0; l < row.mu.size(); ++l) out << "," << fmt(row.mu(l));
    for (Eigen::Index i = 0; i < row.sigma.rows(); ++i)
        for (Eigen::Index j = i; j < row.sigma.cols(); ++j) out << "," << fmt(row.sigma(i, j));
    for (double r : row.r) out << "," << fmt(r);
    for (double p : row.psi0) out << "," << fmt(p);
    for (double p : row.psi1) out << "," << fmt(p);
    out << "," << (row.accept_r ? 1 : 0);
    for (bool a : row.accept_u) out << "," << (a ? 1 : 0);
    out << "\n";
    out.flush();
}

void write_fit_outputs(const OutputPaths& paths, const std::string& tag, const Hypergraph& h,
                       const FitResult& fit, const MCMCConfig& mcmc) {
    const int d = mcmc.dim;
    write_coords_csv(fit.u_mean, paths.file(tag + "u_mean.csv"));

    auto latents = open_out(paths.file(tag + "latents.csv"));
    latents << "iteration,node";
    for (int l = 1; l <= d; ++l) latents << ",u" << l;
    latents << "\n";
    for (const auto& [iter, u] : fit.trace.latents)
        for (Eigen::Index i = 0; i < u.rows(); ++i) {
            latents << iter << "," << i;
            for (Eigen::Index l = 0; l < u.cols(); ++l) latents << "," << fmt(u(i, l));
            latents << "\n";
        }

    auto report = open_out(paths.file(tag + "report.txt"));
    report << "nodes=" << h.n_nodes() << "\n";
    report << "max_order=" << h.max_order() << "\n";
    report << "iterations=" << mcmc.iterations << "\n";
    report << "burn_in=" << mcmc.burn_in << "\n";
    report << "anchors=" << join_ints(fit.anchors) << "\n";
    report << "mu_hat=" << join(std::vector<double>(fit.mu_mean.data(),
                                                    fit.mu_mean.data() + fit.mu_mean.size()))
           << "\n";
    report << "sigma_hat=" << join_matrix(fit.sigma_mean) << "\n";
    report << "r_hat=" << join(fit.r_mean) << "\n";
    report << "psi0_hat=" << join(fit.psi0_mean) << "\n";
    report << "psi1_hat=" << join(fit.psi1_mean) << "\n";
    report << "final_loglik=" << fmt(fit.final_loglik) << "\n";
    report << "accept_rate_r=" << fmt(fit.accept_rate_r) << "\n";
    report << "accept_rate_u=" << join(fit.accept_rate_u) << "\n";
    for (int k = 2; k <= h.max_order(); ++k) {
        const double frac = fit.explained[static_cast<std::size_t>(k - 2)];
        report << "explained_order_" << k << "="
               << (std::isnan(frac) ? std::string("na") : fmt(frac)) << "\n";
    }

    // Machine-readable parameter set for the predict command.
    auto fitted = open_out(paths.file(tag + "fitted.cfg"));
    fitted << "d=" << d << "\n";
    fitted << "coords=" << paths.file(tag + "u_mean.csv").string() << "\n";
    fitted << "radii=" << join(fit.r_mean) << "\n";
    fitted << "psi0=" << join(fit.psi0_mean) << "\n";
    fitted << "psi1=" << join(fit.psi1_mean) << "\n";
    fitted << "mu=" << join(std::vector<double>(fit.mu_mean.data(),
                                                fit.mu_mean.data() + fit.mu_mean.size()))
           << "\n";
    fitted << "sigma=" << join_matrix(fit.sigma_mean) << "\n";
}

} // namespace

int cmd_fit(RunConfig& config, int chains) {
    const auto paths = resolve_outputs(config, "fit");
    const std::uint64_t seed = static_cast<std::uint64_t>(config.get_long("seed", 1));

    std::vector<std::string> warnings;
    const Hypergraph h = read_hypergraph(config.get_string("input"), &warnings);
    print_warnings(warnings);

    MCMCConfig mcmc;
    mcmc.dim = static_cast<int>(config.get_long("d", 2));
    mcmc.iterations = config.get_long("iterations", 1000);
    mcmc.burn_in = config.get_long("burn_in", 0);
    mcmc.n_blocks = static_cast<int>(config.get_long("blocks", 1));
    mcmc.sigma_u = config.get_double("sigma_u", 0.05);
    mcmc.sigma_r = config.get_double("sigma_r", 0.01);
    mcmc.thin = config.get_long("thin", 1);
    mcmc.thin_latent = config.get_long("thin_latent", 0);
    mcmc.order_cap = static_cast<int>(config.get_long("order_cap", 6));
    mcmc.gmds_weight = config.get_double("gmds_weight", 0.5);
    mcmc.abc_n_smp = static_cast<int>(config.get_long("abc_n_smp", 0));
    mcmc.abc_eps = config.get_double("abc_eps", std::numeric_limits<double>::infinity());
    mcmc.abc_max_attempts = config.get_long("abc_max_attempts", 100000);
    if (auto a = config.get_ints_opt("anchors")) mcmc.anchors = *a;

    const std::string mode = config.get_string("noise_mode", "asymmetric");
    if (mode == "symmetric")
        mcmc.noise_mode = NoiseParams::Mode::symmetric;
    else if (mode == "asymmetric")
        mcmc.noise_mode = NoiseParams::Mode::asymmetric;
    else
        throw ConfigError("config key 'noise_mode': expected symmetric or asymmetric");
    mcmc.noise_caps = caps_from_config(config, h);

    const Priors priors = priors_from_config(config, mcmc.dim, h.max_order());
    config.reject_unknown();

    for (int chain = 0; chain < chains; ++chain) {
        const std::string tag = chains > 1 ? "chain" + std::to_string(chain + 1) + "_" : "";
        mcmc.seed = seed + static_cast<std::uint64_t>(chain);

        auto trace = open_out(paths.file(tag + "trace.csv"));
        write_trace_header(trace, mcmc.dim, h.max_order(), mcmc.n_blocks);
        const FitResult fit = run_mcmc(h, priors, mcmc, [&trace](const TraceRow& row) {
            write_trace_row(trace, row);
        });
        write_fit_outputs(paths, tag, h, fit, mcmc);
    }

    write_manifest(config, paths, seed);
    return 0;
}

int cmd_predict(RunConfig& config) {
    const auto paths = resolve_outputs(config, "predict");
    const std::uint64_t seed = static_cast<std::uint64_t>(config.get_long("seed", 1));

    std::vector<std::string> warnings;
    const Hypergraph h = read_hypergraph(config.get_string("input"), &warnings);
    print_warnings(warnings);

    PredictiveModel model;
    const int d = static_cast<int>(config.get_long("d", 2));
    model.u_hat = read_coords_csv(config.get_string("coords"));
    if (model.u_hat.rows() != h.n_nodes() || model.u_hat.cols() != d)
        throw DataError("predict: coordinates shape does not match the hypergraph");
    model.r_hat = RadiusSchedule{config.get_doubles("radii")};
    model.r_hat.validate();
    if (model.r_hat.max_order() != h.max_order())
        throw ConfigError("predict: radii must cover orders 2..K of the input");
    model.noise_hat = noise_from_config(config, h.max_order());
    model.mu_hat = config.get_vector("mu", d);
    model.sigma_hat = config.get_matrix("sigma", d);
    model.order_cap = static_cast<int>(config.get_long("order_cap", 6));

    const int n_star = static_cast<int>(config.get_long("n_star"));
    const int n_rep = static_cast<int>(config.get_long("n_rep", 200));
    const std::string placement_name = config.get_string("placement", "gaussian");
    Placement placement;
    if (placement_name == "gaussian")
        placement = Placement::gaussian;
    else if (placement_name == "peripheral")
        placement = Placement::peripheral;
    else
        throw ConfigError("config key 'placement': expected gaussian or peripheral");

    const std::string compare_path = config.get_string("compare", "");
    config.reject_unknown();

    RngStream rng = RngStream::named(seed, "predictive");
    RngStream motif_rng = rng.derive("motifs");
    const auto degrees = predictive_degrees(h, model, n_star, n_rep, placement, rng);
    const auto motifs =
        predictive_motifs(h, model, n_star, n_rep, default_motifs(), placement, motif_rng);

    // Degree histograms, wide format with a shared bin count.
    int max_degree = 0;
    for (const auto& deg : degrees)
        for (int i = 0; i < deg.n_nodes(); ++i)
            for (int k = 2; k <= deg.max_order(); ++k)
                max_degree = std::max(max_degree, deg.at(i, k));
    auto deg_out = open_out(paths.file("degrees.csv"));
    deg_out << "rep,order";
    for (int b = 0; b <= max_degree; ++b) deg_out << ",d" << b;
    deg_out << "\n";
    for (std::size_t rep = 0; rep < degrees.size(); ++rep) {
        const auto& deg = degrees[rep];
        for (int k = 2; k <= deg.max_order(); ++k) {
            std::vector<long> hist(static_cast<std::size_t>(max_degree + 1), 0);
            for (int i = 0; i < deg.n_nodes(); ++i) ++hist[static_cast<std::size_t>(deg.at(i, k))];
            deg_out << rep << "," << k;
            for (long c : hist) deg_out << "," << c;
            deg_out << "\n";
        }
    }

    auto motif_out = open_out(paths.file("motifs.csv"));
    motif_out << "rep,motif,attributed,total\n";
    for (std::size_t rep = 0; rep < motifs.total.size(); ++rep)
        for (std::size_t s = 0; s < motifs.names.size(); ++s)
            motif_out << rep << "," << motifs.names[s] << "," << motifs.attributed[rep][s] << ","
                      << motifs.total[rep][s] << "\n";

    // qq table against a previous degrees.csv (matched per-order quantiles).
    if (!compare_path.empty()) {
        std::ifstream cmp(compare_path);
        if (!cmp) throw DataError("cannot open comparison file '" + compare_path + "'");
        std::string line;
        std::getline(cmp, line); // header
        std::map<int, std::vector<double>> other;
        while (std::getline(cmp, line)) {
            if (line.empty()) continue;
            std::istringstream ls(line);
            std::string token;
            std::getline(ls, token, ',');
            std::getline(ls, token, ',');
            const int order = std::stoi(token);
            int degree = 0;
            while (std::getline(ls, token, ',')) {
                const long count = std::stol(token);
                for (long c = 0; c < count; ++c)
                    other[order].push_back(static_cast<double>(degree));
                ++degree;
            }
        }

        auto qq_out = open_out(paths.file("qq.csv"));
        qq_out << "order,percent,q_this,q_other\n";
        for (int k = 2; k <= h.max_order(); ++k) {
            std::vector<double> mine;
            for (const auto& deg : degrees)
                for (int i = 0; i < deg.n_nodes(); ++i)
                    mine.push_back(static_cast<double>(deg.at(i, k)));
            const auto it = other.find(k);
            if (it == other.end() || it->second.empty()) continue;
            const QqTable table = qq_table(mine, it->second);
            for (std::size_t row = 0; row < table.percents.size(); ++row)
                qq_out << k << "," << fmt(table.percents[row]) << "," << fmt(table.a[row]) << ","
                       << fmt(table.b[row]) << "\n";
        }
    }

    write_manifest(config, paths, seed);
    return 0;
}

int cmd_theory(RunConfig& config) {
    const auto paths = resolve_outputs(config, "theory");
    const std::uint64_t seed = static_cast<std::uint64_t>(config.get_long("seed", 1));
    const int d = static_cast<int>(config.get_long("d", 2));
    const Eigen::MatrixXd sigma =
        config.get_matrix_opt("sigma", d).value_or(Eigen::MatrixXd::Identity(d, d));
    const long mc_samples = config.get_long("mc_samples", 100000);

    std::vector<std::string> warnings;
    RngStream rng = RngStream::named(seed, "theory");

    // p_{e_k}(r) sweep.
    {
        const double r_min = config.get_double("r_min", 0.0);
        const double r_max = config.get_double("r_max", 0.0);
        const long steps = config.get_long("r_steps", 0);
        std::vector<int> orders{2, 3};
        if (auto o = config.get_ints_opt("orders")) orders = *o;

        auto sweep = open_out(paths.file("sweep.csv"));
        sweep << "k,r,p,std_err\n";
        for (long s = 0; s < steps; ++s) {
            const double r = steps == 1 ? r_min
                                        : r_min + (r_max - r_min) * static_cast<double>(s) /
                                              static_cast<double>(steps - 1);
            for (int k : orders) {
                if (k == 2) {
                    const double p = p_edge_order2(sigma, r, &warnings);
                    sweep << "2," << fmt(r) << "," << fmt(p) << ",0\n";
                } else {
                    const McEstimate est = p_edge_mc(Eigen::VectorXd::Zero(d), sigma, r, k,
                                                     mc_samples, rng);
                    sweep << k << "," << fmt(r) << "," << fmt(est.value) << ","
                          << fmt(est.std_error) << "\n";
                }
            }
        }
    }

    // Theoretical vs simulated degree pmf tables.
    if (config.has("pmf_n")) {
        const int n = static_cast<int>(config.get_long("pmf_n"));
        RadiusSchedule radii{config.get_doubles("radii")};
        radii.validate();
        const int K = radii.max_order();
        const std::vector<double> phi =
            broadcast(config.get_doubles("phi"), static_cast<std::size_t>(K - 1), "phi");
        const long n_sim = config.get_long("n_sim", 10000);

        const LatentPrior prior = LatentPrior::gaussian(Eigen::VectorXd::Zero(d), sigma);
        const NoiseParams noise = NoiseParams::symmetric(phi);
        RngStream sim_rng = RngStream::named(seed, "theory_sim");

        // order-k degrees range up to C(n-1, k-1)
        std::vector<std::vector<double>> hist(static_cast<std::size_t>(K - 1));
        for (int k = 2; k <= K; ++k)
            hist[static_cast<std::size_t>(k - 2)].assign(
                static_cast<std::size_t>(binomial(n - 1, k - 1)) + 1, 0.0);
        for (long s = 0; s < n_sim; ++s) {
            auto [h, u] = sample_hypergraph(prior, radii, noise, n, sim_rng);
            const DegreeVector deg = degree_sequence(h);
            for (int k = 2; k <= K; ++k)
                for (int i = 0; i < n; ++i)
                    hist[static_cast<std::size_t>(k - 2)]
                        [static_cast<std::size_t>(deg.at(i, k))] += 1.0;
        }
        for (auto& row : hist) {
            const double total = static_cast<double>(n_sim) * n;
            for (double& c : row) c /= total;
        }

        auto pmf_out = open_out(paths.file("pmf.csv"));
        auto tv_out = open_out(paths.file("tv.csv"));
        pmf_out << "order,degree,pmf,empirical\n";
        tv_out << "order,tv\n";
        for (int k = 2; k <= K && k <= 3; ++k) {
            const auto& empirical = hist[static_cast<std::size_t>(k - 2)];
            std::vector<double> pmf;
            if (k == 2) {
                const double p2 = p_edge_order2(sigma, radii.r(2), &warnings);
                pmf = degree_dist_order2(n, p2, phi[0]);
                pmf.resize(empirical.size(), 0.0);
            } else {
                const McEstimate p3 = p_edge_mc(Eigen::VectorXd::Zero(d), sigma, radii.r(3), 3,
                                                mc_samples, rng);
                pmf = degree_dist_order3(n, p3.value, phi[1], &warnings)
                          .table(static_cast<int>(empirical.size()));
            }
            for (std::size_t j = 0; j < empirical.size(); ++j)
                pmf_out << k << "," << j << "," << fmt(pmf[j]) << "," << fmt(empirical[j])
                        << "\n";
            tv_out << k << "," << fmt(total_variation(pmf, empirical)) << "\n";
        }
    }

    config.reject_unknown();
    print_warnings(warnings);
    write_manifest(config, paths, seed);
    return 0;
}

int cmd_summarize(RunConfig& config) {
    std::vector<std::string> warnings;
    const Hypergraph h = read_hypergraph(config.get_string("input"), &warnings);
    print_warnings(warnings);
    const std::string csv_path = config.get_string("csv", "");
    config.reject_unknown();

    const auto specs = default_motifs();
    const SummaryPanel panel = summarize(h, specs);

    std::printf("hypergraph: N=%d K=%d edges=%zu\n", h.n_nodes(), h.max_order(), h.n_edges());
    std::printf("%-22s", "order:");
    for (int k = 2; k <= h.max_order(); ++k) std::printf(" %10d", k);
    std::printf("\n%-22s", "edges:");
    for (int k = 2; k <= h.max_order(); ++k) std::printf(" %10zu", h.n_edges(k));
    std::printf("\n%-22s", "density:");
    for (std::size_t i = 0; i < panel.density_by_order.size(); ++i)
        std::printf(" %10.6f", panel.density_by_order[i]);
    std::printf("\n%-22s", "degree pct (5..95):");
    for (double p : panel.degree_percentiles) std::printf(" %10.2f", p);
    std::printf("\n%-22s", "order pct (5..95):");
    for (double p : panel.order_percentiles) std::printf(" %10.2f", p);
    std::printf("\n");
    for (const auto& [name, count] : panel.motif_counts)
        std::printf("motif %-16s %12lld\n", name.c_str(), static_cast<long long>(count));

    if (!csv_path.empty()) {
        auto out = open_out(csv_path);
        out << "metric,key,value\n";
        for (std::size_t i = 0; i < panel.density_by_order.size(); ++i)
            out << "density," << (i + 2) << "," << fmt(panel.density_by_order[i]) << "\n";
        const std::array<int, 5> pct{5, 25, 50, 75, 95};
        for (std::size_t i = 0; i < pct.size(); ++i)
            out << "degree_pct," << pct[i] << "," << fmt(panel.degree_percentiles[i]) << "\n";
        for (std::size_t i = 0; i < pct.size(); ++i)
            out << "order_pct," << pct[i] << "," << fmt(panel.order_percentiles[i]) << "\n";
        for (const auto& [name, count] : panel.motif_counts)
            out << "motif," << name << "," << count << "\n";
    }
    return 0;
}

int cmd_init(RunConfig& config) {
    const auto paths = resolve_outputs(config, "init");
    const std::uint64_t seed = static_cast<std::uint64_t>(config.get_long("seed", 1));

    std::vector<std::string> warnings;
    const Hypergraph h = read_hypergraph(config.get_string("input"), &warnings);
    print_warnings(warnings);

    const int d = static_cast<int>(config.get_long("d", 2));
    const double weight = config.get_double("gmds_weight", 0.5);
    const int order_cap = static_cast<int>(config.get_long("order_cap", 6));
    std::vector<int> anchors =
        config.get_ints_opt("anchors").value_or(default_anchors(h, d));

    const Priors priors = priors_from_config(config, d, h.max_order());
    const std::vector<double> caps = caps_from_config(config, h);

    AbcOptions abc;
    abc.n_smp = static_cast<int>(config.get_long("abc_n_smp", 25));
    abc.eps = config.get_double("abc_eps", std::numeric_limits<double>::infinity());
    abc.max_attempts = config.get_long("abc_max_attempts", 100000);
    config.reject_unknown();

    const Eigen::MatrixXd u0 = init_latents_gmds(h, weight, d, anchors);
    const RadiusSchedule r0 = init_radii(h, u0);

    RngStream rng = RngStream::named(seed, "init");
    const std::size_t orders = static_cast<std::size_t>(h.max_order() - 1);
    std::vector<double> psi0(orders), psi1(orders);
    for (std::size_t i = 0; i < orders; ++i) {
        const double cap = caps.empty() ? 1.0 : caps[i];
        psi0[i] = sample_beta_truncated(priors.a0[i], priors.b0[i], cap, rng);
        psi1[i] = sample_beta_truncated(priors.a1[i], priors.b1[i], cap, rng);
    }

    const NoiseParams noise0 = NoiseParams::asymmetric(psi0, psi1);
    const auto [mu0, sigma0] = init_abc(h, priors.m_mu, priors.sigma_mu, priors.iw_scale,
                                        priors.iw_dof, r0, noise0, abc, rng, order_cap);

    write_coords_csv(u0, paths.file("u0.csv"));
    auto out = open_out(paths.file("init.cfg"));
    out << "d=" << d << "\n";
    out << "anchors=" << join_ints(anchors) << "\n";
    out << "radii=" << join(r0.radii) << "\n";
    out << "psi0=" << join(psi0) << "\n";
    out << "psi1=" << join(psi1) << "\n";
    out << "mu=" << join(std::vector<double>(mu0.data(), mu0.data() + mu0.size())) << "\n";
    out << "sigma=" << join_matrix(sigma0) << "\n";
    write_manifest(config, paths, seed);
    return 0;
}

} // namespace lsh::cli
