#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "lsh/errors.hpp"

namespace {

// Exit codes: 0 success, 2 config error, 3 data error, 4 numeric error.
int run(int argc, char** argv) {
    CLI::App app{"Latent-space hypergraph toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string fitted_path;
    std::string input_path;
    long seed = -1;
    std::string out_dir;
    int chains = 1;

    auto add_common = [&](CLI::App* cmd, bool config_required) {
        auto* opt = cmd->add_option("-c,--config", config_path, "key=value configuration file");
        if (config_required) opt->required();
        cmd->add_option("--seed", seed, "override the config seed");
        cmd->add_option("--out", out_dir, "override the output directory");
    };

    auto* simulate = app.add_subcommand("simulate", "sample a hypergraph from a model");
    add_common(simulate, true);

    auto* fit = app.add_subcommand("fit", "posterior sampling for an observed hypergraph");
    add_common(fit, true);
    fit->add_option("--chains", chains, "independent chains with derived seeds");

    auto* predict = app.add_subcommand("predict", "predictive simulation from fitted parameters");
    add_common(predict, true);
    predict->add_option("--fitted", fitted_path, "fitted.cfg from a fit run, layered as defaults");

    auto* theory = app.add_subcommand("theory", "connection-probability and degree-law tables");
    add_common(theory, true);

    auto* summarize = app.add_subcommand("summarize", "print summary statistics of a hypergraph");
    summarize->add_option("input", input_path, "hypergraph file")->required();
    summarize->add_option("--csv", out_dir, "also write the panel as CSV");

    auto* init = app.add_subcommand("init", "standalone MCMC initialisation");
    add_common(init, true);

    CLI11_PARSE(app, argc, argv);

    lsh::RunConfig config =
        config_path.empty() ? lsh::RunConfig::parse("") : lsh::RunConfig::load(config_path);
    if (seed >= 0) config.set("seed", std::to_string(seed));
    if (!out_dir.empty() && !summarize->parsed()) config.set("out", out_dir);

    if (simulate->parsed()) return lsh::cli::cmd_simulate(config);
    if (fit->parsed()) {
        if (chains < 1) throw lsh::ConfigError("--chains must be >= 1");
        return lsh::cli::cmd_fit(config, chains);
    }
    if (predict->parsed()) {
        if (!fitted_path.empty()) config.merge_defaults(lsh::RunConfig::load(fitted_path));
        return lsh::cli::cmd_predict(config);
    }
    if (theory->parsed()) return lsh::cli::cmd_theory(config);
    if (summarize->parsed()) {
        config.set("input", input_path);
        if (!out_dir.empty()) config.set("csv", out_dir);
        return lsh::cli::cmd_summarize(config);
    }
    if (init->parsed()) return lsh::cli::cmd_init(config);
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const lsh::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const lsh::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const lsh::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
