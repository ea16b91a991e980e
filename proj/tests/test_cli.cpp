#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lsh/hypergraph_io.hpp"

namespace fs = std::filesystem;

namespace {

const std::string cli = LSH_CLI_PATH;

int run_cli(const std::string& args) {
    const std::string command = cli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

fs::path make_workdir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("lsh_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("cli simulate is deterministic and writes the full artifact set") {
    const fs::path dir = make_workdir("simulate");
    write_file(dir / "sim.cfg",
               "model=lsh\nn=20\nd=2\nradii=0.2,0.3\npsi0=0.01,0.01\npsi1=0.01,0.01\n"
               "sigma=0.25\nseed=42\nout=" + (dir / "a").string() + "\n");
    CHECK(run_cli("simulate -c " + (dir / "sim.cfg").string()) == 0);
    CHECK(fs::exists(dir / "a" / "simulate_hypergraph.txt"));
    CHECK(fs::exists(dir / "a" / "simulate_coords.csv"));
    CHECK(fs::exists(dir / "a" / "simulate_manifest.txt"));

    CHECK(run_cli("simulate -c " + (dir / "sim.cfg").string() + " --out " +
                  (dir / "b").string()) == 0);
    CHECK(slurp(dir / "a" / "simulate_hypergraph.txt") ==
          slurp(dir / "b" / "simulate_hypergraph.txt"));
    CHECK(slurp(dir / "a" / "simulate_coords.csv") == slurp(dir / "b" / "simulate_coords.csv"));

    // a different seed changes the sample
    CHECK(run_cli("simulate -c " + (dir / "sim.cfg").string() + " --seed 43 --out " +
                  (dir / "c").string()) == 0);
    CHECK(slurp(dir / "a" / "simulate_coords.csv") != slurp(dir / "c" / "simulate_coords.csv"));

    const lsh::Hypergraph h =
        lsh::read_hypergraph((dir / "a" / "simulate_hypergraph.txt").string());
    CHECK(h.n_nodes() == 20);
    CHECK(h.max_order() == 3);
}

TEST_CASE("cli exit codes") {
    const fs::path dir = make_workdir("errors");

    // config error: unknown key
    write_file(dir / "bad_key.cfg", "model=lsh\nn=10\nradii=0.2\nphi=0.1\nbogus=1\n");
    CHECK(run_cli("simulate -c " + (dir / "bad_key.cfg").string()) == 2);

    // config error: order cap
    write_file(dir / "deep.cfg",
               "model=lsh\nn=30\nradii=0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9\n"
               "phi=0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1\n");
    CHECK(run_cli("simulate -c " + (dir / "deep.cfg").string()) == 2);

    // data error: missing input file
    write_file(dir / "fit.cfg", "input=" + (dir / "nope.txt").string() + "\niterations=5\n");
    CHECK(run_cli("fit -c " + (dir / "fit.cfg").string()) == 3);

    // usage error: no subcommand
    CHECK(run_cli("") != 0);
}

TEST_CASE("cli fit smoke produces a well-formed report and deterministic trace") {
    const fs::path dir = make_workdir("fit");
    write_file(dir / "toy.txt",
               "nodes=5 max_order=3\n0,1\n1,2\n2,3\n3,4\n0,4\n0,1,2\n");
    write_file(dir / "fit.cfg",
               "input=" + (dir / "toy.txt").string() +
                   "\niterations=50\nburn_in=10\nblocks=2\nsigma_u=0.1\nsigma_r=0.03\n"
                   "seed=5\nthin=2\nthin_latent=2\nout=" + (dir / "a").string() + "\n");
    CHECK(run_cli("fit -c " + (dir / "fit.cfg").string()) == 0);

    const std::string report = slurp(dir / "a" / "fit_report.txt");
    CHECK(report.find("r_hat=") != std::string::npos);
    CHECK(report.find("explained_order_2=") != std::string::npos);
    CHECK(report.find("accept_rate_r=") != std::string::npos);

    const std::string trace = slurp(dir / "a" / "fit_trace.csv");
    CHECK(trace.rfind("iteration,loglik,mu_1,mu_2,sigma_11,sigma_12,sigma_22,r_2,r_3,"
                      "psi0_2,psi0_3,psi1_2,psi1_3,accept_r,accept_u_1,accept_u_2",
                      0) == 0);
    // 50 iterations, burn-in 10, thinning 2 -> 20 retained rows (+ header)
    int lines = 0;
    for (char c : trace)
        if (c == '\n') ++lines;
    CHECK(lines == 21);

    CHECK(run_cli("fit -c " + (dir / "fit.cfg").string() + " --out " + (dir / "b").string()) ==
          0);
    CHECK(slurp(dir / "a" / "fit_trace.csv") == slurp(dir / "b" / "fit_trace.csv"));
    CHECK(slurp(dir / "a" / "fit_report.txt") == slurp(dir / "b" / "fit_report.txt"));

    // two chains write separate traces
    write_file(dir / "fit2.cfg",
               "input=" + (dir / "toy.txt").string() +
                   "\niterations=10\nseed=5\nout=" + (dir / "chains").string() + "\n");
    CHECK(run_cli("fit -c " + (dir / "fit2.cfg").string() + " --chains 2") == 0);
    CHECK(fs::exists(dir / "chains" / "fit_chain1_trace.csv"));
    CHECK(fs::exists(dir / "chains" / "fit_chain2_trace.csv"));
}

TEST_CASE("cli predict consumes fit artifacts and emits qq tables") {
    const fs::path dir = make_workdir("predict");
    write_file(dir / "sim.cfg",
               "model=lsh\nn=25\nd=2\nradii=0.25,0.35\npsi0=0.005,0.005\npsi1=0.005,0.005\n"
               "sigma=0.2\nseed=11\nout=" + dir.string() + "\nprefix=sim\n");
    REQUIRE(run_cli("simulate -c " + (dir / "sim.cfg").string()) == 0);

    write_file(dir / "fit.cfg",
               "input=" + (dir / "sim_hypergraph.txt").string() +
                   "\niterations=60\nburn_in=20\nblocks=3\nsigma_u=0.08\nsigma_r=0.02\n"
                   "seed=12\nout=" + dir.string() + "\nprefix=fit\n");
    REQUIRE(run_cli("fit -c " + (dir / "fit.cfg").string()) == 0);

    write_file(dir / "pred.cfg",
               "input=" + (dir / "sim_hypergraph.txt").string() +
                   "\nn_star=4\nn_rep=25\nplacement=gaussian\nseed=13\nout=" + dir.string() +
                   "\nprefix=predA\n");
    REQUIRE(run_cli("predict -c " + (dir / "pred.cfg").string() + " --fitted " +
                    (dir / "fit_fitted.cfg").string()) == 0);
    CHECK(fs::exists(dir / "predA_degrees.csv"));
    CHECK(fs::exists(dir / "predA_motifs.csv"));

    // second run compares against the first and emits a qq table;
    // peripheral placement exercises the farthest-point path
    write_file(dir / "pred2.cfg",
               "input=" + (dir / "sim_hypergraph.txt").string() +
                   "\nn_star=4\nn_rep=25\nplacement=peripheral\nseed=14\nout=" + dir.string() +
                   "\nprefix=predB\ncompare=" + (dir / "predA_degrees.csv").string() + "\n");
    REQUIRE(run_cli("predict -c " + (dir / "pred2.cfg").string() + " --fitted " +
                    (dir / "fit_fitted.cfg").string()) == 0);
    const std::string qq = slurp(dir / "predB_qq.csv");
    CHECK(qq.rfind("order,percent,q_this,q_other", 0) == 0);

    // missing fitted artifact path
    CHECK(run_cli("predict -c " + (dir / "pred.cfg").string() + " --fitted " +
                  (dir / "missing.cfg").string()) == 2);
}

TEST_CASE("cli theory emits sweep and pmf tables") {
    const fs::path dir = make_workdir("theory");
    write_file(dir / "theory.cfg",
               "d=2\nsigma=1\nr_min=0.2\nr_max=1.0\nr_steps=5\norders=2,3\n"
               "mc_samples=2000\nseed=3\nout=" + dir.string() + "\n"
               "pmf_n=12\nradii=0.3,0.35\nphi=0.01,0.01\nn_sim=200\n");
    CHECK(run_cli("theory -c " + (dir / "theory.cfg").string()) == 0);

    const std::string sweep = slurp(dir / "theory_sweep.csv");
    CHECK(sweep.rfind("k,r,p,std_err", 0) == 0);
    int lines = 0;
    for (char c : sweep)
        if (c == '\n') ++lines;
    CHECK(lines == 11); // header + 5 radii x 2 orders

    CHECK(slurp(dir / "theory_pmf.csv").rfind("order,degree,pmf,empirical", 0) == 0);
    CHECK(slurp(dir / "theory_tv.csv").rfind("order,tv", 0) == 0);

    // empty sweep range: header-only CSV
    write_file(dir / "empty.cfg", "d=2\nr_steps=0\nout=" + (dir / "empty").string() + "\n");
    CHECK(run_cli("theory -c " + (dir / "empty.cfg").string()) == 0);
    CHECK(slurp(dir / "empty" / "theory_sweep.csv") == "k,r,p,std_err\n");
}

TEST_CASE("cli summarize prints a panel") {
    const fs::path dir = make_workdir("summarize");
    write_file(dir / "h.txt", "nodes=4 max_order=3\n0,1\n0,2\n1,2\n0,1,3\n");
    CHECK(run_cli("summarize " + (dir / "h.txt").string()) == 0);
    CHECK(run_cli("summarize " + (dir / "h.txt").string() + " --csv " +
                  (dir / "panel.csv").string()) == 0);
    const std::string csv = slurp(dir / "panel.csv");
    CHECK(csv.find("density,2,") != std::string::npos);
    CHECK(csv.find("motif,triangle,1") != std::string::npos);
    CHECK(run_cli("summarize " + (dir / "missing.txt").string()) == 3);
}

TEST_CASE("cli init writes initial values") {
    const fs::path dir = make_workdir("init");
    write_file(dir / "h.txt", "nodes=6 max_order=3\n0,1\n1,2\n2,3\n3,4\n4,5\n0,1,2\n");
    write_file(dir / "init.cfg",
               "input=" + (dir / "h.txt").string() + "\nd=2\nabc_n_smp=5\nseed=2\nout=" +
                   dir.string() + "\n");
    CHECK(run_cli("init -c " + (dir / "init.cfg").string()) == 0);
    CHECK(fs::exists(dir / "init_u0.csv"));
    const std::string init = slurp(dir / "init_init.cfg");
    CHECK(init.find("radii=") != std::string::npos);
    CHECK(init.find("mu=") != std::string::npos);
}
