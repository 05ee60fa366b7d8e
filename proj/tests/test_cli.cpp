#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"

#include "loggas/envelope.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

// Runs the CLI under test with stderr folded into stdout.
RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("LOGGAS_BIN");
    REQUIRE(bin != nullptr);
    const std::string cmd = std::string(bin) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("envelope serialization round-trips byte for byte") {
    loggas::cli::RunEnvelope env;
    env.command = "demo";
    env.params["n"] = "3";
    env.results["values"] = loggas::cli::Json::array({1.0, 2.5});
    env.diagnostics["note"] = "ok";
    const std::string text = env.serialize();
    const auto parsed = loggas::cli::RunEnvelope::parse(text);
    CHECK(parsed.serialize() == text);
    CHECK(parsed.command == "demo");
}

TEST_CASE("zeros: hermite n=2 lands on +-1/sqrt(2)") {
    const auto r = run_cli("zeros --family hermite --n 2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "index,zero"));
    CHECK(contains(r.output, "-0.7071067811865"));
    CHECK(contains(r.output, "\n1,0.7071067811865"));
}

TEST_CASE("zeros: both methods report their discrepancy") {
    const auto r = run_cli("zeros --family laguerre --alpha 1.5 --n 5 --method both --json");
    CHECK(r.exit_code == 0);
    const auto env = loggas::cli::RunEnvelope::parse(r.output);
    CHECK(env.command == "zeros");
    CHECK(env.results.at("eig").size() == 5);
    CHECK(env.results.at("equilibrium").size() == 5);
    CHECK(env.diagnostics.at("max_discrepancy").get<double>() < 1e-8);
}

TEST_CASE("grammar violations exit 1 with an invalid-input line") {
    const auto bad_family = run_cli("zeros --family legendre --n 3");
    CHECK(bad_family.exit_code == 1);
    CHECK(contains(bad_family.output, "error: invalid-input"));

    const auto missing = run_cli("zeros --family hermite");
    CHECK(missing.exit_code == 1);
    CHECK(contains(missing.output, "error: invalid-input"));

    const auto unknown = run_cli("frobnicate");
    CHECK(unknown.exit_code == 1);
}

TEST_CASE("qhj-spectrum lists the ladder with spacing omega") {
    const auto r = run_cli("qhj-spectrum --omega 2 --nmax 4");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "n,lambda"));
    CHECK(contains(r.output, "\n0,0\n"));
    CHECK(contains(r.output, "\n3,6\n"));
    CHECK(contains(r.output, "\n4,8\n"));
}

TEST_CASE("quantize reports an integer action for a classical state") {
    const auto r = run_cli("quantize --family hermite --n 3 --json");
    CHECK(r.exit_code == 0);
    const auto env = loggas::cli::RunEnvelope::parse(r.output);
    CHECK(env.results.at("J").get<double>() == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("mcmc acceptance-rate guard exits 2") {
    const auto r = run_cli(
        "mcmc --beta 2 --n 2 --steps 4000 --burn-in 100 --step-scale 4000 --seed 1");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.output, "error: convergence"));
}

TEST_CASE("deformed jpdf at beta != 2 is a domain error, exit 3") {
    const std::string path = "/tmp/loggas_cli_pts.csv";
    {
        std::ofstream f(path);
        f << "index,point\n0,0.5\n1,1.5\n";
    }
    const auto r = run_cli("jpdf --beta 1 --points " + path + " --exceptional --g 1 --l 1");
    CHECK(r.exit_code == 3);
    CHECK(contains(r.output, "error:"));

    const auto ok = run_cli("jpdf --beta 2 --points " + path + " --exceptional --g 1 --l 1");
    CHECK(ok.exit_code == 0);
    CHECK(contains(ok.output, "log_jpdf_exceptional"));
}

TEST_CASE("jpdf reads the numeric column and reports both forms") {
    const std::string path = "/tmp/loggas_cli_pts2.csv";
    {
        std::ofstream f(path);
        f << "point\n-1.0\n2.0\n";
    }
    const auto r = run_cli("jpdf --beta 2 --points " + path + " --json");
    CHECK(r.exit_code == 0);
    const auto env = loggas::cli::RunEnvelope::parse(r.output);
    const double pot = env.results.at("log_jpdf_potential").get<double>();
    const double wt = env.results.at("log_jpdf_weight").get<double>();
    CHECK(pot == doctest::Approx(-5.0 + 2.0 * std::log(3.0)).epsilon(1e-13));
    CHECK(env.results.at("abs_diff").get<double>() <= 1e-14);
    CHECK(wt == doctest::Approx(pot).epsilon(1e-14));
}

TEST_CASE("seeded sampling is byte-reproducible") {
    const std::string cmd = "sample --ensemble gue --dim 16 --replicas 3 --seed 99 --json";
    const auto first = run_cli(cmd);
    const auto second = run_cli(cmd);
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);
    CHECK(!first.output.empty());

    const auto mcmc_cmd =
        "mcmc --beta 2 --n 4 --steps 5000 --burn-in 500 --step-scale 0.8 --seed 3";
    CHECK(run_cli(mcmc_cmd).output == run_cli(mcmc_cmd).output);
}

TEST_CASE("sample: tridiag requires beta, dense rejects a conflicting one") {
    const auto no_beta = run_cli("sample --ensemble tridiag --dim 8 --replicas 2 --seed 1");
    CHECK(no_beta.exit_code == 1);
    const auto conflict =
        run_cli("sample --ensemble goe --beta 2 --dim 8 --replicas 2 --seed 1");
    CHECK(conflict.exit_code == 3);
    const auto ok = run_cli("sample --ensemble tridiag --beta 3.5 --dim 8 --replicas 2 --seed 1");
    CHECK(ok.exit_code == 0);
    CHECK(contains(ok.output, "replica,index,eigenvalue"));
}

TEST_CASE("semicircle-test reports a small distance for a moderate run") {
    const auto r = run_cli("semicircle-test --dim 40 --replicas 10 --seed 12 --json");
    CHECK(r.exit_code == 0);
    const auto env = loggas::cli::RunEnvelope::parse(r.output);
    CHECK(env.results.at("ks").get<double>() < 0.15);
    CHECK(env.results.at("pooled").get<int>() == 400);
}

TEST_CASE("dyson deterministic flow reports a tiny residual") {
    const auto r = run_cli("dyson --n 5 --beta 2 --dt 0.05 --steps 600 --seed 4 "
                           "--deterministic --json");
    CHECK(r.exit_code == 0);
    const auto env = loggas::cli::RunEnvelope::parse(r.output);
    CHECK(env.diagnostics.at("residual_sup").get<double>() < 1e-8);
    CHECK(env.results.at("final").size() == 5);
}

TEST_CASE("xlag subcommands produce their tables") {
    const auto gram = run_cli("xlag gram --g 1 --l 1 --nmax 4 --json");
    CHECK(gram.exit_code == 0);
    const auto genv = loggas::cli::RunEnvelope::parse(gram.output);
    CHECK(genv.diagnostics.at("max_offdiag").get<double>() < 1e-8);

    const auto qmf = run_cli("xlag qmf --g 1 --l 1 --nmax 3 --json");
    CHECK(qmf.exit_code == 0);
    const auto qenv = loggas::cli::RunEnvelope::parse(qmf.output);
    CHECK(qenv.diagnostics.at("max_abs_error").get<double>() < 1e-8);
    CHECK(qenv.diagnostics.at("node_count").get<int>() == 2);
    CHECK(qenv.diagnostics.at("node_action").get<double>() ==
          doctest::Approx(2.0).epsilon(1e-6));

    const auto iso = run_cli("xlag isospectral --g 2.5 --l 1 --nmax 4");
    CHECK(iso.exit_code == 0);
    CHECK(contains(iso.output, "n1,n2,gap,spread,spread_over_gap"));
    CHECK(contains(iso.output, "\n1,2,4"));

    const auto weight = run_cli("xlag weight --g 1.5 --l 1");
    CHECK(weight.exit_code == 0);
    CHECK(contains(weight.output, "x,weight"));
    // w(1) = e^-1/9 = 0.04087579...
    CHECK(contains(weight.output, "\n1,0.040875"));
}

TEST_CASE("output lands in a file when --out is given") {
    const std::string path = "/tmp/loggas_cli_out.csv";
    std::remove(path.c_str());
    const auto r = run_cli("zeros --family hermite --n 3 --out " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.output.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    std::string first_line;
    std::getline(f, first_line);
    CHECK(first_line == "index,zero");
}

TEST_CASE("susy table has the paired columns") {
    const auto r = run_cli("susy --omega 2 --levels 3 --grid 2000");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "k,plus,minus"));
    // First partner level is 0 (within FD error), second partner starts near 2.
    CHECK(contains(r.output, "\n0,"));
}
