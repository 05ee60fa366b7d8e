#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "loggas/electrostatics.hpp"
#include "loggas/envelope.hpp"
#include "loggas/error.hpp"
#include "loggas/contour.hpp"
#include "loggas/orthopoly.hpp"
#include "loggas/point_config.hpp"
#include "loggas/polynomial.hpp"
#include "loggas/qhj.hpp"
#include "loggas/quadrature.hpp"
#include "loggas/random.hpp"
#include "loggas/rmt.hpp"
#include "loggas/xpoly.hpp"

namespace {

using loggas::PointConfiguration;
using loggas::Polynomial;
using loggas::cli::Json;
using loggas::cli::RunEnvelope;
using loggas::electrostatics::Superpotential;
using loggas::numerics::RandomStream;
using loggas::orthopoly::OrthogonalFamily;

std::string fd(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fi(long long v) { return std::to_string(v); }

// Lossless CSV: header row then %.17g / integer cells.
class Csv {
public:
    explicit Csv(const std::string& header) { text_ = header + "\n"; }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text_ += ',';
            text_ += cells[i];
        }
        text_ += '\n';
    }

    const std::string& str() const { return text_; }

private:
    std::string text_;
};

struct CommonOut {
    std::string out_path;
    bool json = false;
};

void add_common(CLI::App* cmd, CommonOut& co) {
    cmd->add_option("--out", co.out_path, "write output to this path instead of stdout");
    cmd->add_flag("--json", co.json, "emit the run envelope instead of CSV");
}

bool timing_enabled() {
    const char* e = std::getenv("LOGGAS_TIMING");
    return e != nullptr && std::string(e) == "1";
}

void emit(const CommonOut& co, const std::string& csv, RunEnvelope env,
          std::chrono::steady_clock::time_point started) {
    if (timing_enabled()) {
        const auto elapsed = std::chrono::steady_clock::now() - started;
        env.diagnostics["wall_time_ms"] =
            std::chrono::duration<double, std::milli>(elapsed).count();
    }
    const std::string text = co.json ? env.serialize() : csv;
    if (co.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(co.out_path, std::ios::binary);
        if (!f) throw loggas::InvalidInputError("cannot open output path " + co.out_path);
        f << text;
    }
}

struct FamilyArgs {
    std::string family;
    double alpha = 0.0;
    double a = 0.0;
    double b = 0.0;
};

void add_family(CLI::App* cmd, FamilyArgs& fa) {
    cmd->add_option("--family", fa.family, "hermite | laguerre | jacobi")
        ->required()
        ->check(CLI::IsMember({"hermite", "laguerre", "jacobi"}));
    cmd->add_option("--alpha", fa.alpha, "Laguerre parameter (default 0)");
    cmd->add_option("--a", fa.a, "Jacobi parameter a (default 0)");
    cmd->add_option("--b", fa.b, "Jacobi parameter b (default 0)");
}

OrthogonalFamily make_family(const FamilyArgs& fa) {
    if (fa.family == "hermite") return OrthogonalFamily::hermite();
    if (fa.family == "laguerre") return OrthogonalFamily::laguerre(fa.alpha);
    return OrthogonalFamily::jacobi(fa.a, fa.b);
}

void family_params(Json& params, const FamilyArgs& fa) {
    params["family"] = fa.family;
    if (fa.family == "laguerre") params["alpha"] = fd(fa.alpha);
    if (fa.family == "jacobi") {
        params["a"] = fd(fa.a);
        params["b"] = fd(fa.b);
    }
}

// Ellipse around the state's zeros: tight enough to exclude every pole of W
// (45% of the gap), wide enough that no zero sits near the contour.
loggas::qhj::EllipseSpec enclosing_ellipse(const PointConfiguration& zeros,
                                           const Superpotential& w) {
    const double lo = zeros.front();
    const double hi = zeros.back();
    double margin;
    if (w.poles().empty()) {
        margin = 0.1 * (hi - lo) + 0.5;
    } else {
        double gap = std::numeric_limits<double>::infinity();
        for (const auto& p : w.poles()) {
            gap = std::min(gap, std::min(std::abs(p.location - lo), std::abs(p.location - hi)));
        }
        margin = 0.45 * gap;
    }
    const double center = 0.5 * (lo + hi);
    const double semi_real = 0.5 * (hi - lo) + margin;
    return {std::complex<double>(center, 0.0), semi_real, std::max(0.5, 0.5 * semi_real)};
}

// One value per line, last numeric cell of the line; this reads both bare
// number lists and this tool's own "index,point" tables. Header lines have
// no numeric cell and are skipped.
std::vector<double> read_points_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw loggas::InvalidInputError("cannot open points file " + path);
    std::vector<double> values;
    std::string line;
    while (std::getline(f, line)) {
        std::optional<double> last;
        std::string token;
        auto flush = [&]() {
            if (token.empty()) return;
            try {
                std::size_t used = 0;
                const double v = std::stod(token, &used);
                if (used == token.size()) last = v;
            } catch (const std::exception&) {
                // non-numeric cell; ignored
            }
            token.clear();
        };
        for (const char c : line) {
            if (c == ',' || c == ';' || std::isspace(static_cast<unsigned char>(c))) {
                flush();
            } else {
                token += c;
            }
        }
        flush();
        if (last) values.push_back(*last);
    }
    if (values.empty()) {
        throw loggas::InvalidInputError("no numeric values in points file " + path);
    }
    return values;
}

struct HistRow {
    double lo, hi;
    long long count;
    double density;
};

std::vector<HistRow> make_histogram(std::vector<double> values, int bins) {
    if (bins < 1) throw loggas::InvalidInputError("--bins must be >= 1");
    const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
    double mn = *mn_it, mx = *mx_it;
    if (mn == mx) {
        mn -= 0.5;
        mx += 0.5;
    }
    const double width = (mx - mn) / bins;
    std::vector<HistRow> rows(bins);
    for (int k = 0; k < bins; ++k) {
        rows[k] = {mn + k * width, mn + (k + 1) * width, 0, 0.0};
    }
    for (const double v : values) {
        int k = static_cast<int>((v - mn) / width);
        k = std::clamp(k, 0, bins - 1);
        ++rows[k].count;
    }
    const double total = static_cast<double>(values.size());
    for (auto& r : rows) r.density = static_cast<double>(r.count) / (total * width);
    return rows;
}

// ---- subcommand bodies ----------------------------------------------------

struct ZerosArgs {
    FamilyArgs fa;
    int n = 0;
    std::string method = "eig";
    double tol = 1e-11;
    int max_iter = 300;
    CommonOut co;
};

void run_zeros(const ZerosArgs& args, std::chrono::steady_clock::time_point t0) {
    const OrthogonalFamily fam = make_family(args.fa);
    std::vector<double> eig, equ;
    loggas::electrostatics::EquilibriumResult eres;
    if (args.method != "equilibrium") {
        const PointConfiguration z = loggas::orthopoly::zeros(fam, args.n);
        eig.assign(z.points().begin(), z.points().end());
    }
    if (args.method != "eig") {
        const Superpotential w = loggas::electrostatics::equilibrium_superpotential(fam);
        eres = loggas::electrostatics::solve_equilibrium(args.n, w, std::nullopt, args.tol,
                                                         args.max_iter);
        if (!eres.converged) {
            throw loggas::ConvergenceError("equilibrium solve stalled with residual " +
                                           fd(eres.residual_norm));
        }
        equ.assign(eres.points.points().begin(), eres.points.points().end());
    }

    RunEnvelope env;
    env.command = "zeros";
    family_params(env.params, args.fa);
    env.params["n"] = fi(args.n);
    env.params["method"] = args.method;

    std::string csv;
    if (args.method == "both") {
        Csv table("index,eig,equilibrium,abs_diff");
        double max_diff = 0.0;
        Json je = Json::array(), jq = Json::array();
        for (int i = 0; i < args.n; ++i) {
            const double d = std::abs(eig[i] - equ[i]);
            max_diff = std::max(max_diff, d);
            table.row({fi(i), fd(eig[i]), fd(equ[i]), fd(d)});
            je.push_back(eig[i]);
            jq.push_back(equ[i]);
        }
        env.results["eig"] = je;
        env.results["equilibrium"] = jq;
        env.diagnostics["max_discrepancy"] = max_diff;
        env.diagnostics["residual_norm"] = eres.residual_norm;
        env.diagnostics["iterations"] = eres.iterations;
        csv = table.str();
    } else {
        const std::vector<double>& zs = args.method == "eig" ? eig : equ;
        Csv table("index,zero");
        Json jz = Json::array();
        for (int i = 0; i < args.n; ++i) {
            table.row({fi(i), fd(zs[i])});
            jz.push_back(zs[i]);
        }
        env.results["zeros"] = jz;
        if (args.method == "equilibrium") {
            env.diagnostics["residual_norm"] = eres.residual_norm;
            env.diagnostics["iterations"] = eres.iterations;
            env.diagnostics["gradient_steps"] = eres.gradient_steps;
        }
        csv = table.str();
    }
    emit(args.co, csv, env, t0);
}

struct EquilibriumArgs {
    FamilyArgs fa;
    int n = 0;
    double tol = 1e-11;
    int max_iter = 300;
    CommonOut co;
};

void run_equilibrium(const EquilibriumArgs& args, std::chrono::steady_clock::time_point t0) {
    const OrthogonalFamily fam = make_family(args.fa);
    const Superpotential w = loggas::electrostatics::equilibrium_superpotential(fam);
    const auto res = loggas::electrostatics::solve_equilibrium(args.n, w, std::nullopt,
                                                               args.tol, args.max_iter);
    if (!res.converged) {
        throw loggas::ConvergenceError("equilibrium solve stalled with residual " +
                                       fd(res.residual_norm));
    }
    RunEnvelope env;
    env.command = "equilibrium";
    family_params(env.params, args.fa);
    env.params["n"] = fi(args.n);
    env.params["tol"] = fd(args.tol);
    env.params["max_iter"] = fi(args.max_iter);

    Csv table("index,point");
    Json jp = Json::array();
    for (int i = 0; i < args.n; ++i) {
        table.row({fi(i), fd(res.points[i])});
        jp.push_back(res.points[i]);
    }
    env.results["points"] = jp;
    env.diagnostics["residual_norm"] = res.residual_norm;
    env.diagnostics["iterations"] = res.iterations;
    env.diagnostics["gradient_steps"] = res.gradient_steps;
    env.diagnostics["converged"] = res.converged;
    emit(args.co, table.str(), env, t0);
}

struct QhjArgs {
    double omega = 2.0;
    int nmax = 0;
    CommonOut co;
};

void run_qhj_spectrum(const QhjArgs& args, std::chrono::steady_clock::time_point t0) {
    if (!(args.omega > 0.0)) {
        throw loggas::DomainError("omega must be positive for a confining field");
    }
    // W = (omega/2) x gives level spacing omega.
    const Superpotential w(0.5 * args.omega, 0.0, {});
    const auto states = loggas::qhj::polynomial_spectrum(w, args.nmax);

    RunEnvelope env;
    env.command = "qhj-spectrum";
    env.params["omega"] = fd(args.omega);
    env.params["nmax"] = fi(args.nmax);
    Csv table("n,lambda");
    Json levels = Json::array();
    for (const auto& s : states) {
        table.row({fi(s.n), fd(s.lambda)});
        Json one = Json::object();
        one["n"] = s.n;
        one["lambda"] = s.lambda;
        one["coeffs"] = s.f.coeffs();
        levels.push_back(one);
    }
    env.results["levels"] = levels;
    emit(args.co, table.str(), env, t0);
}

struct QuantizeArgs {
    FamilyArgs fa;
    int n = 0;
    CommonOut co;
};

void run_quantize(const QuantizeArgs& args, std::chrono::steady_clock::time_point t0) {
    const OrthogonalFamily fam = make_family(args.fa);
    const PointConfiguration zs = loggas::orthopoly::zeros(fam, args.n);
    const Polynomial f = loggas::orthopoly::family_polynomial(fam, args.n);
    const Superpotential w = loggas::electrostatics::equilibrium_superpotential(fam);
    const auto ellipse = enclosing_ellipse(zs, w);
    const double j = loggas::qhj::contour_quantization(f, w, ellipse);

    RunEnvelope env;
    env.command = "quantize";
    family_params(env.params, args.fa);
    env.params["n"] = fi(args.n);
    env.results["J"] = j;
    env.results["n"] = args.n;
    env.diagnostics["center"] = ellipse.center.real();
    env.diagnostics["semi_real"] = ellipse.semi_real;
    env.diagnostics["semi_imag"] = ellipse.semi_imag;
    Csv table("n,J");
    table.row({fi(args.n), fd(j)});
    emit(args.co, table.str(), env, t0);
}

struct SusyArgs {
    double omega = 2.0;
    int levels = 4;
    double lo = -8.0, hi = 8.0;
    int grid = 4000;
    CommonOut co;
};

void run_susy(const SusyArgs& args, std::chrono::steady_clock::time_point t0) {
    if (!(args.omega > 0.0)) {
        throw loggas::DomainError("omega must be positive for a confining field");
    }
    if (args.levels < 1) throw loggas::InvalidInputError("--levels must be >= 1");
    const Superpotential w(0.5 * args.omega, 0.0, {});
    const auto [vp, vm] = loggas::qhj::susy_partners(w, 0.0);
    const auto plus =
        loggas::qhj::schrodinger_spectrum(vp, args.lo, args.hi, args.grid, args.levels);
    const auto minus =
        loggas::qhj::schrodinger_spectrum(vm, args.lo, args.hi, args.grid, args.levels);

    RunEnvelope env;
    env.command = "susy";
    env.params["omega"] = fd(args.omega);
    env.params["levels"] = fi(args.levels);
    Csv table("k,plus,minus");
    Json jp = Json::array(), jm = Json::array();
    for (int k = 0; k < args.levels; ++k) {
        table.row({fi(k), fd(plus[k]), fd(minus[k])});
        jp.push_back(plus[k]);
        jm.push_back(minus[k]);
    }
    env.results["plus"] = jp;
    env.results["minus"] = jm;
    env.diagnostics["grid_points"] = args.grid;
    env.diagnostics["box"] = Json::array({args.lo, args.hi});
    emit(args.co, table.str(), env, t0);
}

struct SampleArgs {
    std::string ensemble;
    std::optional<double> beta;
    int dim = 0;
    int replicas = 0;
    std::uint64_t seed = 0;
    bool scale = false;
    std::optional<int> bins;
    CommonOut co;
};

void run_sample(const SampleArgs& args, std::chrono::steady_clock::time_point t0) {
    loggas::rmt::SampleMethod method = loggas::rmt::SampleMethod::dense;
    double beta;
    if (args.ensemble == "tridiag") {
        method = loggas::rmt::SampleMethod::tridiagonal;
        if (!args.beta) throw loggas::InvalidInputError("tridiag sampling requires --beta");
        beta = *args.beta;
    } else {
        const double implied =
            args.ensemble == "goe" ? 1.0 : (args.ensemble == "gue" ? 2.0 : 4.0);
        if (args.beta && *args.beta != implied) {
            throw loggas::DomainError("beta " + fd(*args.beta) + " conflicts with ensemble " +
                                      args.ensemble);
        }
        beta = implied;
    }
    loggas::rmt::EnsembleSpec spec{beta, args.dim, Superpotential(1.0, 0.0, {})};
    const auto samples = loggas::rmt::sample_replicas(spec, args.replicas, args.seed, method);
    const double s = args.scale ? 1.0 / std::sqrt(static_cast<double>(args.dim)) : 1.0;

    RunEnvelope env;
    env.command = "sample";
    env.params["ensemble"] = args.ensemble;
    env.params["beta"] = fd(beta);
    env.params["dim"] = fi(args.dim);
    env.params["replicas"] = fi(args.replicas);
    env.params["seed"] = fi(static_cast<long long>(args.seed));
    env.params["scale"] = args.scale ? "true" : "false";

    std::string csv;
    if (args.bins) {
        std::vector<double> pooled;
        pooled.reserve(static_cast<std::size_t>(args.dim) * args.replicas);
        for (const auto& sample : samples) {
            for (const double v : sample.eigenvalues.points()) pooled.push_back(v * s);
        }
        const auto hist = make_histogram(std::move(pooled), *args.bins);
        Csv table("bin_lo,bin_hi,count,density");
        Json jh = Json::array();
        for (const auto& r : hist) {
            table.row({fd(r.lo), fd(r.hi), fi(r.count), fd(r.density)});
            Json one = Json::object();
            one["lo"] = r.lo;
            one["hi"] = r.hi;
            one["count"] = r.count;
            one["density"] = r.density;
            jh.push_back(one);
        }
        env.results["histogram"] = jh;
        csv = table.str();
    } else {
        Csv table("replica,index,eigenvalue");
        Json jr = Json::array();
        for (int r = 0; r < args.replicas; ++r) {
            const auto pts = samples[r].eigenvalues.points();
            Json row = Json::array();
            for (std::size_t i = 0; i < pts.size(); ++i) {
                table.row({fi(r), fi(static_cast<long long>(i)), fd(pts[i] * s)});
                row.push_back(pts[i] * s);
            }
            jr.push_back(row);
        }
        env.results["eigenvalues"] = jr;
        csv = table.str();
    }
    emit(args.co, csv, env, t0);
}

struct SemicircleArgs {
    int dim = 0;
    int replicas = 0;
    std::uint64_t seed = 0;
    std::optional<int> bins;
    CommonOut co;
};

void run_semicircle(const SemicircleArgs& args, std::chrono::steady_clock::time_point t0) {
    loggas::rmt::EnsembleSpec spec{2.0, args.dim, Superpotential(1.0, 0.0, {})};
    const auto samples = loggas::rmt::sample_replicas(spec, args.replicas, args.seed,
                                                      loggas::rmt::SampleMethod::dense);
    std::vector<double> pooled;
    pooled.reserve(static_cast<std::size_t>(args.dim) * args.replicas);
    const double s = 1.0 / std::sqrt(static_cast<double>(args.dim));
    for (const auto& sample : samples) {
        for (const double v : sample.eigenvalues.points()) pooled.push_back(v * s);
    }
    std::sort(pooled.begin(), pooled.end());
    auto cdf = [](double x) { return loggas::rmt::semicircle_cdf(x, 2.0); };
    const double ks = loggas::rmt::ks_distance(pooled, cdf);

    RunEnvelope env;
    env.command = "semicircle-test";
    env.params["dim"] = fi(args.dim);
    env.params["replicas"] = fi(args.replicas);
    env.params["seed"] = fi(static_cast<long long>(args.seed));
    env.results["ks"] = ks;
    env.results["pooled"] = static_cast<long long>(pooled.size());

    std::string csv;
    if (args.bins) {
        const auto hist = make_histogram(pooled, *args.bins);
        Csv table("bin_lo,bin_hi,count,density");
        Json jh = Json::array();
        for (const auto& r : hist) {
            table.row({fd(r.lo), fd(r.hi), fi(r.count), fd(r.density)});
            Json one = Json::object();
            one["lo"] = r.lo;
            one["hi"] = r.hi;
            one["count"] = r.count;
            one["density"] = r.density;
            jh.push_back(one);
        }
        env.results["histogram"] = jh;
        csv = table.str();
    } else {
        Csv table("x,empirical_cdf,model_cdf");
        const double n = static_cast<double>(pooled.size());
        for (std::size_t i = 0; i < pooled.size(); ++i) {
            table.row({fd(pooled[i]), fd(static_cast<double>(i + 1) / n), fd(cdf(pooled[i]))});
        }
        csv = table.str();
    }
    emit(args.co, csv, env, t0);
}

struct McmcArgs {
    double beta = 2.0;
    int n = 0;
    std::int64_t steps = 0;
    std::int64_t burn_in = 0;
    double step_scale = 0.0;
    std::uint64_t seed = 0;
    bool exceptional = false;
    double g = 1.0;
    int l = 1;
    CommonOut co;
};

void run_mcmc(const McmcArgs& args, std::chrono::steady_clock::time_point t0) {
    RandomStream stream(args.seed);
    loggas::rmt::McmcResult result;
    if (args.exceptional) {
        const loggas::xpoly::ExceptionalLaguerreFamily fam(args.g, args.l);
        loggas::rmt::LogGasTarget target;
        const double beta = args.beta;
        target.log_point_weight = [fam, beta](double x) {
            return 0.5 * beta * loggas::xpoly::log_deformed_weight(x, fam);
        };
        target.pair_beta = beta;
        target.in_domain = [](double x) { return x > 0.0; };
        result = loggas::rmt::metropolis_log_gas(target, args.n, args.steps, args.burn_in,
                                                 args.step_scale, stream);
    } else {
        loggas::rmt::EnsembleSpec spec{args.beta, args.n, Superpotential(1.0, 0.0, {})};
        result = loggas::rmt::metropolis_sample(spec, args.steps, args.burn_in,
                                                args.step_scale, stream);
    }
    if (result.acceptance_rate <= 0.01 || result.acceptance_rate >= 0.99) {
        throw loggas::ConvergenceError("acceptance rate " + fd(result.acceptance_rate) +
                                       " outside (0.01, 0.99); adjust --step-scale");
    }
    double mean_sum_sq = 0.0;
    for (const auto& config : result.samples) {
        double ss = 0.0;
        for (const double x : config.points()) ss += x * x;
        mean_sum_sq += ss;
    }
    mean_sum_sq /= static_cast<double>(result.samples.size());

    RunEnvelope env;
    env.command = "mcmc";
    env.params["beta"] = fd(args.beta);
    env.params["n"] = fi(args.n);
    env.params["steps"] = fi(args.steps);
    env.params["burn_in"] = fi(args.burn_in);
    env.params["step_scale"] = fd(args.step_scale);
    env.params["seed"] = fi(static_cast<long long>(args.seed));
    if (args.exceptional) {
        env.params["exceptional"] = "true";
        env.params["g"] = fd(args.g);
        env.params["l"] = fi(args.l);
    }
    env.results["mean_sum_sq"] = mean_sum_sq;
    env.results["samples"] = static_cast<long long>(result.samples.size());
    env.diagnostics["acceptance_rate"] = result.acceptance_rate;

    Csv table("statistic,value");
    table.row({"acceptance_rate", fd(result.acceptance_rate)});
    table.row({"samples", fi(static_cast<long long>(result.samples.size()))});
    table.row({"mean_sum_sq", fd(mean_sum_sq)});
    emit(args.co, table.str(), env, t0);
}

struct DysonArgs {
    int n = 0;
    double beta = 2.0;
    double dt = 0.0;
    std::int64_t steps = 0;
    std::uint64_t seed = 0;
    bool deterministic = false;
    CommonOut co;
};

void run_dyson(const DysonArgs& args, std::chrono::steady_clock::time_point t0) {
    const Superpotential w(1.0, 0.0, {});
    RandomStream stream(args.seed);
    const PointConfiguration init = loggas::electrostatics::default_equilibrium_init(args.n, w);
    const double beta_eff = args.deterministic ? 0.0 : args.beta;
    const auto traj = loggas::rmt::dyson_flow(init, w, beta_eff, args.dt, args.steps, stream);

    const PointConfiguration& final_config = traj.back();
    const auto res = loggas::electrostatics::residual(final_config, w);
    double res_sup = 0.0;
    for (const double r : res) res_sup = std::max(res_sup, std::abs(r));

    // Time average of sum x^2 over the last 80% of the trajectory.
    const std::size_t skip = traj.size() / 5;
    double mean_sum_sq = 0.0;
    for (std::size_t i = skip; i < traj.size(); ++i) {
        double ss = 0.0;
        for (const double x : traj[i].points()) ss += x * x;
        mean_sum_sq += ss;
    }
    mean_sum_sq /= static_cast<double>(traj.size() - skip);

    RunEnvelope env;
    env.command = "dyson";
    env.params["n"] = fi(args.n);
    env.params["beta"] = fd(args.beta);
    env.params["dt"] = fd(args.dt);
    env.params["steps"] = fi(args.steps);
    env.params["seed"] = fi(static_cast<long long>(args.seed));
    env.params["deterministic"] = args.deterministic ? "true" : "false";

    Csv table("index,point");
    Json jf = Json::array();
    for (std::size_t i = 0; i < final_config.size(); ++i) {
        table.row({fi(static_cast<long long>(i)), fd(final_config[i])});
        jf.push_back(final_config[i]);
    }
    env.results["final"] = jf;
    env.results["mean_sum_sq"] = mean_sum_sq;
    env.diagnostics["residual_sup"] = res_sup;
    env.diagnostics["trajectory_length"] = static_cast<long long>(traj.size());
    emit(args.co, table.str(), env, t0);
}

struct JpdfArgs {
    double beta = 2.0;
    std::string points_path;
    bool exceptional = false;
    double g = 1.0;
    int l = 1;
    CommonOut co;
};

void run_jpdf(const JpdfArgs& args, std::chrono::steady_clock::time_point t0) {
    const auto values = read_points_file(args.points_path);
    const PointConfiguration pts = PointConfiguration::from_unsorted(values);

    RunEnvelope env;
    env.command = "jpdf";
    env.params["beta"] = fd(args.beta);
    env.params["points"] = args.points_path;
    Csv table("statistic,value");
    if (args.exceptional) {
        if (args.beta != 2.0) {
            throw loggas::DomainError(
                "the deformed joint density is the beta = 2 form; use --beta 2");
        }
        env.params["exceptional"] = "true";
        env.params["g"] = fd(args.g);
        env.params["l"] = fi(args.l);
        const loggas::xpoly::ExceptionalLaguerreFamily fam(args.g, args.l);
        const double v = loggas::xpoly::exceptional_log_jpdf(pts, fam);
        env.results["log_jpdf_exceptional"] = v;
        table.row({"log_jpdf_exceptional", fd(v)});
    } else {
        const Superpotential w(1.0, 0.0, {});
        const double p =
            loggas::rmt::log_jpdf(pts, args.beta, w, loggas::rmt::JpdfForm::potential);
        const double q = loggas::rmt::log_jpdf(pts, args.beta, w, loggas::rmt::JpdfForm::weight);
        env.results["log_jpdf_potential"] = p;
        env.results["log_jpdf_weight"] = q;
        env.results["abs_diff"] = std::abs(p - q);
        table.row({"log_jpdf_potential", fd(p)});
        table.row({"log_jpdf_weight", fd(q)});
        table.row({"abs_diff", fd(std::abs(p - q))});
    }
    env.diagnostics["points"] = static_cast<long long>(pts.size());
    emit(args.co, table.str(), env, t0);
}

struct XlagArgs {
    double g = 1.0;
    int l = 1;
    int nmax = -1;  // per-mode default
    CommonOut co;
};

void xlag_params(Json& params, const XlagArgs& args, int nmax) {
    params["g"] = fd(args.g);
    params["l"] = fi(args.l);
    params["nmax"] = fi(nmax);
}

void run_xlag_gram(const XlagArgs& args, std::chrono::steady_clock::time_point t0) {
    const loggas::xpoly::ExceptionalLaguerreFamily fam(args.g, args.l);
    const int nmax = args.nmax < 0 ? fam.lowest_index() + 5 : args.nmax;
    const int nlo = fam.lowest_index();
    const auto gram = loggas::xpoly::gram_matrix(fam, nlo, nmax);

    RunEnvelope env;
    env.command = "xlag gram";
    xlag_params(env.params, args, nmax);
    Csv table("i,j,value");
    Json jm = Json::array();
    double max_offdiag = 0.0;
    const int m = nmax - nlo + 1;
    for (int i = 0; i < m; ++i) {
        Json row = Json::array();
        for (int j = 0; j < m; ++j) {
            table.row({fi(i + nlo), fi(j + nlo), fd(gram.at(i, j))});
            row.push_back(gram.at(i, j));
            if (i != j) max_offdiag = std::max(max_offdiag, std::abs(gram.at(i, j)));
        }
        jm.push_back(row);
    }
    env.results["matrix"] = jm;
    env.diagnostics["max_offdiag"] = max_offdiag;
    emit(args.co, table.str(), env, t0);
}

void run_xlag_weight(const XlagArgs& args, std::chrono::steady_clock::time_point t0) {
    const loggas::xpoly::ExceptionalLaguerreFamily fam(args.g, args.l);
    RunEnvelope env;
    env.command = "xlag weight";
    env.params["g"] = fd(args.g);
    env.params["l"] = fi(args.l);
    Csv table("x,weight");
    Json jt = Json::array();
    for (int i = 0; i <= 120; ++i) {
        const double x = 0.05 * i;
        const double v = loggas::xpoly::deformed_weight(x, fam);
        table.row({fd(x), fd(v)});
        jt.push_back(Json::array({x, v}));
    }
    env.results["table"] = jt;
    const double mass = loggas::numerics::integrate_halfline(
        [&](double x) { return loggas::xpoly::deformed_weight(x, fam); }, 64, 16);
    env.diagnostics["mass"] = mass;
    emit(args.co, table.str(), env, t0);
}

void run_xlag_qmf(const XlagArgs& args, std::chrono::steady_clock::time_point t0) {
    const loggas::xpoly::ExceptionalLaguerreFamily fam(args.g, args.l);
    const int n = args.nmax < 0 ? fam.lowest_index() + 2 : args.nmax;
    const auto qmf = loggas::xpoly::exceptional_qmf(n, fam);

    RunEnvelope env;
    env.command = "xlag qmf";
    xlag_params(env.params, args, n);
    Csv table("kind,re_location,im_location,re_residue,im_residue,re_numeric,im_numeric,abs_error");
    Json jc = Json::array();
    double max_err = 0.0;
    for (const auto& pole : qmf.catalog) {
        double min_gap = std::numeric_limits<double>::infinity();
        for (const auto& other : qmf.catalog) {
            const double d = std::abs(pole.location - other.location);
            if (d > 0.0) min_gap = std::min(min_gap, d);
        }
        const double r = std::min(0.35 * min_gap, 0.5);
        const auto numeric = loggas::numerics::contour_integral(
            [&](std::complex<double> z) { return qmf.p.value(z); }, pole.location, r, r, 2048);
        const double err = std::abs(numeric - pole.residue);
        max_err = std::max(max_err, err);
        table.row({pole.kind, fd(pole.location.real()), fd(pole.location.imag()),
                   fd(pole.residue.real()), fd(pole.residue.imag()), fd(numeric.real()),
                   fd(numeric.imag()), fd(err)});
        Json one = Json::object();
        one["kind"] = pole.kind;
        one["location"] = Json::array({pole.location.real(), pole.location.imag()});
        one["residue"] = Json::array({pole.residue.real(), pole.residue.imag()});
        one["numeric"] = Json::array({numeric.real(), numeric.imag()});
        one["abs_error"] = err;
        jc.push_back(one);
    }
    env.results["catalog"] = jc;
    env.diagnostics["max_abs_error"] = max_err;

    // Action over the physical positive-axis moving poles: counts the nodes.
    const auto& moving = qmf.p.moving_poles();
    int positive = 0;
    for (const double x : moving.points()) positive += x > 0.0 ? 1 : 0;
    if (positive > 0) {
        double lo = 0.0, hi = 0.0;
        for (const double x : moving.points()) {
            if (x > 0.0) {
                lo = lo == 0.0 ? x : std::min(lo, x);
                hi = std::max(hi, x);
            }
        }
        const double margin = 0.4 * lo;
        loggas::qhj::EllipseSpec ellipse{{0.5 * (lo + hi), 0.0},
                                         0.5 * (hi - lo) + margin,
                                         0.5 * margin};
        env.diagnostics["node_action"] =
            loggas::qhj::quantization_integral(qmf.p, ellipse);
    } else {
        env.diagnostics["node_action"] = 0.0;
    }
    env.diagnostics["node_count"] = positive;
    emit(args.co, table.str(), env, t0);
}

void run_xlag_isospectral(const XlagArgs& args, std::chrono::steady_clock::time_point t0) {
    const loggas::xpoly::ExceptionalLaguerreFamily fam(args.g, args.l);
    const int lowest = fam.lowest_index();
    const int nmax = args.nmax < 0 ? lowest + 3 : args.nmax;
    if (nmax <= lowest) throw loggas::InvalidInputError("--nmax must exceed the lowest member");

    std::vector<double> grid(64);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = 0.35 + (3.1 - 0.35) * static_cast<double>(i) / (grid.size() - 1);
    }

    RunEnvelope env;
    env.command = "xlag isospectral";
    xlag_params(env.params, args, nmax);
    Csv table("n1,n2,gap,spread,spread_over_gap");
    Json jp = Json::array();
    for (int k = lowest; k < nmax; ++k) {
        const auto r = loggas::xpoly::isospectral_check(k, k + 1, fam, grid);
        table.row({fi(k), fi(k + 1), fd(r.gap), fd(r.spread), fd(r.spread / std::abs(r.gap))});
        Json one = Json::object();
        one["n1"] = k;
        one["n2"] = k + 1;
        one["gap"] = r.gap;
        one["spread"] = r.spread;
        jp.push_back(one);
    }
    env.results["pairs"] = jp;
    emit(args.co, table.str(), env, t0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"log-gas, quantum Hamilton-Jacobi, and random-matrix cross-validation toolkit"};
    app.require_subcommand(1);
    const auto t0 = std::chrono::steady_clock::now();

    ZerosArgs zeros_args;
    auto* zeros_cmd = app.add_subcommand("zeros", "orthogonal-polynomial zeros");
    add_family(zeros_cmd, zeros_args.fa);
    zeros_cmd->add_option("--n", zeros_args.n, "degree")->required()->check(CLI::PositiveNumber);
    zeros_cmd->add_option("--method", zeros_args.method, "eig | equilibrium | both")
        ->check(CLI::IsMember({"eig", "equilibrium", "both"}));
    zeros_cmd->add_option("--tol", zeros_args.tol, "equilibrium residual tolerance");
    zeros_cmd->add_option("--max-iter", zeros_args.max_iter, "equilibrium iteration cap");
    add_common(zeros_cmd, zeros_args.co);

    EquilibriumArgs eq_args;
    auto* eq_cmd = app.add_subcommand("equilibrium", "log-gas equilibrium configuration");
    add_family(eq_cmd, eq_args.fa);
    eq_cmd->add_option("--n", eq_args.n, "particle count")->required()->check(CLI::PositiveNumber);
    eq_cmd->add_option("--tol", eq_args.tol, "residual tolerance");
    eq_cmd->add_option("--max-iter", eq_args.max_iter, "iteration cap");
    add_common(eq_cmd, eq_args.co);

    QhjArgs qhj_args;
    auto* qhj_cmd = app.add_subcommand("qhj-spectrum", "bound-state ladder of W = (omega/2) x");
    qhj_cmd->add_option("--omega", qhj_args.omega, "level spacing")->required();
    qhj_cmd->add_option("--nmax", qhj_args.nmax, "highest state")->required()
        ->check(CLI::NonNegativeNumber);
    add_common(qhj_cmd, qhj_args.co);

    QuantizeArgs quant_args;
    auto* quant_cmd = app.add_subcommand("quantize", "contour quantization action of a state");
    add_family(quant_cmd, quant_args.fa);
    quant_cmd->add_option("--n", quant_args.n, "state index")->required()
        ->check(CLI::PositiveNumber);
    add_common(quant_cmd, quant_args.co);

    SusyArgs susy_args;
    auto* susy_cmd = app.add_subcommand("susy", "partner potentials via finite differences");
    susy_cmd->add_option("--omega", susy_args.omega, "level spacing")->required();
    susy_cmd->add_option("--levels", susy_args.levels, "levels per partner (default 4)");
    susy_cmd->add_option("--lo", susy_args.lo, "box lower edge (default -8)");
    susy_cmd->add_option("--hi", susy_args.hi, "box upper edge (default 8)");
    susy_cmd->add_option("--grid", susy_args.grid, "interior grid points (default 4000)");
    add_common(susy_cmd, susy_args.co);

    SampleArgs sample_args;
    auto* sample_cmd = app.add_subcommand("sample", "random-matrix eigenvalue sampling");
    sample_cmd->add_option("--ensemble", sample_args.ensemble, "goe | gue | gse | tridiag")
        ->required()
        ->check(CLI::IsMember({"goe", "gue", "gse", "tridiag"}));
    sample_cmd->add_option("--beta", sample_args.beta,
                           "Dyson index (implied for goe/gue/gse; required for tridiag)");
    sample_cmd->add_option("--dim", sample_args.dim, "matrix dimension")->required()
        ->check(CLI::PositiveNumber);
    sample_cmd->add_option("--replicas", sample_args.replicas, "independent draws")->required()
        ->check(CLI::PositiveNumber);
    sample_cmd->add_option("--seed", sample_args.seed, "RNG seed")->required();
    sample_cmd->add_flag("--scale", sample_args.scale, "divide eigenvalues by sqrt(dim)");
    sample_cmd->add_option("--bins", sample_args.bins, "emit a pooled histogram instead");
    add_common(sample_cmd, sample_args.co);

    SemicircleArgs semi_args;
    auto* semi_cmd = app.add_subcommand("semicircle-test", "KS distance of scaled GUE spectrum");
    semi_cmd->add_option("--dim", semi_args.dim, "matrix dimension")->required()
        ->check(CLI::PositiveNumber);
    semi_cmd->add_option("--replicas", semi_args.replicas, "independent draws")->required()
        ->check(CLI::PositiveNumber);
    semi_cmd->add_option("--seed", semi_args.seed, "RNG seed")->required();
    semi_cmd->add_option("--bins", semi_args.bins, "emit a pooled histogram instead");
    add_common(semi_cmd, semi_args.co);

    McmcArgs mcmc_args;
    auto* mcmc_cmd = app.add_subcommand("mcmc", "Metropolis chain for the joint density");
    mcmc_cmd->add_option("--beta", mcmc_args.beta, "Dyson index")->required();
    mcmc_cmd->add_option("--n", mcmc_args.n, "particle count")->required()
        ->check(CLI::PositiveNumber);
    mcmc_cmd->add_option("--steps", mcmc_args.steps, "total steps")->required();
    mcmc_cmd->add_option("--burn-in", mcmc_args.burn_in, "discarded prefix")->required();
    mcmc_cmd->add_option("--step-scale", mcmc_args.step_scale, "proposal scale")->required();
    mcmc_cmd->add_option("--seed", mcmc_args.seed, "RNG seed")->required();
    mcmc_cmd->add_flag("--exceptional", mcmc_args.exceptional,
                       "target the deformed half-line density");
    mcmc_cmd->add_option("--g", mcmc_args.g, "deformed family parameter g");
    mcmc_cmd->add_option("--l", mcmc_args.l, "deformation index l");
    add_common(mcmc_cmd, mcmc_args.co);

    DysonArgs dyson_args;
    auto* dyson_cmd = app.add_subcommand("dyson", "eigenvalue flow towards equilibrium");
    dyson_cmd->add_option("--n", dyson_args.n, "particle count")->required()
        ->check(CLI::PositiveNumber);
    dyson_cmd->add_option("--beta", dyson_args.beta, "Dyson index")->required();
    dyson_cmd->add_option("--dt", dyson_args.dt, "time step")->required();
    dyson_cmd->add_option("--steps", dyson_args.steps, "step count")->required();
    dyson_cmd->add_option("--seed", dyson_args.seed, "RNG seed")->required();
    dyson_cmd->add_flag("--deterministic", dyson_args.deterministic,
                        "noise-free gradient flow");
    add_common(dyson_cmd, dyson_args.co);

    JpdfArgs jpdf_args;
    auto* jpdf_cmd = app.add_subcommand("jpdf", "log joint eigenvalue density of a configuration");
    jpdf_cmd->add_option("--beta", jpdf_args.beta, "Dyson index")->required();
    jpdf_cmd->add_option("--points", jpdf_args.points_path, "CSV/whitespace numeric file")
        ->required();
    jpdf_cmd->add_flag("--exceptional", jpdf_args.exceptional,
                       "use the deformed half-line density");
    jpdf_cmd->add_option("--g", jpdf_args.g, "deformed family parameter g");
    jpdf_cmd->add_option("--l", jpdf_args.l, "deformation index l");
    add_common(jpdf_cmd, jpdf_args.co);

    XlagArgs xlag_args;
    auto* xlag_cmd = app.add_subcommand("xlag", "deformed Laguerre sector");
    xlag_cmd->require_subcommand(1);
    auto add_xlag_opts = [&](CLI::App* sub) {
        sub->add_option("--g", xlag_args.g, "family parameter g")->required();
        sub->add_option("--l", xlag_args.l, "deformation index l")->required();
        sub->add_option("--nmax", xlag_args.nmax, "highest member / state index");
        add_common(sub, xlag_args.co);
    };
    add_xlag_opts(xlag_cmd->add_subcommand("gram", "normalized cross integrals"));
    add_xlag_opts(xlag_cmd->add_subcommand("weight", "deformed weight table"));
    add_xlag_opts(xlag_cmd->add_subcommand("qmf", "momentum-function pole catalog"));
    add_xlag_opts(xlag_cmd->add_subcommand("isospectral", "level gaps from wavefunction ratios"));

    try {
        app.parse(argc, argv);
        if (zeros_cmd->parsed()) run_zeros(zeros_args, t0);
        if (eq_cmd->parsed()) run_equilibrium(eq_args, t0);
        if (qhj_cmd->parsed()) run_qhj_spectrum(qhj_args, t0);
        if (quant_cmd->parsed()) run_quantize(quant_args, t0);
        if (susy_cmd->parsed()) run_susy(susy_args, t0);
        if (sample_cmd->parsed()) run_sample(sample_args, t0);
        if (semi_cmd->parsed()) run_semicircle(semi_args, t0);
        if (mcmc_cmd->parsed()) run_mcmc(mcmc_args, t0);
        if (dyson_cmd->parsed()) run_dyson(dyson_args, t0);
        if (xlag_cmd->parsed()) {
            for (auto* sub : xlag_cmd->get_subcommands()) {
                if (sub->get_name() == "gram") run_xlag_gram(xlag_args, t0);
                if (sub->get_name() == "weight") run_xlag_weight(xlag_args, t0);
                if (sub->get_name() == "qmf") run_xlag_qmf(xlag_args, t0);
                if (sub->get_name() == "isospectral") run_xlag_isospectral(xlag_args, t0);
            }
        }
        if (jpdf_cmd->parsed()) run_jpdf(jpdf_args, t0);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: invalid-input: " << e.what() << "\n";
        return 1;
    } catch (const loggas::InvalidInputError& e) {
        std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
        return 1;
    } catch (const loggas::ConvergenceError& e) {
        std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
        return 2;
    } catch (const loggas::Error& e) {
        std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
