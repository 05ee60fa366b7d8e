#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "loggas/electrostatics.hpp"
#include "loggas/point_config.hpp"
#include "loggas/random.hpp"

namespace loggas::rmt {

using electrostatics::Superpotential;

// beta in {1, 2, 4} for matrix sampling; any positive beta for the
// tridiagonal model, Metropolis chains, and Dyson flow.
struct EnsembleSpec {
    double beta = 2.0;
    int dim = 1;
    Superpotential w = Superpotential(1.0, 0.0, {});  // Gaussian confinement
};

enum class SampleMethod {
    dense,
    tridiagonal,
    mcmc,
    dyson,
};

struct SpectralSample {
    PointConfiguration eigenvalues;
    std::uint64_t seed = 0;
    EnsembleSpec spec;
    SampleMethod method = SampleMethod::dense;
};

// Dense Gaussian ensembles. GOE: real symmetric, diagonal variance 2,
// off-diagonal variance 1. GUE: Hermitian, real N(0,1) diagonal, complex
// off-diagonal of unit total variance. GSE: self-dual quaternion matrix in
// its 2N x 2N complex embedding, Kramers-doubled spectrum de-duplicated to N
// values. Eigenvalues are unscaled (bulk edge near 2 sqrt(N)).
SpectralSample sample_gaussian_ensemble(const EnsembleSpec& spec,
                                        numerics::RandomStream& stream);

// Tridiagonal general-beta Gaussian model: N(0, 2) diagonal and
// chi_{beta*(N-k)} off-diagonals, all divided by sqrt(2); same spectral law
// as the dense ensembles at beta in {1,2,4}.
SpectralSample sample_tridiagonal_beta(int dim, double beta,
                                       numerics::RandomStream& stream);

// Replicated sampling with per-replica substreams; deterministic in
// (seed, replicas) and independent of thread schedule. LOGGAS_THREADS caps
// the worker count.
std::vector<SpectralSample> sample_replicas(const EnsembleSpec& spec, int replicas,
                                            std::uint64_t seed, SampleMethod method);

// Semicircle CDF with edge radius `radius`, clamped outside [-R, R].
double semicircle_cdf(double x, double radius);

// Two-sided Kolmogorov-Smirnov statistic of a sorted sample against a CDF.
double ks_distance(std::span<const double> sorted_points,
                   const std::function<double(double)>& cdf);

enum class JpdfForm {
    potential,
    weight,
};

// Unnormalized log joint eigenvalue density. potential:
// -beta sum U(x_i) + beta sum_{i<j} log|x_i-x_j|; weight: sum log w(x_i) +
// beta sum log|x_i-x_j| with w = exp(-2U). The forms coincide exactly at
// beta = 2.
double log_jpdf(const PointConfiguration& points, double beta, const Superpotential& w,
                JpdfForm form);

struct McmcResult {
    std::vector<PointConfiguration> samples;  // one per post-burn-in step
    double acceptance_rate = 0.0;
};

// Log-density data for a single-site Metropolis walk over n ordered-agnostic
// coordinates: log pi(x) = sum lw(x_k) + pair_beta * sum_{i<j} log|x_i-x_j|.
struct LogGasTarget {
    std::function<double(double)> log_point_weight;
    double pair_beta = 2.0;
    std::function<bool(double)> in_domain;  // optional; null means all reals
};

McmcResult metropolis_log_gas(const LogGasTarget& target, int n, std::int64_t steps,
                              std::int64_t burn_in, double step_scale,
                              numerics::RandomStream& stream);

// Metropolis chain targeting exp(log_jpdf(., beta, W, potential)).
McmcResult metropolis_sample(const EnsembleSpec& spec, std::int64_t steps,
                             std::int64_t burn_in, double step_scale,
                             numerics::RandomStream& stream);

// Euler-Maruyama trajectory of dx_k = [sum_{j!=k} 1/(x_k-x_j) - W(x_k)] dt
// + sqrt(2/beta) dB_k, beta = 0 meaning noise-free gradient flow. Each
// trajectory entry advances exactly dt (internally sub-stepped when a full
// step would break ordering or cross a pole). Persistent collision pressure
// raises ConvergenceError("integration-failure") naming the step.
std::vector<PointConfiguration> dyson_flow(const PointConfiguration& init,
                                           const Superpotential& w, double beta,
                                           double dt, std::int64_t steps,
                                           numerics::RandomStream& stream);

}  // namespace loggas::rmt
