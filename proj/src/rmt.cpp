#include "loggas/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "loggas/error.hpp"
#include "loggas/kernels.hpp"
#include "loggas/linalg.hpp"

namespace loggas::rmt {

namespace {

using numerics::ComplexMatrix;
using numerics::RandomStream;
using numerics::RealMatrix;

std::vector<double> goe_eigenvalues(int n, RandomStream& stream) {
    RealMatrix m(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        m.at(i, i) = std::numbers::sqrt2 * stream.next_normal();
        for (int j = i + 1; j < n; ++j) {
            m.at(i, j) = stream.next_normal();
            m.at(j, i) = m.at(i, j);
        }
    }
    return symmetric_eigenvalues(m);
}

std::vector<double> gue_eigenvalues(int n, RandomStream& stream) {
    ComplexMatrix m(static_cast<std::size_t>(n));
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    for (int i = 0; i < n; ++i) {
        m.at(i, i) = stream.next_normal();
        for (int j = i + 1; j < n; ++j) {
            const double re = stream.next_normal() * inv_sqrt2;
            const double im = stream.next_normal() * inv_sqrt2;
            m.at(i, j) = {re, im};
            m.at(j, i) = {re, -im};
        }
    }
    return hermitian_eigenvalues(m);
}

// Self-dual quaternion matrix in the 2N x 2N complex embedding; the spectrum
// is Kramers-doubled and de-duplicated by averaging adjacent pairs. Entry
// variances put the ensemble on the same e^{-beta sum x^2/4} scale family as
// the GOE/GUE conventions above.
std::vector<double> gse_eigenvalues(int n, RandomStream& stream) {
    ComplexMatrix m(2 * static_cast<std::size_t>(n));
    const double diag_sigma = 1.0 / std::numbers::sqrt2;  // variance 1/2
    const double comp_sigma = 0.5;                        // variance 1/4
    for (int i = 0; i < n; ++i) {
        const double d = diag_sigma * stream.next_normal();
        m.at(2 * i, 2 * i) = d;
        m.at(2 * i + 1, 2 * i + 1) = d;
        for (int j = i + 1; j < n; ++j) {
            const double a = comp_sigma * stream.next_normal();
            const double b = comp_sigma * stream.next_normal();
            const double c = comp_sigma * stream.next_normal();
            const double e = comp_sigma * stream.next_normal();
            const std::complex<double> z{a, b};
            const std::complex<double> w{c, e};
            m.at(2 * i, 2 * j) = z;
            m.at(2 * i, 2 * j + 1) = w;
            m.at(2 * i + 1, 2 * j) = -std::conj(w);
            m.at(2 * i + 1, 2 * j + 1) = std::conj(z);
            m.at(2 * j, 2 * i) = std::conj(z);
            m.at(2 * j + 1, 2 * i) = std::conj(w);
            m.at(2 * j, 2 * i + 1) = -w;
            m.at(2 * j + 1, 2 * i + 1) = z;
        }
    }
    const std::vector<double> doubled = hermitian_eigenvalues(m);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
    return out;
}

int thread_budget(int jobs) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("LOGGAS_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) hw = std::min(hw, cap);
    }
    return std::min(hw, jobs);
}

}  // namespace

SpectralSample sample_gaussian_ensemble(const EnsembleSpec& spec, RandomStream& stream) {
    if (spec.dim < 1) throw InvalidInputError("ensemble dimension must be >= 1");
    std::vector<double> ev;
    if (spec.beta == 1.0) {
        ev = goe_eigenvalues(spec.dim, stream);
    } else if (spec.beta == 2.0) {
        ev = gue_eigenvalues(spec.dim, stream);
    } else if (spec.beta == 4.0) {
        ev = gse_eigenvalues(spec.dim, stream);
    } else {
        throw InvalidInputError("matrix sampling supports beta in {1, 2, 4}");
    }
    SpectralSample s;
    s.eigenvalues = PointConfiguration::from_unsorted(std::move(ev));
    s.seed = stream.seed();
    s.spec = spec;
    s.method = SampleMethod::dense;
    return s;
}

SpectralSample sample_tridiagonal_beta(int dim, double beta, RandomStream& stream) {
    if (dim < 1) throw InvalidInputError("ensemble dimension must be >= 1");
    if (!(beta > 0.0)) throw InvalidInputError("tridiagonal model requires beta > 0");
    std::vector<double> diag(static_cast<std::size_t>(dim));
    std::vector<double> off(static_cast<std::size_t>(dim) - 1);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    for (int i = 0; i < dim; ++i) {
        diag[i] = stream.next_normal();  // N(0,2)/sqrt(2) = N(0,1)
        if (i + 1 < dim) {
            off[i] = inv_sqrt2 * numerics::chi_draw(stream, beta * (dim - 1 - i));
        }
    }
    std::vector<double> ev = numerics::symtri_eigenvalues(diag, off);
    // The construction above realizes |Vdm|^beta exp(-sum x^2/2); rescale to
    // the dense-ensemble family |Vdm|^beta exp(-beta sum x^2/4) so beta=1 and
    // beta=4 land on the GOE/GSE scales (the factor is exactly 1 at beta=2).
    const double scale = std::sqrt(2.0 / beta);
    for (auto& v : ev) v *= scale;
    SpectralSample s;
    s.eigenvalues = PointConfiguration::from_unsorted(std::move(ev));
    s.seed = stream.seed();
    s.spec = EnsembleSpec{beta, dim, Superpotential(1.0, 0.0, {})};
    s.method = SampleMethod::tridiagonal;
    return s;
}

std::vector<SpectralSample> sample_replicas(const EnsembleSpec& spec, int replicas,
                                            std::uint64_t seed, SampleMethod method) {
    if (replicas < 1) throw InvalidInputError("replica count must be >= 1");
    if (method != SampleMethod::dense && method != SampleMethod::tridiagonal) {
        throw InvalidInputError("replicated sampling supports dense and tridiagonal only");
    }
    std::vector<SpectralSample> out(static_cast<std::size_t>(replicas));
    const int workers = thread_budget(replicas);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto run_range = [&](int begin, int end) {
        try {
            for (int r = begin; r < end; ++r) {
                RandomStream sub = RandomStream::substream(seed, static_cast<std::uint64_t>(r));
                out[r] = (method == SampleMethod::dense)
                             ? sample_gaussian_ensemble(spec, sub)
                             : sample_tridiagonal_beta(spec.dim, spec.beta, sub);
                out[r].seed = seed;
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };
    if (workers <= 1) {
        run_range(0, replicas);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (replicas + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const int begin = w * chunk;
            const int end = std::min(replicas, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

double semicircle_cdf(double x, double radius) {
    if (!(radius > 0.0)) throw InvalidInputError("semicircle radius must be positive");
    if (x <= -radius) return 0.0;
    if (x >= radius) return 1.0;
    const double r2 = radius * radius;
    return 0.5 + x * std::sqrt(r2 - x * x) / (std::numbers::pi * r2) +
           std::asin(x / radius) / std::numbers::pi;
}

double ks_distance(std::span<const double> sorted_points,
                   const std::function<double(double)>& cdf) {
    const std::size_t n = sorted_points.size();
    if (n == 0) throw InvalidInputError("KS distance needs a nonempty sample");
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (sorted_points[i] > sorted_points[i + 1]) {
            throw InvalidInputError("KS input must be sorted ascending");
        }
    }
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cdf(sorted_points[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
    }
    return d;
}

double log_jpdf(const PointConfiguration& points, double beta, const Superpotential& w,
                JpdfForm form) {
    if (!(beta > 0.0)) throw InvalidInputError("beta must be positive");
    const auto xs = points.points();
    for (const double x : xs) {
        if (w.nearest_pole_distance(x) == 0.0) {
            throw DomainError("configuration touches a pole of W");
        }
    }
    double one_body = 0.0;
    if (form == JpdfForm::potential) {
        for (const double x : xs) one_body += -beta * w.antiderivative(x);
    } else {
        // w(x) = exp(-2U); written so the beta=2 identity with the potential
        // form is exact in floating point, not just to rounding.
        for (const double x : xs) one_body += -2.0 * w.antiderivative(x);
    }
    return one_body + beta * kernels::log_abs_gap_sum(xs);
}

McmcResult metropolis_log_gas(const LogGasTarget& target, int n, std::int64_t steps,
                              std::int64_t burn_in, double step_scale,
                              RandomStream& stream) {
    if (n < 1) throw InvalidInputError("chain dimension must be >= 1");
    if (!(step_scale > 0.0)) throw InvalidInputError("step scale must be positive");
    if (burn_in < 0 || steps <= burn_in) {
        throw InvalidInputError("need steps > burn_in >= 0");
    }
    if (!target.log_point_weight) {
        throw InvalidInputError("target needs a log point weight");
    }
    // Deterministic spread start; shifted to positive spacings when the
    // domain excludes the symmetric layout.
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) xs[k] = (k - 0.5 * (n - 1)) * 0.7;
    if (target.in_domain) {
        bool ok = true;
        for (const double x : xs) ok = ok && target.in_domain(x);
        if (!ok) {
            for (int k = 0; k < n; ++k) xs[k] = 0.5 * (k + 1);
            for (const double x : xs) {
                if (!target.in_domain(x)) {
                    throw InvalidInputError("no valid starting configuration in domain");
                }
            }
        }
    }
    std::vector<double> lw(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) lw[k] = target.log_point_weight(xs[k]);

    McmcResult result;
    result.samples.reserve(static_cast<std::size_t>(steps - burn_in));
    std::int64_t accepted = 0;
    for (std::int64_t step = 0; step < steps; ++step) {
        const std::size_t k = std::min<std::size_t>(
            static_cast<std::size_t>(stream.next_uniform() * n), xs.size() - 1);
        const double proposal = xs[k] + step_scale * stream.next_normal();
        bool accept = false;
        if (!target.in_domain || target.in_domain(proposal)) {
            const double lw_new = target.log_point_weight(proposal);
            const double pair_old = kernels::log_abs_distance_sum(xs, xs[k], k);
            const double pair_new = kernels::log_abs_distance_sum(xs, proposal, k);
            const double delta =
                (lw_new - lw[k]) + target.pair_beta * (pair_new - pair_old);
            if (delta >= 0.0) {
                accept = true;
            } else if (std::isfinite(delta)) {
                accept = std::log(stream.next_uniform_open()) < delta;
            }
            if (accept) {
                xs[k] = proposal;
                lw[k] = lw_new;
            }
        }
        if (accept) ++accepted;
        if (step >= burn_in) {
            result.samples.push_back(PointConfiguration::from_unsorted(
                std::vector<double>(xs.begin(), xs.end())));
        }
    }
    result.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(steps);
    return result;
}

McmcResult metropolis_sample(const EnsembleSpec& spec, std::int64_t steps,
                             std::int64_t burn_in, double step_scale,
                             RandomStream& stream) {
    if (spec.dim < 1) throw InvalidInputError("chain dimension must be >= 1");
    if (!(spec.beta > 0.0)) throw InvalidInputError("beta must be positive");
    LogGasTarget target;
    const Superpotential w = spec.w;
    const double beta = spec.beta;
    target.log_point_weight = [w, beta](double x) { return -beta * w.antiderivative(x); };
    target.pair_beta = beta;
    return metropolis_log_gas(target, spec.dim, steps, burn_in, step_scale, stream);
}

std::vector<PointConfiguration> dyson_flow(const PointConfiguration& init,
                                           const Superpotential& w, double beta,
                                           double dt, std::int64_t steps,
                                           RandomStream& stream) {
    if (!(dt > 0.0)) throw InvalidInputError("dt must be positive");
    if (beta < 0.0) throw InvalidInputError("beta must be nonnegative");
    if (steps < 0) throw InvalidInputError("step count must be >= 0");
    if (init.empty()) throw InvalidInputError("initial configuration must be nonempty");
    const double noise_coeff = (beta > 0.0) ? std::sqrt(2.0 / beta) : 0.0;

    std::vector<double> xs(init.points().begin(), init.points().end());
    const std::size_t n = xs.size();
    for (const double x : xs) {
        if (w.nearest_pole_distance(x) == 0.0) {
            throw DomainError("initial configuration touches a pole of W");
        }
    }
    auto valid = [&](const std::vector<double>& cand) {
        for (std::size_t i = 0; i + 1 < cand.size(); ++i) {
            if (!(cand[i] < cand[i + 1])) return false;
        }
        for (std::size_t i = 0; i < cand.size(); ++i) {
            if (!std::isfinite(cand[i])) return false;
            for (const auto& p : w.poles()) {
                // No sign change across any pole: the barrier is infinite.
                if ((xs[i] - p.location) * (cand[i] - p.location) <= 0.0) return false;
            }
        }
        return true;
    };

    std::vector<PointConfiguration> trajectory;
    trajectory.reserve(static_cast<std::size_t>(steps) + 1);
    trajectory.push_back(PointConfiguration::from_sorted(std::vector<double>(xs)));

    std::vector<double> drift(n);
    std::vector<double> cand(n);
    const double h_floor = dt * 0x1.0p-40;

    // The repulsive drift is stiff near a small gap: an explicit step with
    // h * (1/gap) comparable to the gap itself stays ordered yet catapults
    // the pair far out, which poisons long-run statistics. Shrink h until
    // the deterministic displacement is small against the local spacing.
    auto drift_resolved = [&](double hh) {
        for (std::size_t k = 0; k < n; ++k) {
            double scale = w.nearest_pole_distance(xs[k]);
            if (k > 0) scale = std::min(scale, xs[k] - xs[k - 1]);
            if (k + 1 < n) scale = std::min(scale, xs[k + 1] - xs[k]);
            if (hh * std::abs(drift[k]) > 0.25 * scale) return false;
        }
        return true;
    };

    for (std::int64_t step = 0; step < steps; ++step) {
        double advanced = 0.0;
        double h = dt;
        while (advanced < dt) {
            if (h > dt - advanced) h = dt - advanced;
            kernels::inverse_gap_sums(xs, drift);
            for (std::size_t k = 0; k < n; ++k) drift[k] -= w.value(xs[k]);
            if (!drift_resolved(h)) {
                h *= 0.5;
                if (h < h_floor) {
                    throw ConvergenceError(
                        "integration-failure",
                        "no valid step at trajectory index " + std::to_string(step));
                }
                continue;
            }
            const double noise_scale = noise_coeff * std::sqrt(h);
            for (std::size_t k = 0; k < n; ++k) {
                cand[k] = xs[k] + h * drift[k];
                if (noise_coeff > 0.0) cand[k] += noise_scale * stream.next_normal();
            }
            if (valid(cand)) {
                xs = cand;
                advanced += h;
                h = std::min(2.0 * h, dt);
            } else {
                h *= 0.5;
                if (h < h_floor) {
                    throw ConvergenceError(
                        "integration-failure",
                        "no valid step at trajectory index " + std::to_string(step));
                }
            }
        }
        trajectory.push_back(PointConfiguration::from_sorted(std::vector<double>(xs)));
    }
    return trajectory;
}

}  // namespace loggas::rmt
