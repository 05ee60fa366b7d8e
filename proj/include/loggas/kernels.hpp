#pragma once

#include <cstddef>
#include <span>
#include <string>

// Pairwise-interaction kernels shared by the equilibrium solver, the MCMC
// sampler, Dyson flow, and the joint-density evaluators. Each kernel has a
// scalar reference implementation and (on x86-64 with AVX2) a vectorized
// variant; the active variant is chosen once at first use. Variants agree to
// rounding-level tolerances, not bitwise: the vector paths reassociate sums
// and batch logarithms through lane products.
namespace loggas::kernels {

enum class Isa {
    scalar,
    avx2,
};

// Instruction set the dispatcher resolved to. Resolution order: LOGGAS_SIMD
// environment variable ("scalar", "avx2", "auto"), then CPU capability.
Isa active_isa();
std::string isa_name(Isa isa);

// Test hook: pin the implementation. Throws InvalidInputError if the
// requested ISA is not available on this machine.
void force_isa(Isa isa);
void reset_isa();

// out[k] = sum_{j != k} 1 / (xs[k] - xs[j]).  Coincident points produce
// +-inf lanes rather than raising; callers validate distinctness.
void inverse_gap_sums(std::span<const double> xs, std::span<double> out);

// sum_{j != k} 1 / (xs[k] - xs[j]) for a single k.
double inverse_gap_sum(std::span<const double> xs, std::size_t k);

// out[k] = sum_{j != k} 1 / (xs[k] - xs[j])^2.
void inverse_square_gap_sums(std::span<const double> xs, std::span<double> out);

// sum_{i < j} log|xs[j] - xs[i]|.  log|Vandermonde| of the configuration.
double log_abs_gap_sum(std::span<const double> xs);

// sum_{j != skip} log|y - xs[j]|.  Pass skip >= xs.size() to include every
// term. Used for single-site Metropolis deltas.
double log_abs_distance_sum(std::span<const double> xs, double y, std::size_t skip);

}  // namespace loggas::kernels
