#pragma once

#include <cstdint>
#include <vector>

namespace loggas::numerics {

// Counter-based deterministic stream: output i is a fixed bijective mix of
// (key, i), so a stream is reproducible from (seed) alone and substreams are
// cheap to fork without sharing state. Used everywhere randomness appears;
// no global RNG state exists in the library.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);

    // Independent stream derived from (seed, index); distinct indices give
    // distinct keys. Replica r of a sampling run uses substream(seed, r).
    static RandomStream substream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53-bit resolution.
    double next_uniform();

    // Uniform on (0, 1]; never returns zero (safe under log()).
    double next_uniform_open();

    // Standard normal via Box-Muller; the second member of each generated
    // pair is cached, so draws remain deterministic but a single stream's
    // normal and uniform draws interleave through the same counter.
    double next_normal();

    std::uint64_t seed() const noexcept { return seed_; }

private:
    RandomStream(std::uint64_t key, std::uint64_t seed, int);

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    std::uint64_t seed_;
    bool has_cached_normal_ = false;
    double cached_normal_ = 0.0;
};

// count i.i.d. standard normals.
std::vector<double> gaussian_sample(RandomStream& stream, std::size_t count);

// count i.i.d. chi-distributed variates with `dof` degrees of freedom
// (dof > 0, need not be integral). chi = sqrt(2 * Gamma(dof/2, 1)).
std::vector<double> chi_sample(RandomStream& stream, double dof, std::size_t count);

// Single chi variate.
double chi_draw(RandomStream& stream, double dof);

}  // namespace loggas::numerics
