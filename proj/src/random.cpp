#include "loggas/random.hpp"

#include <cmath>
#include <numbers>

#include "loggas/error.hpp"

namespace loggas::numerics {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kSubstreamSalt = 0xD1342543DE82EF95ULL;

// splitmix64 finalizer; bijective on 64-bit words.
std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : key_(seed), seed_(seed) {}

RandomStream::RandomStream(std::uint64_t key, std::uint64_t seed, int)
    : key_(key), seed_(seed) {}

RandomStream RandomStream::substream(std::uint64_t seed, std::uint64_t index) {
    // mix is a bijection, so distinct indices map to distinct keys for a
    // fixed seed.
    return RandomStream(mix(seed ^ mix(index + kSubstreamSalt)), seed, 0);
}

std::uint64_t RandomStream::next_u64() {
    counter_ += 1;
    return mix(key_ + kGolden * counter_);
}

double RandomStream::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::next_uniform_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RandomStream::next_normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    const double u1 = next_uniform_open();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_normal_ = r * std::sin(theta);
    has_cached_normal_ = true;
    return r * std::cos(theta);
}

std::vector<double> gaussian_sample(RandomStream& stream, std::size_t count) {
    std::vector<double> out(count);
    for (auto& v : out) v = stream.next_normal();
    return out;
}

double chi_draw(RandomStream& stream, double dof) {
    if (!(dof > 0.0)) {
        throw InvalidInputError("chi sample requires dof > 0");
    }
    // Marsaglia-Tsang for Gamma(a, 1); the a < 1 case is boosted from a + 1.
    double a = 0.5 * dof;
    double boost = 1.0;
    if (a < 1.0) {
        boost = std::pow(stream.next_uniform_open(), 1.0 / a);
        a += 1.0;
    }
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = stream.next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = stream.next_uniform_open();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) {
            return std::sqrt(2.0 * boost * d * v);
        }
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
            return std::sqrt(2.0 * boost * d * v);
        }
    }
}

std::vector<double> chi_sample(RandomStream& stream, double dof, std::size_t count) {
    std::vector<double> out(count);
    for (auto& v : out) v = chi_draw(stream, dof);
    return out;
}

}  // namespace loggas::numerics
