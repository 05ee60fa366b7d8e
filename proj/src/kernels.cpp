#include "loggas/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "loggas/error.hpp"

namespace loggas::kernels {

namespace detail {

void inverse_gap_sums_scalar(std::span<const double>, std::span<double>);
double inverse_gap_sum_scalar(std::span<const double>, std::size_t);
void inverse_square_gap_sums_scalar(std::span<const double>, std::span<double>);
double log_abs_gap_sum_scalar(std::span<const double>);
double log_abs_distance_sum_scalar(std::span<const double>, double, std::size_t);

#if defined(LOGGAS_HAVE_AVX2)
void inverse_gap_sums_avx2(std::span<const double>, std::span<double>);
double inverse_gap_sum_avx2(std::span<const double>, std::size_t);
void inverse_square_gap_sums_avx2(std::span<const double>, std::span<double>);
double log_abs_gap_sum_avx2(std::span<const double>);
double log_abs_distance_sum_avx2(std::span<const double>, double, std::size_t);
#endif

}  // namespace detail

namespace {

struct Impl {
    Isa isa;
    void (*inverse_gap_sums)(std::span<const double>, std::span<double>);
    double (*inverse_gap_sum)(std::span<const double>, std::size_t);
    void (*inverse_square_gap_sums)(std::span<const double>, std::span<double>);
    double (*log_abs_gap_sum)(std::span<const double>);
    double (*log_abs_distance_sum)(std::span<const double>, double, std::size_t);
};

constexpr Impl kScalar = {
    Isa::scalar,
    detail::inverse_gap_sums_scalar,
    detail::inverse_gap_sum_scalar,
    detail::inverse_square_gap_sums_scalar,
    detail::log_abs_gap_sum_scalar,
    detail::log_abs_distance_sum_scalar,
};

#if defined(LOGGAS_HAVE_AVX2)
constexpr Impl kAvx2 = {
    Isa::avx2,
    detail::inverse_gap_sums_avx2,
    detail::inverse_gap_sum_avx2,
    detail::inverse_square_gap_sums_avx2,
    detail::log_abs_gap_sum_avx2,
    detail::log_abs_distance_sum_avx2,
};
#endif

bool cpu_has_avx2() {
#if defined(LOGGAS_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

const Impl* pick_default() {
    if (const char* env = std::getenv("LOGGAS_SIMD")) {
        const std::string v(env);
        if (v == "scalar") return &kScalar;
        if (v == "avx2") {
#if defined(LOGGAS_HAVE_AVX2)
            if (cpu_has_avx2()) return &kAvx2;
#endif
            throw InvalidInputError("LOGGAS_SIMD=avx2 but AVX2 is unavailable");
        }
        if (!v.empty() && v != "auto") {
            throw InvalidInputError("LOGGAS_SIMD must be auto, scalar, or avx2");
        }
    }
#if defined(LOGGAS_HAVE_AVX2)
    if (cpu_has_avx2()) return &kAvx2;
#endif
    return &kScalar;
}

std::atomic<const Impl*> g_impl{nullptr};

const Impl& impl() {
    const Impl* p = g_impl.load(std::memory_order_acquire);
    if (!p) {
        p = pick_default();
        g_impl.store(p, std::memory_order_release);
    }
    return *p;
}

}  // namespace

Isa active_isa() { return impl().isa; }

std::string isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

void force_isa(Isa isa) {
    if (isa == Isa::scalar) {
        g_impl.store(&kScalar, std::memory_order_release);
        return;
    }
#if defined(LOGGAS_HAVE_AVX2)
    if (isa == Isa::avx2 && cpu_has_avx2()) {
        g_impl.store(&kAvx2, std::memory_order_release);
        return;
    }
#endif
    throw InvalidInputError("requested ISA is not available on this machine");
}

void reset_isa() { g_impl.store(nullptr, std::memory_order_release); }

void inverse_gap_sums(std::span<const double> xs, std::span<double> out) {
    impl().inverse_gap_sums(xs, out);
}

double inverse_gap_sum(std::span<const double> xs, std::size_t k) {
    return impl().inverse_gap_sum(xs, k);
}

void inverse_square_gap_sums(std::span<const double> xs, std::span<double> out) {
    impl().inverse_square_gap_sums(xs, out);
}

double log_abs_gap_sum(std::span<const double> xs) {
    return impl().log_abs_gap_sum(xs);
}

double log_abs_distance_sum(std::span<const double> xs, double y, std::size_t skip) {
    return impl().log_abs_distance_sum(xs, y, skip);
}

}  // namespace loggas::kernels
