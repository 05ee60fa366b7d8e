#include <cmath>
#include <cstddef>
#include <span>

// Reference implementations. These define the semantics; the vector variants
// in kernels_avx2.cpp are held to these results within rounding tolerances.
namespace loggas::kernels::detail {

void inverse_gap_sums_scalar(std::span<const double> xs, std::span<double> out) {
    const std::size_t n = xs.size();
    for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != k) s += 1.0 / (xs[k] - xs[j]);
        }
        out[k] = s;
    }
}

double inverse_gap_sum_scalar(std::span<const double> xs, std::size_t k) {
    double s = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
        if (j != k) s += 1.0 / (xs[k] - xs[j]);
    }
    return s;
}

void inverse_square_gap_sums_scalar(std::span<const double> xs, std::span<double> out) {
    const std::size_t n = xs.size();
    for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != k) {
                const double d = xs[k] - xs[j];
                s += 1.0 / (d * d);
            }
        }
        out[k] = s;
    }
}

double log_abs_distance_sum_scalar(std::span<const double> xs, double y, std::size_t skip) {
    double s = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
        if (j != skip) s += std::log(std::abs(y - xs[j]));
    }
    return s;
}

double log_abs_gap_sum_scalar(std::span<const double> xs) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        s += log_abs_distance_sum_scalar(xs.subspan(i + 1), xs[i], xs.size());
    }
    return s;
}

}  // namespace loggas::kernels::detail
