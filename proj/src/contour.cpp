#include "loggas/contour.hpp"

#include <cmath>
#include <numbers>

#include "loggas/error.hpp"

namespace loggas::numerics {

std::complex<double> contour_integral(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    std::complex<double> center, double semi_real, double semi_imag, int m) {
    if (m < 16) throw InvalidInputError("contour rule needs at least 16 nodes");
    if (!(semi_real > 0.0) || !(semi_imag > 0.0)) {
        throw InvalidInputError("ellipse semi-axes must be positive");
    }
    // (1/(2 pi i)) loop f dz = (1/(2 pi)) sum f(z_j) * (dz/dt)_j * (2 pi / m) / i
    std::complex<double> acc = 0.0;
    for (int j = 0; j < m; ++j) {
        const double t = 2.0 * std::numbers::pi * j / m;
        const double ct = std::cos(t);
        const double st = std::sin(t);
        const std::complex<double> z = center + std::complex<double>(semi_real * ct,
                                                                     semi_imag * st);
        const std::complex<double> dz(-semi_real * st, semi_imag * ct);
        const std::complex<double> fz = f(z);
        if (!std::isfinite(fz.real()) || !std::isfinite(fz.imag())) {
            throw EvaluationError("integrand evaluated non-finite on the contour", z);
        }
        acc += fz * dz;
    }
    acc *= std::complex<double>(0.0, -1.0) / static_cast<double>(m);
    return acc;
}

}  // namespace loggas::numerics
