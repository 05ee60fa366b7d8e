#pragma once

#include <complex>
#include <functional>

namespace loggas::numerics {

// Closed-contour integral (1 / (2*pi*i)) * loop f(z) dz over the ellipse
// z(t) = center + a cos t + i b sin t, traversed once counterclockwise,
// by the m-point periodic trapezoidal rule (spectrally accurate for
// integrands analytic in a neighborhood of the contour). Pre: m >= 16,
// a > 0, b > 0. A non-finite f(z_j) raises EvaluationError carrying z_j.
std::complex<double> contour_integral(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    std::complex<double> center, double semi_real, double semi_imag, int m);

}  // namespace loggas::numerics
