#pragma once

#include <complex>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "loggas/electrostatics.hpp"
#include "loggas/point_config.hpp"
#include "loggas/polynomial.hpp"

namespace loggas::qhj {

using electrostatics::Superpotential;

// A simple pole off the real axis with an explicit residue; used for
// moving-pole pairs at complex polynomial zeros and for deformation poles.
struct ComplexPole {
    std::complex<double> location;
    std::complex<double> residue;
};

// Quantum momentum function p = -i (ln psi)' as a rational object:
//   p(z) = -i sum_k 1/(z - x_k)  +  i W(z)  +  sum extra residue/(z - loc).
// Real moving poles carry residue -i by convention (hbar = 1); anything else
// lives in the extra list.
class QuantumMomentumFunction {
public:
    QuantumMomentumFunction(PointConfiguration moving_poles, Superpotential fixed_part,
                            std::vector<ComplexPole> extra_poles = {});

    std::complex<double> value(std::complex<double> z) const;
    std::complex<double> derivative(std::complex<double> z) const;

    const PointConfiguration& moving_poles() const noexcept { return moving_; }
    const Superpotential& fixed_part() const noexcept { return fixed_; }
    const std::vector<ComplexPole>& extra_poles() const noexcept { return extra_; }

    // Distance from z to the nearest pole of any kind.
    double nearest_pole_distance(std::complex<double> z) const;

private:
    PointConfiguration moving_;
    Superpotential fixed_;
    std::vector<ComplexPole> extra_;
};

// Bound state of the reduced operator L[f] = -f'' + 2 W f': index, eigenvalue
// lambda (L[f] = lambda f), and the polynomial factor of the wavefunction.
struct BoundState {
    int n;
    double lambda;
    Polynomial f;
};

// QMF with moving poles at the zeros of f and fixed part iW. f must have
// simple real zeros accounting for its full degree; anything else raises
// DomainError("degenerate-state").
QuantumMomentumFunction qmf_from_state(const Polynomial& f, const Superpotential& w);

// max over the grid of |p^2 - i p' - (E - V)| (hbar = 1, 2m = 1 units).
// Grid points on a pole raise DomainError.
double riccati_residual(const QuantumMomentumFunction& p, double energy,
                        const std::function<double(double)>& potential,
                        std::span<const double> grid);

// Spectrum of L[f] = -f'' + 2 W f' for pole-free W with positive linear
// coefficient c: lambda_n = 2 c n, eigen-polynomials monic by triangular
// back-substitution on the monomial basis. States n = 0..count. Rational or
// non-confining W raises UnsupportedError pointing at
// sturm_liouville_spectrum.
std::vector<BoundState> polynomial_spectrum(const Superpotential& w, int count);

// Polynomial eigenpairs of sigma y'' + tau y' + lambda y = 0 for the
// classical Sturm-Liouville data (deg sigma <= 2, deg tau <= 1):
// lambda_n = -n tau' - n(n-1) sigma''/2, monic eigen-polynomials by
// back-substitution. Degenerate diagonal collisions raise UnsupportedError.
std::vector<std::pair<double, Polynomial>> sturm_liouville_spectrum(
    const Polynomial& sigma, const Polynomial& tau, int count);

struct EllipseSpec {
    std::complex<double> center;
    double semi_real;
    double semi_imag;
};

// (1/2pi) Re loop p dz for an arbitrary QMF on the given ellipse, node count
// doubling until the value settles. No pole may lie on the contour.
double quantization_integral(const QuantumMomentumFunction& p, const EllipseSpec& ellipse);

// The exact quantization action for the state f in field W: the ellipse must
// enclose every zero of f and exclude every pole of W; the result equals
// deg(f) up to quadrature error. Violated separation raises DomainError.
double contour_quantization(const Polynomial& f, const Superpotential& w,
                            const EllipseSpec& ellipse);

// V+-(x) = W(x)^2 -+ W'(x) + E.
std::pair<std::function<double(double)>, std::function<double(double)>> susy_partners(
    const Superpotential& w, double energy);

// Lowest `count` Dirichlet eigenvalues of -d^2/dx^2 + V on (lo, hi) by
// central finite differences on `grid_points` interior points.
std::vector<double> schrodinger_spectrum(const std::function<double(double)>& potential,
                                         double lo, double hi, int grid_points,
                                         int count);

// psi(x) = w(x)^(1/2) P_n(x) inside the support, 0 outside.
std::function<double(double)> build_wavefunction(const orthopoly::OrthogonalFamily& family,
                                                 int n);

}  // namespace loggas::qhj
