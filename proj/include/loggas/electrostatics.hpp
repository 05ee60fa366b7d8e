#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "loggas/linalg.hpp"
#include "loggas/orthopoly.hpp"
#include "loggas/point_config.hpp"

namespace loggas::electrostatics {

struct PoleTerm {
    double location;
    double strength;  // contributes strength / (x - location)
};

// Rational confining field W(x) = linear*x + constant + sum strength/(x-loc).
// Its antiderivative U is the one-body potential of the log-gas energy.
class Superpotential {
public:
    Superpotential(double linear, double constant, std::vector<PoleTerm> poles);

    double value(double x) const;
    double derivative(double x) const;

    // U(x) = linear*x^2/2 + constant*x + sum strength*log|x - loc|.
    double antiderivative(double x) const;

    std::complex<double> value(std::complex<double> z) const;
    std::complex<double> derivative(std::complex<double> z) const;

    double linear() const noexcept { return linear_; }
    double constant() const noexcept { return constant_; }
    const std::vector<PoleTerm>& poles() const noexcept { return poles_; }

    // Distance from x to the nearest pole location; +inf when pole-free.
    double nearest_pole_distance(double x) const;

private:
    double linear_;
    double constant_;
    std::vector<PoleTerm> poles_;
};

// The W whose equilibrium is zeros(family, n) for every n: W = -1/2 (ln w~)'
// where w~ is the family weight with hard-edge exponents raised by one.
// Hermite: x. Laguerre(alpha): 1/2 - (alpha+1)/(2x). Jacobi(a,b):
// -(a+1)/(2(x-1)) - (b+1)/(2(x+1)).
Superpotential equilibrium_superpotential(const orthopoly::OrthogonalFamily& family);

// R_k = sum_{j != k} 1/(x_k - x_j) - W(x_k); identically zero exactly at the
// matching polynomial zeros. Throws DomainError naming k if x_k sits on a
// pole of W.
std::vector<double> residual(const PointConfiguration& points, const Superpotential& w);

// (sum_{k != j} 1/(x_j - x_k), f''(x_j)/(2 f'(x_j))) at the j-th zero of f.
// The two agree for any polynomial with simple zeros; exposing both sides
// keeps the comparison honest. Throws DomainError("degenerate-zero") when
// f'(x_j) = 0.
std::pair<double, double> lhopital_identity_check(const Polynomial& f, std::size_t j);

// E = sum_k U(x_k) - sum_{i<j} ln|x_i - x_j|.
double energy(const PointConfiguration& points, const Superpotential& w);

// d2E/dx_k dx_l: diagonal W'(x_k) + sum_{j != k} (x_k - x_j)^-2, off-diagonal
// -(x_k - x_l)^-2. Positive definite at equilibria (E is strictly convex in
// the ordered cone near a minimum).
numerics::RealMatrix hessian(const PointConfiguration& points, const Superpotential& w);

struct EquilibriumResult {
    PointConfiguration points;
    double residual_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    int gradient_steps = 0;  // how often the Newton direction was abandoned
};

// Chebyshev-angle initial configuration mapped into W's confining region:
// bounded pole pairs bracket the points, a single pole gives a half-line
// layout, pole-free W spreads around the origin at the Gaussian bulk scale.
PointConfiguration default_equilibrium_init(int n, const Superpotential& w);

// Damped Newton on R(x) = 0 with the analytic Hessian; any Newton step that
// would break strict ordering or cross a pole (after 30 halvings) falls back
// to a backtracking gradient-flow step. Non-convergence is reported, never
// masked: converged=false with the last iterate.
EquilibriumResult solve_equilibrium(int n, const Superpotential& w,
                                    std::optional<PointConfiguration> init,
                                    double tol, int max_iter);

namespace detail {

// Single gradient step with backtracking line search; exposed so the
// energy-descent property of the fallback path is directly testable.
// Returns the accepted eta (0 if no descent step was found).
double gradient_descent_step(std::vector<double>& xs, const Superpotential& w,
                             double lo, double hi, double margin);

}  // namespace detail

}  // namespace loggas::electrostatics
