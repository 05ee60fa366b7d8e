#pragma once

#include <functional>
#include <vector>

namespace loggas::numerics {

// Nodes and weights on the reference interval [-1, 1]; nodes strictly
// increasing, weights strictly positive.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

// n-point Gauss-Legendre rule: nodes are the Legendre-polynomial zeros from
// the Jacobi-matrix eigenproblem polished by Newton steps, weights from the
// closed form 2 / ((1 - x^2) P_n'(x)^2). Exact for polynomials of degree
// <= 2n - 1.
QuadratureRule gauss_legendre(int n);

// Integral over [a, b] with an n-point rule per panel, `panels` equal panels.
double integrate(const std::function<double(double)>& f, double a, double b,
                 int n, int panels = 1);

// Integral over [0, inf): substitution x = t / (1 - t) mapped onto [0, 1).
double integrate_halfline(const std::function<double(double)>& f, int n,
                          int panels = 8);

// Integral over (-inf, inf): substitution x = t / (1 - t^2) on (-1, 1).
double integrate_realline(const std::function<double(double)>& f, int n,
                          int panels = 8);

}  // namespace loggas::numerics
