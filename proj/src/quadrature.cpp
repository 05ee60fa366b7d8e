#include "loggas/quadrature.hpp"

#include <cmath>

#include "loggas/error.hpp"
#include "loggas/linalg.hpp"

namespace loggas::numerics {

namespace {

// Legendre P_n and P_n' by the three-term recurrence (standard
// normalization, P_n(1) = 1).
struct PP {
    double p;
    double dp;
};

PP legendre_pair(int n, double x) {
    double pm1 = 0.0;
    double p = 1.0;
    for (int k = 0; k < n; ++k) {
        const double pk1 = ((2.0 * k + 1.0) * x * p - k * pm1) / (k + 1.0);
        pm1 = p;
        p = pk1;
    }
    // Derivative identity: (1 - x^2) P_n'(x) = n (P_{n-1}(x) - x P_n(x)).
    const double denom = 1.0 - x * x;
    const double dp = (denom > 0.0) ? n * (pm1 - x * p) / denom : 0.0;
    return {p, dp};
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw InvalidInputError("quadrature order must be >= 1");
    // Jacobi matrix of the monic Legendre family: zero diagonal, off-diagonal
    // sqrt(k^2 / (4k^2 - 1)).
    std::vector<double> diag(static_cast<std::size_t>(n), 0.0);
    std::vector<double> off(static_cast<std::size_t>(n) - 1);
    for (int k = 1; k < n; ++k) {
        off[k - 1] = std::sqrt(k * k / (4.0 * k * k - 1.0));
    }
    QuadratureRule rule;
    rule.nodes = symtri_eigenvalues(diag, off);
    rule.weights.resize(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        double x = rule.nodes[i];
        for (int it = 0; it < 3; ++it) {
            const PP v = legendre_pair(n, x);
            if (v.dp == 0.0) break;
            const double step = v.p / v.dp;
            x -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(x))) break;
        }
        const PP v = legendre_pair(n, x);
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * v.dp * v.dp);
    }
    return rule;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int n, int panels) {
    if (panels < 1) throw InvalidInputError("panel count must be >= 1");
    const QuadratureRule rule = gauss_legendre(n);
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        const double half = 0.5 * h;
        double s = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            s += rule.weights[i] * f(mid + half * rule.nodes[i]);
        }
        total += half * s;
    }
    return total;
}

double integrate_halfline(const std::function<double(double)>& f, int n,
                          int panels) {
    // x = t / (1 - t), dx = dt / (1 - t)^2, t in [0, 1).
    auto g = [&f](double t) {
        const double om = 1.0 - t;
        return f(t / om) / (om * om);
    };
    return integrate(g, 0.0, 1.0, n, panels);
}

double integrate_realline(const std::function<double(double)>& f, int n,
                          int panels) {
    // x = t / (1 - t^2), dx = (1 + t^2) / (1 - t^2)^2 dt, t in (-1, 1).
    auto g = [&f](double t) {
        const double om = 1.0 - t * t;
        return f(t / om) * (1.0 + t * t) / (om * om);
    };
    return integrate(g, -1.0, 1.0, n, panels);
}

}  // namespace loggas::numerics
