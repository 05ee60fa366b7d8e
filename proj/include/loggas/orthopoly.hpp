#pragma once

#include <string>

#include "loggas/point_config.hpp"
#include "loggas/polynomial.hpp"

namespace loggas::orthopoly {

enum class FamilyKind {
    hermite,
    laguerre,
    jacobi,
};

// One of the three classical families, standard normalization throughout:
// physicists' Hermite H_n, generalized Laguerre L_n^(alpha) with L_n(0) =
// binom(n+alpha, n), Jacobi P_n^(a,b) with P_n(1) = binom(n+a, n). Weights:
// exp(-x^2) on R, x^alpha exp(-x) on [0, inf), (1-x)^a (1+x)^b on [-1, 1].
class OrthogonalFamily {
public:
    static OrthogonalFamily hermite();
    static OrthogonalFamily laguerre(double alpha);   // alpha > -1
    static OrthogonalFamily jacobi(double a, double b);  // a, b > -1

    FamilyKind kind() const noexcept { return kind_; }
    double alpha() const;  // Laguerre only
    double a() const;      // Jacobi only
    double b() const;      // Jacobi only

    double support_lo() const;  // -inf for Hermite
    double support_hi() const;  // +inf for Hermite and Laguerre
    bool in_support(double x) const;
    std::string name() const;

private:
    OrthogonalFamily(FamilyKind kind, double p1, double p2);

    FamilyKind kind_;
    double p1_;
    double p2_;
};

// Coefficients of P_{k+1} = (ax + b) P_k - c P_{k-1} in the family's
// standard normalization (P_{-1} = 0, P_0 = 1).
struct Recurrence {
    double a;
    double b;
    double c;
};

Recurrence recurrence_coefficients(const OrthogonalFamily& family, int k);

// (P_n(x), P_n'(x)) by running the recurrence; valid for any real x.
std::pair<double, double> evaluate(const OrthogonalFamily& family, int n, double x);

// Monic Jacobi-matrix coefficients p_{k+1} = (x - a_k) p_k - b_k p_{k-1};
// b_k > 0 for k >= 1. Exposed because the Gaussian-quadrature and
// random-matrix modules both build tridiagonal models from them.
struct MonicRecurrence {
    double a;
    double b;
};

MonicRecurrence monic_recurrence(const OrthogonalFamily& family, int k);

// The n zeros, strictly increasing, all interior to the support: eigenvalues
// of the n x n Jacobi matrix, then a few guarded Newton corrections through
// the recurrence evaluation.
PointConfiguration zeros(const OrthogonalFamily& family, int n);

// Jacobi-matrix eigenvalues without the Newton polish (diagnostic; the CLI
// exposes both so the two paths can be compared).
std::vector<double> zeros_eigenvalue_only(const OrthogonalFamily& family, int n);

// Orthogonality weight at x. Pre: x inside the support (closed at finite
// endpoints); outside raises DomainError.
double weight(const OrthogonalFamily& family, double x);

// P_n in coefficient form (exact recurrence on coefficient vectors).
Polynomial family_polynomial(const OrthogonalFamily& family, int n);

// prod_{i<j} |x_j - x_i| and its logarithm. The product form overflows for
// large configurations; the log form is the one solvers use.
double vandermonde_abs(const PointConfiguration& config);
double log_vandermonde_abs(const PointConfiguration& config);

}  // namespace loggas::orthopoly
