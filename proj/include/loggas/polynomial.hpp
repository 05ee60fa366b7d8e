#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace loggas {

// Dense real polynomial, coefficients ascending in the power. Trailing exact
// zeros are trimmed on construction, so degree() is the index of the last
// stored coefficient (-1 for the zero polynomial).
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs);

    static Polynomial from_roots(std::span<const double> roots);
    static Polynomial constant(double c);

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const std::vector<double>& coeffs() const noexcept { return c_; }
    double leading() const noexcept { return c_.empty() ? 0.0 : c_.back(); }

    // Plain Horner.
    double operator()(double x) const;
    std::complex<double> operator()(std::complex<double> z) const;

    // Compensated Horner (error-free transformations via fma); result is as
    // accurate as plain Horner run in twice the working precision. Used
    // wherever zeros are polished, where plain double conditioning at
    // clustered zeros would not meet the accuracy targets.
    double eval_compensated(double x) const;

    // (p(x), p'(x)) in one pass.
    std::pair<double, double> eval_with_derivative(double x) const;

    Polynomial derivative() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(double s) const;

    // q(x) = p(x^2).
    Polynomial substitute_square() const;

    // All real zeros, ascending. Correct for polynomials whose real zeros
    // are simple (the orthogonal and deformed families used here): between
    // consecutive critical points the polynomial is monotone, so recursive
    // derivative interlacing brackets every real zero, bisection isolates it
    // and compensated Newton polishes it.
    std::vector<double> real_roots() const;

private:
    std::vector<double> c_;
};

}  // namespace loggas
