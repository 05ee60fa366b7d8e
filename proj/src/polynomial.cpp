#include "loggas/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "loggas/error.hpp"

namespace loggas {

namespace {

// Error-free transformations. TwoProd needs a fused multiply-add.
inline void two_sum(double a, double b, double& s, double& err) {
    s = a + b;
    const double z = s - a;
    err = (a - (s - z)) + (b - z);
}

inline void two_prod(double a, double b, double& p, double& err) {
    p = a * b;
    err = std::fma(a, b, -p);
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

Polynomial Polynomial::from_roots(std::span<const double> roots) {
    std::vector<double> c{1.0};
    for (const double r : roots) {
        c.push_back(0.0);
        for (std::size_t k = c.size() - 1; k > 0; --k) {
            c[k] = c[k - 1] - r * c[k];
        }
        c[0] *= -r;
    }
    return Polynomial(std::move(c));
}

Polynomial Polynomial::constant(double c) { return Polynomial({c}); }

double Polynomial::operator()(double x) const {
    double s = 0.0;
    for (std::size_t k = c_.size(); k-- > 0;) s = s * x + c_[k];
    return s;
}

std::complex<double> Polynomial::operator()(std::complex<double> z) const {
    std::complex<double> s = 0.0;
    for (std::size_t k = c_.size(); k-- > 0;) s = s * z + c_[k];
    return s;
}

double Polynomial::eval_compensated(double x) const {
    if (c_.empty()) return 0.0;
    double s = c_.back();
    double e = 0.0;
    for (std::size_t k = c_.size() - 1; k-- > 0;) {
        double p, pi, sigma;
        two_prod(s, x, p, pi);
        two_sum(p, c_[k], s, sigma);
        e = e * x + (pi + sigma);
    }
    return s + e;
}

std::pair<double, double> Polynomial::eval_with_derivative(double x) const {
    double p = 0.0;
    double dp = 0.0;
    for (std::size_t k = c_.size(); k-- > 0;) {
        dp = dp * x + p;
        p = p * x + c_[k];
    }
    return {p, dp};
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<double> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = k * c_[k];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<double> c(std::max(c_.size(), o.c_.size()), 0.0);
    for (std::size_t k = 0; k < c_.size(); ++k) c[k] += c_[k];
    for (std::size_t k = 0; k < o.c_.size(); ++k) c[k] += o.c_[k];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    std::vector<double> c(std::max(c_.size(), o.c_.size()), 0.0);
    for (std::size_t k = 0; k < c_.size(); ++k) c[k] += c_[k];
    for (std::size_t k = 0; k < o.c_.size(); ++k) c[k] -= o.c_[k];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (c_.empty() || o.c_.empty()) return Polynomial();
    std::vector<double> c(c_.size() + o.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            c[i + j] += c_[i] * o.c_[j];
        }
    }
    return Polynomial(std::move(c));
}

Polynomial Polynomial::scaled(double s) const {
    std::vector<double> c(c_);
    for (auto& v : c) v *= s;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::substitute_square() const {
    if (c_.empty()) return Polynomial();
    std::vector<double> c(2 * c_.size() - 1, 0.0);
    for (std::size_t k = 0; k < c_.size(); ++k) c[2 * k] = c_[k];
    return Polynomial(std::move(c));
}

namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// Sign of p(x), substituting the known asymptotic sign when the value
// overflows double range; that can only happen far outside the root region,
// where the leading term dominates.
int sign_at(const Polynomial& p, double x, int far_sign) {
    const double v = p.eval_compensated(x);
    if (!std::isfinite(v)) return far_sign;
    return sign_of(v);
}

// One zero of p inside [a, b] where p(a) and p(b) have opposite signs:
// bisection to rounding width, then compensated Newton polish.
double bisect_root(const Polynomial& p, double a, double b, double fa) {
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double fm = p.eval_compensated(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    double x = 0.5 * (a + b);
    for (int it = 0; it < 3; ++it) {
        const auto [_, dp] = p.eval_with_derivative(x);
        const double v = p.eval_compensated(x);
        if (dp == 0.0) break;
        const double step = v / dp;
        const double next = x - step;
        if (!(next >= a && next <= b)) break;
        x = next;
        if (std::abs(step) <= std::numeric_limits<double>::epsilon() * (1.0 + std::abs(x))) break;
    }
    return x;
}

// Zeros via derivative interlacing. The extrema of p cut the line into
// intervals on which p is monotone, so each interval holds at most one zero
// and a sign test at its ends decides. Coefficient-ratio root bounds are
// useless as grid endpoints here: for degree ~30 they reach 1e11 and x^deg
// overflows, so the tails are bracketed by doubling away from the outermost
// extremum instead and never evaluate far from the actual roots.
std::vector<double> roots_rec(const Polynomial& p) {
    const int d = p.degree();
    if (d <= 0) return {};
    if (d == 1) {
        return {-p.coeffs()[0] / p.coeffs()[1]};
    }
    const int tail_right = p.leading() > 0.0 ? 1 : -1;
    const int tail_left = (d % 2 == 0) ? tail_right : -tail_right;
    const std::vector<double> crit = roots_rec(p.derivative());

    if (crit.empty()) {
        // No real extrema: strictly monotone, so only odd degree crosses.
        if (d % 2 == 0) return {};
        double a = -1.0;
        double b = 1.0;
        for (int it = 0; it < 600 && sign_at(p, a, tail_left) != tail_left; ++it) a *= 2.0;
        for (int it = 0; it < 600 && sign_at(p, b, tail_right) != tail_right; ++it) b *= 2.0;
        const double fa = p.eval_compensated(a);
        if (fa == 0.0) return {a};
        return {bisect_root(p, a, b, fa)};
    }

    std::vector<double> fs(crit.size());
    for (std::size_t i = 0; i < crit.size(); ++i) fs[i] = p.eval_compensated(crit[i]);

    // Walk outward from the extremum at `from` until the asymptotic sign
    // shows up; p is monotone there, so this brackets the tail zero.
    auto tail_point = [&](double from, int dir, int far_sign) {
        double step = std::max(1.0, 0.5 * std::abs(from));
        double x = from;
        for (int it = 0; it < 200; ++it) {
            x = from + dir * step;
            if (sign_at(p, x, far_sign) == far_sign) break;
            step *= 2.0;
        }
        return x;
    };

    std::vector<double> roots;
    if (fs.front() != 0.0 && sign_of(fs.front()) != tail_left) {
        const double a = tail_point(crit.front(), -1, tail_left);
        const double fa = p.eval_compensated(a);
        if (fa == 0.0) {
            roots.push_back(a);
        } else {
            roots.push_back(bisect_root(p, a, crit.front(), fa));
        }
    }
    for (std::size_t i = 0; i < crit.size(); ++i) {
        if (fs[i] == 0.0) {
            roots.push_back(crit[i]);
        } else if (i + 1 < crit.size() && fs[i + 1] != 0.0 &&
                   (fs[i] > 0.0) != (fs[i + 1] > 0.0)) {
            roots.push_back(bisect_root(p, crit[i], crit[i + 1], fs[i]));
        }
    }
    if (fs.back() != 0.0 && sign_of(fs.back()) != tail_right) {
        const double b = tail_point(crit.back(), +1, tail_right);
        const double fb = p.eval_compensated(b);
        if (fb == 0.0) {
            roots.push_back(b);
        } else {
            roots.push_back(bisect_root(p, crit.back(), b, fs.back()));
        }
    }
    return roots;
}

}  // namespace

std::vector<double> Polynomial::real_roots() const {
    if (c_.empty()) {
        throw DomainError("the zero polynomial has no well-defined zero set");
    }
    // Normalize the coefficient scale for the sign tests. The factor must be
    // a power of two: an inexact scale perturbs every coefficient by half an
    // ulp, which for ill-conditioned high-degree polynomials moves the roots
    // by far more than the sign tests can resolve.
    double m = 0.0;
    for (const double v : c_) m = std::max(m, std::abs(v));
    int ex = 0;
    std::frexp(m, &ex);
    return roots_rec(scaled(std::ldexp(1.0, -ex)));
}

}  // namespace loggas
