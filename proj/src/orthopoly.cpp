#include "loggas/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "loggas/error.hpp"
#include "loggas/kernels.hpp"
#include "loggas/linalg.hpp"

namespace loggas::orthopoly {

OrthogonalFamily::OrthogonalFamily(FamilyKind kind, double p1, double p2)
    : kind_(kind), p1_(p1), p2_(p2) {}

OrthogonalFamily OrthogonalFamily::hermite() {
    return OrthogonalFamily(FamilyKind::hermite, 0.0, 0.0);
}

OrthogonalFamily OrthogonalFamily::laguerre(double alpha) {
    if (!(alpha > -1.0)) {
        throw InvalidInputError("Laguerre parameter requires alpha > -1");
    }
    return OrthogonalFamily(FamilyKind::laguerre, alpha, 0.0);
}

OrthogonalFamily OrthogonalFamily::jacobi(double a, double b) {
    if (!(a > -1.0) || !(b > -1.0)) {
        throw InvalidInputError("Jacobi parameters require a > -1 and b > -1");
    }
    return OrthogonalFamily(FamilyKind::jacobi, a, b);
}

double OrthogonalFamily::alpha() const {
    if (kind_ != FamilyKind::laguerre) {
        throw InvalidInputError("alpha is a Laguerre parameter");
    }
    return p1_;
}

double OrthogonalFamily::a() const {
    if (kind_ != FamilyKind::jacobi) throw InvalidInputError("a is a Jacobi parameter");
    return p1_;
}

double OrthogonalFamily::b() const {
    if (kind_ != FamilyKind::jacobi) throw InvalidInputError("b is a Jacobi parameter");
    return p2_;
}

double OrthogonalFamily::support_lo() const {
    switch (kind_) {
        case FamilyKind::hermite: return -std::numeric_limits<double>::infinity();
        case FamilyKind::laguerre: return 0.0;
        case FamilyKind::jacobi: return -1.0;
    }
    return 0.0;
}

double OrthogonalFamily::support_hi() const {
    switch (kind_) {
        case FamilyKind::hermite:
        case FamilyKind::laguerre:
            return std::numeric_limits<double>::infinity();
        case FamilyKind::jacobi: return 1.0;
    }
    return 0.0;
}

bool OrthogonalFamily::in_support(double x) const {
    return x >= support_lo() && x <= support_hi();
}

std::string OrthogonalFamily::name() const {
    switch (kind_) {
        case FamilyKind::hermite: return "hermite";
        case FamilyKind::laguerre: return "laguerre";
        case FamilyKind::jacobi: return "jacobi";
    }
    return "?";
}

Recurrence recurrence_coefficients(const OrthogonalFamily& family, int k) {
    if (k < 0) throw InvalidInputError("recurrence index must be >= 0");
    switch (family.kind()) {
        case FamilyKind::hermite:
            // H_{k+1} = 2x H_k - 2k H_{k-1}
            return {2.0, 0.0, 2.0 * k};
        case FamilyKind::laguerre: {
            // (k+1) L_{k+1} = (2k+1+alpha - x) L_k - (k+alpha) L_{k-1}
            const double alpha = family.alpha();
            return {-1.0 / (k + 1.0), (2.0 * k + 1.0 + alpha) / (k + 1.0),
                    (k + alpha) / (k + 1.0)};
        }
        case FamilyKind::jacobi: {
            const double a = family.a();
            const double b = family.b();
            if (k == 0) {
                // P_1 = ((a+b+2) x + (a-b)) / 2; the general formula has a
                // removable 0/0 at k=0 when a+b=0.
                return {0.5 * (a + b + 2.0), 0.5 * (a - b), 0.0};
            }
            const double s = 2.0 * k + a + b;
            const double denom = 2.0 * (k + 1.0) * (k + a + b + 1.0);
            return {(s + 1.0) * (s + 2.0) / denom,
                    (a * a - b * b) * (s + 1.0) / (denom * s),
                    2.0 * (k + a) * (k + b) * (s + 2.0) / (denom * s)};
        }
    }
    throw InvalidInputError("unknown family");
}

std::pair<double, double> evaluate(const OrthogonalFamily& family, int n, double x) {
    if (n < 0) throw InvalidInputError("polynomial index must be >= 0");
    double p_prev = 0.0, dp_prev = 0.0;
    double p = 1.0, dp = 0.0;
    for (int k = 0; k < n; ++k) {
        const Recurrence r = recurrence_coefficients(family, k);
        const double lin = r.a * x + r.b;
        const double p_next = lin * p - r.c * p_prev;
        const double dp_next = r.a * p + lin * dp - r.c * dp_prev;
        p_prev = p;
        dp_prev = dp;
        p = p_next;
        dp = dp_next;
    }
    return {p, dp};
}

MonicRecurrence monic_recurrence(const OrthogonalFamily& family, int k) {
    if (k < 0) throw InvalidInputError("recurrence index must be >= 0");
    switch (family.kind()) {
        case FamilyKind::hermite:
            return {0.0, 0.5 * k};
        case FamilyKind::laguerre: {
            const double alpha = family.alpha();
            return {2.0 * k + alpha + 1.0, k * (k + alpha)};
        }
        case FamilyKind::jacobi: {
            const double a = family.a();
            const double b = family.b();
            const double s = 2.0 * k + a + b;
            const double diag = (k == 0)
                                    ? (b - a) / (a + b + 2.0)
                                    : (b * b - a * a) / (s * (s + 2.0));
            double off;  // b_k, the squared off-diagonal entry
            if (k == 0) {
                off = 0.0;  // unused by the Jacobi matrix
            } else if (k == 1) {
                // (k+a+b) cancels against (2k+a+b-1) at k=1; the cancelled
                // form stays finite for a+b -> -1.
                off = 4.0 * (1.0 + a) * (1.0 + b) /
                      ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
            } else {
                off = 4.0 * k * (k + a) * (k + b) * (k + a + b) /
                      (s * s * (s + 1.0) * (s - 1.0));
            }
            return {diag, off};
        }
    }
    throw InvalidInputError("unknown family");
}

std::vector<double> zeros_eigenvalue_only(const OrthogonalFamily& family, int n) {
    if (n < 1) throw InvalidInputError("zero count must be >= 1");
    std::vector<double> diag(static_cast<std::size_t>(n));
    std::vector<double> off(static_cast<std::size_t>(n) - 1);
    for (int k = 0; k < n; ++k) {
        diag[k] = monic_recurrence(family, k).a;
        if (k >= 1) off[k - 1] = std::sqrt(monic_recurrence(family, k).b);
    }
    return numerics::symtri_eigenvalues(diag, off);
}

PointConfiguration zeros(const OrthogonalFamily& family, int n) {
    std::vector<double> xs = zeros_eigenvalue_only(family, n);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        // Damping bound: stay well inside the gap to the neighbours so the
        // polish can never reorder points.
        double room = std::numeric_limits<double>::infinity();
        if (i > 0) room = std::min(room, xs[i] - xs[i - 1]);
        if (i + 1 < xs.size()) room = std::min(room, xs[i + 1] - xs[i]);
        const double cap = 0.4 * room;
        double x = xs[i];
        for (int it = 0; it < 10; ++it) {
            const auto [p, dp] = evaluate(family, n, x);
            if (dp == 0.0) break;
            double step = p / dp;
            if (std::abs(step) > cap) step = std::copysign(cap, step);
            x -= step;
            if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                      (1.0 + std::abs(x))) {
                break;
            }
        }
        xs[i] = x;
    }
    return PointConfiguration::from_sorted(std::move(xs));
}

double weight(const OrthogonalFamily& family, double x) {
    if (!family.in_support(x)) {
        throw DomainError("weight argument lies outside the support");
    }
    switch (family.kind()) {
        case FamilyKind::hermite:
            return std::exp(-x * x);
        case FamilyKind::laguerre:
            return std::pow(x, family.alpha()) * std::exp(-x);
        case FamilyKind::jacobi:
            return std::pow(1.0 - x, family.a()) * std::pow(1.0 + x, family.b());
    }
    throw InvalidInputError("unknown family");
}

Polynomial family_polynomial(const OrthogonalFamily& family, int n) {
    if (n < 0) throw InvalidInputError("polynomial index must be >= 0");
    Polynomial prev;                       // P_{-1} = 0
    Polynomial cur = Polynomial::constant(1.0);  // P_0
    const Polynomial x({0.0, 1.0});
    for (int k = 0; k < n; ++k) {
        const Recurrence r = recurrence_coefficients(family, k);
        Polynomial next = (x.scaled(r.a) + Polynomial::constant(r.b)) * cur -
                          prev.scaled(r.c);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

double vandermonde_abs(const PointConfiguration& config) {
    const auto pts = config.points();
    double prod = 1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            prod *= std::abs(pts[j] - pts[i]);
        }
    }
    return prod;
}

double log_vandermonde_abs(const PointConfiguration& config) {
    return kernels::log_abs_gap_sum(config.points());
}

}  // namespace loggas::orthopoly
