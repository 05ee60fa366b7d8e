#include "loggas/electrostatics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "loggas/error.hpp"
#include "loggas/kernels.hpp"

namespace loggas::electrostatics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

Superpotential::Superpotential(double linear, double constant,
                               std::vector<PoleTerm> poles)
    : linear_(linear), constant_(constant), poles_(std::move(poles)) {
    std::sort(poles_.begin(), poles_.end(),
              [](const PoleTerm& a, const PoleTerm& b) { return a.location < b.location; });
    for (std::size_t i = 0; i + 1 < poles_.size(); ++i) {
        if (poles_[i].location == poles_[i + 1].location) {
            throw InvalidInputError("pole locations must be pairwise distinct");
        }
    }
}

double Superpotential::value(double x) const {
    double v = linear_ * x + constant_;
    for (const auto& p : poles_) v += p.strength / (x - p.location);
    return v;
}

double Superpotential::derivative(double x) const {
    double v = linear_;
    for (const auto& p : poles_) {
        const double d = x - p.location;
        v -= p.strength / (d * d);
    }
    return v;
}

double Superpotential::antiderivative(double x) const {
    double v = 0.5 * linear_ * x * x + constant_ * x;
    for (const auto& p : poles_) v += p.strength * std::log(std::abs(x - p.location));
    return v;
}

std::complex<double> Superpotential::value(std::complex<double> z) const {
    std::complex<double> v = linear_ * z + constant_;
    for (const auto& p : poles_) v += p.strength / (z - p.location);
    return v;
}

std::complex<double> Superpotential::derivative(std::complex<double> z) const {
    std::complex<double> v = linear_;
    for (const auto& p : poles_) {
        const std::complex<double> d = z - p.location;
        v -= p.strength / (d * d);
    }
    return v;
}

double Superpotential::nearest_pole_distance(double x) const {
    double d = kInf;
    for (const auto& p : poles_) d = std::min(d, std::abs(x - p.location));
    return d;
}

Superpotential equilibrium_superpotential(const orthopoly::OrthogonalFamily& family) {
    using orthopoly::FamilyKind;
    switch (family.kind()) {
        case FamilyKind::hermite:
            return Superpotential(1.0, 0.0, {});
        case FamilyKind::laguerre:
            return Superpotential(0.0, 0.5, {{0.0, -0.5 * (family.alpha() + 1.0)}});
        case FamilyKind::jacobi:
            return Superpotential(0.0, 0.0,
                                  {{1.0, -0.5 * (family.a() + 1.0)},
                                   {-1.0, -0.5 * (family.b() + 1.0)}});
    }
    throw InvalidInputError("unknown family");
}

std::vector<double> residual(const PointConfiguration& points, const Superpotential& w) {
    const auto xs = points.points();
    for (std::size_t k = 0; k < xs.size(); ++k) {
        for (const auto& p : w.poles()) {
            if (xs[k] == p.location) {
                throw DomainError("point " + std::to_string(k) +
                                  " coincides with a pole of W");
            }
        }
    }
    std::vector<double> r(xs.size());
    kernels::inverse_gap_sums(xs, r);
    for (std::size_t k = 0; k < xs.size(); ++k) r[k] -= w.value(xs[k]);
    return r;
}

namespace {

// Double-double scalar: value hi + lo with |lo| <= ulp(hi)/2. High-degree
// coefficient forms are so ill-conditioned (sum |c_k||x|^k can exceed the
// value by 1e14) that plain double evaluation of f', f'' loses most digits;
// roughly 106 bits keeps the ratio f''/(2f') meaningful.
struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

DD quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

DD two_sum(double a, double b) {
    const double s = a + b;
    const double z = s - a;
    return {s, (a - (s - z)) + (b - z)};
}

DD dd_add(const DD& a, const DD& b) {
    DD s = two_sum(a.hi, b.hi);
    return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

DD dd_mul(const DD& a, double b) {
    const double p = a.hi * b;
    const double e = std::fma(a.hi, b, -p);
    return quick_two_sum(p, std::fma(a.lo, b, e));
}

double dd_value(const DD& a) { return a.hi + a.lo; }

// One pass of the Horner scheme carrying value, first and second derivative;
// dd2 accumulates f''/2 directly.
struct HornerTriple {
    DD p;
    DD dp;
    DD dd2;
};

HornerTriple horner_triple(const std::vector<double>& c, double x) {
    HornerTriple h;
    for (std::size_t k = c.size(); k-- > 0;) {
        h.dd2 = dd_add(dd_mul(h.dd2, x), h.dp);
        h.dp = dd_add(dd_mul(h.dp, x), h.p);
        h.p = dd_add(dd_mul(h.p, x), DD{c[k], 0.0});
    }
    return h;
}

}  // namespace

std::pair<double, double> lhopital_identity_check(const Polynomial& f, std::size_t j) {
    std::vector<double> roots = f.real_roots();
    if (j >= roots.size()) {
        throw InvalidInputError("zero index out of range");
    }
    // Polish every zero against the stored coefficients: the identity is an
    // algebraic statement about this exact polynomial, so the interaction sum
    // must use its zeros, not nearby ones.
    const auto& c = f.coeffs();
    for (double& r : roots) {
        for (int it = 0; it < 3; ++it) {
            const HornerTriple h = horner_triple(c, r);
            const double dfr = dd_value(h.dp);
            if (dfr == 0.0) break;
            const double step = dd_value(h.p) / dfr;
            if (!std::isfinite(step)) break;
            r -= step;
        }
    }
    const double xj = roots[j];
    const double interaction = kernels::inverse_gap_sum(roots, j);
    const HornerTriple h = horner_triple(c, xj);
    const double dfx = dd_value(h.dp);
    if (dfx == 0.0) {
        throw DomainError("degenerate-zero", "f' vanishes at the indexed zero");
    }
    return {interaction, dd_value(h.dd2) / dfx};
}

double energy(const PointConfiguration& points, const Superpotential& w) {
    const auto xs = points.points();
    double one_body = 0.0;
    for (const double x : xs) {
        if (w.nearest_pole_distance(x) == 0.0) {
            throw DomainError("configuration touches a pole of W");
        }
        one_body += w.antiderivative(x);
    }
    return one_body - kernels::log_abs_gap_sum(xs);
}

numerics::RealMatrix hessian(const PointConfiguration& points, const Superpotential& w) {
    const auto xs = points.points();
    const std::size_t n = xs.size();
    numerics::RealMatrix h(n);
    std::vector<double> diag(n);
    kernels::inverse_square_gap_sums(xs, diag);
    for (std::size_t k = 0; k < n; ++k) {
        if (w.nearest_pole_distance(xs[k]) == 0.0) {
            throw DomainError("configuration touches a pole of W");
        }
        h.at(k, k) = w.derivative(xs[k]) + diag[k];
        for (std::size_t l = k + 1; l < n; ++l) {
            const double d = xs[k] - xs[l];
            h.at(k, l) = -1.0 / (d * d);
            h.at(l, k) = h.at(k, l);
        }
    }
    return h;
}

namespace {

struct Box {
    double lo;
    double hi;
    double margin_lo;
    double margin_hi;
};

Box confinement_box(const Superpotential& w, std::span<const double> xs) {
    Box box{-kInf, kInf, 0.0, 0.0};
    for (const auto& p : w.poles()) {
        if (p.location <= xs.front() && p.location > box.lo) box.lo = p.location;
        if (p.location >= xs.back() && p.location < box.hi) box.hi = p.location;
        if (p.location > xs.front() && p.location < xs.back()) {
            throw DomainError("initial configuration straddles a pole of W");
        }
    }
    if (std::isfinite(box.lo)) box.margin_lo = 1e-12 * (1.0 + std::abs(box.lo));
    if (std::isfinite(box.hi)) box.margin_hi = 1e-12 * (1.0 + std::abs(box.hi));
    return box;
}

bool valid_configuration(const std::vector<double>& xs, const Box& box) {
    if (xs.front() <= box.lo + box.margin_lo) return false;
    if (xs.back() >= box.hi - box.margin_hi) return false;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (!(xs[i] < xs[i + 1])) return false;
    }
    for (const double x : xs) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

double energy_raw(const std::vector<double>& xs, const Superpotential& w) {
    double e = 0.0;
    for (const double x : xs) e += w.antiderivative(x);
    return e - kernels::log_abs_gap_sum(xs);
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (const double x : v) m = std::max(m, std::abs(x));
    return m;
}

std::vector<double> residual_raw(const std::vector<double>& xs, const Superpotential& w) {
    std::vector<double> r(xs.size());
    kernels::inverse_gap_sums(xs, r);
    for (std::size_t k = 0; k < xs.size(); ++k) r[k] -= w.value(xs[k]);
    return r;
}

}  // namespace

PointConfiguration default_equilibrium_init(int n, const Superpotential& w) {
    if (n < 1) throw InvalidInputError("point count must be >= 1");
    std::vector<double> xs(static_cast<std::size_t>(n));
    // Chebyshev angles, descending cosine, so the filled vector is ascending.
    auto cheb = [n](int k) {
        return std::cos(std::numbers::pi * (2.0 * (n - 1 - k) + 1.0) / (2.0 * n));
    };
    const auto& poles = w.poles();
    double total_strength = 0.0;
    for (const auto& p : poles) total_strength += std::abs(p.strength);

    if (poles.empty()) {
        const double c = std::max(w.linear(), 0.1);
        const double r = std::sqrt((2.0 * n + 1.0) / c);
        for (int k = 0; k < n; ++k) xs[k] = 0.9 * r * cheb(k);
        return PointConfiguration::from_sorted(std::move(xs));
    }
    if (poles.size() >= 2) {
        const double lo = poles.front().location;
        const double hi = poles.back().location;
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        for (int k = 0; k < n; ++k) xs[k] = mid + 0.96 * half * cheb(k);
        return PointConfiguration::from_sorted(std::move(xs));
    }
    // Single pole: a hard edge with confinement from the linear or constant
    // term. Extent chosen at the Laguerre bulk scale so the far edge covers
    // the equilibrium.
    const double p = poles.front().location;
    const double budget = 4.0 * n + 4.0 * total_strength + 2.0;
    double extent;
    if (w.linear() > 0.0) {
        extent = std::sqrt(budget / w.linear());
    } else {
        extent = budget / std::max(2.0 * std::abs(w.constant()), 0.2);
    }
    const double sign = (w.constant() < 0.0 && w.linear() <= 0.0) ? -1.0 : 1.0;
    for (int k = 0; k < n; ++k) {
        const double u = 0.5 * (1.0 + cheb(k));  // ascending in (0,1)
        xs[k] = p + sign * extent * (0.02 + 0.96 * u);
    }
    if (sign < 0.0) std::reverse(xs.begin(), xs.end());
    return PointConfiguration::from_sorted(std::move(xs));
}

namespace detail {

double gradient_descent_step(std::vector<double>& xs, const Superpotential& w,
                             double lo, double hi, double margin) {
    Box box{lo, hi, margin, margin};
    const std::vector<double> r = residual_raw(xs, w);
    const double e0 = energy_raw(xs, w);
    const double rmax = max_abs(r);
    if (rmax == 0.0) return 0.0;
    double gap = kInf;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) gap = std::min(gap, xs[i + 1] - xs[i]);
    double eta = std::min(1.0, (std::isfinite(gap) ? 0.4 * gap : 1.0) / rmax);
    std::vector<double> cand(xs.size());
    for (int h = 0; h < 60; ++h) {
        for (std::size_t k = 0; k < xs.size(); ++k) {
            cand[k] = xs[k] + eta * r[k];
            cand[k] = std::clamp(cand[k], box.lo + box.margin_lo, box.hi - box.margin_hi);
        }
        if (valid_configuration(cand, box) && energy_raw(cand, w) < e0) {
            xs = cand;
            return eta;
        }
        eta *= 0.5;
    }
    return 0.0;
}

}  // namespace detail

EquilibriumResult solve_equilibrium(int n, const Superpotential& w,
                                    std::optional<PointConfiguration> init,
                                    double tol, int max_iter) {
    if (n < 1) throw InvalidInputError("point count must be >= 1");
    if (!(tol > 0.0)) throw InvalidInputError("tolerance must be positive");
    if (max_iter < 1) throw InvalidInputError("iteration budget must be >= 1");

    PointConfiguration start = init ? std::move(*init) : default_equilibrium_init(n, w);
    if (static_cast<int>(start.size()) != n) {
        throw InvalidInputError("initial configuration size does not match n");
    }
    std::vector<double> xs(start.points().begin(), start.points().end());
    const Box box = confinement_box(w, xs);
    if (!valid_configuration(xs, box)) {
        throw DomainError("initial configuration violates the confinement region");
    }

    EquilibriumResult result;
    std::vector<double> r = residual_raw(xs, w);
    double rnorm = max_abs(r);
    int it = 0;
    for (; it < max_iter && rnorm > tol; ++it) {
        bool stepped = false;
        numerics::RealMatrix h(xs.size());
        {
            const auto cfg = PointConfiguration::from_sorted(std::vector<double>(xs));
            h = hessian(cfg, w);
        }
        numerics::RealMatrix chol = h;
        if (cholesky_factor(chol)) {
            const std::vector<double> dx = cholesky_solve(chol, r);
            const double e0 = energy_raw(xs, w);
            double eta = 1.0;
            std::vector<double> cand(xs.size());
            for (int halvings = 0; halvings <= 30; ++halvings) {
                for (std::size_t k = 0; k < xs.size(); ++k) {
                    cand[k] = xs[k] + eta * dx[k];
                }
                if (valid_configuration(cand, box)) {
                    const std::vector<double> rc = residual_raw(cand, w);
                    if (max_abs(rc) < rnorm || energy_raw(cand, w) < e0) {
                        xs = cand;
                        r = rc;
                        rnorm = max_abs(r);
                        stepped = true;
                        break;
                    }
                }
                eta *= 0.5;
            }
        }
        if (!stepped) {
            // Newton direction unusable here; take one energy-descent step.
            const double eta = detail::gradient_descent_step(
                xs, w, box.lo, box.hi, std::max(box.margin_lo, box.margin_hi));
            result.gradient_steps += 1;
            if (eta == 0.0) break;  // no descent possible: report honestly
            r = residual_raw(xs, w);
            rnorm = max_abs(r);
        }
    }
    result.points = PointConfiguration::from_sorted(std::move(xs));
    result.residual_norm = rnorm;
    result.iterations = it;
    result.converged = rnorm <= tol;
    return result;
}

}  // namespace loggas::electrostatics
