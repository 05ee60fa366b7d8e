#include "loggas/qhj.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "loggas/contour.hpp"
#include "loggas/error.hpp"
#include "loggas/linalg.hpp"
#include "loggas/orthopoly.hpp"

namespace loggas::qhj {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

}  // namespace

QuantumMomentumFunction::QuantumMomentumFunction(PointConfiguration moving_poles,
                                                 Superpotential fixed_part,
                                                 std::vector<ComplexPole> extra_poles)
    : moving_(std::move(moving_poles)),
      fixed_(std::move(fixed_part)),
      extra_(std::move(extra_poles)) {}

std::complex<double> QuantumMomentumFunction::value(std::complex<double> z) const {
    std::complex<double> v = kI * fixed_.value(z);
    for (const double x : moving_.points()) v += -kI / (z - x);
    for (const auto& e : extra_) v += e.residue / (z - e.location);
    return v;
}

std::complex<double> QuantumMomentumFunction::derivative(std::complex<double> z) const {
    std::complex<double> v = kI * fixed_.derivative(z);
    for (const double x : moving_.points()) {
        const std::complex<double> d = z - x;
        v += kI / (d * d);
    }
    for (const auto& e : extra_) {
        const std::complex<double> d = z - e.location;
        v -= e.residue / (d * d);
    }
    return v;
}

double QuantumMomentumFunction::nearest_pole_distance(std::complex<double> z) const {
    double d = std::numeric_limits<double>::infinity();
    for (const double x : moving_.points()) d = std::min(d, std::abs(z - x));
    for (const auto& e : extra_) d = std::min(d, std::abs(z - e.location));
    for (const auto& p : fixed_.poles()) {
        d = std::min(d, std::abs(z - std::complex<double>(p.location)));
    }
    return d;
}

QuantumMomentumFunction qmf_from_state(const Polynomial& f, const Superpotential& w) {
    if (f.degree() < 0) {
        throw InvalidInputError("the zero polynomial is not a bound state factor");
    }
    const std::vector<double> roots = f.real_roots();
    if (static_cast<int>(roots.size()) != f.degree()) {
        throw DomainError("degenerate-state",
                          "state polynomial must have simple real zeros of full degree");
    }
    const Polynomial df = f.derivative();
    double scale = 0.0;
    for (const double r : roots) scale = std::max(scale, std::abs(r));
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (i + 1 < roots.size() &&
            roots[i + 1] - roots[i] <= 1e-12 * (1.0 + scale)) {
            throw DomainError("degenerate-state", "repeated zero in state polynomial");
        }
        if (df(roots[i]) == 0.0) {
            throw DomainError("degenerate-state", "zero of multiplicity > 1");
        }
    }
    return QuantumMomentumFunction(PointConfiguration::from_sorted(roots), w);
}

double riccati_residual(const QuantumMomentumFunction& p, double energy,
                        const std::function<double(double)>& potential,
                        std::span<const double> grid) {
    double worst = 0.0;
    for (const double x : grid) {
        const std::complex<double> z{x, 0.0};
        if (p.nearest_pole_distance(z) == 0.0) {
            throw DomainError("grid point lies on a pole of the momentum function");
        }
        const std::complex<double> pv = p.value(z);
        const std::complex<double> dv = p.derivative(z);
        if (!std::isfinite(pv.real()) || !std::isfinite(pv.imag())) {
            throw DomainError("momentum function non-finite at a grid point");
        }
        const std::complex<double> res = pv * pv - kI * dv - (energy - potential(x));
        worst = std::max(worst, std::abs(res));
    }
    return worst;
}

std::vector<BoundState> polynomial_spectrum(const Superpotential& w, int count) {
    if (count < 0) throw InvalidInputError("state count must be >= 0");
    if (!w.poles().empty()) {
        throw UnsupportedError(
            "rational W couples all coefficient orders; use sturm_liouville_spectrum");
    }
    const double c = w.linear();
    const double d = w.constant();
    if (!(c > 0.0)) {
        throw UnsupportedError("non-confining W (linear coefficient must be positive)");
    }
    std::vector<BoundState> states;
    states.reserve(static_cast<std::size_t>(count) + 1);
    for (int n = 0; n <= count; ++n) {
        std::vector<double> a(static_cast<std::size_t>(n) + 1, 0.0);
        a[n] = 1.0;
        // L[x^k] = 2ck x^k + 2dk x^{k-1} - k(k-1) x^{k-2}; solving
        // (L - 2cn) a = 0 downward from the monic top coefficient.
        for (int k = n - 1; k >= 0; --k) {
            double rhs = 2.0 * d * (k + 1.0) * a[k + 1];
            if (k + 2 <= n) rhs -= (k + 2.0) * (k + 1.0) * a[k + 2];
            a[k] = rhs / (2.0 * c * (n - k));
        }
        states.push_back(BoundState{n, 2.0 * c * n, Polynomial(std::move(a))});
    }
    return states;
}

std::vector<std::pair<double, Polynomial>> sturm_liouville_spectrum(
    const Polynomial& sigma, const Polynomial& tau, int count) {
    if (sigma.degree() > 2 || tau.degree() > 1) {
        throw InvalidInputError("sigma must have degree <= 2 and tau degree <= 1");
    }
    if (count < 0) throw InvalidInputError("state count must be >= 0");
    auto coeff = [](const Polynomial& p, int k) {
        return (k <= p.degree()) ? p.coeffs()[static_cast<std::size_t>(k)] : 0.0;
    };
    const double s0 = coeff(sigma, 0), s1 = coeff(sigma, 1), s2 = coeff(sigma, 2);
    const double t0 = coeff(tau, 0), t1 = coeff(tau, 1);
    auto diag = [&](int j) { return s2 * j * (j - 1.0) + t1 * j; };
    std::vector<std::pair<double, Polynomial>> out;
    out.reserve(static_cast<std::size_t>(count) + 1);
    for (int n = 0; n <= count; ++n) {
        const double dn = diag(n);
        for (int k = 0; k < n; ++k) {
            if (diag(k) == dn) {
                throw UnsupportedError(
                    "degenerate operator diagonal; eigen-polynomial ladder breaks");
            }
        }
        std::vector<double> a(static_cast<std::size_t>(n) + 1, 0.0);
        a[n] = 1.0;
        for (int k = n - 1; k >= 0; --k) {
            double rhs = (s1 * (k + 1.0) * k + t0 * (k + 1.0)) * a[k + 1];
            if (k + 2 <= n) rhs += s0 * (k + 2.0) * (k + 1.0) * a[k + 2];
            a[k] = -rhs / (diag(k) - dn);
        }
        out.emplace_back(-dn, Polynomial(std::move(a)));
    }
    return out;
}

namespace {

// Relative elliptical coordinate: <1 inside, >1 outside.
double ellipse_coordinate(const EllipseSpec& e, std::complex<double> z) {
    const double u = (z.real() - e.center.real()) / e.semi_real;
    const double v = (z.imag() - e.center.imag()) / e.semi_imag;
    return u * u + v * v;
}

double quantization_on(const QuantumMomentumFunction& p, const EllipseSpec& e) {
    auto f = [&p](std::complex<double> z) { return p.value(z); };
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int m = 64; m <= 65536; m *= 2) {
        const std::complex<double> s =
            numerics::contour_integral(f, e.center, e.semi_real, e.semi_imag, m);
        const double j = (kI * s).real();
        if (std::isfinite(prev) && std::abs(j - prev) <= 1e-10 * (1.0 + std::abs(j))) {
            return j;
        }
        prev = j;
    }
    return prev;
}

}  // namespace

double quantization_integral(const QuantumMomentumFunction& p, const EllipseSpec& e) {
    if (!(e.semi_real > 0.0) || !(e.semi_imag > 0.0)) {
        throw InvalidInputError("ellipse semi-axes must be positive");
    }
    auto on_contour = [&](std::complex<double> z) {
        const double c = ellipse_coordinate(e, z);
        return std::abs(c - 1.0) <= 1e-9;
    };
    for (const double x : p.moving_poles().points()) {
        if (on_contour({x, 0.0})) throw DomainError("contour passes through a pole");
    }
    for (const auto& ex : p.extra_poles()) {
        if (on_contour(ex.location)) throw DomainError("contour passes through a pole");
    }
    for (const auto& pole : p.fixed_part().poles()) {
        if (on_contour({pole.location, 0.0})) {
            throw DomainError("contour passes through a pole");
        }
    }
    return quantization_on(p, e);
}

double contour_quantization(const Polynomial& f, const Superpotential& w,
                            const EllipseSpec& e) {
    const QuantumMomentumFunction p = qmf_from_state(f, w);
    for (const double x : p.moving_poles().points()) {
        if (ellipse_coordinate(e, {x, 0.0}) >= 1.0 - 1e-9) {
            throw DomainError("contour must strictly enclose every zero of the state");
        }
    }
    for (const auto& pole : w.poles()) {
        if (ellipse_coordinate(e, {pole.location, 0.0}) <= 1.0 + 1e-9) {
            throw DomainError("contour must strictly exclude the fixed poles of W");
        }
    }
    return quantization_integral(p, e);
}

std::pair<std::function<double(double)>, std::function<double(double)>> susy_partners(
    const Superpotential& w, double energy) {
    auto vplus = [w, energy](double x) {
        const double wx = w.value(x);
        return wx * wx - w.derivative(x) + energy;
    };
    auto vminus = [w, energy](double x) {
        const double wx = w.value(x);
        return wx * wx + w.derivative(x) + energy;
    };
    return {vplus, vminus};
}

std::vector<double> schrodinger_spectrum(const std::function<double(double)>& potential,
                                         double lo, double hi, int grid_points,
                                         int count) {
    if (!(lo < hi)) throw InvalidInputError("interval must satisfy lo < hi");
    if (grid_points < 1) throw InvalidInputError("grid must have at least one point");
    if (count < 1 || count > grid_points) {
        throw InvalidInputError("requested level count exceeds the grid resolution");
    }
    const double h = (hi - lo) / (grid_points + 1.0);
    std::vector<double> diag(static_cast<std::size_t>(grid_points));
    std::vector<double> off(static_cast<std::size_t>(grid_points) - 1, -1.0 / (h * h));
    for (int i = 0; i < grid_points; ++i) {
        const double x = lo + (i + 1.0) * h;
        const double v = potential(x);
        if (!std::isfinite(v)) {
            throw EvaluationError("potential non-finite on the grid", {x, 0.0});
        }
        diag[i] = 2.0 / (h * h) + v;
    }
    std::vector<double> ev = numerics::symtri_eigenvalues(diag, off);
    ev.resize(static_cast<std::size_t>(count));
    return ev;
}

std::function<double(double)> build_wavefunction(const orthopoly::OrthogonalFamily& family,
                                                 int n) {
    if (n < 0) throw InvalidInputError("state index must be >= 0");
    return [family, n](double x) {
        if (!family.in_support(x)) return 0.0;
        const double w = orthopoly::weight(family, x);
        return std::sqrt(w) * orthopoly::evaluate(family, n, x).first;
    };
}

}  // namespace loggas::qhj
