#include "loggas/xpoly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "loggas/error.hpp"
#include "loggas/kernels.hpp"
#include "loggas/orthopoly.hpp"
#include "loggas/quadrature.hpp"

namespace loggas::xpoly {

namespace {

using std::complex;

void validate_member_index(int n, const ExceptionalLaguerreFamily& fam) {
    if (fam.l() >= 2) {
        throw UnsupportedError("unsupported-deformation",
                               "members are constructed for l in {0, 1} only");
    }
    if (n < 0) throw InvalidInputError("member index must be nonnegative");
    if (n < fam.lowest_index()) {
        throw DomainError("gap", "the deformed family has no degree-0 member");
    }
}

// (p/q evaluated data) for the logarithmic derivative of p at t: returns
// (p, p', p'') in one pass over the coefficients.
struct Jet2 {
    double f, df, ddf;
};

Jet2 eval_jet2(const Polynomial& p, double t) {
    const auto& c = p.coeffs();
    double f = 0.0, df = 0.0, ddf = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) {
        ddf = ddf * t + 2.0 * df;
        df = df * t + f;
        f = f * t + c[i];
    }
    return {f, df, ddf};
}

}  // namespace

Polynomial denominator_poly(double g, int l) {
    if (l < 0) throw InvalidInputError("deformation index must be nonnegative");
    const double delta = g + l - 1.5;
    if (!(delta > -1.0)) {
        throw InvalidInputError("need g + l - 3/2 > -1 for the denominator weight");
    }
    const Polynomial base =
        orthopoly::family_polynomial(orthopoly::OrthogonalFamily::laguerre(delta), l);
    std::vector<double> flipped = base.coeffs();
    for (std::size_t k = 1; k < flipped.size(); k += 2) flipped[k] = -flipped[k];
    return Polynomial(std::move(flipped));
}

ExceptionalLaguerreFamily::ExceptionalLaguerreFamily(double g, int l) : g_(g), l_(l) {
    if (!(g > 0.0)) throw InvalidInputError("need g > 0");
    if (l < 0) throw InvalidInputError("deformation index must be nonnegative");
    delta_ = g + l - 1.5;
    if (!(delta_ > -1.0)) {
        throw InvalidInputError("need g + l - 3/2 > -1 for the denominator weight");
    }
    eta_ = denominator_poly(g, l);
}

Polynomial exceptional_laguerre(int n, const ExceptionalLaguerreFamily& fam) {
    validate_member_index(n, fam);
    if (fam.l() == 0) {
        return orthopoly::family_polynomial(
            orthopoly::OrthogonalFamily::laguerre(fam.delta() + 1.0), n);
    }
    const Polynomial constituent = orthopoly::family_polynomial(
        orthopoly::OrthogonalFamily::laguerre(fam.delta()), n - 1);
    return fam.eta() * (constituent - constituent.derivative()) +
           constituent * fam.eta().derivative();
}

double deformed_weight(double x, const ExceptionalLaguerreFamily& fam) {
    if (x < 0.0) throw DomainError("weight is defined on x >= 0");
    if (x == 0.0) return 0.0;  // gamma > 0 always
    const double t = x * x;
    const double eta = fam.eta()(t);
    return std::pow(x, 2.0 * fam.gamma()) * std::exp(-t) / (eta * eta);
}

double log_deformed_weight(double x, const ExceptionalLaguerreFamily& fam) {
    if (!(x > 0.0)) throw DomainError("log weight is defined on x > 0");
    const double t = x * x;
    return 2.0 * fam.gamma() * std::log(x) - t - 2.0 * std::log(fam.eta()(t));
}

double wavefunction_value(int n, const ExceptionalLaguerreFamily& fam, double x) {
    if (x < 0.0) throw DomainError("wavefunction is defined on x >= 0");
    const Polynomial member = exceptional_laguerre(n, fam);
    if (x == 0.0) return 0.0;
    const double t = x * x;
    return std::pow(x, fam.gamma()) * std::exp(-0.5 * t) * member(t) / fam.eta()(t);
}

double schrodinger_ratio(int n, const ExceptionalLaguerreFamily& fam, double x) {
    if (!(x > 0.0)) throw DomainError("ratio is defined on x > 0");
    const Polynomial member = exceptional_laguerre(n, fam);
    const double t = x * x;
    const Jet2 y = eval_jet2(member, t);
    if (y.f == 0.0) throw DomainError("grid point at a node of the wavefunction");
    const Jet2 e = eval_jet2(fam.eta(), t);
    const double u = y.df / y.f;
    const double du = (y.ddf * y.f - y.df * y.df) / (y.f * y.f);
    const double q = e.df / e.f;
    const double dq = (e.ddf * e.f - e.df * e.df) / (e.f * e.f);
    const double gamma = fam.gamma();
    const double hp = gamma / x - x + 2.0 * x * (u - q);
    const double hpp = -gamma / (x * x) - 1.0 + 2.0 * (u - q) + 4.0 * t * (du - dq);
    return hpp + hp * hp;
}

double effective_potential(const ExceptionalLaguerreFamily& fam, double x) {
    if (fam.l() >= 2) {
        throw UnsupportedError("unsupported-deformation",
                               "potential is available for l in {0, 1} only");
    }
    if (x == 0.0) throw DomainError("potential is singular at the origin");
    const double gamma = fam.gamma();
    double v = x * x + gamma * (gamma - 1.0) / (x * x);
    if (fam.l() == 1) {
        const double eta = fam.eta()(x * x);
        const double b = fam.delta() + 1.0;
        v += -2.0 + 4.0 / eta - 8.0 * b / (eta * eta);
    }
    return v;
}

double energy_level(int n, const ExceptionalLaguerreFamily& fam) {
    validate_member_index(n, fam);
    return 4.0 * n + 2.0 * fam.g() + 1.0 - 4.0 * fam.l();
}

ExceptionalQmf exceptional_qmf(int n, const ExceptionalLaguerreFamily& fam) {
    const Polynomial member = exceptional_laguerre(n, fam);
    const double gamma = fam.gamma();
    const complex<double> minus_i{0.0, -1.0};
    const complex<double> plus_i{0.0, 1.0};

    std::vector<QmfPole> catalog;
    catalog.push_back({"origin", {0.0, 0.0}, minus_i * gamma});

    const std::vector<double> troots = member.real_roots();
    if (static_cast<int>(troots.size()) != member.degree()) {
        throw DomainError("degenerate-state",
                          "member polynomial has non-real or repeated zeros in t");
    }
    std::vector<double> moving;
    std::vector<qhj::ComplexPole> extra;
    for (const double t : troots) {
        if (t > 0.0) {
            const double r = std::sqrt(t);
            moving.push_back(-r);
            moving.push_back(r);
        } else {
            const double r = std::sqrt(-t);
            extra.push_back({{0.0, r}, minus_i});
            extra.push_back({{0.0, -r}, minus_i});
            catalog.push_back({"moving-imaginary", {0.0, r}, minus_i});
            catalog.push_back({"moving-imaginary", {0.0, -r}, minus_i});
        }
    }
    std::sort(moving.begin(), moving.end());
    for (const double x : moving) catalog.push_back({"moving-real", {x, 0.0}, minus_i});

    for (const double t : fam.eta().real_roots()) {
        // eta has no zero on t >= 0; each negative zero is a deformation
        // pole pair on the imaginary axis with the opposite-sign residue.
        const double r = std::sqrt(-t);
        extra.push_back({{0.0, r}, plus_i});
        extra.push_back({{0.0, -r}, plus_i});
        catalog.push_back({"deformation", {0.0, r}, plus_i});
        catalog.push_back({"deformation", {0.0, -r}, plus_i});
    }

    qhj::QuantumMomentumFunction p(
        PointConfiguration::from_unsorted(std::move(moving)),
        electrostatics::Superpotential(1.0, 0.0, {{0.0, -gamma}}), std::move(extra));
    return {std::move(p), std::move(catalog)};
}

IsospectralResult isospectral_check(int n1, int n2, const ExceptionalLaguerreFamily& fam,
                                    std::span<const double> grid) {
    if (grid.empty()) throw InvalidInputError("grid must be nonempty");
    std::vector<double> d(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        d[i] = schrodinger_ratio(n1, fam, grid[i]) - schrodinger_ratio(n2, fam, grid[i]);
    }
    double mean = 0.0;
    for (const double v : d) mean += v;
    mean /= static_cast<double>(d.size());
    double var = 0.0;
    for (const double v : d) var += (v - mean) * (v - mean);
    var /= static_cast<double>(d.size());
    return {std::sqrt(var), mean};
}

double exceptional_log_jpdf(const PointConfiguration& points,
                            const ExceptionalLaguerreFamily& fam) {
    const auto xs = points.points();
    double acc = 0.0;
    for (const double x : xs) {
        if (!(x > 0.0)) throw DomainError("points must be positive");
        acc += log_deformed_weight(x, fam);
    }
    return acc + 2.0 * kernels::log_abs_gap_sum(xs);
}

numerics::RealMatrix gram_matrix(const ExceptionalLaguerreFamily& fam, int n_lo,
                                 int n_hi) {
    if (n_lo < fam.lowest_index() || n_hi < n_lo) {
        throw InvalidInputError("need lowest_index <= n_lo <= n_hi");
    }
    const int m = n_hi - n_lo + 1;
    std::vector<Polynomial> members;
    members.reserve(m);
    for (int n = n_lo; n <= n_hi; ++n) members.push_back(exceptional_laguerre(n, fam));

    const double gamma = fam.gamma();
    const Polynomial& eta = fam.eta();
    numerics::RealMatrix raw(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            auto integrand = [&](double x) {
                if (x <= 0.0) return 0.0;
                const double t = x * x;
                const double e = eta(t);
                return std::pow(x, 2.0 * gamma) * std::exp(-t) * members[i](t) *
                       members[j](t) / (e * e);
            };
            // x^2 stays below ~250 well past the last turning point for the
            // member range used here, so [0, 16] captures the mass to
            // machine precision.
            const double val = numerics::integrate(integrand, 0.0, 16.0, 64, 32);
            raw.at(i, j) = val;
            raw.at(j, i) = val;
        }
    }
    numerics::RealMatrix out(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            out.at(i, j) = raw.at(i, j) / std::sqrt(raw.at(i, i) * raw.at(j, j));
        }
    }
    return out;
}

}  // namespace loggas::xpoly
