#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"

#include "loggas/contour.hpp"
#include "loggas/error.hpp"
#include "loggas/orthopoly.hpp"
#include "loggas/point_config.hpp"
#include "loggas/rmt.hpp"
#include "loggas/xpoly.hpp"

namespace xpoly = loggas::xpoly;
using loggas::PointConfiguration;
using loggas::Polynomial;
using xpoly::ExceptionalLaguerreFamily;

TEST_CASE("denominator polynomial: closed forms for l = 0, 1, 2") {
    CHECK(xpoly::denominator_poly(1.0, 0).coeffs() == std::vector<double>{1.0});

    const double g = 1.0;
    const double b1 = g + 0.5;  // delta + 1 at l = 1
    const auto eta1 = xpoly::denominator_poly(g, 1);
    REQUIRE(eta1.degree() == 1);
    CHECK(eta1.coeffs()[0] == doctest::Approx(b1).epsilon(1e-14));
    CHECK(eta1.coeffs()[1] == doctest::Approx(1.0).epsilon(1e-14));

    // l = 2: L_2^(d)(-t) = t^2/2 + (d+2) t + (d+1)(d+2)/2 with d = g + 1/2.
    const double d = g + 0.5;
    const auto eta2 = xpoly::denominator_poly(g, 2);
    REQUIRE(eta2.degree() == 2);
    CHECK(eta2.coeffs()[0] == doctest::Approx((d + 1.0) * (d + 2.0) / 2.0).epsilon(1e-13));
    CHECK(eta2.coeffs()[1] == doctest::Approx(d + 2.0).epsilon(1e-13));
    CHECK(eta2.coeffs()[2] == doctest::Approx(0.5).epsilon(1e-13));

    // No zeros on the closed half-line, so the deformed weight is regular.
    for (double t : {0.0, 0.5, 2.0, 10.0}) {
        CHECK(eta1(t) > 0.0);
        CHECK(eta2(t) > 0.0);
    }
}

TEST_CASE("family bookkeeping and validation") {
    const ExceptionalLaguerreFamily fam(1.0, 1);
    CHECK(fam.g() == 1.0);
    CHECK(fam.l() == 1);
    CHECK(fam.delta() == doctest::Approx(0.5));
    CHECK(fam.gamma() == doctest::Approx(2.0));
    CHECK(fam.lowest_index() == 1);

    const ExceptionalLaguerreFamily passthrough(2.0, 0);
    CHECK(passthrough.lowest_index() == 0);

    CHECK_THROWS_AS(ExceptionalLaguerreFamily(0.0, 1), loggas::InvalidInputError);
    CHECK_THROWS_AS(ExceptionalLaguerreFamily(1.0, -1), loggas::InvalidInputError);
}

TEST_CASE("member polynomials: gap, low members, leading coefficients") {
    const ExceptionalLaguerreFamily fam(1.0, 1);
    const double b = fam.delta() + 1.0;

    CHECK_THROWS_AS(xpoly::exceptional_laguerre(0, fam), loggas::DomainError);
    CHECK_THROWS_AS(xpoly::exceptional_laguerre(-1, fam), loggas::InvalidInputError);

    // y_1 = t + B + 1, y_2 = B(B+2) - t^2.
    const auto y1 = xpoly::exceptional_laguerre(1, fam);
    REQUIRE(y1.degree() == 1);
    CHECK(y1.coeffs()[0] == doctest::Approx(b + 1.0).epsilon(1e-13));
    CHECK(y1.coeffs()[1] == doctest::Approx(1.0).epsilon(1e-13));

    const auto y2 = xpoly::exceptional_laguerre(2, fam);
    REQUIRE(y2.degree() == 2);
    CHECK(y2.coeffs()[0] == doctest::Approx(b * (b + 2.0)).epsilon(1e-13));
    CHECK(y2.coeffs()[1] == doctest::Approx(0.0));
    CHECK(y2.coeffs()[2] == doctest::Approx(-1.0).epsilon(1e-13));

    // Leading coefficient (-1)^(n-1) / (n-1)!.
    double factorial = 1.0;
    for (int n = 1; n <= 6; ++n) {
        if (n > 1) factorial *= n - 1;
        const auto y = xpoly::exceptional_laguerre(n, fam);
        CHECK(y.degree() == n);
        const double expect = (n % 2 ? 1.0 : -1.0) / factorial;
        CHECK(y.leading() == doctest::Approx(expect).epsilon(1e-12));
    }

    const ExceptionalLaguerreFamily deeper(1.0, 2);
    CHECK_THROWS_AS(xpoly::exceptional_laguerre(2, deeper), loggas::UnsupportedError);
}

TEST_CASE("passthrough members reduce to classical laguerre") {
    const double g = 2.0;
    const ExceptionalLaguerreFamily fam(g, 0);
    const auto classical = loggas::orthopoly::OrthogonalFamily::laguerre(g - 0.5);
    for (int n = 0; n <= 6; ++n) {
        const auto mine = xpoly::exceptional_laguerre(n, fam);
        const auto ref = loggas::orthopoly::family_polynomial(classical, n);
        REQUIRE(mine.degree() == ref.degree());
        for (int k = 0; k <= n; ++k) {
            CHECK(mine.coeffs()[k] == doctest::Approx(ref.coeffs()[k]).epsilon(1e-12));
        }
    }
}

TEST_CASE("deformed weight: frozen value, domain, and log consistency") {
    // g = 3/2, l = 1: eta(t) = t + 2, gamma = 5/2, so w(1) = e^-1 / 9.
    const ExceptionalLaguerreFamily fam(1.5, 1);
    CHECK(xpoly::deformed_weight(1.0, fam) ==
          doctest::Approx(std::exp(-1.0) / 9.0).epsilon(1e-14));
    CHECK(xpoly::deformed_weight(0.0, fam) == 0.0);
    CHECK_THROWS_AS(xpoly::deformed_weight(-0.5, fam), loggas::DomainError);
    for (double x : {0.3, 1.0, 2.4}) {
        CHECK(std::log(xpoly::deformed_weight(x, fam)) ==
              doctest::Approx(xpoly::log_deformed_weight(x, fam)).epsilon(1e-12));
    }
}

TEST_CASE("energy ladder is linear with spacing four") {
    const ExceptionalLaguerreFamily fam(1.0, 1);
    for (int n = 1; n <= 5; ++n) {
        CHECK(xpoly::energy_level(n, fam) == doctest::Approx(4.0 * n + 2.0 * 1.0 - 3.0));
    }
    const ExceptionalLaguerreFamily passthrough(1.0, 0);
    for (int n = 0; n <= 5; ++n) {
        CHECK(xpoly::energy_level(n, passthrough) == doctest::Approx(4.0 * n + 2.0 + 1.0));
    }
}

TEST_CASE("wavefunctions solve the deformed oscillator equation") {
    for (const auto& params : {std::pair{1.0, 1}, std::pair{2.5, 1}, std::pair{1.5, 0}}) {
        const ExceptionalLaguerreFamily fam(params.first, params.second);
        for (int n = fam.lowest_index(); n <= fam.lowest_index() + 3; ++n) {
            const double energy = xpoly::energy_level(n, fam);
            for (double x = 0.45; x < 3.2; x += 0.25) {
                // psi''/psi must equal V(x) - E away from nodes.
                const double ratio = xpoly::schrodinger_ratio(n, fam, x);
                const double expect = xpoly::effective_potential(fam, x) - energy;
                CHECK(ratio - expect == doctest::Approx(0.0).epsilon(1e-9).scale(
                                            std::abs(expect) + 1.0));
            }
        }
    }
}

TEST_CASE("wavefunction nodes on the half-line number n - 1") {
    const ExceptionalLaguerreFamily fam(1.0, 1);
    for (int n = 1; n <= 5; ++n) {
        int sign_changes = 0;
        double prev = xpoly::wavefunction_value(n, fam, 0.01);
        for (double x = 0.02; x < 12.0; x += 0.01) {
            const double v = xpoly::wavefunction_value(n, fam, x);
            if (prev * v < 0.0) ++sign_changes;
            if (v != 0.0) prev = v;
        }
        CHECK(sign_changes == n - 1);
    }
}

TEST_CASE("isospectral pairs share the exact level gap") {
    const ExceptionalLaguerreFamily fam(1.0, 1);
    std::vector<double> grid;
    for (int i = 0; i < 48; ++i) grid.push_back(0.4 + i * 0.055);
    for (int n = 1; n <= 4; ++n) {
        const auto r = xpoly::isospectral_check(n, n + 1, fam, grid);
        CHECK(r.gap == doctest::Approx(4.0).epsilon(1e-10));
        CHECK(r.spread < 1e-9);
    }
    const auto wide = xpoly::isospectral_check(1, 4, fam, grid);
    CHECK(wide.gap == doctest::Approx(12.0).epsilon(1e-10));

    const std::vector<double> empty;
    CHECK_THROWS_AS(xpoly::isospectral_check(1, 2, fam, empty), loggas::InvalidInputError);
}

TEST_CASE("momentum function catalog carries verified residues") {
    const ExceptionalLaguerreFamily fam(1.0, 1);
    const int n = 3;
    const auto qmf = xpoly::exceptional_qmf(n, fam);

    int origin = 0, moving_real = 0, moving_imag = 0, deformation = 0;
    for (const auto& pole : qmf.catalog) {
        if (pole.kind == "origin") {
            ++origin;
            CHECK(std::abs(pole.residue - std::complex<double>(0.0, -fam.gamma())) < 1e-13);
        } else if (pole.kind == "moving-real") {
            ++moving_real;
            CHECK(pole.location.imag() == 0.0);
        } else if (pole.kind == "moving-imaginary") {
            ++moving_imag;
            CHECK(pole.location.real() == 0.0);
            CHECK(std::abs(pole.residue - std::complex<double>(0.0, -1.0)) < 1e-13);
        } else if (pole.kind == "deformation") {
            ++deformation;
            CHECK(pole.location.real() == 0.0);
            CHECK(std::abs(pole.residue - std::complex<double>(0.0, 1.0)) < 1e-13);
        }
    }
    CHECK(origin == 1);
    CHECK(moving_real == 2 * (n - 1));  // symmetric pairs over the n-1 nodes
    CHECK(moving_imag == 2);
    CHECK(deformation == 2);

    for (const auto& pole : qmf.catalog) {
        double min_gap = std::numeric_limits<double>::infinity();
        for (const auto& other : qmf.catalog) {
            const double dist = std::abs(pole.location - other.location);
            if (dist > 0.0) min_gap = std::min(min_gap, dist);
        }
        const double r = std::min(0.35 * min_gap, 0.5);
        const auto numeric = loggas::numerics::contour_integral(
            [&](std::complex<double> z) { return qmf.p.value(z); }, pole.location, r, r,
            1024);
        CHECK(std::abs(numeric - pole.residue) < 1e-8);
    }
}

TEST_CASE("degree-one state has no real moving poles but keeps the fixed set") {
    const ExceptionalLaguerreFamily fam(2.5, 1);
    const auto qmf = xpoly::exceptional_qmf(1, fam);
    int moving_real = 0;
    for (const auto& pole : qmf.catalog) moving_real += pole.kind == "moving-real";
    CHECK(moving_real == 0);
    CHECK(qmf.p.moving_poles().empty());
}

TEST_CASE("deformed joint density reduces to the classical half-line form") {
    const double g = 1.5;
    const ExceptionalLaguerreFamily fam(g, 0);
    const auto pts = PointConfiguration::from_sorted({0.4, 1.1, 2.7, 3.3});
    const double deformed = xpoly::exceptional_log_jpdf(pts, fam);
    const loggas::electrostatics::Superpotential w(1.0, 0.0, {{0.0, -g}});
    const double classical =
        loggas::rmt::log_jpdf(pts, 2.0, w, loggas::rmt::JpdfForm::weight);
    CHECK(deformed == doctest::Approx(classical).epsilon(1e-13));

    const auto bad = PointConfiguration::from_sorted({-0.5, 1.0});
    CHECK_THROWS_AS(xpoly::exceptional_log_jpdf(bad, fam), loggas::DomainError);
}

TEST_CASE("gram matrix of the deformed family is diagonal") {
    for (double g : {1.0, 2.5}) {
        const ExceptionalLaguerreFamily fam(g, 1);
        const auto gram = xpoly::gram_matrix(fam, 1, 6);
        REQUIRE(gram.n == 6);
        for (std::size_t i = 0; i < gram.n; ++i) {
            CHECK(gram.at(i, i) == doctest::Approx(1.0).epsilon(1e-12));
            for (std::size_t j = 0; j < gram.n; ++j) {
                if (i != j) CHECK(std::abs(gram.at(i, j)) < 1e-8);
            }
        }
    }
}
