#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "loggas/linalg.hpp"
#include "loggas/point_config.hpp"
#include "loggas/polynomial.hpp"
#include "loggas/qhj.hpp"

namespace loggas::xpoly {

// Codimension-one deformed Laguerre sector on the half line. The denominator
// polynomial eta(t) = L_l^{(delta)}(-t), delta = g + l - 3/2, has positive
// coefficients and no zero on t >= 0. Members, weight, and wavefunctions are
// all expressed in t = x^2.
//
// l = 1 is the deformed (X1) family; l = 0 is the undeformed passthrough
// (eta = 1, classical Laguerre machinery) kept as a regression path. Member
// construction for l >= 2 is deliberately not provided.
class ExceptionalLaguerreFamily {
public:
    // Requires g > 0, l >= 0, and delta > -1.
    ExceptionalLaguerreFamily(double g, int l);

    double g() const noexcept { return g_; }
    int l() const noexcept { return l_; }
    double delta() const noexcept { return delta_; }
    // Exponent of the ground prefactor x^{g+l}.
    double gamma() const noexcept { return g_ + l_; }
    // Lowest member label: degree 0 is absent for l >= 1.
    int lowest_index() const noexcept { return l_ >= 1 ? 1 : 0; }
    const Polynomial& eta() const noexcept { return eta_; }

private:
    double g_;
    int l_;
    double delta_;
    Polynomial eta_;
};

// eta(t) = L_l^{(delta)}(-t) with delta = g + l - 3/2; all coefficients
// positive. Requires l >= 0 and delta > -1.
Polynomial denominator_poly(double g, int l);

// Member polynomial in t. For l = 1 the degree-n member (n >= 1) is the
// state-deleting transform output eta * (L - L') + L * eta' with
// L = L_{n-1}^{(delta)}, kept at its natural normalization. For l = 0 it is
// the classical L_n^{(delta+1)} (n >= 0). n below the lowest label raises
// DomainError("gap"); l >= 2 raises
// UnsupportedError("unsupported-deformation").
Polynomial exceptional_laguerre(int n, const ExceptionalLaguerreFamily& fam);

// w^(x) = x^{2(g+l)} e^{-x^2} / eta(x^2)^2 on x >= 0.
double deformed_weight(double x, const ExceptionalLaguerreFamily& fam);

// log w^(x); x <= 0 raises DomainError.
double log_deformed_weight(double x, const ExceptionalLaguerreFamily& fam);

// psi_n(x) = x^{g+l} e^{-x^2/2} member_n(x^2) / eta(x^2).
double wavefunction_value(int n, const ExceptionalLaguerreFamily& fam, double x);

// psi_n''/psi_n at x > 0 via the exact logarithmic-derivative pair
// (h'' + h'^2), valid off the wavefunction nodes; a node or x <= 0 raises
// DomainError.
double schrodinger_ratio(int n, const ExceptionalLaguerreFamily& fam, double x);

// V(x) = x^2 + gamma(gamma-1)/x^2 + deformation term (l = 1:
// -2 + 4/eta(x^2) - 8(delta+1)/eta(x^2)^2; zero for l = 0).
double effective_potential(const ExceptionalLaguerreFamily& fam, double x);

// Oscillator ladder 4n + 2g + 1 - 4l carried by member n; the labeling is
// fixed by the node-count ordering and verified against a finite-difference
// spectrum in the tests rather than asserted axiomatically.
double energy_level(int n, const ExceptionalLaguerreFamily& fam);

struct QmfPole {
    std::string kind;  // "origin", "moving-real", "moving-imaginary", "deformation"
    std::complex<double> location;
    std::complex<double> residue;
};

struct ExceptionalQmf {
    qhj::QuantumMomentumFunction p;
    std::vector<QmfPole> catalog;
};

// p = -i (ln psi_n)' assembled from the fixed part i(x - (g+l)/x), the real
// zeros of member_n(x^2) (residue -i), the imaginary pair from the negative
// t-zero (residue -i), and the deformation pair at the zeros of eta(x^2)
// (residue +i).
ExceptionalQmf exceptional_qmf(int n, const ExceptionalLaguerreFamily& fam);

struct IsospectralResult {
    double spread;  // stddev of d(x) over the grid
    double gap;     // mean of d(x) = E_{n2} - E_{n1}
};

// d(x) = psi_{n1}''/psi_{n1} - psi_{n2}''/psi_{n2} on the grid. Both states
// solve the same potential, so d is constant and equals the level gap; the
// spread measures how exactly. Grid points at a node raise DomainError.
IsospectralResult isospectral_check(int n1, int n2, const ExceptionalLaguerreFamily& fam,
                                    std::span<const double> grid);

// sum_i log w^(x_i) + 2 sum_{i<j} log|x_i - x_j|, the beta = 2 joint density
// in log domain. Nonpositive points raise DomainError.
double exceptional_log_jpdf(const PointConfiguration& points,
                            const ExceptionalLaguerreFamily& fam);

// Normalized cross integrals int psi_m psi_n dx for members n_lo..n_hi:
// entry (i,j) = G_ij / sqrt(G_ii G_jj), so the diagonal is 1 and the
// off-diagonal is the relative non-orthogonality.
numerics::RealMatrix gram_matrix(const ExceptionalLaguerreFamily& fam, int n_lo, int n_hi);

}  // namespace loggas::xpoly
