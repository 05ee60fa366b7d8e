#include "loggas/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "loggas/error.hpp"

namespace loggas::numerics {

namespace {

// sqrt(a^2 + b^2) without destructive under/overflow.
double pythag(double a, double b) {
    const double absa = std::abs(a);
    const double absb = std::abs(b);
    if (absa > absb) {
        const double r = absb / absa;
        return absa * std::sqrt(1.0 + r * r);
    }
    if (absb == 0.0) return 0.0;
    const double r = absa / absb;
    return absb * std::sqrt(1.0 + r * r);
}

// Implicit-shift QL on (d, e) in place; e[n-1] is workspace. Eigenvalues land
// in d, unsorted.
void ql_implicit(std::vector<double>& d, std::vector<double>& e) {
    const std::size_t n = d.size();
    if (n == 0) return;
    e.push_back(0.0);  // sentinel so the deflation scan always terminates
    constexpr int kMaxSweeps = 50;
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        for (;;) {
            std::size_t m = l;
            for (; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m == l) break;
            if (++iter > kMaxSweeps) {
                throw ConvergenceError("numeric",
                                       "tridiagonal QL failed to deflate an off-diagonal entry");
            }
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = pythag(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            for (std::size_t i = m; i-- > l;) {
                double f = s * e[i];
                const double b = c * e[i];
                r = pythag(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    // Split: the rotation chain hit an exact zero early.
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if (i == l) {
                    d[l] -= p;
                    e[l] = g;
                    e[m] = 0.0;
                }
            }
        }
    }
    e.pop_back();
}

}  // namespace

std::vector<double> symtri_eigenvalues(std::span<const double> diag,
                                       std::span<const double> offdiag) {
    const std::size_t n = diag.size();
    if (n == 0) throw InvalidInputError("diagonal must be nonempty");
    if (offdiag.size() + 1 != n) {
        throw InvalidInputError("offdiag must have length diag.size() - 1");
    }
    std::vector<double> d(diag.begin(), diag.end());
    std::vector<double> e(offdiag.begin(), offdiag.end());
    ql_implicit(d, e);
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<double> symmetric_eigenvalues(const RealMatrix& m) {
    const std::size_t n = m.n;
    if (n == 0) return {};
    if (m.a.size() != n * n) {
        throw InvalidInputError("matrix storage does not match its dimension");
    }
    // Householder reduction to tridiagonal, eigenvalues only (EISPACK tred1
    // layout: d holds the diagonal, e the subdiagonal).
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            a[i][j] = m.at(i, j);
            a[j][i] = a[i][j];
        }
    }
    std::vector<double> d(n, 0.0);
    std::vector<double> e(n, 0.0);
    for (std::size_t i = n; i-- > 1;) {
        const std::size_t l = i - 1;
        double h = 0.0;
        double scale = 0.0;
        if (l > 0) {
            for (std::size_t k = 0; k <= l; ++k) scale += std::abs(a[i][k]);
            if (scale == 0.0) {
                e[i] = a[i][l];
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    a[i][k] /= scale;
                    h += a[i][k] * a[i][k];
                }
                double f = a[i][l];
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                a[i][l] = f - g;
                f = 0.0;
                for (std::size_t j = 0; j <= l; ++j) {
                    g = 0.0;
                    for (std::size_t k = 0; k <= j; ++k) g += a[j][k] * a[i][k];
                    for (std::size_t k = j + 1; k <= l; ++k) g += a[k][j] * a[i][k];
                    e[j] = g / h;
                    f += e[j] * a[i][j];
                }
                const double hh = f / (h + h);
                for (std::size_t j = 0; j <= l; ++j) {
                    f = a[i][j];
                    e[j] = g = e[j] - hh * f;
                    for (std::size_t k = 0; k <= j; ++k) {
                        a[j][k] -= f * e[k] + g * a[i][k];
                    }
                }
            }
        } else {
            e[i] = a[i][l];
        }
        d[i] = h;
    }
    for (std::size_t i = 0; i < n; ++i) d[i] = a[i][i];
    // Shift e down so e[k] couples d[k], d[k+1].
    for (std::size_t i = 0; i + 1 < n; ++i) e[i] = e[i + 1];
    e.pop_back();
    ql_implicit(d, e);
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    const std::size_t n = m.n;
    if (n == 0) return {};
    if (m.a.size() != n * n) {
        throw InvalidInputError("matrix storage does not match its dimension");
    }
    double max_abs = 0.0;
    for (const auto& z : m.a) max_abs = std::max(max_abs, std::abs(z));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const auto diff = m.at(i, j) - std::conj(m.at(j, i));
            if (std::abs(diff) > 1e-12 * (1.0 + max_abs)) {
                throw InvalidInputError("not-hermitian",
                                        "matrix is not Hermitian within tolerance");
            }
        }
    }
    RealMatrix big(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double re = m.at(i, j).real();
            const double im = m.at(i, j).imag();
            big.at(i, j) = re;
            big.at(i, j + n) = -im;
            big.at(i + n, j) = im;
            big.at(i + n, j + n) = re;
        }
    }
    const std::vector<double> doubled = symmetric_eigenvalues(big);
    // Spectrum of the embedding is the Hermitian spectrum with each value
    // doubled; adjacent pairs of the sorted list are the duplicates.
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
    }
    return out;
}

bool cholesky_factor(RealMatrix& m) {
    const std::size_t n = m.n;
    for (std::size_t j = 0; j < n; ++j) {
        double diag = m.at(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= m.at(j, k) * m.at(j, k);
        if (!(diag > 0.0)) return false;
        const double ljj = std::sqrt(diag);
        m.at(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = m.at(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= m.at(i, k) * m.at(j, k);
            m.at(i, j) = v / ljj;
        }
    }
    return true;
}

std::vector<double> cholesky_solve(const RealMatrix& chol, std::span<const double> b) {
    const std::size_t n = chol.n;
    if (b.size() != n) {
        throw InvalidInputError("right-hand side length does not match the factor");
    }
    std::vector<double> x(b.begin(), b.end());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) x[i] -= chol.at(i, k) * x[k];
        x[i] /= chol.at(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t k = i + 1; k < n; ++k) x[i] -= chol.at(k, i) * x[k];
        x[i] /= chol.at(i, i);
    }
    return x;
}

}  // namespace loggas::numerics
