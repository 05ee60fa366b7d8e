#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "doctest.h"

#include "loggas/error.hpp"
#include "loggas/point_config.hpp"
#include "loggas/random.hpp"
#include "loggas/rmt.hpp"

namespace rmt = loggas::rmt;
using loggas::PointConfiguration;
using loggas::electrostatics::Superpotential;
using loggas::numerics::RandomStream;

namespace {

const Superpotential kGaussField(1.0, 0.0, {});

double mean_sum_sq(const std::vector<rmt::SpectralSample>& samples) {
    double acc = 0.0;
    for (const auto& s : samples) {
        for (const double v : s.eigenvalues.points()) acc += v * v;
    }
    return acc / static_cast<double>(samples.size());
}

// Empirical CDF of a sorted pool, usable as the model in ks_distance.
std::function<double(double)> empirical_cdf(std::vector<double> sorted) {
    return [pool = std::move(sorted)](double x) {
        const auto it = std::upper_bound(pool.begin(), pool.end(), x);
        return static_cast<double>(it - pool.begin()) / static_cast<double>(pool.size());
    };
}

}  // namespace

TEST_CASE("ensemble samplers produce the requested dimension, deterministically") {
    for (double beta : {1.0, 2.0, 4.0}) {
        const rmt::EnsembleSpec spec{beta, 7, kGaussField};
        RandomStream a(99), b(99);
        const auto s1 = rmt::sample_gaussian_ensemble(spec, a);
        const auto s2 = rmt::sample_gaussian_ensemble(spec, b);
        REQUIRE(s1.eigenvalues.size() == 7);
        for (std::size_t i = 0; i < 7; ++i) {
            CHECK(s1.eigenvalues[i] == s2.eigenvalues[i]);
        }
    }
    RandomStream s(1);
    CHECK_THROWS_AS(rmt::sample_gaussian_ensemble({3.0, 5, kGaussField}, s),
                    loggas::InvalidInputError);
    CHECK_THROWS_AS(rmt::sample_gaussian_ensemble({2.0, 0, kGaussField}, s),
                    loggas::InvalidInputError);
}

TEST_CASE("second spectral moment sits on the beta family curve") {
    // E[sum lambda^2] = 2n/beta + n(n-1) for the |V|^beta exp(-beta sum x^2/4)
    // convention shared by all three dense ensembles and the tridiagonal model.
    const int n = 8;
    const int replicas = 400;
    for (double beta : {1.0, 2.0, 4.0}) {
        const rmt::EnsembleSpec spec{beta, n, kGaussField};
        const auto dense =
            rmt::sample_replicas(spec, replicas, 1234, rmt::SampleMethod::dense);
        const double expect = 2.0 * n / beta + n * (n - 1.0);
        CHECK(mean_sum_sq(dense) == doctest::Approx(expect).epsilon(0.05));

        const auto tri =
            rmt::sample_replicas(spec, replicas, 4321, rmt::SampleMethod::tridiagonal);
        CHECK(mean_sum_sq(tri) == doctest::Approx(expect).epsilon(0.05));
    }
}

TEST_CASE("quaternion ensemble collapses kramers doublets to distinct values") {
    const rmt::EnsembleSpec spec{4.0, 6, kGaussField};
    RandomStream s(5);
    const auto sample = rmt::sample_gaussian_ensemble(spec, s);
    CHECK(sample.eigenvalues.size() == 6);  // doubled spectrum deduplicated
    CHECK(sample.eigenvalues.min_gap() > 0.0);

    // dim = 1: the block is a scalar multiple of I_2, eigenvalue ~ N(0, 1/2).
    const auto ones = rmt::sample_replicas({4.0, 1, kGaussField}, 4000, 7,
                                           rmt::SampleMethod::dense);
    double var = 0.0;
    for (const auto& one : ones) var += one.eigenvalues[0] * one.eigenvalues[0];
    var /= static_cast<double>(ones.size());
    CHECK(var == doctest::Approx(0.5).epsilon(0.08));
}

TEST_CASE("replica sampling is reproducible and thread-count invariant") {
    const rmt::EnsembleSpec spec{2.0, 10, kGaussField};
    setenv("LOGGAS_THREADS", "1", 1);
    const auto serial = rmt::sample_replicas(spec, 12, 77, rmt::SampleMethod::dense);
    setenv("LOGGAS_THREADS", "4", 1);
    const auto threaded = rmt::sample_replicas(spec, 12, 77, rmt::SampleMethod::dense);
    unsetenv("LOGGAS_THREADS");
    REQUIRE(serial.size() == threaded.size());
    for (std::size_t r = 0; r < serial.size(); ++r) {
        for (std::size_t i = 0; i < 10; ++i) {
            CHECK(serial[r].eigenvalues[i] == threaded[r].eigenvalues[i]);
        }
    }
}

TEST_CASE("semicircle cdf endpoints, midpoint, and quarter values") {
    CHECK(rmt::semicircle_cdf(-2.0, 2.0) == 0.0);
    CHECK(rmt::semicircle_cdf(-2.5, 2.0) == 0.0);
    CHECK(rmt::semicircle_cdf(0.0, 2.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rmt::semicircle_cdf(2.0, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rmt::semicircle_cdf(3.0, 2.0) == 1.0);
    // F(R/2) = 1/2 + sqrt(3)/(4 pi) + 1/6.
    const double expect = 0.5 + std::sqrt(3.0) / (4.0 * M_PI) + 1.0 / 6.0;
    CHECK(rmt::semicircle_cdf(1.0, 2.0) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("ks distance: exact small case and input validation") {
    const std::vector<double> pts = {0.25, 0.75};
    auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
    CHECK(rmt::ks_distance(pts, uniform) == doctest::Approx(0.25).epsilon(1e-14));

    const std::vector<double> empty;
    CHECK_THROWS_AS(rmt::ks_distance(empty, uniform), loggas::InvalidInputError);
    const std::vector<double> unsorted = {0.75, 0.25};
    CHECK_THROWS_AS(rmt::ks_distance(unsorted, uniform), loggas::InvalidInputError);
}

TEST_CASE("ks distance is small for a true uniform sample") {
    RandomStream s(3);
    std::vector<double> u(10000);
    for (auto& x : u) x = s.next_uniform();
    std::sort(u.begin(), u.end());
    CHECK(rmt::ks_distance(u, [](double x) { return std::clamp(x, 0.0, 1.0); }) < 0.02);
}

TEST_CASE("scaled unitary-ensemble spectra approach the semicircle") {
    const int n = 60;
    const auto samples =
        rmt::sample_replicas({2.0, n, kGaussField}, 60, 2026, rmt::SampleMethod::dense);
    std::vector<double> pooled;
    for (const auto& s : samples) {
        for (const double v : s.eigenvalues.points()) pooled.push_back(v / std::sqrt(n));
    }
    std::sort(pooled.begin(), pooled.end());
    const double ks =
        rmt::ks_distance(pooled, [](double x) { return rmt::semicircle_cdf(x, 2.0); });
    CHECK(ks < 0.06);
}

TEST_CASE("tridiagonal and dense samplers share a spectral law at beta = 2") {
    const int n = 40;
    std::vector<double> dense_pool, tri_pool;
    const auto dense =
        rmt::sample_replicas({2.0, n, kGaussField}, 150, 11, rmt::SampleMethod::dense);
    const auto tri =
        rmt::sample_replicas({2.0, n, kGaussField}, 150, 22, rmt::SampleMethod::tridiagonal);
    for (const auto& s : dense)
        for (const double v : s.eigenvalues.points()) dense_pool.push_back(v);
    for (const auto& s : tri)
        for (const double v : s.eigenvalues.points()) tri_pool.push_back(v);
    std::sort(dense_pool.begin(), dense_pool.end());
    std::sort(tri_pool.begin(), tri_pool.end());
    const double ks = rmt::ks_distance(tri_pool, empirical_cdf(dense_pool));
    CHECK(ks < 0.05);
}

TEST_CASE("log joint density: hand-computed two-point case") {
    const auto pts = PointConfiguration::from_sorted({-1.0, 2.0});
    // U(-1) = 1/2, U(2) = 2, gap log = ln 3.
    const double pot2 = rmt::log_jpdf(pts, 2.0, kGaussField, rmt::JpdfForm::potential);
    CHECK(pot2 == doctest::Approx(-5.0 + 2.0 * std::log(3.0)).epsilon(1e-14));
    const double wt2 = rmt::log_jpdf(pts, 2.0, kGaussField, rmt::JpdfForm::weight);
    CHECK(wt2 == doctest::Approx(pot2).epsilon(1e-15));

    // At beta = 1 the forms differ by exactly sum U (weight keeps exponent 2).
    const double pot1 = rmt::log_jpdf(pts, 1.0, kGaussField, rmt::JpdfForm::potential);
    const double wt1 = rmt::log_jpdf(pts, 1.0, kGaussField, rmt::JpdfForm::weight);
    CHECK(pot1 == doctest::Approx(-2.5 + std::log(3.0)).epsilon(1e-14));
    CHECK(wt1 - pot1 == doctest::Approx(-2.5).epsilon(1e-13));
}

TEST_CASE("log joint density rejects configurations touching a field pole") {
    const Superpotential w(1.0, 0.0, {{0.5, -1.0}});
    const auto pts = PointConfiguration::from_sorted({0.5, 1.5});
    CHECK_THROWS_AS(rmt::log_jpdf(pts, 2.0, w, rmt::JpdfForm::potential),
                    loggas::DomainError);
}

TEST_CASE("metropolis matches the two-charge quadrature oracle") {
    const rmt::EnsembleSpec spec{2.0, 2, kGaussField};
    RandomStream stream(314);
    const auto result = rmt::metropolis_sample(spec, 200000, 20000, 0.8, stream);
    CHECK(result.acceptance_rate > 0.2);
    CHECK(result.acceptance_rate < 0.9);
    REQUIRE(result.samples.size() == 180000);
    double acc = 0.0;
    for (const auto& config : result.samples) {
        for (const double x : config.points()) acc += x * x;
    }
    // E[x1^2 + x2^2] = 2 under (x-y)^2 exp(-(x^2+y^2)).
    CHECK(acc / 180000.0 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("metropolis validates its chain parameters") {
    rmt::LogGasTarget target;
    target.log_point_weight = [](double x) { return -x * x; };
    RandomStream s(1);
    CHECK_THROWS_AS(rmt::metropolis_log_gas(target, 0, 100, 10, 0.5, s),
                    loggas::InvalidInputError);
    CHECK_THROWS_AS(rmt::metropolis_log_gas(target, 2, 100, 100, 0.5, s),
                    loggas::InvalidInputError);
    CHECK_THROWS_AS(rmt::metropolis_log_gas(target, 2, 100, 10, 0.0, s),
                    loggas::InvalidInputError);
    rmt::LogGasTarget no_weight;
    CHECK_THROWS_AS(rmt::metropolis_log_gas(no_weight, 2, 100, 10, 0.5, s),
                    loggas::InvalidInputError);
}

TEST_CASE("domain-restricted metropolis stays in the domain") {
    rmt::LogGasTarget target;
    target.log_point_weight = [](double x) { return 2.0 * std::log(x) - x; };
    target.pair_beta = 2.0;
    target.in_domain = [](double x) { return x > 0.0; };
    RandomStream stream(8);
    const auto result = rmt::metropolis_log_gas(target, 3, 20000, 2000, 0.7, stream);
    for (const auto& config : result.samples) {
        for (const double x : config.points()) CHECK(x > 0.0);
    }
    CHECK(result.acceptance_rate > 0.1);
}

TEST_CASE("deterministic dyson flow settles on the equilibrium") {
    const int n = 6;
    const auto init = loggas::electrostatics::default_equilibrium_init(n, kGaussField);
    RandomStream stream(0);
    const auto traj = rmt::dyson_flow(init, kGaussField, 0.0, 0.05, 600, stream);
    REQUIRE(traj.size() == 601);
    const auto res = loggas::electrostatics::residual(traj.back(), kGaussField);
    for (const double r : res) CHECK(std::abs(r) < 1e-8);
}

TEST_CASE("dyson flow validates parameters and keeps ordering under big steps") {
    RandomStream s(2);
    const auto init = PointConfiguration::from_sorted({-0.01, 0.0, 0.01});
    CHECK_THROWS_AS(rmt::dyson_flow(init, kGaussField, 2.0, 0.0, 10, s),
                    loggas::InvalidInputError);
    CHECK_THROWS_AS(rmt::dyson_flow(init, kGaussField, -1.0, 0.1, 10, s),
                    loggas::InvalidInputError);
    // A coarse step on a tight cluster must sub-step, not cross.
    const auto traj = rmt::dyson_flow(init, kGaussField, 0.0, 0.5, 20, s);
    for (const auto& config : traj) {
        REQUIRE(config.size() == 3);
        CHECK(config.min_gap() > 0.0);
    }
}

TEST_CASE("near-collision repulsion cannot catapult the configuration") {
    // With h * 1/gap comparable to 1, an unresolved explicit step stays
    // ordered while flinging both points to |x| in the hundreds; the flow
    // must shrink its sub-step instead. The confining scale here is ~1.
    RandomStream s(7);
    const auto init = PointConfiguration::from_sorted({-1e-4, 1e-4});
    const auto traj = rmt::dyson_flow(init, kGaussField, 2.0, 0.05, 200, s);
    for (const auto& config : traj) {
        CHECK(config.min_gap() > 0.0);
        CHECK(std::abs(config[0]) < 10.0);
        CHECK(std::abs(config[1]) < 10.0);
    }
}

TEST_CASE("stochastic dyson time average matches the gibbs measure") {
    // Segments keep the trajectory storage bounded while the stream continues.
    RandomStream stream(909);
    PointConfiguration state = PointConfiguration::from_sorted({-0.7, 0.7});
    double acc = 0.0;
    std::int64_t kept = 0;
    const int segments = 12;
    const std::int64_t seg_steps = 20000;
    for (int s = 0; s < segments; ++s) {
        const auto traj = rmt::dyson_flow(state, kGaussField, 2.0, 0.01, seg_steps, stream);
        state = traj.back();
        if (s == 0) continue;  // burn-in segment
        for (std::size_t i = 1; i < traj.size(); ++i) {
            acc += traj[i][0] * traj[i][0] + traj[i][1] * traj[i][1];
            ++kept;
        }
    }
    CHECK(acc / static_cast<double>(kept) == doctest::Approx(2.0).epsilon(0.15));
}
