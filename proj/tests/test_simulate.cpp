#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "subdiff/analytics.hpp"
#include "subdiff/sampling.hpp"
#include "subdiff/simulate.hpp"

using namespace subdiff;

TEST_CASE("subordinator paths start at 0 and are non-decreasing") {
    const TemperParams p(0.6, 2.0);
    const TimeGrid grid = TimeGrid::uniform(5.0, 101);
    RandomStream s(1, 0);
    const SamplePath path = simulate_subordinator(p, grid, s);
    CHECK(path.values.front() == 0.0);
    for (std::size_t i = 1; i < path.values.size(); ++i)
        CHECK(path.values[i] > path.values[i - 1]);
    CHECK(path.kind == PathKind::subordinator);
}

TEST_CASE("untempered subordinator equals the cumulative sum of stable draws") {
    // With lambda = 0 the sampler accepts the first stable draw unconditionally,
    // so the path is reproducible from the raw stable sequence.
    const TemperParams p(0.9, 0.0);
    const TimeGrid grid = TimeGrid::uniform(4.0, 9);  // dt = 0.5
    RandomStream a(2, 0), b(2, 0);
    const SamplePath path = simulate_subordinator(p, grid, a);
    double total = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        total += std::pow(0.5, 1.0 / 0.9) * sample_positive_stable(b, p.stable());
        CHECK(path.values[i] == doctest::Approx(total).epsilon(1e-15));
    }
}

TEST_CASE("subordinator mean at t = 1 matches the Laplace-exponent derivative") {
    const TemperParams p(0.8, 1.0);
    const TimeGrid grid = TimeGrid::uniform(1.0, 2);
    const std::size_t n = 10000;
    double sum = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        RandomStream s(3, i);
        const double v = simulate_subordinator(p, grid, s).values.back();
        sum += v;
        sq += v * v;
    }
    const double m = sum / n;
    const double se = std::sqrt((sq / n - m * m) / n);
    CHECK(std::abs(m - 0.8) < 3.0 * se);
}

TEST_CASE("inverse subordinator: level-zero passage and monotonicity") {
    const TemperParams p(0.26, 6.0);
    const TimeGrid grid = TimeGrid::uniform(1.0, 51);  // starts at tau = 0
    const double delta = 0.002;
    RandomStream s(4, 0);
    const SamplePath path = simulate_inverse_subordinator(p, grid, delta, s);
    CHECK(path.values.front() <= delta + 1e-15);
    CHECK(path.values.front() > 0.0);
    bool has_flat = false;
    for (std::size_t i = 1; i < path.values.size(); ++i) {
        CHECK(path.values[i] >= path.values[i - 1]);
        if (path.values[i] == path.values[i - 1]) has_flat = true;
    }
    CHECK(has_flat);  // waiting periods are the defining feature
}

TEST_CASE("inverse subordinator first-passage consistency with its internal path") {
    const TemperParams p(0.5, 1.0);
    const TimeGrid grid = TimeGrid::uniform(2.0, 21);
    const double delta = 0.01;
    RandomStream s(5, 0);
    const auto detail = simulate_inverse_subordinator_detail(p, grid, delta, s);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto n = static_cast<std::size_t>(
            std::llround(detail.s.values[k] / delta));
        REQUIRE(n >= 1);
        REQUIRE(n <= detail.t_internal.size());
        CHECK(detail.t_internal[n - 1] > grid[k]);  // T(n delta) exceeds the level
        if (n >= 2) CHECK(detail.t_internal[n - 2] <= grid[k]);  // minimality
    }
}

TEST_CASE("inverse subordinator mean matches the Mittag-Leffler quadrature") {
    const TemperParams p(0.4, 0.2);
    const TimeGrid grid(std::vector<double>{0.25, 0.5, 1.0});
    const double delta = 0.005;
    const std::size_t n = 10000;
    std::vector<double> sum(grid.size(), 0.0), sq(grid.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        RandomStream s(6, i);
        const SamplePath path = simulate_inverse_subordinator(p, grid, delta, s);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            sum[k] += path.values[k];
            sq[k] += path.values[k] * path.values[k];
        }
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double m = sum[k] / n;
        const double se = std::sqrt((sq[k] / n - m * m) / n);
        const double target = mean_of_s(p, grid[k]);
        INFO("tau=", grid[k], " mc=", m, " target=", target);
        CHECK(std::abs(m - target) < 3.0 * se + delta);  // quadrature oracle + bias
    }
}

TEST_CASE("abm moments and determinism") {
    const TimeGrid grid = TimeGrid::uniform(1.0, 2);
    const std::size_t n = 10000;
    double sum0 = 0, sq0 = 0, sum1 = 0, sq1 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        RandomStream s0(7, i), s1(8, i);
        const double x0 = simulate_abm(0.0, grid, s0).values.back();
        const double x1 = simulate_abm(1.0, grid, s1).values.back();
        sum0 += x0;
        sq0 += x0 * x0;
        sum1 += x1;
        sq1 += x1 * x1;
    }
    const double var0 = sq0 / n - (sum0 / n) * (sum0 / n);
    CHECK(std::abs(var0 - 1.0) < 3.0 * std::sqrt(2.0 / n));   // var X(1) = 1
    const double m1 = sum1 / n;
    const double se1 = std::sqrt((sq1 / n - m1 * m1) / n);
    CHECK(std::abs(m1 - 1.0) < 3.0 * se1);                    // mean X(1) = beta t

    RandomStream a(9, 3), b(9, 3);
    const SamplePath pa = simulate_abm(0.5, TimeGrid::uniform(1.0, 50), a);
    const SamplePath pb = simulate_abm(0.5, TimeGrid::uniform(1.0, 50), b);
    CHECK(pa.values == pb.values);  // bitwise
}

TEST_CASE("nts increments match the analytic Laplace transform on a z-grid") {
    const ModelParams p(0.26, 6.0, 0.11);
    const std::size_t len = 100000;
    const TimeGrid grid = TimeGrid::uniform(static_cast<double>(len), len + 1);
    RandomStream s(10, 0);
    const SamplePath path = simulate_nts(p, grid, s);
    // Keep 2z inside the transform domain so e^{-z dY} has finite variance and
    // the Monte Carlo standard error is meaningful.
    const double z_max = 0.45 * laplace_nts_domain_bound(p.lambda, p.beta);
    for (int j = 1; j <= 10; ++j) {
        const double z = z_max * j / 10.0;
        double sum = 0.0, sq = 0.0;
        for (std::size_t i = 1; i < path.values.size(); ++i) {
            const double v = std::exp(-z * (path.values[i] - path.values[i - 1]));
            sum += v;
            sq += v * v;
        }
        const double m = sum / len;
        const double se = std::sqrt((sq / len - m * m) / len);
        const double target = laplace_nts(p, LaplaceQuery(z, 1.0));
        INFO("z=", z, " emp=", m, " target=", target);
        CHECK(std::abs(m - target) < 3.0 * se + 1e-12);
    }
}

TEST_CASE("driftless nts has zero mean at t = 1") {
    const ModelParams p(0.8, 1.0, 0.0);
    const TimeGrid grid = TimeGrid::uniform(1.0, 2);
    const std::size_t n = 10000;
    double sum = 0, sq = 0;
    for (std::size_t i = 0; i < n; ++i) {
        RandomStream s(11, i);
        const double v = simulate_nts(p, grid, s).values.back();
        sum += v;
        sq += v * v;
    }
    const double m = sum / n;
    CHECK(std::abs(m) < 3.0 * std::sqrt((sq / n - m * m) / n));
}

TEST_CASE("subdiffusive path is exactly flat where the clock is flat") {
    const ModelParams p(0.8, 1.0, 1.0);
    const TimeGrid grid = TimeGrid::uniform(10.0, 501);
    const double delta = 0.002;
    RandomStream stream(12, 0);
    const SamplePath y = simulate_subdiffusive(p, grid, delta, stream);
    // Rebuild the internal clock from the same substream layout.
    RandomStream clock = RandomStream(12, 0).substream(0);
    const SamplePath s = simulate_inverse_subordinator(p.temper(), grid, delta, clock);
    std::size_t n_flat = 0;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (s.values[k] == s.values[k - 1]) {
            CHECK(y.values[k] == y.values[k - 1]);  // exact, not approximate
            ++n_flat;
        } else {
            CHECK(y.values[k] != y.values[k - 1]);
        }
    }
    CHECK(n_flat > 0);
}

TEST_CASE("driftless subdiffusive mean is zero") {
    const ModelParams p(0.4, 0.2, 0.0);
    const TimeGrid grid = TimeGrid::uniform(1.0, 11);
    const std::size_t n = 1000;
    double sum = 0, sq = 0;
    for (std::size_t i = 0; i < n; ++i) {
        RandomStream s(13, i);
        const double v = simulate_subdiffusive(p, grid, 0.01, s).values.back();
        sum += v;
        sq += v * v;
    }
    const double m = sum / n;
    CHECK(std::abs(m) < 3.0 * std::sqrt((sq / n - m * m) / n));
}

TEST_CASE("ensemble driver: degenerate case, determinism, serial equivalence") {
    const ModelParams p(0.7, 1.5, 0.3);
    const TimeGrid grid = TimeGrid::uniform(2.0, 41);

    for (EnsembleKind kind : {EnsembleKind::subordinator, EnsembleKind::abm,
                              EnsembleKind::nts, EnsembleKind::subdiffusive,
                              EnsembleKind::inverse_subordinator}) {
        // n_paths = 1 equals the corresponding single-stream call.
        const TrajectoryEnsemble one = simulate_ensemble(kind, p, grid, 1, 99);
        RandomStream s(99, 0);
        SamplePath direct = [&] {
            const double d = grid.min_step() / 10.0;
            switch (kind) {
                case EnsembleKind::subordinator:
                    return simulate_subordinator(p.temper(), grid, s);
                case EnsembleKind::inverse_subordinator:
                    return simulate_inverse_subordinator(p.temper(), grid, d, s);
                case EnsembleKind::abm: return simulate_abm(p.beta, grid, s);
                case EnsembleKind::nts: return simulate_nts(p, grid, s);
                default: return simulate_subdiffusive(p, grid, d, s);
            }
        }();
        CHECK(one.paths[0].values == direct.values);

        // Parallel and serial drivers agree bitwise; repeated runs agree bitwise.
        const TrajectoryEnsemble par = simulate_ensemble(kind, p, grid, 16, 77);
        const TrajectoryEnsemble ser = simulate_ensemble_serial(kind, p, grid, 16, 77);
        const TrajectoryEnsemble rep = simulate_ensemble(kind, p, grid, 16, 77);
        REQUIRE(par.paths.size() == 16);
        for (std::size_t i = 0; i < 16; ++i) {
            CHECK(par.paths[i].values == ser.paths[i].values);
            CHECK(par.paths[i].values == rep.paths[i].values);
        }
    }
}

TEST_CASE("ensemble validation errors") {
    const ModelParams p(0.5, 1.0, 0.0);
    const TimeGrid grid = TimeGrid::uniform(1.0, 3);
    CHECK_THROWS_AS(simulate_ensemble(EnsembleKind::abm, p, grid, 0, 1), DomainError);
    RandomStream s(1, 0);
    CHECK_THROWS_AS(simulate_inverse_subordinator(p.temper(), grid, 0.0, s),
                    DomainError);
}
