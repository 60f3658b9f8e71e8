// Timing comparison of the OpenMP ensemble driver against the serial
// reference. Also asserts the two produce bitwise-identical trajectories, so
// the benchmark doubles as an equivalence check at production scale.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "subdiff/estimate.hpp"
#include "subdiff/simulate.hpp"

using namespace subdiff;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool identical(const TrajectoryEnsemble& a, const TrajectoryEnsemble& b) {
    if (a.paths.size() != b.paths.size()) return false;
    for (std::size_t i = 0; i < a.paths.size(); ++i)
        if (a.paths[i].values != b.paths[i].values) return false;
    return true;
}

void bench_kind(EnsembleKind kind, const char* name, const ModelParams& p,
                const TimeGrid& grid, std::size_t n_paths, double delta) {
    const auto t0 = Clock::now();
    const TrajectoryEnsemble serial =
        simulate_ensemble_serial(kind, p, grid, n_paths, 42, delta);
    const double t_serial = seconds_since(t0);

    const auto t1 = Clock::now();
    const TrajectoryEnsemble parallel =
        simulate_ensemble(kind, p, grid, n_paths, 42, delta);
    const double t_parallel = seconds_since(t1);

    if (!identical(serial, parallel)) {
        std::printf("%-22s MISMATCH between serial and parallel output\n", name);
        std::exit(1);
    }
    std::printf("%-22s serial %7.3f s   parallel %7.3f s   speedup %.2fx\n", name,
                t_serial, t_parallel, t_serial / t_parallel);
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t n_paths = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200;
#ifdef _OPENMP
    std::printf("OpenMP max threads: %d, paths per ensemble: %zu\n",
                omp_get_max_threads(), n_paths);
#else
    std::printf("OpenMP disabled, paths per ensemble: %zu\n", n_paths);
#endif

    const ModelParams nts(0.26, 6.0, 0.11);
    const ModelParams sub(0.4, 0.2, 0.0);
    const TimeGrid grid = TimeGrid::uniform(1000.0, 1001);

    bench_kind(EnsembleKind::subordinator, "subordinator", nts, grid, n_paths, 0.0);
    bench_kind(EnsembleKind::nts, "nts", nts, grid, n_paths, 0.0);
    bench_kind(EnsembleKind::inverse_subordinator, "inverse subordinator", sub, grid,
               n_paths, 0.1);
    bench_kind(EnsembleKind::subdiffusive, "subdiffusive", sub, grid, n_paths, 0.1);

    // Validation harness: simulation + estimation per replication.
    {
        const auto t0 = Clock::now();
        validate_estimator_serial(EstimatorKind::nts, nts, 50, 1000, 42);
        const double t_serial = seconds_since(t0);
        const auto t1 = Clock::now();
        validate_estimator(EstimatorKind::nts, nts, 50, 1000, 42);
        const double t_parallel = seconds_since(t1);
        std::printf("%-22s serial %7.3f s   parallel %7.3f s   speedup %.2fx\n",
                    "validate nts (50x)", t_serial, t_parallel,
                    t_serial / t_parallel);
    }
    return 0;
}
