#pragma once

#include <cstdint>

#include "subdiff/params.hpp"
#include "subdiff/rng.hpp"

namespace subdiff {

// Tempered stable subordinator T on the grid; T = 0 at a grid start of 0,
// otherwise the first point carries the increment from time 0.
SamplePath simulate_subordinator(const TemperParams& params, const TimeGrid& grid,
                                 RandomStream& stream);

// First-passage inverse: S(tau_k) = delta * min{n >= 1 : T(n delta) > tau_k},
// computed from one internal T-path. Approximation bias <= delta.
SamplePath simulate_inverse_subordinator(const TemperParams& params,
                                         const TimeGrid& tau_grid, double delta,
                                         RandomStream& stream);

// As above, but also returns the internal T-path values T(delta), T(2 delta), ...
// up to the last step consumed (for first-passage consistency checks).
struct InverseSubordinatorDetail {
    SamplePath s;
    std::vector<double> t_internal;  // t_internal[n-1] = T(n delta)
    double delta;
};
InverseSubordinatorDetail simulate_inverse_subordinator_detail(
    const TemperParams& params, const TimeGrid& tau_grid, double delta,
    RandomStream& stream);

// Arithmetic Brownian motion X(t) = beta t + B(t), X at grid start 0 is 0.
SamplePath simulate_abm(double beta, const TimeGrid& grid, RandomStream& stream);

// Normal tempered stable Y_T: subordinator increments from one substream,
// Gaussian draws from another, dY = N sqrt(dT) + beta dT.
SamplePath simulate_nts(const ModelParams& params, const TimeGrid& grid,
                        RandomStream& stream);

// Subdiffusive Y_S(tau) = beta S(tau) + B(S(tau)); Brownian evaluation via
// independent Gaussian increments over dS, so Y_S is exactly flat where S is.
SamplePath simulate_subdiffusive(const ModelParams& params, const TimeGrid& tau_grid,
                                 double delta, RandomStream& stream);

enum class EnsembleKind { subordinator, inverse_subordinator, abm, nts, subdiffusive };

// Batch driver: n_paths independent trajectories, stream_index = 0..n_paths-1.
// Identical output for any worker count. delta applies to the inverse /
// subdiffusive kinds only; delta <= 0 selects the default grid_min_step/10.
TrajectoryEnsemble simulate_ensemble(EnsembleKind kind, const ModelParams& params,
                                     const TimeGrid& grid, std::size_t n_paths,
                                     std::uint64_t master_seed, double delta = 0.0);

// Serial reference implementation of the same contract, kept for testing and
// benchmarking the parallel driver.
TrajectoryEnsemble simulate_ensemble_serial(EnsembleKind kind, const ModelParams& params,
                                            const TimeGrid& grid, std::size_t n_paths,
                                            std::uint64_t master_seed,
                                            double delta = 0.0);

}  // namespace subdiff
