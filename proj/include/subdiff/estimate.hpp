#pragma once

#include <cstdint>
#include <vector>

#include "subdiff/params.hpp"

namespace subdiff {

// Increments dy_i = y_{i+1} - y_i at a constant sampling step.
struct IncrementSeries {
    std::vector<double> values;
    double dt = 1.0;

    static IncrementSeries from_series(const std::vector<double>& y, double dt);
};

// phi(z) = (1/n) sum e^{-z dy_i}; negative z evaluates the exponential-moment
// side. Throws OverflowGuard when the largest exponent would overflow (rescale
// the z-grid instead).
double empirical_laplace(const IncrementSeries& inc, double z);

struct NtsEstimationConfig {
    std::size_t n_z = 50;          // z-grid points per side (grid is two-sided)
    double z_max_override = 0.0;   // > 0 forces the symmetric |z| bound
    std::size_t min_length = 30;   // estimation floor on increment count
    int max_iterations = 500;      // simplex iterations per start
    double tol = 1e-10;            // objective spread tolerance
};

struct SubdiffEstimationConfig {
    double epsilon = 0.0;          // constancy threshold (0 = exact repeats)
    // Tail window: largest 80% of waiting times. Grid sampling discretizes the
    // waiting times to multiples of dt, so a narrow window leaves too few
    // distinct survival points and the three-parameter log fit degenerates.
    double tail_fraction = 0.8;
    std::size_t min_periods = 10;  // fewer waiting times => NoConstantPeriods
};

struct EstimationReport {
    double alpha_hat = 0.0;
    double lambda_hat = 0.0;
    double beta_hat = 0.0;
    double objective = 0.0;        // final least-squares value (nts only)
    std::vector<double> z_grid;    // fitting design actually used (nts)
    double tail_cutoff = 0.0;      // tail window lower edge (subdiffusive)
    std::size_t n_waiting = 0;     // waiting times found (subdiffusive)
    int iterations = 0;
    int winning_start = -1;
};

// Empirical-Laplace-transform least squares for the NTS model.
EstimationReport estimate_nts(const IncrementSeries& inc,
                              const NtsEstimationConfig& cfg = {});

// Same optimizer fed an externally supplied transform on a fixed z-grid
// (noiseless identifiability path; also reused internally).
EstimationReport estimate_nts_from_transform(const std::vector<double>& phi,
                                             const std::vector<double>& z_grid,
                                             double dt,
                                             const NtsEstimationConfig& cfg = {});

// Waiting-time / motion decomposition of a subdiffusive series.
struct Decomposition {
    std::vector<double> waiting_times;  // run length * dt for maximal runs >= 2 points
    std::vector<double> motion_series;  // constant runs collapsed to single points
    double tolerance = 0.0;
    double dt = 1.0;
    std::size_t total_points = 0;  // original series length (round-trip check)
};

Decomposition decompose_constant_periods(const std::vector<double>& series, double dt,
                                         double epsilon, std::size_t min_periods = 10);

struct TailFit {
    double alpha_hat;
    double lambda_hat;
    double tail_cutoff;   // smallest waiting time inside the fit window
    std::size_t n_tail;   // points used
};

// Linear least squares of log empirical survival on (-x, -log x, 1) over the
// right tail of the waiting-time sample.
TailFit fit_waiting_tail(const std::vector<double>& waiting_times,
                         double tail_fraction = 0.3);

EstimationReport estimate_subdiffusive(const std::vector<double>& series, double dt,
                                       const SubdiffEstimationConfig& cfg = {});
EstimationReport estimate_subdiffusive_from_decomposition(
    const Decomposition& d, const SubdiffEstimationConfig& cfg = {});

struct QuantileSummary {
    double min, q10, q25, median, q75, q90, max;
};

struct ValidationSummary {
    QuantileSummary alpha, lambda, beta;
    std::size_t n_requested = 0;
    std::size_t n_failed = 0;  // failed fits recorded and excluded
};

enum class EstimatorKind { nts, subdiffusive };

// Monte Carlo validation harness: simulate n_reps trajectories of path_len
// increments at the true parameters, re-estimate each, summarize quantiles.
ValidationSummary validate_estimator(EstimatorKind kind, const ModelParams& truth,
                                     std::size_t n_reps, std::size_t path_len,
                                     std::uint64_t master_seed);
ValidationSummary validate_estimator_serial(EstimatorKind kind, const ModelParams& truth,
                                            std::size_t n_reps, std::size_t path_len,
                                            std::uint64_t master_seed);

QuantileSummary summarize_quantiles(std::vector<double> values);

}  // namespace subdiff
