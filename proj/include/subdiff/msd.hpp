#pragma once

#include <cstddef>
#include <vector>

#include "subdiff/params.hpp"

namespace subdiff {

// Lag-indexed ensemble second-moment curve.
struct MsdCurve {
    std::vector<double> lags;    // strictly increasing, > 0
    std::vector<double> values;  // >= 0
    std::size_t n_paths = 0;
};

enum class MsdModel { second_order_polynomial, two_regime_power };

struct MsdFit {
    MsdModel model_kind;
    // second_order_polynomial: value = a*t^2 + b*t
    double a = 0.0, b = 0.0;
    // two_regime_power: c_small*t^p_small below split_lag, c_large*t^p_large above
    double c_small = 0.0, p_small = 0.0;
    double c_large = 0.0, p_large = 0.0;
    double split_lag = 0.0;
    double residual = 0.0;  // sum of squared (relative / log) residuals
    // two_regime_power only: per-window log-space residuals (sum = residual)
    double residual_small = 0.0, residual_large = 0.0;
};

// Regime windows for the two-regime power fit: lowest and highest quartile of
// the log-lag range (middle band excluded), each widened to at least 6 points.
// Indices refer to the positive (lag, value) subsequence in order.
struct RegimeWindows {
    std::vector<std::size_t> small_idx, large_idx;
    double split_lag = 0.0;  // geometric midpoint of the excluded band
};
RegimeWindows regime_windows(const MsdCurve& curve);

// Ensemble second moment at each lag t_k - t_0, averaged over paths.
// A single-path ensemble is accepted but flagged (warned_single_path).
MsdCurve empirical_msd(const TrajectoryEnsemble& e);
MsdCurve empirical_msd(const TrajectoryEnsemble& e, bool& warned_single_path);

// Least-squares fit of the requested model. The polynomial model is fitted in
// relative residuals (so small lags are not drowned by the large-lag scale);
// the two-regime power model is a pair of log-log linear fits over the lower
// and upper quartile of the lag range.
MsdFit fit_msd(const MsdCurve& curve, MsdModel model_kind);

double msd_fit_eval(const MsdFit& fit, double lag);

}  // namespace subdiff
