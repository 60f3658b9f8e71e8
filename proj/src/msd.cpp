#include "subdiff/msd.hpp"

#include <cmath>
#include <string>

namespace subdiff {

MsdCurve empirical_msd(const TrajectoryEnsemble& e) {
    bool ignored = false;
    return empirical_msd(e, ignored);
}

MsdCurve empirical_msd(const TrajectoryEnsemble& e, bool& warned_single_path) {
    if (e.paths.empty()) throw ShapeError("empirical_msd: empty ensemble");
    for (const auto& p : e.paths)
        if (!(p.grid == e.shared_grid))
            throw GridError("empirical_msd: path grid differs from shared grid");
    warned_single_path = e.paths.size() < 2;

    const auto& t = e.shared_grid.points();
    MsdCurve curve;
    curve.n_paths = e.paths.size();
    curve.lags.reserve(t.size() - 1);
    curve.values.reserve(t.size() - 1);
    for (std::size_t k = 1; k < t.size(); ++k) {
        double acc = 0.0;
        for (const auto& p : e.paths) {
            const double d = p.values[k] - p.values[0];
            acc += d * d;
        }
        curve.lags.push_back(t[k] - t[0]);
        curve.values.push_back(acc / static_cast<double>(e.paths.size()));
    }
    return curve;
}

namespace {

struct LinFit {
    double slope, intercept, residual;
};

// Ordinary least squares y = slope*x + intercept.
LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) throw FitError("linear_fit: degenerate design");
    LinFit f{};
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy * sxx - sx * sxy) / det;
    f.residual = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f.slope * x[i] - f.intercept;
        f.residual += r * r;
    }
    return f;
}

MsdFit fit_poly2(const MsdCurve& curve) {
    // Relative least squares on a*t^2 + b*t: regress 1 on (t^2/m, t/m).
    std::vector<double> u, w, rhs;
    for (std::size_t i = 0; i < curve.lags.size(); ++i) {
        const double t = curve.lags[i], m = curve.values[i];
        if (!(t > 0.0) || !(m > 0.0)) continue;
        u.push_back(t * t / m);
        w.push_back(t / m);
    }
    if (u.size() < 4) throw FitError("fit_msd: need >= 4 positive lags for polynomial");
    double suu = 0, sww = 0, suw = 0, su = 0, sw = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        suu += u[i] * u[i];
        sww += w[i] * w[i];
        suw += u[i] * w[i];
        su += u[i];
        sw += w[i];
    }
    const double det = suu * sww - suw * suw;
    if (det == 0.0) throw FitError("fit_msd: degenerate polynomial design");
    double a = (su * sww - sw * suw) / det;
    double b = (sw * suu - su * suw) / det;
    // Coefficients of an MSD are non-negative; clamp and refit the free one.
    if (a < 0.0) {
        a = 0.0;
        b = (sww > 0.0) ? sw / sww : 0.0;
    } else if (b < 0.0) {
        b = 0.0;
        a = (suu > 0.0) ? su / suu : 0.0;
    }
    MsdFit fit;
    fit.model_kind = MsdModel::second_order_polynomial;
    fit.a = a;
    fit.b = b;
    fit.residual = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double r = 1.0 - a * u[i] - b * w[i];
        fit.residual += r * r;
    }
    return fit;
}

double clamp_exponent(double p) { return std::min(std::max(p, 1e-6), 2.5); }

// Positive (lag, value) subsequence in log coordinates.
void log_points(const MsdCurve& curve, std::vector<double>& lt, std::vector<double>& lm) {
    for (std::size_t i = 0; i < curve.lags.size(); ++i) {
        if (curve.lags[i] > 0.0 && curve.values[i] > 0.0) {
            lt.push_back(std::log(curve.lags[i]));
            lm.push_back(std::log(curve.values[i]));
        }
    }
}

}  // namespace

RegimeWindows regime_windows(const MsdCurve& curve) {
    std::vector<double> lt, lm;
    log_points(curve, lt, lm);
    const std::size_t n = lt.size();
    if (n < 12)
        throw FitError("fit_msd: need >= 6 lags per regime for two-regime power");
    const double span = lt.back() - lt.front();
    const double lo_edge = lt.front() + 0.25 * span;
    const double hi_edge = lt.back() - 0.25 * span;
    RegimeWindows w;
    for (std::size_t i = 0; i < n; ++i) {
        if (lt[i] <= lo_edge) w.small_idx.push_back(i);
        if (lt[i] >= hi_edge) w.large_idx.push_back(i);
    }
    // A uniform grid crowds the log-range quartiles; widen to 6 points minimum.
    while (w.small_idx.size() < 6) w.small_idx.push_back(w.small_idx.back() + 1);
    while (w.large_idx.size() < 6)
        w.large_idx.insert(w.large_idx.begin(), w.large_idx.front() - 1);
    w.split_lag = std::exp(0.5 * (lt[w.small_idx.back()] + lt[w.large_idx.front()]));
    return w;
}

namespace {

MsdFit fit_power2(const MsdCurve& curve) {
    std::vector<double> lt, lm;
    log_points(curve, lt, lm);
    const RegimeWindows win = regime_windows(curve);
    std::vector<double> xs, ys, xl, yl;
    for (std::size_t i : win.small_idx) {
        xs.push_back(lt[i]);
        ys.push_back(lm[i]);
    }
    for (std::size_t i : win.large_idx) {
        xl.push_back(lt[i]);
        yl.push_back(lm[i]);
    }
    const LinFit fs = linear_fit(xs, ys);
    const LinFit fl = linear_fit(xl, yl);
    MsdFit fit;
    fit.model_kind = MsdModel::two_regime_power;
    fit.p_small = clamp_exponent(fs.slope);
    fit.c_small = std::exp(fs.intercept);
    fit.p_large = clamp_exponent(fl.slope);
    fit.c_large = std::exp(fl.intercept);
    fit.split_lag = win.split_lag;
    fit.residual_small = fs.residual;
    fit.residual_large = fl.residual;
    fit.residual = fs.residual + fl.residual;
    return fit;
}

}  // namespace

MsdFit fit_msd(const MsdCurve& curve, MsdModel model_kind) {
    if (curve.lags.size() != curve.values.size())
        throw ShapeError("fit_msd: lags/values length mismatch");
    bool all_zero = true;
    for (double v : curve.values)
        if (v != 0.0) all_zero = false;
    if (all_zero) throw FitError("fit_msd: all-zero curve");
    return (model_kind == MsdModel::second_order_polynomial) ? fit_poly2(curve)
                                                             : fit_power2(curve);
}

double msd_fit_eval(const MsdFit& fit, double lag) {
    if (fit.model_kind == MsdModel::second_order_polynomial)
        return fit.a * lag * lag + fit.b * lag;
    return (lag < fit.split_lag) ? fit.c_small * std::pow(lag, fit.p_small)
                                 : fit.c_large * std::pow(lag, fit.p_large);
}

}  // namespace subdiff
