// Acceptance gate: one line per criterion, exit code = number of failures.
// Every tolerance is pinned here, next to the check that uses it.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "subdiff/analytics.hpp"
#include "subdiff/estimate.hpp"
#include "subdiff/msd.hpp"
#include "subdiff/pipeline.hpp"
#include "subdiff/quadrature.hpp"
#include "subdiff/simulate.hpp"
#include "subdiff/special.hpp"

using namespace subdiff;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s — %s\n", criterion, pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

bool within_rel(double hat, double truth, double tol) {
    return std::abs(hat - truth) <= tol * std::abs(truth);
}

bool covered(const QuantileSummary& q, double truth) {
    return q.q10 <= truth && truth <= q.q90;
}

// OLS slope of log(value) on log(lag) over all positive pairs.
double loglog_slope(const std::vector<double>& lags, const std::vector<double>& vals) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < lags.size(); ++i) {
        if (!(lags[i] > 0.0) || !(vals[i] > 0.0)) continue;
        const double lx = std::log(lags[i]), ly = std::log(vals[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    const double d = n * sxx - sx * sx;
    return (n * sxy - sx * sy) / d;
}

// --------------------------------------------------------------------------
// 1. 1000 NTS trajectories x 1000 steps at (0.26, 6, 0.11): truth inside
//    [q10, q90] per parameter and each median within 15% relative error.
void criterion1() {
    const ModelParams truth(0.26, 6.0, 0.11);
    const ValidationSummary s =
        validate_estimator(EstimatorKind::nts, truth, 1000, 1000, 101);
    const bool cov = covered(s.alpha, truth.alpha) && covered(s.lambda, truth.lambda) &&
                     covered(s.beta, truth.beta);
    const bool med = within_rel(s.alpha.median, truth.alpha, 0.15) &&
                     within_rel(s.lambda.median, truth.lambda, 0.15) &&
                     within_rel(s.beta.median, truth.beta, 0.15);
    report(1, cov && med && s.n_failed == 0,
           fmt("nts medians a=%.4f l=%.4f b=%.4f (truth 0.26/6/0.11), "
               "q10-q90 a=[%.3f,%.3f] l=[%.3f,%.3f] b=[%.3f,%.3f], failed=%zu",
               s.alpha.median, s.lambda.median, s.beta.median, s.alpha.q10, s.alpha.q90,
               s.lambda.q10, s.lambda.q90, s.beta.q10, s.beta.q90, s.n_failed));
}

// --------------------------------------------------------------------------
// 2. 1000 Y_S trajectories x 1000 steps at (0.4, 0.2, 0): truth inside
//    [q10, q90] per parameter; |median beta| <= 2 x replication SE of the
//    median (SE from the normal-quantile spread estimate).
void criterion2() {
    const ModelParams truth(0.4, 0.2, 0.0);
    const ValidationSummary s =
        validate_estimator(EstimatorKind::subdiffusive, truth, 1000, 1000, 202);
    const bool cov = covered(s.alpha, truth.alpha) && covered(s.lambda, truth.lambda) &&
                     covered(s.beta, 0.0);
    const double n_ok = static_cast<double>(s.n_requested - s.n_failed);
    const double sigma = (s.beta.q90 - s.beta.q10) / 2.5631;  // normal q10-q90 span
    const double se_median = 1.2533 * sigma / std::sqrt(n_ok);
    const bool beta_ok = std::abs(s.beta.median) <= 2.0 * se_median;
    report(2, cov && beta_ok,
           fmt("subdiffusive a med=%.4f [%.3f,%.3f] l med=%.4f [%.3f,%.3f] "
               "beta med=%.5f (2*SE=%.5f), failed=%zu",
               s.alpha.median, s.alpha.q10, s.alpha.q90, s.lambda.median, s.lambda.q10,
               s.lambda.q90, s.beta.median, 2.0 * se_median, s.n_failed));
}

// --------------------------------------------------------------------------
// 3. Ensemble MSD of 1000 NTS paths at (0.8, 1, 0.01) fits a t^2 + b t with
//    both coefficients within 10% of the mean^2 + covariance decomposition.
void criterion3() {
    const ModelParams p(0.8, 1.0, 0.01);
    const double m1 = mean_nts(p, 1.0);       // drift coefficient beta a l^{a-1}
    const double a_true = m1 * m1;
    const double b_true = cov_nts(p, 1.0, 1.0);
    const TrajectoryEnsemble e =
        simulate_ensemble(EnsembleKind::nts, p, TimeGrid::uniform(5.0e4, 1001), 1000, 303);
    const MsdFit fit = fit_msd(empirical_msd(e), MsdModel::second_order_polynomial);
    const bool ok = within_rel(fit.a, a_true, 0.10) && within_rel(fit.b, b_true, 0.10);
    report(3, ok,
           fmt("msd poly fit a=%.6g (true %.6g), b=%.6g (true %.6g)", fit.a, a_true,
               fit.b, b_true));
}

// --------------------------------------------------------------------------
// 4. Ensemble MSD of 1000 Y_S paths at (0.8, 1, 0.01): small-lag log-log slope
//    within 0.1 of the slope of the analytic msd_ys at the same lags; the
//    beta = 0 control's large-lag slope within 0.1 of 1.
void criterion4() {
    const ModelParams p(0.8, 1.0, 0.01);
    const TimeGrid small_grid = TimeGrid::log_spaced(1.0e-3, 1.0e-2, 24);
    const TrajectoryEnsemble es = simulate_ensemble(EnsembleKind::subdiffusive, p,
                                                    small_grid, 1000, 404, 1.0e-5);
    const MsdCurve cs = empirical_msd(es);
    std::vector<double> ana(cs.lags.size());
    for (std::size_t i = 0; i < cs.lags.size(); ++i) ana[i] = msd_ys(p, cs.lags[i]);
    const double slope_emp = loglog_slope(cs.lags, cs.values);
    const double slope_ana = loglog_slope(cs.lags, ana);

    const ModelParams p0(0.8, 1.0, 0.0);
    const TrajectoryEnsemble el = simulate_ensemble(
        EnsembleKind::subdiffusive, p0, TimeGrid::uniform(1000.0, 101), 1000, 405, 0.1);
    const MsdCurve cl = empirical_msd(el);
    const double slope_large = loglog_slope(cl.lags, cl.values);

    const bool ok = std::abs(slope_emp - slope_ana) <= 0.1 &&
                    std::abs(slope_large - 1.0) <= 0.1;
    report(4, ok,
           fmt("small-lag slope %.4f vs analytic %.4f; large-lag slope %.4f vs 1",
               slope_emp, slope_ana, slope_large));
}

// --------------------------------------------------------------------------
// 5. Empirical Laplace transform of 1e5 simulated increments within 3 Monte
//    Carlo SE of the analytic transform on a 20-point z-grid, for two NTS
//    parameter sets and the lambda = 0 pure-stable subordinator limit.
void criterion5() {
    struct Case {
        EnsembleKind kind;
        ModelParams p;
        double z_max;
        std::uint64_t seed;
    };
    // z capped at 0.45 x domain bound so e^{-2z dy} keeps a finite variance.
    const std::vector<Case> cases{
        {EnsembleKind::nts, ModelParams(0.26, 6.0, 0.11),
         0.45 * laplace_nts_domain_bound(6.0, 0.11), 501},
        {EnsembleKind::nts, ModelParams(0.8, 1.0, 0.01),
         0.45 * laplace_nts_domain_bound(1.0, 0.01), 502},
        {EnsembleKind::subordinator, ModelParams(0.7, 0.0, 0.0), 2.0, 503},
    };
    bool all_ok = true;
    std::string detail;
    for (const Case& c : cases) {
        const TrajectoryEnsemble e = simulate_ensemble(
            c.kind, c.p, TimeGrid::uniform(1000.0, 1001), 100, c.seed);
        std::vector<double> inc;
        inc.reserve(100000);
        for (const auto& path : e.paths)
            for (std::size_t k = 1; k < path.values.size(); ++k)
                inc.push_back(path.values[k] - path.values[k - 1]);
        const double n = static_cast<double>(inc.size());
        double worst = 0.0;
        for (int i = 1; i <= 20; ++i) {
            const double z = c.z_max * i / 20.0;
            double m1 = 0.0, m2 = 0.0;
            for (double dy : inc) {
                const double v = std::exp(-z * dy);
                m1 += v;
                m2 += v * v;
            }
            m1 /= n;
            m2 /= n;
            const double se = std::sqrt((m2 - m1 * m1) / n);
            const double ana =
                (c.kind == EnsembleKind::nts)
                    ? laplace_nts(c.p, LaplaceQuery(z, 1.0))
                    : laplace_subordinator(c.p.temper(), LaplaceQuery(z, 1.0));
            worst = std::max(worst, std::abs(m1 - ana) / se);
        }
        if (worst > 3.0) all_ok = false;
        detail += fmt("(a=%.2f l=%.2f max|dev|/SE=%.2f) ", c.p.alpha, c.p.lambda, worst);
    }
    report(5, all_ok, detail + "limit 3");
}

// --------------------------------------------------------------------------
// 6. Density oracles: stable_pdf(1/2, x) vs the closed-form Levy density to
//    1e-6 relative on [0.1, 50]; inverse pdf integrates to 1 within 1e-4 and
//    matches a 1e5-path histogram within 5% per equal-mass bin over the
//    central 90% of the mass.
void criterion6() {
    const StableParams half(0.5);
    double worst_rel = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double x =
            std::exp(std::log(0.1) + (std::log(50.0) - std::log(0.1)) * i / 200.0);
        const double levy =
            0.5 / std::sqrt(M_PI) * std::pow(x, -1.5) * std::exp(-0.25 / x);
        worst_rel = std::max(worst_rel, std::abs(stable_pdf(half, x) - levy) / levy);
    }
    const bool stable_ok = worst_rel <= 1.0e-6;

    const TemperParams p(0.6, 1.0);
    const double tau = 1.0;
    QuadratureOptions opt;
    opt.rel_tol = 1.0e-7;
    auto pdf = [&](double x) { return inverse_subordinator_pdf(p, tau, x); };
    const double norm = integrate_zero_inf(pdf, mean_of_s(p, tau), opt);
    const bool norm_ok = std::abs(norm - 1.0) <= 1.0e-4;

    // Equal-mass bin edges of the central 90% by bisection on the CDF.
    auto cdf = [&](double x) { return x <= 0.0 ? 0.0 : integrate(pdf, 0.0, x, opt); };
    std::vector<double> edges(11);
    for (int i = 0; i <= 10; ++i) {
        const double target = 0.05 + 0.09 * i;
        double lo = 0.0, hi = 50.0;
        for (int it = 0; it < 40; ++it) {
            const double mid = 0.5 * (lo + hi);
            (cdf(mid) < target ? lo : hi) = mid;
        }
        edges[i] = 0.5 * (lo + hi);
    }
    const std::size_t n_paths = 100000;
    const TrajectoryEnsemble e =
        simulate_ensemble(EnsembleKind::inverse_subordinator,
                          ModelParams(0.6, 1.0, 0.0), TimeGrid::uniform(tau, 2),
                          n_paths, 606, 0.002);
    std::vector<std::size_t> counts(10, 0);
    for (const auto& path : e.paths) {
        const double v = path.values[1];
        for (int b = 0; b < 10; ++b)
            if (v >= edges[b] && v < edges[b + 1]) ++counts[b];
    }
    double worst_hist = 0.0;
    for (int b = 0; b < 10; ++b) {
        const double emp = static_cast<double>(counts[b]) / n_paths;
        worst_hist = std::max(worst_hist, std::abs(emp - 0.09) / 0.09);
    }
    const bool hist_ok = worst_hist <= 0.05;
    report(6, stable_ok && norm_ok && hist_ok,
           fmt("stable rel err %.2e (limit 1e-6); f_S norm %.6f; histogram max "
               "bin dev %.3f (limit 0.05)",
               worst_rel, norm, worst_hist));
}

// --------------------------------------------------------------------------
// 7. Mittag-Leffler: E_{1,1} = exp to 1e-9; 200-term long-double series oracle
//    to 1e-8 on a 20-point (a,b,x) grid; <S(tau)> reaches its large-tau linear
//    asymptote within 10% at tau = 100/lambda.
void criterion7() {
    double worst_exp = 0.0;
    for (double x : {-3.0, -1.0, 0.0, 0.5, 1.0, 2.0, 3.0})
        worst_exp = std::max(worst_exp, std::abs(mittag_leffler(1.0, 1.0, x) -
                                                 std::exp(x)) /
                                            std::exp(x));
    const bool exp_ok = worst_exp <= 1.0e-9;

    auto oracle = [](double a, double b, double x) {
        long double sum = 0.0L;
        for (int k = 0; k < 200; ++k)
            sum += powl(static_cast<long double>(x), k) /
                   expl(lgammal(static_cast<long double>(a) * k + b));
        return static_cast<double>(sum);
    };
    double worst_ml = 0.0;
    int points = 0;
    for (double a : {0.3, 0.5, 0.8, 1.2}) {
        for (double b : {0.5, 1.0}) {
            for (double x : {-2.0, 0.7, 2.5}) {
                if (points >= 20) break;
                const double ref = oracle(a, b, x);
                worst_ml = std::max(worst_ml, std::abs(mittag_leffler(a, b, x) - ref) /
                                                  std::abs(ref));
                ++points;
            }
        }
    }
    const bool ml_ok = worst_ml <= 1.0e-8;

    double worst_mean = 0.0;
    for (const TemperParams& p :
         {TemperParams(0.5, 0.25), TemperParams(0.4, 0.2), TemperParams(0.8, 1.0)}) {
        const double tau = 100.0 / p.lambda;
        const double asym = tau / (p.alpha * std::pow(p.lambda, p.alpha - 1.0));
        worst_mean = std::max(worst_mean, std::abs(mean_of_s(p, tau) / asym - 1.0));
    }
    const bool mean_ok = worst_mean <= 0.10;
    report(7, exp_ok && ml_ok && mean_ok,
           fmt("E_{1,1} rel err %.2e; oracle rel err %.2e (20 pts); mean_of_s "
               "asymptote dev %.3f",
               worst_exp, worst_ml, worst_mean));
}

// --------------------------------------------------------------------------
// 8. Noiseless identifiability: both estimators recover exact parameters to
//    1e-4 relative from analytic / synthetic forward inputs.
void criterion8() {
    const ModelParams truth(0.26, 6.0, 0.11);
    std::vector<double> z_grid, phi;
    for (int i = 1; i <= 50; ++i) {
        z_grid.push_back(2.0 * i / 50.0);
        phi.push_back(laplace_nts(truth, LaplaceQuery(z_grid.back(), 1.0)));
    }
    const EstimationReport nts = estimate_nts_from_transform(phi, z_grid, 1.0);
    const bool nts_ok = within_rel(nts.alpha_hat, truth.alpha, 1.0e-4) &&
                        within_rel(nts.lambda_hat, truth.lambda, 1.0e-4) &&
                        within_rel(nts.beta_hat, truth.beta, 1.0e-4);

    // Waiting times placed exactly on the survival model C e^{-l x} x^{-a}
    // over the fit window; motion series with exact unit-step drift.
    const double alpha = 0.4, lambda = 0.2, C = 0.5, beta = 0.3;
    const std::size_t n = 100;
    auto invert = [&](double s) {
        double lo = 1e-6, hi = 1e6;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double v = C * std::exp(-lambda * mid) * std::pow(mid, -alpha);
            (v > s ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    Decomposition d;
    d.dt = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double surv = static_cast<double>(n - 1 - i) / n;
        if (i >= 65)
            d.waiting_times.push_back(invert(std::max(surv, 0.5 / n)));
        else
            d.waiting_times.push_back(1.0e-3 * static_cast<double>(i + 1));
    }
    for (int k = 0; k < 20; ++k) d.motion_series.push_back(beta * k);
    SubdiffEstimationConfig cfg;
    cfg.tail_fraction = 0.3;
    const EstimationReport sub = estimate_subdiffusive_from_decomposition(d, cfg);
    const bool sub_ok = within_rel(sub.alpha_hat, alpha, 1.0e-4) &&
                        within_rel(sub.lambda_hat, lambda, 1.0e-4) &&
                        within_rel(sub.beta_hat, beta, 1.0e-4);
    report(8, nts_ok && sub_ok,
           fmt("nts (%.6f, %.6f, %.6f); subdiffusive (%.6f, %.6f, %.6f)",
               nts.alpha_hat, nts.lambda_hat, nts.beta_hat, sub.alpha_hat,
               sub.lambda_hat, sub.beta_hat));
}

// --------------------------------------------------------------------------
// 9. Determinism: repeated simulate / validate CLI invocations with the same
//    seed are byte-identical, independent of the OpenMP thread count.
std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "<unreadable:" + path + ">";
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion9(const std::string& cli) {
    struct Run {
        std::string label;
        std::string args;
    };
    const std::vector<Run> runs{
        {"simulate-nts", "simulate --model nts --alpha 0.26 --lambda 6 --beta 0.11 "
                         "--t-max 100 --n-points 101 --n-paths 8 --seed 5"},
        {"simulate-subdiff", "simulate --model subdiff --alpha 0.4 --lambda 0.2 "
                             "--beta 0 --t-max 100 --n-points 101 --n-paths 8 --seed 5"},
        {"validate-nts", "validate --model nts --alpha 0.5 --lambda 2 --beta 0.3 "
                         "--reps 16 --len 300 --seed 9"},
    };
    bool all_ok = true;
    std::string detail;
    for (const Run& r : runs) {
        std::vector<std::string> outputs;
        for (const char* threads : {"1", "4", "4"}) {
            const std::string out =
                "/tmp/subdiff_accept_" + r.label + "_" + std::to_string(outputs.size());
            const std::string cmd = "OMP_NUM_THREADS=" + std::string(threads) + " " +
                                    cli + " " + r.args + " --out " + out;
            if (std::system(cmd.c_str()) != 0) {
                all_ok = false;
                detail += r.label + " command failed; ";
            }
            outputs.push_back(slurp(out));
            std::remove(out.c_str());
        }
        const bool same = outputs[0] == outputs[1] && outputs[1] == outputs[2];
        if (!same) {
            all_ok = false;
            detail += r.label + " differs across runs/threads; ";
        }
    }
    if (detail.empty()) detail = "simulate x2 and validate byte-identical for 1 and 4 threads";
    report(9, all_ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "./subdiff";
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9(cli);
    std::printf("%s (%d/9 passed)\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
                9 - g_failures);
    return g_failures;
}
