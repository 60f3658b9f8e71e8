#include "subdiff/analytics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "subdiff/special.hpp"

namespace subdiff {

namespace {

constexpr double kPi = std::numbers::pi;

// log a(phi) of the Zolotarev representation,
//   a(phi) = sin(a phi)^{a/(1-a)} sin((1-a)phi) sin(phi)^{-1/(1-a)}.
double log_kernel(double alpha, double phi) {
    return (alpha * std::log(std::sin(alpha * phi))) / (1.0 - alpha) +
           std::log(std::sin((1.0 - alpha) * phi)) -
           std::log(std::sin(phi)) / (1.0 - alpha);
}

// Convergent large-x series (alpha < 1):
//   f(x) = (1/pi) sum_{k>=1} (-1)^{k+1} Gamma(k a + 1)/k! sin(pi k a) x^{-k a - 1}.
// Successive-term ratio is bounded by x^{-a}, so it is geometric once
// x^a is moderately large.
double log_stable_pdf_series(double alpha, double x) {
    const double lx = std::log(x);
    double sum = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double lt = std::lgamma(alpha * k + 1.0) - std::lgamma(k + 1.0) -
                          (alpha * k + 1.0) * lx;
        const double term = ((k & 1) ? 1.0 : -1.0) * std::sin(kPi * k * alpha) *
                            ((lt < -745.0) ? 0.0 : std::exp(lt));
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    if (sum <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(sum / kPi);
}

// log f_{U(1)}(x). The integrand is shifted by the kernel minimum a(0+) so the
// integral stays representable for small x, where the density is
// exp(-c a_min)-small. Far in the right tail the Zolotarev peak crowds the
// phi = pi endpoint beyond what bisection can resolve; the series takes over.
double log_stable_pdf(double alpha, double x) {
    if (!(x > 0.0)) throw DomainError("stable_pdf: x must be > 0");
    if (std::pow(x, alpha) >= 30.0) return log_stable_pdf_series(alpha, x);
    const double c = std::pow(x, -alpha / (1.0 - alpha));
    const double la_min = alpha * std::log(alpha) / (1.0 - alpha) + std::log(1.0 - alpha);
    const double a_min = std::exp(la_min);
    auto integrand = [alpha, c, a_min](double phi) {
        const double la = log_kernel(alpha, phi);
        if (la > 700.0) return 0.0;  // kernel blows up near phi = pi; cut off
        const double e = la - c * (std::exp(la) - a_min);
        return (e < -745.0) ? 0.0 : std::exp(e);
    };
    QuadratureOptions opt;
    opt.rel_tol = 1e-11;
    const double shifted = integrate(integrand, 0.0, kPi, opt);
    if (shifted <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(alpha / (1.0 - alpha)) - std::log(x) / (1.0 - alpha) -
           std::log(kPi) + std::log(shifted) - c * a_min;
}

double log_tempered_stable_pdf(const TemperParams& p, double t, double x) {
    if (!(t > 0.0)) throw DomainError("tempered_stable_pdf: t must be > 0");
    if (!(x > 0.0)) throw DomainError("tempered_stable_pdf: x must be > 0");
    const double lam_a = std::pow(p.lambda, p.alpha);
    return -p.lambda * x + lam_a * t - std::log(t) / p.alpha +
           log_stable_pdf(p.alpha, x * std::pow(t, -1.0 / p.alpha));
}

double exp_or_zero(double e) { return (e < -745.0) ? 0.0 : std::exp(e); }

}  // namespace

double laplace_subordinator(const TemperParams& p, const LaplaceQuery& q) {
    const double exponent =
        q.t * (std::pow(p.lambda, p.alpha) - std::pow(p.lambda + q.z, p.alpha));
    return std::exp(exponent);
}

double laplace_nts_domain_bound(double lambda, double beta) {
    return beta + std::sqrt(beta * beta + 2.0 * lambda);
}

double laplace_nts(const ModelParams& p, const LaplaceQuery& q) {
    const double arg = p.lambda + p.beta * q.z - 0.5 * q.z * q.z;
    if (arg < 0.0)
        throw DomainError("laplace_nts: lambda + beta z - z^2/2 < 0 at z = " +
                          std::to_string(q.z));
    const double exponent = q.t * (std::pow(p.lambda, p.alpha) - std::pow(arg, p.alpha));
    return std::exp(exponent);
}

double mean_nts(const ModelParams& p, double t) {
    if (p.lambda == 0.0) throw DomainError("mean_nts: lambda must be > 0");
    return p.beta * t * p.alpha * std::pow(p.lambda, p.alpha - 1.0);
}

double cov_nts(const ModelParams& p, double t, double s) {
    if (p.lambda == 0.0) throw DomainError("cov_nts: lambda must be > 0");
    const double a = p.alpha, l = p.lambda, b = p.beta;
    return std::min(s, t) *
           (a * std::pow(l, a - 1.0) + b * b * a * (1.0 - a) * std::pow(l, a - 2.0));
}

double msd_nts(const ModelParams& p, double t) {
    const double m = mean_nts(p, t);
    return m * m + cov_nts(p, t, t);
}

double survival_ts_asymptotic(const TemperParams& p, double t, double x) {
    if (!(x > 0.0) || !(t > 0.0))
        throw DomainError("survival_ts_asymptotic: need x > 0 and t > 0");
    return std::exp(-p.lambda * x + std::pow(p.lambda, p.alpha) * t) *
           std::pow(t / x, p.alpha);
}

double stable_pdf(const StableParams& p, double x) {
    return exp_or_zero(log_stable_pdf(p.alpha, x));
}

double tempered_stable_pdf(const TemperParams& p, double t, double x) {
    return exp_or_zero(log_tempered_stable_pdf(p, t, x));
}

double inverse_subordinator_pdf(const TemperParams& p, double tau, double x) {
    if (!(tau > 0.0)) throw DomainError("inverse_subordinator_pdf: tau must be > 0");
    if (!(x > 0.0)) throw DomainError("inverse_subordinator_pdf: x must be > 0");
    const double a = p.alpha, l = p.lambda;
    const double term1 =
        tau / (a * x) * exp_or_zero(log_tempered_stable_pdf(p, x, tau));
    if (l == 0.0) return term1;
    const double lam_a = std::pow(l, a);
    auto integrand = [&](double u) {
        const double ft = exp_or_zero(log_tempered_stable_pdf(p, x, u));
        return (l * u / (a * x) - lam_a) * ft;
    };
    QuadratureOptions opt;
    opt.rel_tol = 1e-9;
    return term1 + integrate(integrand, 0.0, tau, opt);
}

double laplace_inverse_subordinator(const TemperParams& p, double tau, double z) {
    if (!(z >= 0.0)) throw DomainError("laplace_inverse_subordinator: z must be >= 0");
    const double scale = std::max(mean_of_s(p, tau), 1e-12);
    QuadratureOptions opt;
    opt.rel_tol = 1e-8;
    return integrate_zero_inf(
        [&](double x) { return std::exp(-z * x) * inverse_subordinator_pdf(p, tau, x); },
        scale, opt);
}

double laplace_ys(const ModelParams& p, double tau, double z) {
    const double c = p.beta * z - 0.5 * z * z;
    const double scale = std::max(mean_of_s(p.temper(), tau), 1e-12);
    auto g = [&](double x) {
        return std::exp(-c * x) * inverse_subordinator_pdf(p.temper(), tau, x);
    };
    if (c < 0.0) {
        // Growth of e^{|c|x} must lose against the superexponential S-tail.
        const double peak = std::max({g(scale), g(2.0 * scale), g(5.0 * scale)});
        if (!(g(40.0 * scale) <= 1e-8 * peak))
            throw DomainError("laplace_ys: transform integral diverges at z = " +
                              std::to_string(z));
    }
    QuadratureOptions opt;
    opt.rel_tol = 1e-8;
    return integrate_zero_inf(g, scale, opt);
}

double nts_pdf(const ModelParams& p, double t, double x) {
    const TemperParams tp = p.temper();
    auto integrand = [&](double v) {
        if (v <= 0.0) return 0.0;
        const double g = -0.5 * (x - p.beta * v) * (x - p.beta * v) / v -
                         0.5 * std::log(2.0 * kPi * v);
        const double e = g + log_tempered_stable_pdf(tp, t, v);
        return exp_or_zero(e);
    };
    const double scale = (p.lambda > 0.0)
                             ? p.alpha * std::pow(p.lambda, p.alpha - 1.0) * t
                             : std::pow(t, 1.0 / p.alpha);
    QuadratureOptions opt;
    opt.rel_tol = 1e-9;
    return integrate_zero_inf(integrand, std::max(scale, 1e-12), opt);
}

double ys_pdf(const ModelParams& p, double tau, double x) {
    const TemperParams tp = p.temper();
    auto integrand = [&](double v) {
        if (v <= 0.0) return 0.0;
        const double g = std::exp(-0.5 * (x - p.beta * v) * (x - p.beta * v) / v) /
                         std::sqrt(2.0 * kPi * v);
        return g * inverse_subordinator_pdf(tp, tau, v);
    };
    const double scale = std::max(mean_of_s(tp, tau), 1e-12);
    QuadratureOptions opt;
    opt.rel_tol = 1e-7;
    return integrate_zero_inf(integrand, scale, opt);
}

double mean_of_s(const TemperParams& p, double tau) {
    if (!(tau >= 0.0)) throw DomainError("mean_of_s: tau must be >= 0");
    if (tau == 0.0) return 0.0;
    // Substitution v = u^alpha removes the u^{alpha-1} endpoint singularity.
    auto integrand = [&](double v) {
        return ml_exp_scaled(p.alpha, p.lambda * std::pow(v, 1.0 / p.alpha));
    };
    QuadratureOptions opt;
    opt.rel_tol = 1e-10;
    return integrate(integrand, 0.0, std::pow(tau, p.alpha), opt) / p.alpha;
}

double mean_ys(const ModelParams& p, double tau) {
    return p.beta * mean_of_s(p.temper(), tau);
}

double second_moment_s(const TemperParams& p, double tau) {
    if (!(tau > 0.0)) throw DomainError("second_moment_s: tau must be > 0");
    const double scale = std::max(mean_of_s(p, tau), 1e-12);
    QuadratureOptions opt;
    opt.rel_tol = 1e-7;
    return integrate_zero_inf(
        [&](double x) { return x * x * inverse_subordinator_pdf(p, tau, x); }, scale,
        opt);
}

double msd_ys(const ModelParams& p, double tau) {
    const TemperParams tp = p.temper();
    const double mean = mean_of_s(tp, tau);
    if (p.beta == 0.0) return mean;
    return p.beta * p.beta * second_moment_s(tp, tau) + mean;
}

}  // namespace subdiff
