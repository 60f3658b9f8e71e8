#pragma once

#include "subdiff/params.hpp"
#include "subdiff/quadrature.hpp"

namespace subdiff {

struct LaplaceQuery {
    double z;  // transform argument, >= 0
    double t;  // process time, >= 0

    LaplaceQuery(double z_, double t_) : z(z_), t(t_) {
        if (!(z >= 0.0)) throw DomainError("LaplaceQuery: z must be >= 0");
        if (!(t >= 0.0)) throw DomainError("LaplaceQuery: t must be >= 0");
    }
};

// <e^{-z T(t)}> = exp{t(lambda^a - (lambda+z)^a)}.
double laplace_subordinator(const TemperParams& p, const LaplaceQuery& q);

// <e^{-z Y_T(t)}> = exp{t(lambda^a - (lambda + beta z - z^2/2)^a)}.
// Throws DomainError when lambda + beta z - z^2/2 < 0.
double laplace_nts(const ModelParams& p, const LaplaceQuery& q);

// Largest z with lambda + beta z - z^2/2 >= 0 (the transform's real domain).
double laplace_nts_domain_bound(double lambda, double beta);

// <Y_T(t)> = beta t a lambda^{a-1}; requires lambda > 0.
double mean_nts(const ModelParams& p, double t);

// cov(Y_T(t), Y_T(s)) = min(s,t)(a lambda^{a-1} + beta^2 a(1-a) lambda^{a-2}).
double cov_nts(const ModelParams& p, double t, double s);

// <Y_T^2(t)> = mean^2 + variance, a second-order polynomial in t.
double msd_nts(const ModelParams& p, double t);

// Right-tail approximant 1 - F_{T(t)}(x) ~ e^{-lambda x + lambda^a t} (t/x)^a.
double survival_ts_asymptotic(const TemperParams& p, double t, double x);

// One-sided stable density f_{U(1)}(x), Laplace transform e^{-z^a}, evaluated
// by adaptive quadrature of the Zolotarev integral representation.
double stable_pdf(const StableParams& p, double x);

// f_{T(t)}(x) = e^{-lambda x + lambda^a t} t^{-1/a} f_{U(1)}(x t^{-1/a}).
double tempered_stable_pdf(const TemperParams& p, double t, double x);

// Inverse subordinator density f_{S(tau)}(x).
double inverse_subordinator_pdf(const TemperParams& p, double tau, double x);

// <e^{-z S(tau)}> by quadrature of the density.
double laplace_inverse_subordinator(const TemperParams& p, double tau, double z);

// <e^{-z Y_S(tau)}> = int e^{-(beta z - z^2/2) x} f_{S(tau)}(x) dx.
// Throws DomainError when the integral diverges numerically.
double laplace_ys(const ModelParams& p, double tau, double z);

// Gaussian mixture densities of the two subordinated processes.
double nts_pdf(const ModelParams& p, double t, double x);
double ys_pdf(const ModelParams& p, double tau, double x);

// <S(tau)> = int_0^tau e^{-lambda u} u^{a-1} E_{a,a}((lambda u)^a) du.
double mean_of_s(const TemperParams& p, double tau);
double mean_ys(const ModelParams& p, double tau);

// <S^2(tau)> by quadrature; <Y_S^2(tau)> = beta^2 <S^2> + <S>.
double second_moment_s(const TemperParams& p, double tau);
double msd_ys(const ModelParams& p, double tau);

}  // namespace subdiff
