#pragma once

#include <functional>

namespace subdiff {

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_depth = 48;
};

// Adaptive Gauss-Kronrod (G7,K15) on a finite interval. Throws QuadratureError
// if the tolerance cannot be met within the depth budget.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt = {});

// Integral over (0, inf) via the substitution x = scale*t/(1-t). The scale
// should match the length scale of the integrand's mass; adaptivity covers the
// rest. Integrand values are truncated to zero once they underflow.
double integrate_zero_inf(const std::function<double(double)>& f, double scale = 1.0,
                          const QuadratureOptions& opt = {});

}  // namespace subdiff
