#pragma once

namespace subdiff {

// Generalized Mittag-Leffler function E_{a,b}(x) = sum_k x^k / Gamma(a k + b),
// a > 0, b > 0. Power series for x >= -5 (all-positive terms when x >= 0);
// algebraic asymptotic expansion for large negative arguments.
double mittag_leffler(double a, double b, double x);

// e^{-y} * E_{a,a}(y^a) for y >= 0, computed without overflowing the
// exponential growth of E. This is the integrand kernel of the inverse
// subordinator mean.
double ml_exp_scaled(double a, double y);

}  // namespace subdiff
