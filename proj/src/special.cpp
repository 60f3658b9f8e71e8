#include "subdiff/special.hpp"

#include <cmath>
#include <string>

#include "subdiff/errors.hpp"

namespace subdiff {

namespace {

// 1/Gamma(x), zero at the poles of Gamma.
double rgamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) return 0.0;
    if (x > 170.0) return 0.0;  // Gamma overflows double
    return 1.0 / std::tgamma(x);
}

double series(double a, double b, double x) {
    // Terms via exp(k ln|x| - lgamma(ak+b)); all positive for x >= 0.
    double sum = 0.0;
    const double lax = (x == 0.0) ? -1e308 : std::log(std::abs(x));
    const double peak = (x > 1.0) ? std::pow(x, 1.0 / a) : 1.0;
    for (int k = 0; k < 100000; ++k) {
        const double g = std::lgamma(a * k + b);
        const double lt = k * lax - g;
        double term = (lt < -745.0) ? 0.0 : std::exp(lt);
        if (x < 0.0 && (k & 1)) term = -term;
        sum += term;
        if (k > peak && std::abs(term) <= 1e-17 * (std::abs(sum) + 1e-300)) return sum;
    }
    throw ConvergenceError("mittag_leffler: series did not converge for x = " +
                           std::to_string(x));
}

double asymptotic_negative(double a, double b, double x) {
    // E_{a,b}(x) ~ -sum_{k>=1} x^{-k} / Gamma(b - a k), x -> -inf.
    double sum = 0.0;
    double prev = 1e308;
    for (int k = 1; k <= 60; ++k) {
        const double term = -std::pow(x, -static_cast<double>(k)) * rgamma(b - a * k);
        if (std::abs(term) > prev) break;  // optimal truncation
        sum += term;
        prev = std::abs(term);
    }
    return sum;
}

}  // namespace

double mittag_leffler(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw DomainError("mittag_leffler: need a > 0 and b > 0");
    if (x >= -20.0) return series(a, b, x);
    return asymptotic_negative(a, b, x);
}

double ml_exp_scaled(double a, double y) {
    if (!(y >= 0.0)) throw DomainError("ml_exp_scaled: y must be >= 0");
    if (y <= 600.0) return std::exp(-y) * mittag_leffler(a, a, std::pow(y, a));
    // Exponentially small corrections vanish under e^{-y}; leading term only.
    return std::pow(y, 1.0 - a) / a;
}

}  // namespace subdiff
