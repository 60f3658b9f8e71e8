#include "subdiff/sampling.hpp"

#include <cmath>
#include <numbers>

namespace subdiff {

double sample_standard_gaussian(RandomStream& stream) {
    const double u1 = stream.uniform();
    const double u2 = stream.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double sample_positive_stable(RandomStream& stream, const StableParams& p) {
    const double a = p.alpha;
    const double w = std::numbers::pi * stream.uniform();  // (0, pi)
    const double e = stream.exponential();
    const double value = std::sin(a * w) / std::pow(std::sin(w), 1.0 / a) *
                         std::pow(std::sin((1.0 - a) * w) / e, (1.0 - a) / a);
    return value;
}

namespace {

// Untempered piece with exponential-tilting rejection; call only with
// lambda^alpha * dt <= 1 so the expected trial count is at most e.
double tempered_piece(RandomStream& stream, const TemperParams& p, double dt) {
    const double scale = std::pow(dt, 1.0 / p.alpha);
    for (;;) {
        const double x = scale * sample_positive_stable(stream, p.stable());
        if (p.lambda == 0.0) return x;
        if (stream.uniform() < std::exp(-p.lambda * x)) return x;
    }
}

}  // namespace

double sample_tempered_stable_increment(RandomStream& stream, const TemperParams& p,
                                        double dt) {
    if (!(dt > 0.0)) throw DomainError("sample_tempered_stable_increment: dt must be > 0");
    const double rate = std::pow(p.lambda, p.alpha) * dt;
    if (rate <= 1.0) return tempered_piece(stream, p, dt);
    // Infinite divisibility: sum of n pieces with lambda^alpha*(dt/n) <= 1.
    const auto n = static_cast<std::size_t>(std::ceil(rate));
    const double sub_dt = dt / static_cast<double>(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += tempered_piece(stream, p, sub_dt);
    return total;
}

}  // namespace subdiff
