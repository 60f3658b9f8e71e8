#pragma once

#include "subdiff/params.hpp"
#include "subdiff/rng.hpp"

namespace subdiff {

// One N(0,1) draw (Box-Muller, one variate per call).
double sample_standard_gaussian(RandomStream& stream);

// One draw of the one-sided stable variable U(1) with <e^{-zU(1)}> = e^{-z^alpha},
// via the Kanter construction.
double sample_positive_stable(RandomStream& stream, const StableParams& p);

// One increment T(dt) of the tempered stable subordinator: scaled stable draw
// accepted with probability e^{-lambda x}. When lambda^alpha*dt > 1 the
// increment is split into sub-increments so the expected number of rejection
// trials per piece stays bounded by e.
double sample_tempered_stable_increment(RandomStream& stream, const TemperParams& p,
                                        double dt);

}  // namespace subdiff
