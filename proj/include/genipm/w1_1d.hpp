#pragma once

#include "genipm/measure.hpp"

namespace genipm {

// Exact 1-D Wasserstein-1 distance: the area between the two CDFs,
// integrated in closed form over the sorted breakpoints.
double w1_exact_1d(const DiscreteMeasure& P, const DiscreteMeasure& Q);

// Same, against the uniform law on [lo, hi]. Piecewise-linear CDF segments
// are split at their sign change, so the result is exact.
double w1_exact_1d_vs_interval(const DiscreteMeasure& P, double lo, double hi);

// W1 between the uniform laws on [lo1, hi1] and [lo2, hi2], in closed form
// via the quantile coupling.
double w1_interval_interval(double lo1, double hi1, double lo2, double hi2);

}  // namespace genipm
