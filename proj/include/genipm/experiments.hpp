#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "genipm/contamination.hpp"
#include "genipm/generator.hpp"
#include "genipm/ipm.hpp"
#include "genipm/rng.hpp"

namespace genipm {

struct RatePoint {
    std::size_t n = 0;
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t reps = 0;
};

struct RateFit {
    double slope = 0.0;           // in log mean ~ intercept + slope * log n
    double intercept = 0.0;
    double r_squared = 0.0;
    double slope_std_error = 0.0;
    std::vector<RatePoint> grid;
};

// log-log least squares over the grid means (exposed for testing)
RateFit fit_rate(std::vector<RatePoint> grid);

// Mean metric distance between the empirical pushforward measure and the
// model law, per sample size, with a log-log rate fit.
//
// The reference is exact where possible: the closed-form CDF for 1-D interval
// pushforwards, the closed-form first-axis mean for the projection metric.
// Otherwise an independent pushforward sample stands in for the model law
// (equal size n for W1 so the matching stays quadratic-memory-feasible, 10n
// for dictionary metrics); the substituted reference changes constants, not
// the decay exponent.
//
// n_grid needs >= 4 increasing sizes, reps >= 30. Workers only change wall
// time, never results.
RateFit rate_study(const GeneratorSpec& g, const IpmSpec& metric,
                   const std::vector<std::size_t>& n_grid, std::size_t reps, SeedPolicy seed,
                   unsigned workers = 1);

struct SweepPoint {
    double value = 0.0;
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t reps = 0;
};

struct SweepResult {
    std::string param;  // "sigma" or "epsilon"
    std::vector<SweepPoint> rows;
    double slope = 0.0;  // in mean ~ intercept + slope * value
    double intercept = 0.0;
    double r_squared = 0.0;
    double slope_std_error = 0.0;
};

SweepResult fit_sweep(std::string param, std::vector<SweepPoint> rows);

// Mean metric distance between the noisy (outlier-free) empirical measure and
// the clean model law, per noise level. The grid must start at 0 and
// increase. Noise draws are shared across the grid within a replication, so
// curves are smooth in sigma (common random numbers).
SweepResult noise_sweep(const GeneratorSpec& g, const IpmSpec& metric,
                        const std::vector<double>& sigma_grid, std::size_t n, std::size_t reps,
                        SeedPolicy seed, NoiseModel noise = NoiseModel::Uniform1d,
                        unsigned workers = 1);

// Same, sweeping the outlier fraction at zero noise: floor(eps*n) points are
// pinned at the all-ones corner, the rest are clean pushforwards. Inlier
// draws are shared across the grid within a replication.
SweepResult contamination_sweep(const GeneratorSpec& g, const IpmSpec& metric,
                                const std::vector<double>& eps_grid, std::size_t n,
                                std::size_t reps, SeedPolicy seed, unsigned workers = 1);

struct LowerBoundRow {
    std::size_t n = 0;
    std::size_t reps = 0;
    double estimate = 0.0;   // Monte Carlo E | mean(U_1..U_n) - 1/2 |
    double std_error = 0.0;
    double threshold = 0.0;  // 0.105 / sqrt(n)
    double asymptote = 0.0;  // sqrt(2/pi) * sd(U) / sqrt(n)
    bool ok = false;         // estimate >= threshold
};

struct LowerBoundReport {
    std::vector<LowerBoundRow> rows;
    bool all_ok = false;
};

// Checks E|mean of n uniforms - 1/2| >= 0.105/sqrt(n) by Monte Carlo.
// Each size runs max(min_reps, 2e6/n) replications so that small n are
// resolved well past the third decimal.
LowerBoundReport lower_bound_check(const std::vector<std::size_t>& n_grid, std::size_t min_reps,
                                   SeedPolicy seed, unsigned workers = 1);

struct HuberReport {
    double epsilon = 0.0;
    std::size_t n = 0;
    double ks_two_sample = 0.0;  // between the two contaminated samples
    double ks_two_sample_critical = 0.0;
    double ks_one_sample_a = 0.0;  // each contaminated sample against U[0,1]
    double ks_one_sample_b = 0.0;
    double ks_one_sample_critical = 0.0;
    double projection_gap = 0.0;  // first-axis mean gap of the two clean laws
    double mc_error = 0.0;        // combined standard error of that gap
    bool ks_ok = false;           // all three KS tests non-rejecting at 1%
    bool gap_ok = false;          // projection_gap >= epsilon - 3 * mc_error
};

// The two-generator pair whose epsilon-contaminated mixtures coincide with
// U[0,1] exactly: contaminated samples must look identical (KS), while the
// clean laws stay a projection gap of epsilon apart.
HuberReport huber_indistinguishability_check(double epsilon, std::size_t n, SeedPolicy seed);

}  // namespace genipm
