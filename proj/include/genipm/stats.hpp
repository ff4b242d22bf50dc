#pragma once

#include <cstddef>
#include <vector>

namespace genipm {

struct MeanSe {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t count = 0;
};

/// Sample mean and standard error of the mean (unbiased variance).
MeanSe mean_se(const std::vector<double>& xs);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double slope_std_error = 0.0;
};

/// Ordinary least squares y ~ intercept + slope * x. Needs >= 2 points;
/// slope_std_error needs >= 3 (0 otherwise). r_squared is 1 for a perfect fit,
/// also when the ys are constant.
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

/// One-sample Kolmogorov-Smirnov statistic against U[0,1].
/// Input need not be sorted; values outside [0,1] are legal (mass beyond the
/// interval counts against the fit).
double ks_statistic_uniform(std::vector<double> sample);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b);

/// Upper quantile of the asymptotic Kolmogorov distribution:
/// the lambda with Q(lambda) = alpha where Q(l) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 l^2).
double kolmogorov_critical(double alpha);

/// Critical values for the KS tests at level alpha (asymptotic approximation,
/// intended for n in the thousands and beyond).
double ks_critical_one_sample(std::size_t n, double alpha);
double ks_critical_two_sample(std::size_t n, std::size_t m, double alpha);

}  // namespace genipm
