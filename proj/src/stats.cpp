#include "genipm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace genipm {

MeanSe mean_se(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("mean_se: empty sample");
    MeanSe r;
    r.count = xs.size();
    double s = 0.0;
    for (double x : xs) s += x;
    r.mean = s / static_cast<double>(xs.size());
    if (xs.size() >= 2) {
        double ss = 0.0;
        for (double x : xs) {
            const double d = x - r.mean;
            ss += d * d;
        }
        const double var = ss / static_cast<double>(xs.size() - 1);
        r.std_error = std::sqrt(var / static_cast<double>(xs.size()));
    }
    return r;
}

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("least_squares: length mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("least_squares: need at least 2 points");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("least_squares: x values are all equal");

    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;

    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += e * e;
    }
    f.r_squared = (syy == 0.0) ? 1.0 : 1.0 - ss_res / syy;
    if (n >= 3) f.slope_std_error = std::sqrt(ss_res / static_cast<double>(n - 2) / sxx);
    return f;
}

double ks_statistic_uniform(std::vector<double> sample) {
    if (sample.empty()) throw std::invalid_argument("ks_statistic_uniform: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = std::clamp(sample[i], 0.0, 1.0);  // CDF of U[0,1]
        d = std::max(d, static_cast<double>(i + 1) / n - f);
        d = std::max(d, f - static_cast<double>(i) / n);
    }
    return d;
}

double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double t = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= t) ++i;
        while (j < b.size() && b[j] <= t) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double kolmogorov_critical(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("kolmogorov_critical: alpha in (0,1)");
    const auto survival = [](double l) {
        double s = 0.0;
        for (int j = 1; j <= 100; ++j) {
            const double term = 2.0 * ((j % 2) ? 1.0 : -1.0) * std::exp(-2.0 * j * j * l * l);
            s += term;
            if (std::abs(term) < 1e-16) break;
        }
        return s;
    };
    double lo = 0.1, hi = 5.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (survival(mid) > alpha)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double ks_critical_one_sample(std::size_t n, double alpha) {
    return kolmogorov_critical(alpha) / std::sqrt(static_cast<double>(n));
}

double ks_critical_two_sample(std::size_t n, std::size_t m, double alpha) {
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    return kolmogorov_critical(alpha) * std::sqrt((nn + mm) / (nn * mm));
}

}  // namespace genipm
