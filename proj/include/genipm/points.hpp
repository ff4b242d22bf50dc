#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace genipm {

/// Point in the latent cube [0,1]^d.
struct LatentPoint {
    std::vector<double> coords;

    std::size_t dim() const { return coords.size(); }
    double operator[](std::size_t i) const { return coords[i]; }
};

/// Point in the ambient space R^D. Inliers live near [0,1]^D, outliers
/// anywhere finite.
struct AmbientPoint {
    std::vector<double> coords;

    std::size_t dim() const { return coords.size(); }
    double operator[](std::size_t i) const { return coords[i]; }
};

inline bool in_unit_cube(const std::vector<double>& v) {
    for (double c : v)
        if (!(c >= 0.0 && c <= 1.0)) return false;
    return true;
}

inline bool all_finite(const std::vector<double>& v) {
    for (double c : v)
        if (!std::isfinite(c)) return false;
    return true;
}

inline double euclidean_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("euclidean_distance: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace genipm
