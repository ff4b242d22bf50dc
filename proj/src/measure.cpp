#include "genipm/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace genipm {

DiscreteMeasure::DiscreteMeasure(std::vector<AmbientPoint> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
    if (points_.empty()) throw std::invalid_argument("measure: no atoms");
    if (points_.size() != weights_.size())
        throw std::invalid_argument("measure: atom/weight count mismatch");
    const std::size_t D = points_[0].dim();
    if (D == 0) throw std::invalid_argument("measure: zero-dimensional atoms");
    double total = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (points_[i].dim() != D) throw std::invalid_argument("measure: mixed atom dimensions");
        if (!all_finite(points_[i].coords)) throw std::invalid_argument("measure: non-finite atom");
        if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i]))
            throw std::invalid_argument("measure: weights must be strictly positive");
        total += weights_[i];
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("measure: weights do not sum to 1");
}

DiscreteMeasure DiscreteMeasure::empirical(std::vector<AmbientPoint> points) {
    const std::size_t n = points.size();
    if (n == 0) throw std::invalid_argument("measure: no atoms");
    std::vector<double> w(n, 1.0 / static_cast<double>(n));
    // force exact unit total regardless of n
    double partial = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) partial += w[i];
    w[n - 1] = 1.0 - partial;
    return DiscreteMeasure(std::move(points), std::move(w));
}

double DiscreteMeasure::mean_coordinate(std::size_t axis) const {
    if (axis >= dim()) throw std::out_of_range("measure: axis out of range");
    double s = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) s += weights_[i] * points_[i].coords[axis];
    return s;
}

}  // namespace genipm
