#pragma once

#include <cstddef>
#include <vector>

#include "genipm/points.hpp"

namespace genipm {

// Finitely supported probability measure on R^D.
// Weights are strictly positive and sum to 1 within 1e-12.
class DiscreteMeasure {
  public:
    DiscreteMeasure(std::vector<AmbientPoint> points, std::vector<double> weights);

    // uniform weights 1/n on the given atoms
    static DiscreteMeasure empirical(std::vector<AmbientPoint> points);

    std::size_t size() const { return points_.size(); }
    std::size_t dim() const { return points_.empty() ? 0 : points_[0].dim(); }
    const std::vector<AmbientPoint>& points() const { return points_; }
    const std::vector<double>& weights() const { return weights_; }
    const AmbientPoint& point(std::size_t i) const { return points_[i]; }
    double weight(std::size_t i) const { return weights_[i]; }

    double mean_coordinate(std::size_t axis) const;

  private:
    std::vector<AmbientPoint> points_;
    std::vector<double> weights_;
};

}  // namespace genipm
