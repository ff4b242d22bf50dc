#pragma once

#include <vector>

#include "genipm/points.hpp"
#include "genipm/rng.hpp"

namespace genipm {

/// n iid points uniform on [0,1]^d, drawn from the given stream.
/// Throws std::invalid_argument if n or d is zero.
std::vector<LatentPoint> sample_latent(std::size_t n, std::size_t d, Stream& stream);

/// Uniform direction on the unit sphere of R^D (normalized Gaussian vector,
/// exactly rotation invariant). For D = 1 the result is -1 or +1.
std::vector<double> sample_sphere_direction(std::size_t D, Stream& stream);

}  // namespace genipm
