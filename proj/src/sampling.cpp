#include "genipm/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace genipm {

std::vector<LatentPoint> sample_latent(std::size_t n, std::size_t d, Stream& stream) {
    if (n == 0 || d == 0) throw std::invalid_argument("sample_latent: n and d must be positive");
    std::vector<LatentPoint> out(n);
    for (auto& p : out) {
        p.coords.resize(d);
        for (auto& c : p.coords) c = stream.next_unit();
    }
    return out;
}

std::vector<double> sample_sphere_direction(std::size_t D, Stream& stream) {
    if (D == 0) throw std::invalid_argument("sample_sphere_direction: D must be positive");
    std::vector<double> v(D);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (auto& c : v) {
            c = stream.next_gaussian();
            norm2 += c * c;
        }
    } while (norm2 < 1e-24);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : v) c *= inv;
    return v;
}

}  // namespace genipm
