#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "genipm/generator.hpp"
#include "genipm/points.hpp"
#include "genipm/rng.hpp"

namespace genipm {

// How inlier noise xi is drawn. All models keep E||xi||_2 <= sigma.
//   SphereFixed    sigma * (uniform direction), ||xi|| = sigma exactly
//   GaussianScaled sigma * Z / E||Z||, Z standard normal in R^D
//   Uniform1d      sigma * U[0,1] on the first coordinate only
enum class NoiseModel { SphereFixed, GaussianScaled, Uniform1d };

enum class OutlierPolicy { Corner, HuberMixture, CustomPoints };

// 1-D uniform law embedded on the first ambient coordinate (others zero).
struct Uniform1dLaw {
    double lo = 0.0;
    double hi = 1.0;
};

using ContaminatingLaw = std::variant<Uniform1dLaw, GeneratorSpec>;

// Adversary hook: sees the realized inliers, returns the outlier block.
using OutlierAdversary = std::function<std::vector<AmbientPoint>(
    const std::vector<AmbientPoint>& inliers, std::size_t count, Stream&)>;

struct DataSpec {
    GeneratorSpec generator;
    double sigma = 0.0;
    double epsilon = 0.0;
    NoiseModel noise_model = NoiseModel::SphereFixed;
    OutlierPolicy outlier_policy = OutlierPolicy::Corner;
    std::optional<ContaminatingLaw> mixture_law;  // used when outlier_policy == HuberMixture
    OutlierAdversary custom_adversary;            // used when outlier_policy == CustomPoints
};

struct Dataset {
    std::vector<AmbientPoint> points;
    std::vector<bool> inlier;          // the set I, aligned with points
    std::vector<LatentPoint> latents;  // one entry per inlier, in point order
    std::vector<double> noise_norm;    // ||xi_i||_2 per inlier, same order as latents

    std::size_t n() const { return points.size(); }
    std::size_t dim() const { return points.empty() ? 0 : points[0].dim(); }
    std::size_t inlier_count() const;
};

// Noisy pushforward sample with floor(epsilon*n) adversarial outliers appended.
Dataset synthesize(const DataSpec& spec, std::size_t n, Stream& stream);

enum class HuberKind { HC, HDC };

// HDC: exactly floor(eps*n) draws from Q, placed last.
// HC: each index independently contaminated with probability eps.
Dataset synthesize_huber(HuberKind kind, const GeneratorSpec& g, const ContaminatingLaw& Q,
                         double epsilon, std::size_t n, Stream& stream);

// The hard lower-bound instance: g(u) = (2u+1)/4 coordinatewise in D dimensions,
// one-sided uniform noise of magnitude sigma on the first coordinate, and
// floor(eps*n) points pinned at the all-ones corner. Requires sigma <= 1/2.
Dataset corner_instance(double sigma, double epsilon, std::size_t n, std::size_t D,
                        Stream& stream);

struct DatasetMeta {
    std::size_t n = 0;
    std::size_t D = 0;
    double sigma = 0.0;
    double epsilon = 0.0;
    std::uint64_t seed = 0;
};

void write_dataset_csv(const Dataset& ds, const DatasetMeta& meta, std::ostream& out);
Dataset read_dataset_csv(std::istream& in, DatasetMeta* meta_out = nullptr);

}  // namespace genipm
