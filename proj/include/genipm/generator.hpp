#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "genipm/points.hpp"
#include "genipm/rng.hpp"

namespace genipm {

/// Built-in generator families.
///
/// Parameter vector layout, per family:
///   Affine          [c_1..c_D, A(0,0)..A(0,d-1), ..., A(D-1,d-1)]   g(u) = c + A u
///   Constant        [c_1..c_D]                                      g(u) = c
///   CoordinateTrig  [a_1..a_D, b_1..b_D, k(0,0)..k(D-1,d-1)]
///                     g_j(u) = a_j + b_j cos(pi <k_j, u>) / (pi |k_j|_1)^alpha,
///                     k integer-valued, stored as doubles
///   Tabulated       [v_1 .. v_{D*m^d}]  m uniform knots per axis (m inferred
///                     from the length), multilinear interpolation; for output
///                     j the block is a d-dim array with the last axis fastest
///   LowerBoundContam1  [eps]    g(u) = ((1-eps) u_1) e_1
///   LowerBoundContam2  [eps]    g(u) = ((1-eps) u_1 + eps) e_1
///   LowerBoundNoise1   [sigma]  g(u) = 0
///   LowerBoundNoise2   [sigma]  g(u) = sigma e_1
enum class Family {
    Affine,
    CoordinateTrig,
    Constant,
    Tabulated,
    LowerBoundContam1,
    LowerBoundContam2,
    LowerBoundNoise1,
    LowerBoundNoise2,
};

const char* family_name(Family f);
Family family_from_name(const std::string& name);

/// Declared smoothness class membership: every partial derivative of order
/// <= alpha is bounded by lip in sup norm (checked at construction where the
/// family allows it; lip >= 1 always).
struct Smoothness {
    int alpha = 1;
    double lip = 1.0;
};

/// Immutable description of a map g: [0,1]^d -> [0,1]^D. Construction
/// validates that the parameters keep the range inside [0,1]^D and that the
/// declared smoothness is honest for the family formulas; instances are safe
/// to share across threads.
class GeneratorSpec {
public:
    GeneratorSpec(Family family, std::size_t d, std::size_t D, std::vector<double> params,
                  Smoothness smoothness);

    static GeneratorSpec identity(std::size_t d);
    static GeneratorSpec affine(std::size_t d, std::size_t D, std::vector<double> intercept,
                                std::vector<double> matrix_row_major, Smoothness s = {1, 1.0});
    static GeneratorSpec constant(std::size_t d, std::vector<double> value);
    /// Trig family instance with frequencies chosen so the range constraint
    /// holds at the requested (alpha, L); alpha >= 1, L >= 1.
    static GeneratorSpec coordinate_trig(std::size_t d, std::size_t D, int alpha, double L);
    static GeneratorSpec tabulated(std::size_t d, std::size_t D, std::vector<double> values,
                                   double L);
    static GeneratorSpec lowerbound_contam(int which, std::size_t D, double eps);
    static GeneratorSpec lowerbound_noise(int which, std::size_t D, double sigma);

    Family family() const { return family_; }
    std::size_t latent_dim() const { return d_; }
    std::size_t ambient_dim() const { return D_; }
    const std::vector<double>& params() const { return params_; }
    const Smoothness& smoothness() const { return smooth_; }

    /// g(u). Throws std::domain_error if u leaves [0,1]^d.
    AmbientPoint evaluate(const LatentPoint& u) const;

    /// Certified upper bound on the Euclidean Lipschitz constant.
    double lipschitz_upper_bound() const;

    /// Exact E[g(U)_1] under U ~ U[0,1]^d (closed form per family).
    double first_coord_mean() const;

    /// For Affine with D = 1 and nonnegative slope sum the pushforward law is
    /// an interval; true when the exact 1-D CDF path applies.
    bool pushforward_is_interval() const;
    /// The interval [lo, hi] of the pushforward law (requires the above).
    void pushforward_interval(double& lo, double& hi) const;

    std::string to_json_string() const;
    static GeneratorSpec parse_json(const std::string& text);

private:
    void validate() const;

    Family family_;
    std::size_t d_, D_;
    std::vector<double> params_;
    Smoothness smooth_;
};

/// Pushforward sample: evaluate applied pointwise to sample_latent(n, d).
std::vector<AmbientPoint> pushforward_sample(const GeneratorSpec& g, std::size_t n, Stream& stream);

/// Monte Carlo lower bound on the Lipschitz constant: max ratio over random
/// probe pairs plus, per probe, a local partner at distance <= 0.01 to catch
/// local steepness. Never exceeds the true constant (up to 1e-9 rounding).
double estimate_lipschitz(const GeneratorSpec& g, std::size_t probes, Stream& stream);

}  // namespace genipm
