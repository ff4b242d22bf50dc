#include "genipm/ipm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "genipm/assignment.hpp"
#include "genipm/sampling.hpp"
#include "genipm/stats.hpp"
#include "genipm/transport.hpp"
#include "genipm/w1_1d.hpp"

namespace genipm {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool uniform_weights(const DiscreteMeasure& P) {
    const double w0 = 1.0 / static_cast<double>(P.size());
    for (std::size_t i = 0; i < P.size(); ++i)
        if (std::abs(P.weight(i) - w0) > 1e-14) return false;
    return true;
}

// mean of phi over the measure with the argument clamped into the cube;
// phase(x) = pi * <k, clamp(x)>
template <typename Phi>
double clamped_mean(const DiscreteMeasure& P, const std::vector<int>& k, Phi phi) {
    double s = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i) {
        double phase = 0.0;
        const auto& c = P.point(i).coords;
        for (std::size_t a = 0; a < k.size(); ++a)
            phase += k[a] * std::clamp(c[a], 0.0, 1.0);
        s += P.weight(i) * phi(kPi * phase);
    }
    return s;
}

double clamped_axis_mean(const DiscreteMeasure& P, std::size_t axis) {
    double s = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i)
        s += P.weight(i) * std::clamp(P.point(i).coords[axis], 0.0, 1.0);
    return s;
}

}  // namespace

const char* ipm_kind_name(IpmKind k) {
    switch (k) {
        case IpmKind::W1Exact1d: return "w1-exact-1d";
        case IpmKind::W1Assignment: return "w1-assignment";
        case IpmKind::W1TransportLp: return "w1-transport-lp";
        case IpmKind::WalphaDictionary: return "walpha-dictionary";
        case IpmKind::ProjectionFirstAxis: return "projection-first-axis";
        case IpmKind::BruteLpOracle: return "brute-lp-oracle";
    }
    throw std::logic_error("ipm_kind_name: unknown kind");
}

IpmKind ipm_kind_from_name(const std::string& name) {
    if (name == "w1-exact-1d") return IpmKind::W1Exact1d;
    if (name == "w1-assignment") return IpmKind::W1Assignment;
    if (name == "w1-transport-lp") return IpmKind::W1TransportLp;
    if (name == "walpha-dictionary") return IpmKind::WalphaDictionary;
    if (name == "projection-first-axis") return IpmKind::ProjectionFirstAxis;
    if (name == "brute-lp-oracle") return IpmKind::BruteLpOracle;
    throw std::invalid_argument("unknown ipm kind: " + name);
}

double w1_empirical(const DiscreteMeasure& P, const DiscreteMeasure& Q) {
    if (P.dim() != Q.dim()) throw std::invalid_argument("w1_empirical: dimension mismatch");
    if (P.dim() == 1) return w1_exact_1d(P, Q);
    if (P.size() == Q.size() && uniform_weights(P) && uniform_weights(Q))
        return assignment_cost(P.points(), Q.points());
    return transport_cost(P, Q);
}

std::pair<double, double> w1_vs_uniform(const DiscreteMeasure& P, std::size_t d, std::size_t m,
                                        std::size_t reps, Stream& stream) {
    if (d != P.dim()) throw std::invalid_argument("w1_vs_uniform: dimension mismatch");
    if (m < P.size()) throw std::invalid_argument("w1_vs_uniform: need m >= size(P)");
    if (reps == 0) throw std::invalid_argument("w1_vs_uniform: need reps >= 1");

    std::vector<double> vals;
    vals.reserve(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        const auto latents = sample_latent(m, d, stream);
        std::vector<AmbientPoint> pts;
        pts.reserve(m);
        for (const auto& u : latents) pts.push_back(AmbientPoint{u.coords});
        vals.push_back(w1_empirical(P, DiscreteMeasure::empirical(std::move(pts))));
    }
    const auto ms = mean_se(vals);
    return {ms.mean, ms.std_error};
}

double walpha_ipm(const DiscreteMeasure& P, const DiscreteMeasure& Q, const WalphaSpec& spec) {
    const std::size_t D = P.dim();
    if (Q.dim() != D) throw std::invalid_argument("walpha_ipm: dimension mismatch");
    if (spec.alpha < 1 || spec.lip < 1.0 || spec.frequency_cap < 1)
        throw std::invalid_argument("walpha_ipm: need alpha >= 1, lip >= 1, cap >= 1");

    const double per_axis = 2.0 * spec.frequency_cap + 1.0;
    const double count = (std::pow(per_axis, static_cast<double>(D)) - 1.0);  // signed pairs
    if (count > static_cast<double>(spec.max_atoms))
        throw std::length_error("walpha_ipm: dictionary exceeds the atom cap");

    double best = 0.0;
    if (spec.include_projection) {
        for (std::size_t axis = 0; axis < D; ++axis) {
            const double gap = std::abs(clamped_axis_mean(P, axis) - clamped_axis_mean(Q, axis));
            best = std::max(best, spec.lip * gap);
        }
    }

    // enumerate canonical frequency vectors: first nonzero entry positive
    std::vector<int> k(D, -spec.frequency_cap);
    const auto advance = [&]() -> bool {
        for (std::size_t a = D; a-- > 0;) {
            if (k[a] < spec.frequency_cap) {
                ++k[a];
                for (std::size_t b = a + 1; b < D; ++b) k[b] = -spec.frequency_cap;
                return true;
            }
        }
        return false;
    };
    do {
        int first = 0;
        double l1 = 0.0;
        for (std::size_t a = 0; a < D; ++a) {
            if (first == 0 && k[a] != 0) first = k[a];
            l1 += std::abs(k[a]);
        }
        if (first <= 0) continue;  // zero vector or the mirrored half
        const double wk = std::pow(kPi * l1, spec.alpha) / spec.lip;
        const auto cosf = [](double t) { return std::cos(t); };
        const auto sinf = [](double t) { return std::sin(t); };
        const double gc = std::abs(clamped_mean(P, k, cosf) - clamped_mean(Q, k, cosf));
        const double gs = std::abs(clamped_mean(P, k, sinf) - clamped_mean(Q, k, sinf));
        best = std::max(best, std::max(gc, gs) / wk);
    } while (advance());
    return best;
}

double projection_ipm(const DiscreteMeasure& P, const DiscreteMeasure& Q) {
    return std::abs(P.mean_coordinate(0) - Q.mean_coordinate(0));
}

double evaluate_ipm(const IpmSpec& spec, const DiscreteMeasure& P, const DiscreteMeasure& Q) {
    switch (spec.kind) {
        case IpmKind::W1Exact1d: return w1_exact_1d(P, Q);
        case IpmKind::W1Assignment:
        case IpmKind::W1TransportLp: return w1_empirical(P, Q);
        case IpmKind::WalphaDictionary: return walpha_ipm(P, Q, spec.walpha);
        case IpmKind::ProjectionFirstAxis: return projection_ipm(P, Q);
        case IpmKind::BruteLpOracle: return brute_lp_oracle(P, Q, spec.grid_step);
    }
    throw std::logic_error("evaluate_ipm: unknown kind");
}

}  // namespace genipm
