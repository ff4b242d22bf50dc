#include "genipm/generator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

#include "json.hpp"

#include "genipm/sampling.hpp"

namespace genipm {

namespace {

constexpr double kPi = 3.14159265358979323846;

double l1_norm(const double* k, std::size_t d) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += std::abs(k[i]);
    return s;
}

double l2_norm(const double* k, std::size_t d) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += k[i] * k[i];
    return std::sqrt(s);
}


// knots per axis for the tabulated family, inferred from the value count
std::size_t tabulated_knots(std::size_t d, std::size_t D, std::size_t len) {
    if (D == 0 || len % D != 0) throw std::invalid_argument("tabulated: value count not divisible by D");
    const std::size_t per_output = len / D;
    std::size_t m = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(per_output), 1.0 / static_cast<double>(d))));
    for (std::size_t cand = (m > 2 ? m - 1 : 2); cand <= m + 1; ++cand) {
        std::size_t p = 1;
        bool overflow = false;
        for (std::size_t i = 0; i < d; ++i) {
            if (p > per_output / cand + 1) { overflow = true; break; }
            p *= cand;
        }
        if (!overflow && p == per_output) return cand;
    }
    throw std::invalid_argument("tabulated: value count is not D * m^d for integer m >= 2");
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::Affine: return "affine";
        case Family::CoordinateTrig: return "coordinate-trig";
        case Family::Constant: return "constant";
        case Family::Tabulated: return "tabulated";
        case Family::LowerBoundContam1: return "lowerbound-contam-1";
        case Family::LowerBoundContam2: return "lowerbound-contam-2";
        case Family::LowerBoundNoise1: return "lowerbound-noise-1";
        case Family::LowerBoundNoise2: return "lowerbound-noise-2";
    }
    throw std::logic_error("family_name: unknown family");
}

Family family_from_name(const std::string& name) {
    if (name == "affine") return Family::Affine;
    if (name == "coordinate-trig") return Family::CoordinateTrig;
    if (name == "constant") return Family::Constant;
    if (name == "tabulated") return Family::Tabulated;
    if (name == "lowerbound-contam-1") return Family::LowerBoundContam1;
    if (name == "lowerbound-contam-2") return Family::LowerBoundContam2;
    if (name == "lowerbound-noise-1") return Family::LowerBoundNoise1;
    if (name == "lowerbound-noise-2") return Family::LowerBoundNoise2;
    throw std::invalid_argument("unknown generator family: " + name);
}

GeneratorSpec::GeneratorSpec(Family family, std::size_t d, std::size_t D,
                             std::vector<double> params, Smoothness smoothness)
    : family_(family), d_(d), D_(D), params_(std::move(params)), smooth_(smoothness) {
    validate();
}

void GeneratorSpec::validate() const {
    if (d_ == 0 || D_ == 0) throw std::invalid_argument("generator: dimensions must be positive");
    if (smooth_.alpha < 1) throw std::invalid_argument("generator: declared alpha must be >= 1");
    if (!(smooth_.lip >= 1.0)) throw std::invalid_argument("generator: declared L must be >= 1");
    for (double p : params_)
        if (!std::isfinite(p)) throw std::invalid_argument("generator: non-finite parameter");

    const double tol = 1e-12;
    switch (family_) {
        case Family::Affine: {
            if (params_.size() != D_ + D_ * d_)
                throw std::invalid_argument("affine: need D + D*d parameters");
            for (std::size_t j = 0; j < D_; ++j) {
                double lo = params_[j], hi = params_[j];
                for (std::size_t i = 0; i < d_; ++i) {
                    const double a = params_[D_ + j * d_ + i];
                    if (std::abs(a) > smooth_.lip + tol)
                        throw std::invalid_argument("affine: declared L below a matrix entry");
                    lo += std::min(a, 0.0);
                    hi += std::max(a, 0.0);
                }
                if (lo < -tol || hi > 1.0 + tol)
                    throw std::invalid_argument("affine: range leaves [0,1]");
            }
            break;
        }
        case Family::Constant: {
            if (params_.size() != D_) throw std::invalid_argument("constant: need D parameters");
            for (double c : params_)
                if (c < -tol || c > 1.0 + tol)
                    throw std::invalid_argument("constant: value outside [0,1]");
            break;
        }
        case Family::CoordinateTrig: {
            if (params_.size() != 2 * D_ + D_ * d_)
                throw std::invalid_argument("coordinate-trig: need 2D + D*d parameters");
            for (std::size_t j = 0; j < D_; ++j) {
                const double a = params_[j];
                const double b = params_[D_ + j];
                const double* k = &params_[2 * D_ + j * d_];
                for (std::size_t i = 0; i < d_; ++i)
                    if (!(k[i] >= 0.0) || !std::isfinite(k[i]))
                        throw std::invalid_argument("coordinate-trig: frequencies must be nonnegative");
                const double l1 = l1_norm(k, d_);
                if (l1 < 1.0)
                    throw std::invalid_argument("coordinate-trig: phase span below one half period");
                if (std::abs(b) > smooth_.lip + tol)
                    throw std::invalid_argument("coordinate-trig: declared L below amplitude");
                const double amp = std::abs(b) / std::pow(kPi * l1, smooth_.alpha);
                if (a - amp < -tol || a + amp > 1.0 + tol)
                    throw std::invalid_argument("coordinate-trig: range leaves [0,1]");
            }
            break;
        }
        case Family::Tabulated: {
            if (smooth_.alpha != 1)
                throw std::invalid_argument("tabulated: only alpha = 1 is meaningful");
            const std::size_t m = tabulated_knots(d_, D_, params_.size());
            const std::size_t per_output = params_.size() / D_;
            if (per_output > 1000000) throw std::length_error("tabulated: grid too large");
            for (double v : params_)
                if (v < -tol || v > 1.0 + tol)
                    throw std::invalid_argument("tabulated: value outside [0,1]");
            // per-axis slopes must respect the declared Lipschitz constant
            std::vector<std::size_t> stride(d_, 1);
            for (std::size_t i = d_; i-- > 1;) stride[i - 1] = stride[i] * m;
            for (std::size_t j = 0; j < D_; ++j) {
                const double* v = &params_[j * per_output];
                for (std::size_t axis = 0; axis < d_; ++axis) {
                    for (std::size_t idx = 0; idx < per_output; ++idx) {
                        const std::size_t pos = (idx / stride[axis]) % m;
                        if (pos + 1 >= m) continue;
                        const double slope =
                            std::abs(v[idx + stride[axis]] - v[idx]) * static_cast<double>(m - 1);
                        if (slope > smooth_.lip + 1e-9)
                            throw std::invalid_argument("tabulated: declared L below a grid slope");
                    }
                }
            }
            break;
        }
        case Family::LowerBoundContam1:
        case Family::LowerBoundContam2: {
            if (params_.size() != 1) throw std::invalid_argument("lowerbound-contam: need [eps]");
            if (params_[0] < 0.0 || params_[0] > 1.0)
                throw std::invalid_argument("lowerbound-contam: eps outside [0,1]");
            break;
        }
        case Family::LowerBoundNoise1:
        case Family::LowerBoundNoise2: {
            if (params_.size() != 1) throw std::invalid_argument("lowerbound-noise: need [sigma]");
            if (params_[0] < 0.0 || params_[0] > 1.0)
                throw std::invalid_argument("lowerbound-noise: sigma outside [0,1]");
            break;
        }
    }
}

GeneratorSpec GeneratorSpec::identity(std::size_t d) {
    std::vector<double> p(d + d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) p[d + i * d + i] = 1.0;
    return GeneratorSpec(Family::Affine, d, d, std::move(p), Smoothness{1, 1.0});
}

GeneratorSpec GeneratorSpec::affine(std::size_t d, std::size_t D, std::vector<double> intercept,
                                    std::vector<double> matrix_row_major, Smoothness s) {
    if (intercept.size() != D || matrix_row_major.size() != D * d)
        throw std::invalid_argument("affine: parameter sizes do not match d, D");
    std::vector<double> p = std::move(intercept);
    p.insert(p.end(), matrix_row_major.begin(), matrix_row_major.end());
    return GeneratorSpec(Family::Affine, d, D, std::move(p), s);
}

GeneratorSpec GeneratorSpec::constant(std::size_t d, std::vector<double> value) {
    const std::size_t D = value.size();
    return GeneratorSpec(Family::Constant, d, D, std::move(value), Smoothness{1, 1.0});
}

GeneratorSpec GeneratorSpec::coordinate_trig(std::size_t d, std::size_t D, int alpha, double L) {
    if (alpha < 1 || L < 1.0) throw std::invalid_argument("coordinate_trig: need alpha >= 1, L >= 1");
    std::vector<double> p(2 * D + D * d);
    // Smallest phase span K = ||k||_1 (at least one half period) that keeps
    // the amplitude L / (pi K)^alpha inside [0,1].
    double K = std::pow(L / (0.5 - 1e-9), 1.0 / alpha) / kPi;
    K = std::max(1.0, K * (1.0 + 1e-12));
    for (std::size_t j = 0; j < D; ++j) {
        p[j] = 0.5;
        p[D + j] = (j % 2 == 0) ? L : -L;
        double* k = &p[2 * D + j * d];
        if (d == 1) {
            k[0] = K;
        } else {
            // Two latent axes per coordinate with unequal weights. The phase
            // density then vanishes linearly at both ends of its range, which
            // cancels the inverse-square-root fold singularities of the
            // cosine, so the pushforward density stays bounded wherever the
            // span sits inside one half period. The 2:1 split nearly equates
            // the trapezoid phase density with the sine it divides, keeping
            // each output marginal within a few percent of flat; the weight
            // only moves off 2:1 when an axis pair comes around again, so
            // directions stay linearly independent and the image genuinely
            // d-dimensional.
            const double w = 1.0 - 1.0 / static_cast<double>(j / d + 3);
            k[j % d] = w * K;
            k[(j + 1) % d] = (1.0 - w) * K;
        }
    }
    return GeneratorSpec(Family::CoordinateTrig, d, D, std::move(p),
                         Smoothness{alpha, L});
}

GeneratorSpec GeneratorSpec::tabulated(std::size_t d, std::size_t D, std::vector<double> values,
                                       double L) {
    return GeneratorSpec(Family::Tabulated, d, D, std::move(values), Smoothness{1, L});
}

GeneratorSpec GeneratorSpec::lowerbound_contam(int which, std::size_t D, double eps) {
    if (which != 1 && which != 2) throw std::invalid_argument("lowerbound_contam: which must be 1 or 2");
    return GeneratorSpec(which == 1 ? Family::LowerBoundContam1 : Family::LowerBoundContam2,
                         1, D, {eps}, Smoothness{1, 1.0});
}

GeneratorSpec GeneratorSpec::lowerbound_noise(int which, std::size_t D, double sigma) {
    if (which != 1 && which != 2) throw std::invalid_argument("lowerbound_noise: which must be 1 or 2");
    return GeneratorSpec(which == 1 ? Family::LowerBoundNoise1 : Family::LowerBoundNoise2,
                         1, D, {sigma}, Smoothness{1, 1.0});
}

AmbientPoint GeneratorSpec::evaluate(const LatentPoint& u) const {
    if (u.dim() != d_) throw std::domain_error("evaluate: latent dimension mismatch");
    for (double c : u.coords)
        if (!(c >= 0.0 && c <= 1.0)) throw std::domain_error("evaluate: latent point outside [0,1]^d");

    AmbientPoint x;
    x.coords.assign(D_, 0.0);
    switch (family_) {
        case Family::Affine: {
            for (std::size_t j = 0; j < D_; ++j) {
                double s = params_[j];
                const double* row = &params_[D_ + j * d_];
                for (std::size_t i = 0; i < d_; ++i) s += row[i] * u.coords[i];
                x.coords[j] = s;
            }
            break;
        }
        case Family::Constant: {
            x.coords.assign(params_.begin(), params_.end());
            break;
        }
        case Family::CoordinateTrig: {
            for (std::size_t j = 0; j < D_; ++j) {
                const double* k = &params_[2 * D_ + j * d_];
                double phase = 0.0;
                for (std::size_t i = 0; i < d_; ++i) phase += k[i] * u.coords[i];
                const double scale = std::pow(kPi * l1_norm(k, d_), smooth_.alpha);
                x.coords[j] = params_[j] + params_[D_ + j] * std::cos(kPi * phase) / scale;
            }
            break;
        }
        case Family::Tabulated: {
            const std::size_t m = tabulated_knots(d_, D_, params_.size());
            const std::size_t per_output = params_.size() / D_;
            std::vector<std::size_t> stride(d_, 1);
            for (std::size_t i = d_; i-- > 1;) stride[i - 1] = stride[i] * m;
            std::vector<std::size_t> base(d_);
            std::vector<double> frac(d_);
            for (std::size_t i = 0; i < d_; ++i) {
                const double t = u.coords[i] * static_cast<double>(m - 1);
                std::size_t b = static_cast<std::size_t>(t);
                if (b >= m - 1) b = m - 2;
                base[i] = b;
                frac[i] = t - static_cast<double>(b);
            }
            for (std::size_t j = 0; j < D_; ++j) {
                const double* v = &params_[j * per_output];
                double acc = 0.0;
                for (std::size_t corner = 0; corner < (std::size_t{1} << d_); ++corner) {
                    double w = 1.0;
                    std::size_t idx = 0;
                    for (std::size_t i = 0; i < d_; ++i) {
                        const bool hi = (corner >> i) & 1;
                        w *= hi ? frac[i] : 1.0 - frac[i];
                        idx += (base[i] + (hi ? 1 : 0)) * stride[i];
                    }
                    acc += w * v[idx];
                }
                x.coords[j] = acc;
            }
            break;
        }
        case Family::LowerBoundContam1:
            x.coords[0] = (1.0 - params_[0]) * u.coords[0];
            break;
        case Family::LowerBoundContam2:
            x.coords[0] = (1.0 - params_[0]) * u.coords[0] + params_[0];
            break;
        case Family::LowerBoundNoise1:
            break;  // identically zero
        case Family::LowerBoundNoise2:
            x.coords[0] = params_[0];
            break;
    }
    return x;
}

double GeneratorSpec::lipschitz_upper_bound() const {
    switch (family_) {
        case Family::Affine: {
            double s = 0.0;
            for (std::size_t t = 0; t < D_ * d_; ++t) s += params_[D_ + t] * params_[D_ + t];
            return std::sqrt(s);  // Frobenius norm dominates the spectral norm
        }
        case Family::Constant:
            return 0.0;
        case Family::CoordinateTrig: {
            double s = 0.0;
            for (std::size_t j = 0; j < D_; ++j) {
                const double* k = &params_[2 * D_ + j * d_];
                const double grad =
                    std::abs(params_[D_ + j]) * kPi * l2_norm(k, d_) /
                    std::pow(kPi * l1_norm(k, d_), smooth_.alpha);
                s += grad * grad;
            }
            return std::sqrt(s);
        }
        case Family::Tabulated: {
            const std::size_t m = tabulated_knots(d_, D_, params_.size());
            const std::size_t per_output = params_.size() / D_;
            std::vector<std::size_t> stride(d_, 1);
            for (std::size_t i = d_; i-- > 1;) stride[i - 1] = stride[i] * m;
            double total = 0.0;
            for (std::size_t j = 0; j < D_; ++j) {
                const double* v = &params_[j * per_output];
                double grad2 = 0.0;
                for (std::size_t axis = 0; axis < d_; ++axis) {
                    double worst = 0.0;
                    for (std::size_t idx = 0; idx < per_output; ++idx) {
                        const std::size_t pos = (idx / stride[axis]) % m;
                        if (pos + 1 >= m) continue;
                        worst = std::max(worst, std::abs(v[idx + stride[axis]] - v[idx]) *
                                                    static_cast<double>(m - 1));
                    }
                    grad2 += worst * worst;
                }
                total += grad2;
            }
            return std::sqrt(total);
        }
        case Family::LowerBoundContam1:
        case Family::LowerBoundContam2:
            return 1.0 - params_[0];
        case Family::LowerBoundNoise1:
        case Family::LowerBoundNoise2:
            return 0.0;
    }
    throw std::logic_error("lipschitz_upper_bound: unknown family");
}

double GeneratorSpec::first_coord_mean() const {
    switch (family_) {
        case Family::Affine: {
            double s = params_[0];
            for (std::size_t i = 0; i < d_; ++i) s += 0.5 * params_[D_ + i];
            return s;
        }
        case Family::Constant:
            return params_[0];
        case Family::CoordinateTrig: {
            const double* k = &params_[2 * D_];
            std::complex<double> prod(1.0, 0.0);
            for (std::size_t i = 0; i < d_; ++i) {
                if (k[i] == 0.0) continue;
                const std::complex<double> ipk(0.0, kPi * k[i]);
                prod *= (std::exp(ipk) - 1.0) / ipk;
            }
            const double scale = std::pow(kPi * l1_norm(k, d_), smooth_.alpha);
            return params_[0] + params_[D_] * prod.real() / scale;
        }
        case Family::Tabulated: {
            // trapezoid weights are exact for a multilinear interpolant
            const std::size_t m = tabulated_knots(d_, D_, params_.size());
            const std::size_t per_output = params_.size() / D_;
            std::vector<std::size_t> stride(d_, 1);
            for (std::size_t i = d_; i-- > 1;) stride[i - 1] = stride[i] * m;
            const double* v = &params_[0];
            double acc = 0.0;
            for (std::size_t idx = 0; idx < per_output; ++idx) {
                double w = 1.0;
                for (std::size_t i = 0; i < d_; ++i) {
                    const std::size_t pos = (idx / stride[i]) % m;
                    w *= ((pos == 0 || pos == m - 1) ? 0.5 : 1.0) / static_cast<double>(m - 1);
                }
                acc += w * v[idx];
            }
            return acc;
        }
        case Family::LowerBoundContam1:
            return 0.5 * (1.0 - params_[0]);
        case Family::LowerBoundContam2:
            return 0.5 * (1.0 - params_[0]) + params_[0];
        case Family::LowerBoundNoise1:
            return 0.0;
        case Family::LowerBoundNoise2:
            return params_[0];
    }
    throw std::logic_error("first_coord_mean: unknown family");
}

bool GeneratorSpec::pushforward_is_interval() const {
    if (D_ != 1) return false;
    switch (family_) {
        case Family::Affine:
            return d_ == 1 && std::abs(params_[1]) > 1e-15;
        case Family::LowerBoundContam1:
        case Family::LowerBoundContam2:
            return params_[0] < 1.0 - 1e-15;
        default:
            return false;
    }
}

void GeneratorSpec::pushforward_interval(double& lo, double& hi) const {
    if (!pushforward_is_interval())
        throw std::logic_error("pushforward_interval: law is not an interval");
    switch (family_) {
        case Family::Affine: {
            const double a = params_[0], b = params_[0] + params_[1];
            lo = std::min(a, b);
            hi = std::max(a, b);
            break;
        }
        case Family::LowerBoundContam1:
            lo = 0.0;
            hi = 1.0 - params_[0];
            break;
        case Family::LowerBoundContam2:
            lo = params_[0];
            hi = 1.0;
            break;
        default:
            throw std::logic_error("pushforward_interval: unreachable");
    }
}

std::string GeneratorSpec::to_json_string() const {
    nlohmann::json j;
    j["family"] = family_name(family_);
    j["d"] = d_;
    j["D"] = D_;
    j["alpha"] = smooth_.alpha;
    j["lipschitz"] = smooth_.lip;
    j["params"] = params_;
    return j.dump();
}

GeneratorSpec GeneratorSpec::parse_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    return GeneratorSpec(family_from_name(j.at("family").get<std::string>()),
                         j.at("d").get<std::size_t>(), j.at("D").get<std::size_t>(),
                         j.at("params").get<std::vector<double>>(),
                         Smoothness{j.at("alpha").get<int>(), j.at("lipschitz").get<double>()});
}

std::vector<AmbientPoint> pushforward_sample(const GeneratorSpec& g, std::size_t n, Stream& stream) {
    const auto latents = sample_latent(n, g.latent_dim(), stream);
    std::vector<AmbientPoint> out;
    out.reserve(n);
    for (const auto& u : latents) out.push_back(g.evaluate(u));
    return out;
}

double estimate_lipschitz(const GeneratorSpec& g, std::size_t probes, Stream& stream) {
    if (probes < 2) throw std::invalid_argument("estimate_lipschitz: need at least 2 probes");
    const std::size_t d = g.latent_dim();
    const auto pts = sample_latent(probes, d, stream);

    double best = 0.0;
    const auto consider = [&](const LatentPoint& a, const LatentPoint& b) {
        const double du = euclidean_distance(a.coords, b.coords);
        if (du < 1e-12) return;
        const double dx = euclidean_distance(g.evaluate(a).coords, g.evaluate(b).coords);
        best = std::max(best, dx / du);
    };

    for (std::size_t t = 0; t + 1 < probes; t += 2) consider(pts[t], pts[t + 1]);
    for (const auto& p : pts) {
        const auto dir = sample_sphere_direction(d, stream);
        LatentPoint q = p;
        for (std::size_t i = 0; i < d; ++i)
            q.coords[i] = std::clamp(q.coords[i] + 0.005 * dir[i], 0.0, 1.0);
        consider(p, q);
    }
    return best;
}

}  // namespace genipm
