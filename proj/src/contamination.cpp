#include "genipm/contamination.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "genipm/sampling.hpp"

namespace genipm {

namespace {

// E||Z||_2 for Z standard normal in R^D: sqrt(2) * Gamma((D+1)/2) / Gamma(D/2)
double chi_mean(std::size_t D) {
    const double hd = 0.5 * static_cast<double>(D);
    return std::sqrt(2.0) * std::exp(std::lgamma(hd + 0.5) - std::lgamma(hd));
}

std::vector<double> draw_noise(NoiseModel model, double sigma, std::size_t D, Stream& stream) {
    std::vector<double> xi(D, 0.0);
    if (sigma == 0.0) return xi;
    switch (model) {
        case NoiseModel::SphereFixed: {
            xi = sample_sphere_direction(D, stream);
            for (double& v : xi) v *= sigma;
            break;
        }
        case NoiseModel::GaussianScaled: {
            const double scale = sigma / chi_mean(D);
            for (double& v : xi) v = scale * stream.next_gaussian();
            break;
        }
        case NoiseModel::Uniform1d:
            xi[0] = sigma * stream.next_unit();
            break;
    }
    return xi;
}

AmbientPoint draw_from_law(const ContaminatingLaw& law, std::size_t D, Stream& stream) {
    if (const auto* u = std::get_if<Uniform1dLaw>(&law)) {
        if (!(u->lo <= u->hi)) throw std::invalid_argument("contaminating law: lo > hi");
        AmbientPoint p;
        p.coords.assign(D, 0.0);
        p.coords[0] = u->lo + (u->hi - u->lo) * stream.next_unit();
        return p;
    }
    const auto& g = std::get<GeneratorSpec>(law);
    if (g.ambient_dim() != D)
        throw std::invalid_argument("contaminating law: ambient dimension mismatch");
    const auto latents = sample_latent(1, g.latent_dim(), stream);
    return g.evaluate(latents[0]);
}

void append_inlier(Dataset& ds, const GeneratorSpec& g, const LatentPoint& u,
                   NoiseModel model, double sigma, Stream& stream) {
    AmbientPoint x = g.evaluate(u);
    const auto xi = draw_noise(model, sigma, x.dim(), stream);
    double norm2 = 0.0;
    for (std::size_t j = 0; j < x.dim(); ++j) {
        x.coords[j] += xi[j];
        norm2 += xi[j] * xi[j];
    }
    ds.points.push_back(std::move(x));
    ds.inlier.push_back(true);
    ds.latents.push_back(u);
    ds.noise_norm.push_back(std::sqrt(norm2));
}

}  // namespace

std::size_t Dataset::inlier_count() const {
    std::size_t c = 0;
    for (bool b : inlier) c += b ? 1 : 0;
    return c;
}

Dataset synthesize(const DataSpec& spec, std::size_t n, Stream& stream) {
    if (n == 0) throw std::invalid_argument("synthesize: n must be positive");
    if (spec.sigma < 0.0) throw std::invalid_argument("synthesize: sigma must be >= 0");
    if (spec.epsilon < 0.0 || spec.epsilon > 1.0)
        throw std::invalid_argument("synthesize: epsilon must lie in [0,1]");

    const std::size_t n_out = static_cast<std::size_t>(
        std::floor(spec.epsilon * static_cast<double>(n)));
    const std::size_t n_in = n - n_out;
    const std::size_t D = spec.generator.ambient_dim();

    Dataset ds;
    ds.points.reserve(n);
    ds.inlier.reserve(n);
    ds.latents.reserve(n_in);
    ds.noise_norm.reserve(n_in);

    if (n_in > 0) {
        const auto latents = sample_latent(n_in, spec.generator.latent_dim(), stream);
        for (const auto& u : latents)
            append_inlier(ds, spec.generator, u, spec.noise_model, spec.sigma, stream);
    }

    // outliers go last: the adversary moves after every inlier is realized
    switch (spec.outlier_policy) {
        case OutlierPolicy::Corner: {
            AmbientPoint corner;
            corner.coords.assign(D, 1.0);
            for (std::size_t t = 0; t < n_out; ++t) {
                ds.points.push_back(corner);
                ds.inlier.push_back(false);
            }
            break;
        }
        case OutlierPolicy::HuberMixture: {
            if (!spec.mixture_law)
                throw std::invalid_argument("synthesize: huber-mixture policy needs a law");
            for (std::size_t t = 0; t < n_out; ++t) {
                ds.points.push_back(draw_from_law(*spec.mixture_law, D, stream));
                ds.inlier.push_back(false);
            }
            break;
        }
        case OutlierPolicy::CustomPoints: {
            if (!spec.custom_adversary)
                throw std::invalid_argument("synthesize: custom-points policy needs an adversary");
            const auto block = spec.custom_adversary(ds.points, n_out, stream);
            if (block.size() != n_out)
                throw std::invalid_argument("synthesize: adversary returned wrong count");
            for (const auto& p : block) {
                if (p.dim() != D || !all_finite(p.coords))
                    throw std::invalid_argument("synthesize: adversary returned a bad point");
                ds.points.push_back(p);
                ds.inlier.push_back(false);
            }
            break;
        }
    }
    return ds;
}

Dataset synthesize_huber(HuberKind kind, const GeneratorSpec& g, const ContaminatingLaw& Q,
                         double epsilon, std::size_t n, Stream& stream) {
    if (n == 0) throw std::invalid_argument("synthesize_huber: n must be positive");
    if (epsilon < 0.0 || epsilon > 1.0)
        throw std::invalid_argument("synthesize_huber: epsilon must lie in [0,1]");
    const std::size_t D = g.ambient_dim();

    Dataset ds;
    ds.points.reserve(n);
    ds.inlier.reserve(n);

    if (kind == HuberKind::HDC) {
        const std::size_t n_q = static_cast<std::size_t>(
            std::floor(epsilon * static_cast<double>(n)));
        const std::size_t n_g = n - n_q;
        if (n_g > 0) {
            const auto latents = sample_latent(n_g, g.latent_dim(), stream);
            for (const auto& u : latents) append_inlier(ds, g, u, NoiseModel::SphereFixed, 0.0, stream);
        }
        for (std::size_t t = 0; t < n_q; ++t) {
            ds.points.push_back(draw_from_law(Q, D, stream));
            ds.inlier.push_back(false);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            if (stream.next_unit() < epsilon) {
                ds.points.push_back(draw_from_law(Q, D, stream));
                ds.inlier.push_back(false);
            } else {
                const auto latents = sample_latent(1, g.latent_dim(), stream);
                append_inlier(ds, g, latents[0], NoiseModel::SphereFixed, 0.0, stream);
            }
        }
    }
    return ds;
}

Dataset corner_instance(double sigma, double epsilon, std::size_t n, std::size_t D,
                        Stream& stream) {
    if (sigma > 0.5) throw std::invalid_argument("corner_instance: needs sigma <= 1/2");
    if (D == 0) throw std::invalid_argument("corner_instance: D must be positive");
    std::vector<double> intercept(D, 0.25);
    std::vector<double> matrix(D * D, 0.0);
    for (std::size_t j = 0; j < D; ++j) matrix[j * D + j] = 0.5;
    DataSpec spec{GeneratorSpec::affine(D, D, std::move(intercept), std::move(matrix)),
                  sigma,
                  epsilon,
                  NoiseModel::Uniform1d,
                  OutlierPolicy::Corner,
                  std::nullopt,
                  nullptr};
    return synthesize(spec, n, stream);
}

void write_dataset_csv(const Dataset& ds, const DatasetMeta& meta, std::ostream& out) {
    const std::size_t D = ds.dim();
    char buf[64];
    out << "# n=" << meta.n << ",D=" << meta.D << ",sigma=";
    std::snprintf(buf, sizeof buf, "%.17g", meta.sigma);
    out << buf << ",epsilon=";
    std::snprintf(buf, sizeof buf, "%.17g", meta.epsilon);
    out << buf << ",seed=" << meta.seed << "\n";
    for (std::size_t j = 0; j < D; ++j) out << "x_" << (j + 1) << ",";
    out << "inlier\n";
    for (std::size_t i = 0; i < ds.n(); ++i) {
        for (std::size_t j = 0; j < D; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", ds.points[i].coords[j]);
            out << buf << ",";
        }
        out << (ds.inlier[i] ? 1 : 0) << "\n";
    }
}

Dataset read_dataset_csv(std::istream& in, DatasetMeta* meta_out) {
    std::string line;
    if (!std::getline(in, line) || line.empty() || line[0] != '#')
        throw std::runtime_error("dataset csv: missing meta header");
    if (meta_out) {
        DatasetMeta m;
        const auto grab = [&](const std::string& key) -> std::string {
            const auto pos = line.find(key + "=");
            if (pos == std::string::npos) throw std::runtime_error("dataset csv: missing " + key);
            const auto start = pos + key.size() + 1;
            auto end = line.find(',', start);
            if (end == std::string::npos) end = line.size();
            return line.substr(start, end - start);
        };
        m.n = std::stoull(grab("n"));
        m.D = std::stoull(grab("D"));
        m.sigma = std::stod(grab("sigma"));
        m.epsilon = std::stod(grab("epsilon"));
        m.seed = std::stoull(grab("seed"));
        *meta_out = m;
    }
    if (!std::getline(in, line)) throw std::runtime_error("dataset csv: missing column header");

    Dataset ds;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
        if (vals.size() < 2) throw std::runtime_error("dataset csv: short row");
        AmbientPoint p;
        p.coords.assign(vals.begin(), vals.end() - 1);
        ds.points.push_back(std::move(p));
        ds.inlier.push_back(vals.back() != 0.0);
    }
    return ds;
}

}  // namespace genipm
