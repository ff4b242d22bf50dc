#include "genipm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "genipm/measure.hpp"
#include "genipm/parallel.hpp"
#include "genipm/sampling.hpp"
#include "genipm/stats.hpp"
#include "genipm/w1_1d.hpp"

namespace genipm {

namespace {

constexpr std::uint64_t kRateTag = 0x9c3a17f4d20b55e1ull;
constexpr std::uint64_t kNoiseTag = 0x1f8e6b02c7a94d3cull;
constexpr std::uint64_t kContamTag = 0x5d42a90b11fe6c87ull;
constexpr std::uint64_t kLowerTag = 0xb7e21dca8f30649bull;

bool is_w1(IpmKind k) {
    return k == IpmKind::W1Exact1d || k == IpmKind::W1Assignment || k == IpmKind::W1TransportLp;
}

// How the model law P* enters the metric evaluation.
enum class Reference { Interval1d, ProjectionMean, FreshSample };

Reference pick_reference(const GeneratorSpec& g, const IpmSpec& metric) {
    if (metric.kind == IpmKind::ProjectionFirstAxis) return Reference::ProjectionMean;
    if (is_w1(metric.kind) && g.ambient_dim() == 1 && g.pushforward_is_interval())
        return Reference::Interval1d;
    return Reference::FreshSample;
}

std::size_t reference_size(const IpmSpec& metric, std::size_t n) {
    return is_w1(metric.kind) ? n : 10 * n;  // equal sizes keep W1 matchings feasible
}

double chi_mean(std::size_t D) {
    const double h = 0.5 * static_cast<double>(D);
    return std::sqrt(2.0) * std::exp(std::lgamma(h + 0.5) - std::lgamma(h));
}

double against_reference(const GeneratorSpec& g, const IpmSpec& metric, Reference ref,
                         const DiscreteMeasure& sample, const DiscreteMeasure* fresh) {
    switch (ref) {
        case Reference::Interval1d: {
            double lo, hi;
            g.pushforward_interval(lo, hi);
            return w1_exact_1d_vs_interval(sample, lo, hi);
        }
        case Reference::ProjectionMean:
            return std::abs(sample.mean_coordinate(0) - g.first_coord_mean());
        case Reference::FreshSample:
            return evaluate_ipm(metric, sample, *fresh);
    }
    throw std::logic_error("against_reference: unknown reference kind");
}

}  // namespace

RateFit fit_rate(std::vector<RatePoint> grid) {
    if (grid.size() < 2) throw std::invalid_argument("fit_rate: need >= 2 grid points");
    std::vector<double> lx, ly;
    lx.reserve(grid.size());
    ly.reserve(grid.size());
    for (const auto& p : grid) {
        if (p.n == 0 || !(p.mean > 0.0))
            throw std::invalid_argument("fit_rate: grid means must be positive");
        lx.push_back(std::log(static_cast<double>(p.n)));
        ly.push_back(std::log(p.mean));
    }
    const LinearFit f = least_squares(lx, ly);
    RateFit out;
    out.slope = f.slope;
    out.intercept = f.intercept;
    out.r_squared = f.r_squared;
    out.slope_std_error = f.slope_std_error;
    out.grid = std::move(grid);
    return out;
}

RateFit rate_study(const GeneratorSpec& g, const IpmSpec& metric,
                   const std::vector<std::size_t>& n_grid, std::size_t reps, SeedPolicy seed,
                   unsigned workers) {
    if (n_grid.size() < 4) throw std::invalid_argument("rate_study: need >= 4 sample sizes");
    for (std::size_t i = 0; i + 1 < n_grid.size(); ++i)
        if (n_grid[i] == 0 || n_grid[i] >= n_grid[i + 1])
            throw std::invalid_argument("rate_study: sizes must increase");
    if (reps < 30) throw std::invalid_argument("rate_study: need reps >= 30");

    const Reference ref = pick_reference(g, metric);

    std::vector<RatePoint> grid;
    grid.reserve(n_grid.size());
    for (const std::size_t n : n_grid) {
        const std::size_t cells = ref == Reference::FreshSample && is_w1(metric.kind) ? n * n : n;
        const unsigned used = std::min(workers, default_workers(cells * 8));
        const auto vals = run_replications(reps, used, [&](std::size_t r) {
            Stream stream = make_stream(seed.master_seed, r, kRateTag ^ mix64(n));
            auto sample = DiscreteMeasure::empirical(pushforward_sample(g, n, stream));
            if (ref != Reference::FreshSample)
                return against_reference(g, metric, ref, sample, nullptr);
            const std::size_t m = reference_size(metric, n);
            auto fresh = DiscreteMeasure::empirical(pushforward_sample(g, m, stream));
            return against_reference(g, metric, ref, sample, &fresh);
        });
        const MeanSe ms = mean_se(vals);
        grid.push_back({n, ms.mean, ms.std_error, reps});
    }
    return fit_rate(std::move(grid));
}

SweepResult fit_sweep(std::string param, std::vector<SweepPoint> rows) {
    if (rows.size() < 2) throw std::invalid_argument("fit_sweep: need >= 2 rows");
    std::vector<double> x, y;
    x.reserve(rows.size());
    y.reserve(rows.size());
    for (const auto& r : rows) {
        x.push_back(r.value);
        y.push_back(r.mean);
    }
    const LinearFit f = least_squares(x, y);
    SweepResult out;
    out.param = std::move(param);
    out.rows = std::move(rows);
    out.slope = f.slope;
    out.intercept = f.intercept;
    out.r_squared = f.r_squared;
    out.slope_std_error = f.slope_std_error;
    return out;
}

namespace {

void check_sweep_grid(const std::vector<double>& grid, double max_allowed, const char* who) {
    if (grid.size() < 2) throw std::invalid_argument(std::string(who) + ": need >= 2 grid values");
    if (grid.front() != 0.0)
        throw std::invalid_argument(std::string(who) + ": grid must start at 0");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw std::invalid_argument(std::string(who) + ": grid must increase");
    if (!(grid.back() <= max_allowed))
        throw std::invalid_argument(std::string(who) + ": grid value out of range");
}

}  // namespace

SweepResult noise_sweep(const GeneratorSpec& g, const IpmSpec& metric,
                        const std::vector<double>& sigma_grid, std::size_t n, std::size_t reps,
                        SeedPolicy seed, NoiseModel noise, unsigned workers) {
    check_sweep_grid(sigma_grid, 0.5, "noise_sweep");
    if (n < 2 || reps < 30) throw std::invalid_argument("noise_sweep: need n >= 2, reps >= 30");

    const Reference ref = pick_reference(g, metric);
    const std::size_t D = g.ambient_dim();
    const std::size_t levels = sigma_grid.size();

    const auto per_rep = [&](std::size_t r) -> std::vector<double> {
        Stream stream = make_stream(seed.master_seed, r, kNoiseTag);
        const auto latents = sample_latent(n, g.latent_dim(), stream);
        std::vector<AmbientPoint> base;
        base.reserve(n);
        for (const auto& u : latents) base.push_back(g.evaluate(u));

        // unit-magnitude noise directions, shared across the sigma grid
        std::vector<std::vector<double>> unit(n);
        for (std::size_t i = 0; i < n; ++i) {
            switch (noise) {
                case NoiseModel::Uniform1d: {
                    std::vector<double> v(D, 0.0);
                    v[0] = stream.next_unit();
                    unit[i] = std::move(v);
                    break;
                }
                case NoiseModel::SphereFixed:
                    unit[i] = sample_sphere_direction(D, stream);
                    break;
                case NoiseModel::GaussianScaled: {
                    std::vector<double> v(D);
                    const double c = chi_mean(D);
                    for (auto& w : v) w = stream.next_gaussian() / c;
                    unit[i] = std::move(v);
                    break;
                }
            }
        }
        std::optional<DiscreteMeasure> fresh;
        if (ref == Reference::FreshSample)
            fresh = DiscreteMeasure::empirical(
                pushforward_sample(g, reference_size(metric, n), stream));

        std::vector<double> vals(levels);
        for (std::size_t s = 0; s < levels; ++s) {
            const double sigma = sigma_grid[s];
            std::vector<AmbientPoint> pts = base;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t a = 0; a < D; ++a) pts[i].coords[a] += sigma * unit[i][a];
            const auto sample = DiscreteMeasure::empirical(std::move(pts));
            vals[s] = against_reference(g, metric, ref, sample, fresh ? &*fresh : nullptr);
        }
        return vals;
    };

    const auto all = run_replications(reps, workers, per_rep);
    std::vector<SweepPoint> rows(levels);
    for (std::size_t s = 0; s < levels; ++s) {
        std::vector<double> col(reps);
        for (std::size_t r = 0; r < reps; ++r) col[r] = all[r][s];
        const MeanSe ms = mean_se(col);
        rows[s] = {sigma_grid[s], ms.mean, ms.std_error, reps};
    }
    return fit_sweep("sigma", std::move(rows));
}

SweepResult contamination_sweep(const GeneratorSpec& g, const IpmSpec& metric,
                                const std::vector<double>& eps_grid, std::size_t n,
                                std::size_t reps, SeedPolicy seed, unsigned workers) {
    check_sweep_grid(eps_grid, 0.999, "contamination_sweep");
    if (n < 2 || reps < 30)
        throw std::invalid_argument("contamination_sweep: need n >= 2, reps >= 30");

    const Reference ref = pick_reference(g, metric);
    const std::size_t D = g.ambient_dim();
    const std::size_t levels = eps_grid.size();
    const AmbientPoint corner{std::vector<double>(D, 1.0)};

    const auto per_rep = [&](std::size_t r) -> std::vector<double> {
        Stream stream = make_stream(seed.master_seed, r, kContamTag);
        const auto latents = sample_latent(n, g.latent_dim(), stream);
        std::vector<AmbientPoint> pool;
        pool.reserve(n);
        for (const auto& u : latents) pool.push_back(g.evaluate(u));

        std::optional<DiscreteMeasure> fresh;
        if (ref == Reference::FreshSample)
            fresh = DiscreteMeasure::empirical(
                pushforward_sample(g, reference_size(metric, n), stream));

        std::vector<double> vals(levels);
        for (std::size_t s = 0; s < levels; ++s) {
            const auto n_out = static_cast<std::size_t>(
                std::floor(eps_grid[s] * static_cast<double>(n)));
            std::vector<AmbientPoint> pts(pool.begin(), pool.begin() + (n - n_out));
            pts.insert(pts.end(), n_out, corner);
            const auto sample = DiscreteMeasure::empirical(std::move(pts));
            vals[s] = against_reference(g, metric, ref, sample, fresh ? &*fresh : nullptr);
        }
        return vals;
    };

    const auto all = run_replications(reps, workers, per_rep);
    std::vector<SweepPoint> rows(levels);
    for (std::size_t s = 0; s < levels; ++s) {
        std::vector<double> col(reps);
        for (std::size_t r = 0; r < reps; ++r) col[r] = all[r][s];
        const MeanSe ms = mean_se(col);
        rows[s] = {eps_grid[s], ms.mean, ms.std_error, reps};
    }
    return fit_sweep("epsilon", std::move(rows));
}

LowerBoundReport lower_bound_check(const std::vector<std::size_t>& n_grid, std::size_t min_reps,
                                   SeedPolicy seed, unsigned workers) {
    if (n_grid.empty()) throw std::invalid_argument("lower_bound_check: empty grid");
    if (min_reps < 100) throw std::invalid_argument("lower_bound_check: need min_reps >= 100");

    LowerBoundReport report;
    report.all_ok = true;
    for (const std::size_t n : n_grid) {
        if (n == 0) throw std::invalid_argument("lower_bound_check: n must be positive");
        const std::size_t reps = std::max<std::size_t>(min_reps, 2000000 / n);
        const auto vals = run_replications(reps, workers, [&](std::size_t r) {
            Stream stream = make_stream(seed.master_seed, r, kLowerTag ^ mix64(n));
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += stream.next_unit();
            return std::abs(s / static_cast<double>(n) - 0.5);
        });
        const MeanSe ms = mean_se(vals);
        LowerBoundRow row;
        row.n = n;
        row.reps = reps;
        row.estimate = ms.mean;
        row.std_error = ms.std_error;
        row.threshold = 0.105 / std::sqrt(static_cast<double>(n));
        row.asymptote = std::sqrt(2.0 / 3.14159265358979323846) /
                        std::sqrt(12.0 * static_cast<double>(n));
        row.ok = row.estimate >= row.threshold;
        report.all_ok = report.all_ok && row.ok;
        report.rows.push_back(row);
    }
    return report;
}

HuberReport huber_indistinguishability_check(double epsilon, std::size_t n, SeedPolicy seed) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("huber_check: epsilon must be in (0,1)");
    if (n < 100) throw std::invalid_argument("huber_check: need n >= 100");

    const GeneratorSpec g1 = GeneratorSpec::lowerbound_contam(1, 1, epsilon);
    const GeneratorSpec g2 = GeneratorSpec::lowerbound_contam(2, 1, epsilon);
    const ContaminatingLaw q1 = Uniform1dLaw{1.0 - epsilon, 1.0};
    const ContaminatingLaw q2 = Uniform1dLaw{0.0, epsilon};

    Stream sa = make_stream(seed.master_seed, 0, purpose_tag("huber-a"));
    Stream sb = make_stream(seed.master_seed, 0, purpose_tag("huber-b"));
    const Dataset da = synthesize_huber(HuberKind::HC, g1, q1, epsilon, n, sa);
    const Dataset db = synthesize_huber(HuberKind::HC, g2, q2, epsilon, n, sb);

    const auto first_coords = [](const Dataset& ds) {
        std::vector<double> xs;
        xs.reserve(ds.points.size());
        for (const auto& p : ds.points) xs.push_back(p.coords[0]);
        return xs;
    };
    const auto xa = first_coords(da);
    const auto xb = first_coords(db);

    HuberReport rep;
    rep.epsilon = epsilon;
    rep.n = n;
    rep.ks_two_sample = ks_statistic_two_sample(xa, xb);
    rep.ks_two_sample_critical = ks_critical_two_sample(n, n, 0.01);
    rep.ks_one_sample_a = ks_statistic_uniform(xa);
    rep.ks_one_sample_b = ks_statistic_uniform(xb);
    rep.ks_one_sample_critical = ks_critical_one_sample(n, 0.01);
    rep.ks_ok = rep.ks_two_sample <= rep.ks_two_sample_critical &&
                rep.ks_one_sample_a <= rep.ks_one_sample_critical &&
                rep.ks_one_sample_b <= rep.ks_one_sample_critical;

    Stream sc = make_stream(seed.master_seed, 0, purpose_tag("huber-clean"));
    const auto clean_coords = [&](const GeneratorSpec& g) {
        std::vector<double> xs;
        xs.reserve(n);
        for (const auto& p : pushforward_sample(g, n, sc)) xs.push_back(p.coords[0]);
        return xs;
    };
    const MeanSe ma = mean_se(clean_coords(g1));
    const MeanSe mb = mean_se(clean_coords(g2));
    rep.projection_gap = std::abs(ma.mean - mb.mean);
    rep.mc_error = std::hypot(ma.std_error, mb.std_error);
    rep.gap_ok = rep.projection_gap >= epsilon - 3.0 * rep.mc_error;
    return rep;
}

}  // namespace genipm
