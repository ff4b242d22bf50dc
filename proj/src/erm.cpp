#include "genipm/erm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "genipm/sampling.hpp"
#include "genipm/w1_1d.hpp"

namespace genipm {

namespace {

void check_box(const ErmProblem& p) {
    if (!p.instantiate) throw std::invalid_argument("erm: missing instantiate");
    if (p.box_lo.empty() || p.box_lo.size() != p.box_hi.size())
        throw std::invalid_argument("erm: bad box");
    for (std::size_t i = 0; i < p.box_lo.size(); ++i)
        if (!(p.box_lo[i] <= p.box_hi[i])) throw std::invalid_argument("erm: box_lo > box_hi");
    if (p.m == 0) throw std::invalid_argument("erm: need m >= 1");
    if (p.restarts == 0 || p.max_evals < 20 * p.restarts)
        throw std::invalid_argument("erm: budget too small for the restart count");
}

std::vector<double> clamp_to_box(std::vector<double> theta, const ErmProblem& p) {
    for (std::size_t i = 0; i < theta.size(); ++i)
        theta[i] = std::clamp(theta[i], p.box_lo[i], p.box_hi[i]);
    return theta;
}

// lattice over the box, `per` points per axis, endpoints included
std::vector<std::vector<double>> box_lattice(const ErmProblem& p, std::size_t per) {
    const std::size_t dim = p.box_lo.size();
    std::vector<std::vector<double>> out;
    std::vector<std::size_t> idx(dim, 0);
    while (true) {
        std::vector<double> theta(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            const double t = per == 1 ? 0.5 : static_cast<double>(idx[i]) / (per - 1);
            theta[i] = p.box_lo[i] + t * (p.box_hi[i] - p.box_lo[i]);
        }
        out.push_back(std::move(theta));
        std::size_t a = dim;
        while (a > 0 && ++idx[a - 1] == per) idx[--a] = 0;
        if (a == 0) break;
    }
    return out;
}

std::size_t lattice_per_axis(std::size_t dim) {
    if (dim == 1) return 33;
    if (dim == 2) return 9;
    if (dim == 3) return 5;
    return 3;
}

struct Search {
    const ErmProblem& prob;
    Stream latents;  // frozen state: copied into every objective call
    std::size_t evals = 0;
    std::size_t current_restart = 0;
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_theta;
    std::size_t best_restart = 0;

    double eval(const std::vector<double>& raw) {
        const auto theta = clamp_to_box(raw, prob);
        const double v = empirical_objective(theta, prob, latents);
        ++evals;
        if (v < best) {
            best = v;
            best_theta = theta;
            best_restart = current_restart;
        }
        return v;
    }
};

// one clamped Nelder-Mead run; returns true if it stopped on its own
bool nelder_mead(Search& s, const std::vector<double>& start, std::size_t eval_cap) {
    const std::size_t dim = start.size();
    const auto& lo = s.prob.box_lo;
    const auto& hi = s.prob.box_hi;

    std::vector<std::vector<double>> x(dim + 1, start);
    for (std::size_t i = 0; i < dim; ++i) {
        const double step = 0.15 * (hi[i] - lo[i]);
        double v = start[i] + step;
        if (v > hi[i]) v = start[i] - step;
        x[i + 1][i] = v;
    }
    std::vector<double> f(dim + 1);
    std::size_t used = 0;
    for (std::size_t i = 0; i <= dim && used < eval_cap; ++i, ++used) f[i] = s.eval(x[i]);
    if (used < dim + 1) return false;

    std::vector<std::size_t> ord(dim + 1);
    while (used < eval_cap) {
        for (std::size_t i = 0; i <= dim; ++i) ord[i] = i;
        std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
            return f[a] != f[b] ? f[a] < f[b] : a < b;
        });
        const std::size_t ib = ord[0], is = ord[dim - 1], iw = ord[dim];

        double span = 0.0;
        for (std::size_t i = 0; i <= dim; ++i)
            for (std::size_t a = 0; a < dim; ++a)
                span = std::max(span, std::abs(x[i][a] - x[ib][a]));
        if (span < 1e-10 && f[iw] - f[ib] < 1e-13) return true;

        std::vector<double> c(dim, 0.0);
        for (std::size_t i = 0; i <= dim; ++i)
            if (i != iw)
                for (std::size_t a = 0; a < dim; ++a) c[a] += x[i][a] / dim;

        const auto along = [&](double t) {
            std::vector<double> p(dim);
            for (std::size_t a = 0; a < dim; ++a) p[a] = c[a] + t * (c[a] - x[iw][a]);
            return clamp_to_box(std::move(p), s.prob);
        };

        auto xr = along(1.0);
        const double fr = s.eval(xr);
        ++used;
        if (fr < f[ib]) {
            if (used >= eval_cap) return false;
            auto xe = along(2.0);
            const double fe = s.eval(xe);
            ++used;
            if (fe < fr) {
                x[iw] = std::move(xe);
                f[iw] = fe;
            } else {
                x[iw] = std::move(xr);
                f[iw] = fr;
            }
        } else if (fr < f[is]) {
            x[iw] = std::move(xr);
            f[iw] = fr;
        } else {
            if (used >= eval_cap) return false;
            if (fr < f[iw]) {
                auto xc = along(0.5);  // outside contraction
                const double fc = s.eval(xc);
                ++used;
                if (fc <= fr) {
                    x[iw] = std::move(xc);
                    f[iw] = fc;
                    continue;
                }
            } else {
                auto xc = along(-0.5);  // inside contraction
                const double fc = s.eval(xc);
                ++used;
                if (fc < f[iw]) {
                    x[iw] = std::move(xc);
                    f[iw] = fc;
                    continue;
                }
            }
            for (std::size_t i = 0; i <= dim && used < eval_cap; ++i) {
                if (i == ib) continue;
                for (std::size_t a = 0; a < dim; ++a) x[i][a] = x[ib][a] + 0.5 * (x[i][a] - x[ib][a]);
                f[i] = s.eval(x[i]);
                ++used;
            }
        }
    }
    return false;
}

}  // namespace

ErmProblem affine_1d_problem(DiscreteMeasure data, IpmSpec metric, std::vector<double> box_lo,
                             std::vector<double> box_hi) {
    if (data.dim() != 1) throw std::invalid_argument("affine_1d_problem: needs 1-D data");
    ErmProblem p{
        [](const std::vector<double>& t) {
            return GeneratorSpec::affine(1, 1, {t[0]}, {t[1]});
        },
        std::move(box_lo), std::move(box_hi), std::move(data), metric,
    };
    return p;
}

ErmProblem constant_problem(std::size_t D, DiscreteMeasure data, IpmSpec metric) {
    if (data.dim() != D) throw std::invalid_argument("constant_problem: dimension mismatch");
    ErmProblem p{
        [](const std::vector<double>& t) { return GeneratorSpec::constant(1, t); },
        std::vector<double>(D, 0.0), std::vector<double>(D, 1.0), std::move(data), metric,
    };
    return p;
}

double empirical_objective(const std::vector<double>& theta, const ErmProblem& problem,
                           Stream latents) {
    if (theta.size() != problem.box_lo.size())
        throw std::invalid_argument("empirical_objective: theta dimension mismatch");
    for (std::size_t i = 0; i < theta.size(); ++i)
        if (theta[i] < problem.box_lo[i] - 1e-12 || theta[i] > problem.box_hi[i] + 1e-12)
            throw std::invalid_argument("empirical_objective: theta outside the box");
    const GeneratorSpec g = problem.instantiate(theta);
    auto pts = pushforward_sample(g, problem.m, latents);
    return evaluate_ipm(problem.metric, DiscreteMeasure::empirical(std::move(pts)), problem.data);
}

ErmSolution fit(const ErmProblem& problem, Stream& stream) {
    check_box(problem);
    const std::size_t dim = problem.box_lo.size();

    Search s{problem, stream.fork("erm-latents"), 0, 0,
             std::numeric_limits<double>::infinity(), {}, 0};

    auto lattice = box_lattice(problem, lattice_per_axis(dim));
    if (lattice.size() > problem.max_evals / 2) lattice = box_lattice(problem, 3);
    std::vector<double> grid_best;
    double grid_best_f = std::numeric_limits<double>::infinity();
    for (const auto& theta : lattice) {
        const double v = s.eval(theta);
        if (v < grid_best_f) {
            grid_best_f = v;
            grid_best = theta;
        }
    }

    bool exhausted = false;
    for (std::size_t r = 0; r < problem.restarts; ++r) {
        s.current_restart = r;
        std::vector<double> start(dim);
        if (r == 0) {
            start = grid_best;
        } else {
            for (std::size_t a = 0; a < dim; ++a)
                start[a] =
                    problem.box_lo[a] + stream.next_unit() * (problem.box_hi[a] - problem.box_lo[a]);
        }
        if (s.evals >= problem.max_evals) {
            exhausted = true;
            break;
        }
        const std::size_t remaining = problem.max_evals - s.evals;
        const std::size_t cap = std::max<std::size_t>(remaining / (problem.restarts - r), dim + 2);
        if (!nelder_mead(s, start, std::min(cap, remaining))) exhausted = true;
    }

    ErmSolution sol;
    sol.theta = s.best_theta;
    sol.value = s.best;
    sol.evaluations = s.evals;
    sol.winner_restart = s.best_restart;
    sol.budget_exhausted = exhausted;
    return sol;
}

namespace {

// exact risk d(g_a # U, g_b # U) for the metric kinds the audit supports
double exact_risk(const IpmSpec& metric, const GeneratorSpec& a, const GeneratorSpec& b) {
    if (metric.kind == IpmKind::ProjectionFirstAxis)
        return std::abs(a.first_coord_mean() - b.first_coord_mean());
    if (metric.kind == IpmKind::W1Exact1d || metric.kind == IpmKind::W1Assignment ||
        metric.kind == IpmKind::W1TransportLp) {
        double alo, ahi, blo, bhi;
        if (!a.pushforward_is_interval() || !b.pushforward_is_interval())
            throw std::invalid_argument("audit: W1 risk needs interval pushforwards");
        a.pushforward_interval(alo, ahi);
        b.pushforward_interval(blo, bhi);
        return w1_interval_interval(alo, ahi, blo, bhi);
    }
    throw std::invalid_argument("audit: metric has no exact risk path");
}

double exact_d_emp(const IpmSpec& metric, const DiscreteMeasure& data, const GeneratorSpec& star) {
    if (metric.kind == IpmKind::ProjectionFirstAxis)
        return std::abs(data.mean_coordinate(0) - star.first_coord_mean());
    double lo, hi;
    star.pushforward_interval(lo, hi);
    return w1_exact_1d_vs_interval(data, lo, hi);
}

}  // namespace

AuditReport audit_oracle_inequality(const ErmProblem& prototype, const GeneratorSpec& g_star,
                                    std::size_t n, std::size_t reps, SeedPolicy seed) {
    check_box(prototype);
    if (n == 0 || reps == 0) throw std::invalid_argument("audit: need n, reps >= 1");

    const std::size_t dim = prototype.box_lo.size();
    const auto grid = box_lattice(prototype, dim <= 2 ? 21 : 7);

    double lip_box = g_star.lipschitz_upper_bound();
    for (const auto& theta : grid)
        lip_box = std::max(lip_box, prototype.instantiate(theta).lipschitz_upper_bound());

    AuditReport report;
    report.replications.reserve(reps);
    report.all_ok = true;

    for (std::size_t r = 0; r < reps; ++r) {
        Stream data_stream = make_stream(seed.master_seed, r, purpose_tag("audit-data"));
        auto pts = pushforward_sample(g_star, n, data_stream);

        ErmProblem problem = prototype;
        problem.data = DiscreteMeasure::empirical(std::move(pts));

        Stream fit_stream = make_stream(seed.master_seed, r, purpose_tag("audit-fit"));
        Stream probe = fit_stream;
        Stream latents = probe.fork("erm-latents");  // same fork fit() performs

        ErmSolution sol = fit(problem, fit_stream);

        // ERM over the union of the search probes and the audit grid, so the
        // fitted value is <= the objective at every grid point by construction
        for (const auto& theta : grid) {
            const double v = empirical_objective(theta, problem, latents);
            if (v < sol.value) {
                sol.value = v;
                sol.theta = theta;
            }
        }

        const GeneratorSpec fitted = problem.instantiate(sol.theta);
        if (fitted.latent_dim() != 1)
            throw std::invalid_argument("audit: latent substitution bound needs d = 1");

        // exact substitution error bound: lip_box * W1(latent sample, U[0,1])
        Stream lat_copy = latents;
        const auto lat = sample_latent(problem.m, 1, lat_copy);
        std::vector<AmbientPoint> lat_pts;
        lat_pts.reserve(lat.size());
        for (const auto& u : lat) lat_pts.push_back(AmbientPoint{u.coords});
        const double gamma =
            w1_exact_1d_vs_interval(DiscreteMeasure::empirical(std::move(lat_pts)), 0.0, 1.0);

        AuditReplication rep;
        rep.mc_error = lip_box * gamma + 1e-12;
        rep.risk_fitted = exact_risk(problem.metric, fitted, g_star);
        rep.inf_grid = std::numeric_limits<double>::infinity();
        for (const auto& theta : grid)
            rep.inf_grid =
                std::min(rep.inf_grid, exact_risk(problem.metric, problem.instantiate(theta), g_star));
        rep.d_emp = exact_d_emp(problem.metric, problem.data, g_star);
        rep.ok = rep.risk_fitted <= rep.inf_grid + 2.0 * rep.d_emp + 3.0 * rep.mc_error + 1e-12;
        report.all_ok = report.all_ok && rep.ok;
        report.replications.push_back(rep);
    }
    return report;
}

}  // namespace genipm
