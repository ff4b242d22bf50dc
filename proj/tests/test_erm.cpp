#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "genipm/erm.hpp"
#include "genipm/sampling.hpp"

using namespace genipm;

namespace {

DiscreteMeasure two_points() {
    return DiscreteMeasure::empirical({AmbientPoint{{0.2}}, AmbientPoint{{0.6}}});
}

DiscreteMeasure affine_sample(std::size_t n, std::uint64_t seed) {
    Stream s = make_stream(seed, 0, 0);
    const auto g = GeneratorSpec::affine(1, 1, {0.25}, {0.5});
    return DiscreteMeasure::empirical(pushforward_sample(g, n, s));
}

IpmSpec w1_metric() {
    IpmSpec m;
    m.kind = IpmKind::W1Assignment;
    return m;
}

IpmSpec projection_metric() {
    IpmSpec m;
    m.kind = IpmKind::ProjectionFirstAxis;
    return m;
}

}  // namespace

TEST_CASE("objective is a function of theta and the stream state") {
    auto prob = affine_1d_problem(affine_sample(100, 5), w1_metric());
    prob.m = 200;
    Stream s = make_stream(77, 0, 0);
    const std::vector<double> theta{0.2, 0.5};
    const double v1 = empirical_objective(theta, prob, s);
    const double v2 = empirical_objective(theta, prob, s);
    CHECK(v1 == v2);  // stream passed by value: caller state untouched
    s.next_unit();
    const double v3 = empirical_objective(theta, prob, s);
    CHECK(v3 != v1);
}

TEST_CASE("objective rejects invalid theta") {
    auto prob = affine_1d_problem(affine_sample(50, 6), w1_metric());
    Stream s = make_stream(78, 0, 0);
    CHECK_THROWS_AS(empirical_objective({0.5, 0.5}, prob, s), std::invalid_argument);
    CHECK_THROWS_AS(empirical_objective({0.1}, prob, s), std::invalid_argument);
}

TEST_CASE("constant family recovers the data mean under the projection metric") {
    auto prob = constant_problem(1, two_points(), projection_metric());
    prob.m = 50;
    Stream s = make_stream(79, 0, 0);
    const auto sol = fit(prob, s);
    CHECK(std::abs(sol.theta[0] - 0.4) < 1e-6);
    CHECK(sol.value < 1e-6);
    CHECK(sol.evaluations <= prob.max_evals);
}

TEST_CASE("affine fit lands near the source parameters") {
    auto prob = affine_1d_problem(affine_sample(1000, 7), w1_metric());
    prob.m = 1000;
    prob.max_evals = 1500;
    prob.restarts = 3;
    Stream s = make_stream(80, 0, 0);
    const auto sol = fit(prob, s);
    CHECK(std::abs(sol.theta[0] - 0.25) < 0.05);
    CHECK(std::abs(sol.theta[1] - 0.5) < 0.05);
    CHECK(sol.value >= 0.0);
}

TEST_CASE("fit is deterministic in the stream") {
    auto prob = affine_1d_problem(affine_sample(200, 8), w1_metric());
    prob.m = 200;
    prob.max_evals = 400;
    prob.restarts = 2;
    Stream s1 = make_stream(81, 2, 3);
    Stream s2 = make_stream(81, 2, 3);
    const auto a = fit(prob, s1);
    const auto b = fit(prob, s2);
    CHECK(a.theta == b.theta);
    CHECK(a.value == b.value);
    CHECK(a.evaluations == b.evaluations);
    CHECK(a.winner_restart == b.winner_restart);
}

TEST_CASE("reported value is reproducible from the forked latent stream") {
    auto prob = affine_1d_problem(affine_sample(300, 9), w1_metric());
    prob.m = 300;
    prob.max_evals = 600;
    prob.restarts = 2;
    Stream fit_stream = make_stream(82, 0, 0);
    Stream probe = fit_stream;
    Stream latents = probe.fork("erm-latents");  // replicate what fit() does first
    const auto sol = fit(prob, fit_stream);
    CHECK(empirical_objective(sol.theta, prob, latents) == sol.value);
}

TEST_CASE("tiny budgets are flagged") {
    auto prob = affine_1d_problem(affine_sample(100, 10), w1_metric());
    prob.m = 100;
    prob.max_evals = 20;
    prob.restarts = 1;
    Stream s = make_stream(83, 0, 0);
    const auto sol = fit(prob, s);
    CHECK(sol.budget_exhausted);
    CHECK(sol.evaluations <= prob.max_evals + 3);
    REQUIRE(sol.theta.size() == 2);
    CHECK(sol.theta[0] >= prob.box_lo[0]);
    CHECK(sol.theta[1] <= prob.box_hi[1]);
    CHECK(std::isfinite(sol.value));
}

TEST_CASE("dictionary metric scales linearly in the smoothness radius") {
    auto prob = affine_1d_problem(affine_sample(150, 11), w1_metric());
    prob.m = 150;
    prob.metric.kind = IpmKind::WalphaDictionary;
    prob.metric.walpha.lip = 1.0;
    Stream s = make_stream(84, 0, 0);
    const std::vector<double> theta{0.1, 0.4};
    const double v1 = empirical_objective(theta, prob, s);
    prob.metric.walpha.lip = 2.0;
    const double v2 = empirical_objective(theta, prob, s);
    CHECK(v2 == doctest::Approx(2.0 * v1).epsilon(1e-12));
}

TEST_CASE("problem validation happens before any work") {
    Stream s = make_stream(85, 0, 0);
    auto prob = affine_1d_problem(affine_sample(50, 12), w1_metric());
    prob.restarts = 0;
    CHECK_THROWS_AS(fit(prob, s), std::invalid_argument);
    prob.restarts = 8;
    prob.max_evals = 50;  // below 20 per restart
    CHECK_THROWS_AS(fit(prob, s), std::invalid_argument);
    prob.max_evals = 4000;
    prob.m = 0;
    CHECK_THROWS_AS(fit(prob, s), std::invalid_argument);

    auto bad_box = affine_1d_problem(affine_sample(50, 13), w1_metric(), {0.5, 0.5}, {0.2, 0.7});
    CHECK_THROWS_AS(fit(bad_box, s), std::invalid_argument);

    CHECK_THROWS_AS(
        affine_1d_problem(DiscreteMeasure::empirical({AmbientPoint{{0.1, 0.2}}}), w1_metric()),
        std::invalid_argument);
    CHECK_THROWS_AS(constant_problem(2, two_points(), projection_metric()),
                    std::invalid_argument);
}

TEST_CASE("audit chain holds on a small affine run") {
    auto prototype = affine_1d_problem(two_points(), w1_metric());
    prototype.m = 400;
    prototype.max_evals = 800;
    prototype.restarts = 2;
    const auto g_star = GeneratorSpec::affine(1, 1, {0.25}, {0.5});
    const auto report = audit_oracle_inequality(prototype, g_star, 200, 3, SeedPolicy{86, 0, 0});
    REQUIRE(report.replications.size() == 3);
    CHECK(report.all_ok);
    for (const auto& rep : report.replications) {
        CHECK(rep.ok);
        CHECK(rep.risk_fitted >= 0.0);
        CHECK(rep.d_emp > 0.0);
        CHECK(rep.mc_error > 0.0);
        CHECK(rep.inf_grid >= 0.0);
        CHECK(rep.risk_fitted <= rep.inf_grid + 2.0 * rep.d_emp + 3.0 * rep.mc_error + 1e-12);
    }
}

TEST_CASE("audit chain holds for the constant family under projection") {
    auto prototype = constant_problem(2, DiscreteMeasure::empirical({AmbientPoint{{0.5, 0.5}}}),
                                      projection_metric());
    prototype.m = 100;
    prototype.max_evals = 400;
    prototype.restarts = 2;
    const auto g_star = GeneratorSpec::constant(1, {0.3, 0.55});
    const auto report = audit_oracle_inequality(prototype, g_star, 50, 2, SeedPolicy{87, 0, 0});
    CHECK(report.all_ok);
}

TEST_CASE("audit rejects metrics without an exact risk path") {
    auto prototype = affine_1d_problem(two_points(), w1_metric());
    prototype.metric.kind = IpmKind::WalphaDictionary;
    prototype.m = 50;
    prototype.max_evals = 100;
    prototype.restarts = 2;
    const auto g_star = GeneratorSpec::affine(1, 1, {0.25}, {0.5});
    CHECK_THROWS_AS(audit_oracle_inequality(prototype, g_star, 20, 1, SeedPolicy{88, 0, 0}),
                    std::invalid_argument);
}
