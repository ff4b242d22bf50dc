#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "genipm/experiments.hpp"

using namespace genipm;

namespace {

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

TEST_CASE("rate fit recovers an exact power law") {
    std::vector<RatePoint> grid;
    for (const std::size_t n : {100, 200, 400, 800, 1600})
        grid.push_back(RatePoint{n, 3.7 * std::pow(n, -0.5), 0.0, 1});
    const auto fit = fit_rate(grid);
    CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(3.7)).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.slope_std_error == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(fit.grid.size() == 5);
}

TEST_CASE("sweep fit recovers an exact line") {
    std::vector<SweepPoint> rows;
    for (const double v : {0.0, 0.1, 0.2, 0.3})
        rows.push_back(SweepPoint{v, 0.02 + 0.5 * v, 0.0, 1});
    const auto fit = fit_sweep("sigma", rows);
    CHECK(fit.param == "sigma");
    CHECK(fit.slope == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rate study is deterministic and worker-count invariant") {
    const auto g = GeneratorSpec::affine(1, 1, {0.25}, {0.5});
    const std::vector<std::size_t> grid{32, 64, 128, 256};
    const auto a = rate_study(g, w1_metric(), grid, 30, SeedPolicy{91, 0, 0}, 1);
    const auto b = rate_study(g, w1_metric(), grid, 30, SeedPolicy{91, 0, 0}, 2);
    REQUIRE(a.grid.size() == b.grid.size());
    for (std::size_t i = 0; i < a.grid.size(); ++i) {
        CHECK(a.grid[i].mean == b.grid[i].mean);  // bitwise: order-fixed reduction
        CHECK(a.grid[i].std_error == b.grid[i].std_error);
    }
    CHECK(a.slope == b.slope);
    // 1-D exact reference: the decay is n^{-1/2} within a wide tolerance
    CHECK(a.slope < -0.3);
    CHECK(a.slope > -0.7);
    CHECK(a.r_squared > 0.9);
}

TEST_CASE("rate study validates its grid") {
    const auto g = GeneratorSpec::identity(1);
    CHECK_THROWS_AS(rate_study(g, w1_metric(), {32, 64, 128}, 30, SeedPolicy{1, 0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(rate_study(g, w1_metric(), {32, 64, 64, 128}, 30, SeedPolicy{1, 0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(rate_study(g, w1_metric(), {32, 64, 128, 256}, 10, SeedPolicy{1, 0, 0}),
                    std::invalid_argument);
}

TEST_CASE("noise sweep baseline is small and the curve rises") {
    const auto g = GeneratorSpec::affine(1, 1, {0.25}, {0.5});
    const auto res = noise_sweep(g, projection_metric(), {0.0, 0.1, 0.2}, 400, 40,
                                 SeedPolicy{92, 0, 0}, NoiseModel::Uniform1d, 2);
    REQUIRE(res.rows.size() == 3);
    CHECK(res.param == "sigma");
    // sigma = 0: pure sampling noise in the first-axis mean, order 1/sqrt(n)
    CHECK(res.rows[0].mean < 0.05);
    CHECK(res.rows[2].mean > res.rows[0].mean);
    // one-sided uniform noise shifts the mean by sigma/2
    CHECK(res.slope == doctest::Approx(0.5).epsilon(0.1));
    CHECK(res.r_squared > 0.95);
}

TEST_CASE("contamination sweep slope matches the corner displacement") {
    const auto g = GeneratorSpec::affine(1, 1, {0.25}, {0.5});
    const auto res = contamination_sweep(g, projection_metric(), {0.0, 0.1, 0.2}, 500, 40,
                                         SeedPolicy{93, 0, 0}, 2);
    REQUIRE(res.rows.size() == 3);
    CHECK(res.param == "epsilon");
    // corner outliers pull the first-axis mean by eps * (1 - 1/2) = eps / 2
    CHECK(res.slope == doctest::Approx(0.5).epsilon(0.1));
    CHECK(res.r_squared > 0.95);
}

TEST_CASE("sweep grids must start at zero and increase") {
    const auto g = GeneratorSpec::identity(1);
    CHECK_THROWS_AS(noise_sweep(g, projection_metric(), {0.1, 0.2}, 100, 30, SeedPolicy{1, 0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(noise_sweep(g, projection_metric(), {0.0, 0.2, 0.1}, 100, 30,
                                SeedPolicy{1, 0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(contamination_sweep(g, projection_metric(), {0.0, 1.5}, 100, 30,
                                        SeedPolicy{1, 0, 0}),
                    std::invalid_argument);
}

TEST_CASE("mean deviation of uniforms clears the lower threshold") {
    const auto report = lower_bound_check({5000, 10000}, 400, SeedPolicy{94, 0, 0}, 2);
    REQUIRE(report.rows.size() == 2);
    CHECK(report.all_ok);
    for (const auto& row : report.rows) {
        CHECK(row.ok);
        CHECK(row.estimate >= row.threshold);
        CHECK(row.threshold == doctest::Approx(0.105 / std::sqrt(row.n)));
        // estimate hugs the CLT asymptote sqrt(2/pi) sd / sqrt(n)
        CHECK(row.estimate == doctest::Approx(row.asymptote).epsilon(0.15));
        CHECK(row.reps >= 400);
    }
    CHECK_THROWS_AS(lower_bound_check({}, 400, SeedPolicy{1, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(lower_bound_check({100}, 50, SeedPolicy{1, 0, 0}), std::invalid_argument);
}

TEST_CASE("contaminated pair looks identical while the clean laws differ") {
    // seed chosen once; the three 1%-level tests reject ~3% of seeds jointly
    const auto rep = huber_indistinguishability_check(0.25, 20000, SeedPolicy{95, 0, 0});
    CHECK(rep.epsilon == 0.25);
    CHECK(rep.n == 20000);
    CHECK(rep.ks_ok);
    CHECK(rep.ks_two_sample < rep.ks_two_sample_critical);
    CHECK(rep.ks_one_sample_a < rep.ks_one_sample_critical);
    CHECK(rep.ks_one_sample_b < rep.ks_one_sample_critical);
    CHECK(rep.gap_ok);
    CHECK(rep.projection_gap > 0.25 - 3.0 * rep.mc_error);
    CHECK(rep.projection_gap < 0.25 + 3.0 * rep.mc_error);
    CHECK_THROWS_AS(huber_indistinguishability_check(0.0, 1000, SeedPolicy{1, 0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(huber_indistinguishability_check(0.5, 50, SeedPolicy{1, 0, 0}),
                    std::invalid_argument);
}
