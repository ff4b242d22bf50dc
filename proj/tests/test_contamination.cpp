#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "genipm/contamination.hpp"
#include "genipm/stats.hpp"

using namespace genipm;

namespace {

DataSpec basic_spec(GeneratorSpec g, double sigma, double eps, NoiseModel nm,
                    OutlierPolicy policy = OutlierPolicy::Corner) {
    return DataSpec{std::move(g), sigma, eps, nm, policy, std::nullopt, nullptr};
}

}  // namespace

TEST_CASE("outlier block is floor(eps n), placed last, flagged") {
    Stream s = make_stream(1, 0, 0);
    const auto ds = synthesize(basic_spec(GeneratorSpec::identity(2), 0.0, 0.13,
                                          NoiseModel::SphereFixed),
                               100, s);
    REQUIRE(ds.n() == 100);
    CHECK(ds.inlier_count() == 87);
    for (std::size_t i = 0; i < 87; ++i) CHECK(ds.inlier[i]);
    for (std::size_t i = 87; i < 100; ++i) {
        CHECK_FALSE(ds.inlier[i]);
        CHECK(ds.points[i].coords == std::vector<double>{1.0, 1.0});
    }
    CHECK(ds.latents.size() == 87);
    CHECK(ds.noise_norm.size() == 87);
}

TEST_CASE("sphere noise has norm exactly sigma") {
    Stream s = make_stream(2, 0, 0);
    const auto ds = synthesize(basic_spec(GeneratorSpec::constant(3, {0.5, 0.5, 0.5}), 0.07,
                                          0.0, NoiseModel::SphereFixed),
                               300, s);
    for (const double nn : ds.noise_norm) CHECK(nn == doctest::Approx(0.07).epsilon(1e-12));
}

TEST_CASE("scaled gaussian noise has mean norm sigma") {
    Stream s = make_stream(3, 0, 0);
    const double sigma = 0.2;
    for (const std::size_t D : {std::size_t{1}, std::size_t{3}}) {
        const auto ds = synthesize(
            basic_spec(GeneratorSpec::constant(D, std::vector<double>(D, 0.5)), sigma, 0.0,
                       NoiseModel::GaussianScaled),
            50000, s);
        const MeanSe m = mean_se(ds.noise_norm);
        CHECK(std::abs(m.mean - sigma) <= 5.0 * m.std_error);
    }
}

TEST_CASE("uniform-1d noise is one-sided on the first coordinate") {
    Stream s = make_stream(4, 0, 0);
    const double sigma = 0.3;
    const auto g = GeneratorSpec::constant(2, {0.2, 0.6});
    const auto ds = synthesize(basic_spec(g, sigma, 0.0, NoiseModel::Uniform1d), 20000, s);
    for (std::size_t i = 0; i < ds.n(); ++i) {
        CHECK(ds.points[i].coords[0] >= 0.2);
        CHECK(ds.points[i].coords[0] <= 0.2 + sigma);
        CHECK(ds.points[i].coords[1] == 0.6);
        CHECK(ds.noise_norm[i] == doctest::Approx(ds.points[i].coords[0] - 0.2).epsilon(1e-12));
    }
    std::vector<double> firsts;
    for (const auto& p : ds.points) firsts.push_back(p.coords[0]);
    const MeanSe m = mean_se(firsts);
    CHECK(std::abs(m.mean - (0.2 + 0.5 * sigma)) <= 5.0 * m.std_error);
}

TEST_CASE("corner instance composes the affine map, one-sided noise, corner block") {
    Stream s = make_stream(5, 0, 0);
    const double sigma = 0.2, eps = 0.25;
    const auto ds = corner_instance(sigma, eps, 40, 3, s);
    REQUIRE(ds.n() == 40);
    CHECK(ds.inlier_count() == 30);
    for (std::size_t i = 0; i < 30; ++i) {
        const auto& u = ds.latents[i];
        const auto& x = ds.points[i];
        // noise only touches the first coordinate, so it is recoverable exactly
        CHECK(x.coords[0] - (0.25 + 0.5 * u.coords[0]) ==
              doctest::Approx(ds.noise_norm[i]).epsilon(1e-12));
        CHECK(x.coords[1] == doctest::Approx(0.25 + 0.5 * u.coords[1]).epsilon(1e-12));
        CHECK(x.coords[2] == doctest::Approx(0.25 + 0.5 * u.coords[2]).epsilon(1e-12));
        CHECK(ds.noise_norm[i] >= 0.0);
        CHECK(ds.noise_norm[i] <= sigma);
    }
    for (std::size_t i = 30; i < 40; ++i)
        CHECK(ds.points[i].coords == std::vector<double>{1.0, 1.0, 1.0});
    CHECK_THROWS_AS(corner_instance(0.6, 0.0, 10, 1, s), std::invalid_argument);
}

TEST_CASE("fixed-count huber contamination draws exactly floor(eps n) from Q, last") {
    Stream s = make_stream(6, 0, 0);
    const auto g = GeneratorSpec::lowerbound_contam(1, 1, 0.25);  // pushforward U[0, 0.75]
    const ContaminatingLaw q = Uniform1dLaw{0.8, 0.9};
    const auto ds = synthesize_huber(HuberKind::HDC, g, q, 0.1, 500, s);
    REQUIRE(ds.n() == 500);
    CHECK(ds.inlier_count() == 450);
    for (std::size_t i = 0; i < 450; ++i) {
        CHECK(ds.inlier[i]);
        CHECK(ds.points[i].coords[0] <= 0.75 + 1e-12);
    }
    for (std::size_t i = 450; i < 500; ++i) {
        CHECK_FALSE(ds.inlier[i]);
        CHECK(ds.points[i].coords[0] >= 0.8);
        CHECK(ds.points[i].coords[0] <= 0.9);
    }
}

TEST_CASE("mixture huber contamination count is binomial") {
    Stream s = make_stream(7, 0, 0);
    const auto g = GeneratorSpec::identity(1);
    const ContaminatingLaw q = Uniform1dLaw{0.0, 1.0};
    const double eps = 0.3;
    const std::size_t n = 20000;
    const auto ds = synthesize_huber(HuberKind::HC, g, q, eps, n, s);
    const double outliers = static_cast<double>(n - ds.inlier_count());
    const double sd = std::sqrt(static_cast<double>(n) * eps * (1.0 - eps));
    CHECK(std::abs(outliers - eps * static_cast<double>(n)) <= 5.0 * sd);
}

TEST_CASE("generator-valued contaminating law must match the ambient dimension") {
    Stream s = make_stream(8, 0, 0);
    const auto g = GeneratorSpec::identity(2);
    const ContaminatingLaw q = GeneratorSpec::identity(3);
    CHECK_THROWS_AS(synthesize_huber(HuberKind::HDC, g, q, 0.5, 10, s), std::invalid_argument);
}

TEST_CASE("custom adversary sees every realized inlier") {
    Stream s = make_stream(9, 0, 0);
    std::size_t seen_inliers = 0, asked = 0;
    auto spec = basic_spec(GeneratorSpec::identity(2), 0.0, 0.2, NoiseModel::SphereFixed,
                           OutlierPolicy::CustomPoints);
    spec.custom_adversary = [&](const std::vector<AmbientPoint>& inliers, std::size_t count,
                                Stream&) {
        seen_inliers = inliers.size();
        asked = count;
        // echo the first inlier back as every outlier
        return std::vector<AmbientPoint>(count, inliers.at(0));
    };
    const auto ds = synthesize(spec, 50, s);
    CHECK(seen_inliers == 40);
    CHECK(asked == 10);
    for (std::size_t i = 40; i < 50; ++i) CHECK(ds.points[i].coords == ds.points[0].coords);

    spec.custom_adversary = [](const std::vector<AmbientPoint>&, std::size_t,
                               Stream&) { return std::vector<AmbientPoint>{}; };
    CHECK_THROWS_AS(synthesize(spec, 50, s), std::invalid_argument);
}

TEST_CASE("spec validation") {
    Stream s = make_stream(10, 0, 0);
    auto spec = basic_spec(GeneratorSpec::identity(1), 0.0, 0.0, NoiseModel::SphereFixed);
    CHECK_THROWS_AS(synthesize(spec, 0, s), std::invalid_argument);
    spec.sigma = -0.1;
    CHECK_THROWS_AS(synthesize(spec, 10, s), std::invalid_argument);
    spec.sigma = 0.0;
    spec.epsilon = 1.5;
    CHECK_THROWS_AS(synthesize(spec, 10, s), std::invalid_argument);
    auto huber = basic_spec(GeneratorSpec::identity(1), 0.0, 0.1, NoiseModel::SphereFixed,
                            OutlierPolicy::HuberMixture);
    CHECK_THROWS_AS(synthesize(huber, 10, s), std::invalid_argument);  // no law given
}

TEST_CASE("dataset csv round trip is exact") {
    Stream s = make_stream(11, 0, 0);
    const auto ds = corner_instance(0.1, 0.2, 25, 2, s);
    const DatasetMeta meta{25, 2, 0.1, 0.2, 11};
    std::stringstream buf;
    write_dataset_csv(ds, meta, buf);

    DatasetMeta back_meta;
    const auto back = read_dataset_csv(buf, &back_meta);
    REQUIRE(back.n() == ds.n());
    for (std::size_t i = 0; i < ds.n(); ++i) {
        CHECK(back.points[i].coords == ds.points[i].coords);  // %.17g round trips doubles
        CHECK(back.inlier[i] == ds.inlier[i]);
    }
    CHECK(back_meta.n == meta.n);
    CHECK(back_meta.D == meta.D);
    CHECK(back_meta.sigma == meta.sigma);
    CHECK(back_meta.epsilon == meta.epsilon);
    CHECK(back_meta.seed == meta.seed);
}

TEST_CASE("csv reader rejects malformed input") {
    std::stringstream no_header("x_1,inlier\n0.5,1\n");
    CHECK_THROWS_AS(read_dataset_csv(no_header), std::runtime_error);
}
