#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "genipm/sampling.hpp"

using namespace genipm;

TEST_CASE("latent samples live in the unit cube with uniform moments") {
    Stream s = make_stream(3, 0, 1);
    const auto pts = sample_latent(50000, 3, s);
    REQUIRE(pts.size() == 50000);
    double sum = 0.0;
    for (const auto& p : pts) {
        REQUIRE(p.coords.size() == 3);
        for (const double c : p.coords) {
            REQUIRE(c >= 0.0);
            REQUIRE(c < 1.0);
        }
        sum += p.coords[1];
    }
    // se of the mean is 1/sqrt(12*50000) ~ 0.0013
    CHECK(std::abs(sum / 50000 - 0.5) < 0.006);
}

TEST_CASE("latent sampling is reproducible") {
    Stream a = make_stream(11, 2, 5);
    Stream b = make_stream(11, 2, 5);
    const auto pa = sample_latent(100, 4, a);
    const auto pb = sample_latent(100, 4, b);
    for (std::size_t i = 0; i < pa.size(); ++i) CHECK(pa[i].coords == pb[i].coords);
}

TEST_CASE("degenerate sample requests throw") {
    Stream s = make_stream(0, 0, 0);
    CHECK_THROWS_AS(sample_latent(0, 2, s), std::invalid_argument);
    CHECK_THROWS_AS(sample_latent(5, 0, s), std::invalid_argument);
}

TEST_CASE("sphere directions are unit vectors") {
    Stream s = make_stream(4, 0, 0);
    for (int i = 0; i < 200; ++i) {
        const auto v = sample_sphere_direction(5, s);
        double norm2 = 0.0;
        for (const double c : v) norm2 += c * c;
        CHECK(std::abs(std::sqrt(norm2) - 1.0) <= 1e-12);
    }
}

TEST_CASE("sphere directions have mean zero per axis") {
    Stream s = make_stream(5, 0, 0);
    double sum = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) sum += sample_sphere_direction(3, s)[0];
    CHECK(std::abs(sum / n) < 0.02);  // se ~ 1/sqrt(3n) ~ 0.004
}

TEST_CASE("one-dimensional directions are signs") {
    Stream s = make_stream(6, 0, 0);
    bool saw_plus = false, saw_minus = false;
    for (int i = 0; i < 100; ++i) {
        const auto v = sample_sphere_direction(1, s);
        REQUIRE(v.size() == 1);
        REQUIRE(std::abs(std::abs(v[0]) - 1.0) <= 1e-12);
        (v[0] > 0 ? saw_plus : saw_minus) = true;
    }
    CHECK(saw_plus);
    CHECK(saw_minus);
}
