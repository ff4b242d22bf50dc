#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "genipm/ipm.hpp"
#include "genipm/sampling.hpp"
#include "genipm/w1_1d.hpp"

using namespace genipm;

namespace {

constexpr double kPi = 3.14159265358979323846;

DiscreteMeasure delta(std::vector<double> coords) {
    return DiscreteMeasure::empirical({AmbientPoint{std::move(coords)}});
}

DiscreteMeasure random_cloud(std::size_t n, std::size_t D, Stream& s) {
    std::vector<AmbientPoint> pts;
    pts.reserve(n);
    for (const auto& u : sample_latent(n, D, s)) pts.push_back(AmbientPoint{u.coords});
    return DiscreteMeasure::empirical(std::move(pts));
}

}  // namespace

TEST_CASE("point masses half a unit apart") {
    const auto P = delta({0.0});
    const auto Q = delta({0.5});
    CHECK(w1_empirical(P, Q) == doctest::Approx(0.5));
    CHECK(projection_ipm(P, Q) == doctest::Approx(0.5));

    WalphaSpec spec;  // alpha 1, lip 1, cap 3, projection atoms on
    CHECK(walpha_ipm(P, Q, spec) == doctest::Approx(0.5).epsilon(1e-12));
    spec.include_projection = false;
    // best pure trig atom: cos(pi x) or sin(pi x), both normalized by pi
    CHECK(walpha_ipm(P, Q, spec) == doctest::Approx(1.0 / kPi).epsilon(1e-12));
}

TEST_CASE("dictionary gap never exceeds lip times W1") {
    Stream s = make_stream(41, 0, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t D = 1 + rep % 2;
        const auto P = random_cloud(6 + rep % 5, D, s);
        const auto Q = random_cloud(4 + rep % 7, D, s);
        const double w1 = w1_empirical(P, Q);
        for (const double lip : {1.0, 2.0}) {
            WalphaSpec spec;
            spec.lip = lip;
            const double wa = walpha_ipm(P, Q, spec);
            CHECK(wa <= lip * w1 + 1e-10);
            CHECK(wa >= 0.0);
        }
    }
}

TEST_CASE("projection gap is dominated by the dictionary inside the cube") {
    Stream s = make_stream(43, 0, 0);
    for (int rep = 0; rep < 10; ++rep) {
        const auto P = random_cloud(8, 2, s);
        const auto Q = random_cloud(8, 2, s);
        WalphaSpec spec;
        CHECK(projection_ipm(P, Q) <= walpha_ipm(P, Q, spec) + 1e-12);
    }
}

TEST_CASE("raising alpha weakens the metric on a fixed pair") {
    const auto P = delta({0.0});
    const auto Q = delta({0.5});
    WalphaSpec spec;
    spec.include_projection = false;
    double prev = walpha_ipm(P, Q, spec);
    for (int alpha = 2; alpha <= 4; ++alpha) {
        spec.alpha = alpha;
        const double cur = walpha_ipm(P, Q, spec);
        CHECK(cur <= prev + 1e-12);
        prev = cur;
    }
    spec.alpha = 2;
    CHECK(walpha_ipm(P, Q, spec) == doctest::Approx(1.0 / (kPi * kPi)).epsilon(1e-12));
}

TEST_CASE("atoms clamp while the projection functional does not") {
    const auto P = delta({-1.0});
    const auto Q = delta({0.0});
    WalphaSpec spec;
    CHECK(walpha_ipm(P, Q, spec) == doctest::Approx(0.0));
    CHECK(projection_ipm(P, Q) == doctest::Approx(1.0));
    CHECK(w1_empirical(P, Q) == doctest::Approx(1.0));
}

TEST_CASE("walpha parameter validation") {
    const auto P = delta({0.1});
    const auto Q = delta({0.9});
    WalphaSpec bad;
    bad.alpha = 0;
    CHECK_THROWS_AS(walpha_ipm(P, Q, bad), std::invalid_argument);
    bad = WalphaSpec{};
    bad.lip = 0.5;
    CHECK_THROWS_AS(walpha_ipm(P, Q, bad), std::invalid_argument);
    bad = WalphaSpec{};
    bad.max_atoms = 3;  // cap 3 in 1-D already needs 6 signed frequencies
    CHECK_THROWS_AS(walpha_ipm(P, Q, bad), std::length_error);
}

TEST_CASE("equal-size and split-weight routes agree on a planar pair") {
    Stream s = make_stream(47, 0, 0);
    const auto P = random_cloud(7, 2, s);
    const auto Q = random_cloud(7, 2, s);
    const double via_assignment = w1_empirical(P, Q);

    // re-express Q with one atom split in half: forces the simplex route
    auto pts = Q.points();
    std::vector<double> w(pts.size(), 1.0 / 7.0);
    pts.push_back(pts.back());
    w.back() = 0.5 / 7.0;
    w.push_back(0.5 / 7.0);
    const DiscreteMeasure Q_split(std::move(pts), std::move(w));
    const double via_transport = w1_empirical(P, Q_split);
    CHECK(via_assignment == doctest::Approx(via_transport).epsilon(1e-9));
}

TEST_CASE("uniform-reference distance matches the closed form for a point mass") {
    Stream s = make_stream(53, 0, 0);
    const auto P = delta({0.5});
    const auto [est, se] = w1_vs_uniform(P, 1, 1, 4000, s);
    // E|0.5 - U| = 1/4
    CHECK(std::abs(est - 0.25) <= 5.0 * se);
    CHECK(se > 0.0);
    CHECK_THROWS_AS(w1_vs_uniform(random_cloud(5, 1, s), 1, 3, 10, s), std::invalid_argument);
    CHECK_THROWS_AS(w1_vs_uniform(P, 2, 5, 10, s), std::invalid_argument);
}

TEST_CASE("kind dispatch matches the direct calls") {
    Stream s = make_stream(59, 0, 0);
    const auto P = random_cloud(6, 1, s);
    const auto Q = random_cloud(6, 1, s);

    IpmSpec spec;
    spec.kind = IpmKind::W1Exact1d;
    CHECK(evaluate_ipm(spec, P, Q) == w1_exact_1d(P, Q));
    spec.kind = IpmKind::W1Assignment;
    CHECK(evaluate_ipm(spec, P, Q) == w1_empirical(P, Q));
    spec.kind = IpmKind::ProjectionFirstAxis;
    CHECK(evaluate_ipm(spec, P, Q) == projection_ipm(P, Q));
    spec.kind = IpmKind::WalphaDictionary;
    CHECK(evaluate_ipm(spec, P, Q) == walpha_ipm(P, Q, spec.walpha));
    spec.kind = IpmKind::BruteLpOracle;
    spec.grid_step = 0.05;
    CHECK(evaluate_ipm(spec, P, Q) == brute_lp_oracle(P, Q, 0.05));
}

TEST_CASE("ipm kind names round trip") {
    for (const IpmKind k : {IpmKind::W1Exact1d, IpmKind::W1Assignment, IpmKind::W1TransportLp,
                            IpmKind::WalphaDictionary, IpmKind::ProjectionFirstAxis,
                            IpmKind::BruteLpOracle})
        CHECK(ipm_kind_from_name(ipm_kind_name(k)) == k);
    CHECK_THROWS_AS(ipm_kind_from_name("nope"), std::invalid_argument);
}
