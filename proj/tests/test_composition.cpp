#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "genipm/composition.hpp"
#include "oracles.hpp"

using namespace genipm;

namespace {

constexpr double kPi = 3.14159265358979323846;

// scalar chain-rule fixture: dh and dg indexed by derivative order
struct Scalar {
    double h[5] = {0.0, 1.5, -0.5, 2.0, -1.0};  // h', h'', h''', h''''
    double g[5] = {0.0, 2.0, 3.0, 5.0, 7.0};

    double dh(const MultiIndex& a) const { return h[a.order()]; }
    double dg(std::size_t, const MultiIndex& b) const { return g[b.order()]; }
};

}  // namespace

TEST_CASE("first-order constant equals the ambient dimension") {
    for (std::size_t D = 1; D <= 4; ++D)
        for (std::size_t d = 1; d <= 3; ++d) {
            const auto c = composition_constant(D, d, 1);
            CHECK(c.value == doctest::Approx(static_cast<double>(D)));
            CHECK(c.exact == std::to_string(D));
        }
}

TEST_CASE("scalar constants are Bell numbers") {
    const auto bell = oracles::bell_numbers(7);
    for (int alpha = 0; alpha <= 6; ++alpha) {
        const auto c = composition_constant(1, 1, alpha);
        CHECK(c.value == doctest::Approx(static_cast<double>(bell[alpha])));
    }
}

TEST_CASE("constant argument validation") {
    CHECK_THROWS_AS(composition_constant(0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(composition_constant(1, 1, 13), std::overflow_error);
    CHECK_THROWS_AS(composition_constant(9, 1, 1), std::overflow_error);
}

TEST_CASE("scalar derivatives match the chain rule through order four") {
    const Scalar fx;
    const auto dh = [&](const MultiIndex& a) { return fx.dh(a); };
    const auto dg = [&](std::size_t m, const MultiIndex& b) { return fx.dg(m, b); };
    const double h1 = fx.h[1], h2 = fx.h[2], h3 = fx.h[3], h4 = fx.h[4];
    const double g1 = fx.g[1], g2 = fx.g[2], g3 = fx.g[3], g4 = fx.g[4];

    CHECK(faa_di_bruno_value(MultiIndex{{1}}, 1, dh, dg) ==
          doctest::Approx(h1 * g1).epsilon(1e-13));
    CHECK(faa_di_bruno_value(MultiIndex{{2}}, 1, dh, dg) ==
          doctest::Approx(h2 * g1 * g1 + h1 * g2).epsilon(1e-13));
    CHECK(faa_di_bruno_value(MultiIndex{{3}}, 1, dh, dg) ==
          doctest::Approx(h3 * g1 * g1 * g1 + 3 * h2 * g1 * g2 + h1 * g3).epsilon(1e-13));
    CHECK(faa_di_bruno_value(MultiIndex{{4}}, 1, dh, dg) ==
          doctest::Approx(h4 * g1 * g1 * g1 * g1 + 6 * h3 * g1 * g1 * g2 + 3 * h2 * g2 * g2 +
                          4 * h2 * g1 * g3 + h1 * g4)
              .epsilon(1e-13));
    CHECK_THROWS_AS(faa_di_bruno_value(MultiIndex{{0}}, 1, dh, dg), std::invalid_argument);
}

TEST_CASE("mixed second derivative with a planar argument") {
    // d = 2, D = 1: d^2(h.g)/du1du2 = h'' g_{10} g_{01} + h' g_{11}
    const double A1 = 1.5, A2 = -0.5, B10 = 2.0, B01 = 3.0, B11 = 5.0;
    const auto dh = [&](const MultiIndex& a) { return a.order() == 1 ? A1 : A2; };
    const auto dg = [&](std::size_t, const MultiIndex& b) {
        if (b.entries == std::vector<int>{1, 0}) return B10;
        if (b.entries == std::vector<int>{0, 1}) return B01;
        return B11;
    };
    CHECK(faa_di_bruno_value(MultiIndex{{1, 1}}, 1, dh, dg) ==
          doctest::Approx(A2 * B10 * B01 + A1 * B11).epsilon(1e-13));
}

TEST_CASE("gradient with a planar outer function") {
    // D = 2, d = 1: (h.g)' = h_{y1} g_1' + h_{y2} g_2'
    const auto dh = [](const MultiIndex& a) {
        return a.entries == std::vector<int>{1, 0} ? 1.5 : -0.5;
    };
    const auto dg = [](std::size_t m, const MultiIndex&) { return m == 0 ? 2.0 : 3.0; };
    CHECK(faa_di_bruno_value(MultiIndex{{1}}, 2, dh, dg) ==
          doctest::Approx(1.5 * 2.0 - 0.5 * 3.0).epsilon(1e-13));
}

TEST_CASE("outer atom derivatives are the exact trig formulas") {
    OuterAtom atom{{2}, false, 1};
    const std::vector<double> y{0.3};
    CHECK(atom.value(y) == doctest::Approx(std::cos(2 * kPi * 0.3) / (2 * kPi)).epsilon(1e-13));
    CHECK(atom.derivative(MultiIndex{{1}}, y) ==
          doctest::Approx(-std::sin(2 * kPi * 0.3)).epsilon(1e-13));
    CHECK(atom.derivative(MultiIndex{{2}}, y) ==
          doctest::Approx(-2 * kPi * std::cos(2 * kPi * 0.3)).epsilon(1e-13));

    OuterAtom satom{{1, -1}, true, 1};
    const std::vector<double> y2{0.2, 0.5};
    // d/dy2 sin(pi(y1 - y2))/(2 pi) = -cos(pi(y1 - y2))/2
    CHECK(satom.derivative(MultiIndex{{0, 1}}, y2) ==
          doctest::Approx(-0.5 * std::cos(kPi * (0.2 - 0.5))).epsilon(1e-13));
    CHECK_THROWS_AS(satom.derivative(MultiIndex{{1}}, y2), std::invalid_argument);
}

TEST_CASE("finite-difference audit accepts the identity composition") {
    Stream s = make_stream(61, 0, 0);
    const auto g = GeneratorSpec::identity(2);
    const OuterAtom h{{1, -1}, false, 1};
    const auto rep = verify_composition_bound(g, h, 1, 5, s);
    CHECK(rep.ok);
    CHECK(rep.max_ratio <= 1.05);
    CHECK(rep.max_ratio > 0.0);
    CHECK(rep.bound == doctest::Approx(composition_constant(2, 2, 1).value));
    CHECK(rep.worst_k.dims() == 2);
}

TEST_CASE("finite-difference audit accepts a smooth trig generator at order two") {
    Stream s = make_stream(67, 0, 0);
    const auto g = GeneratorSpec::coordinate_trig(2, 2, 2, 2.0);
    const OuterAtom h{{1, 1}, true, 2};
    const auto rep = verify_composition_bound(g, h, 2, 3, s);
    CHECK(rep.ok);
    CHECK(rep.bound ==
          doctest::Approx(composition_constant(2, 2, 2).value * 4.0).epsilon(1e-12));
}

TEST_CASE("audit rejects mismatched atoms") {
    Stream s = make_stream(71, 0, 0);
    const auto g = GeneratorSpec::identity(2);
    CHECK_THROWS_AS(verify_composition_bound(g, OuterAtom{{1, 1}, false, 1}, 2, 3, s),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_composition_bound(g, OuterAtom{{1}, false, 1}, 1, 3, s),
                    std::invalid_argument);
}
