#include <catch2/catch_amalgamated.hpp>

#include <cdsarb/numerics.hpp>

#include <cmath>

using namespace cdsarb;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("trapezoid is exact for linear integrands") {
    const double v = trapezoid([](double t) { return 2.0 * t + 1.0; }, 0.0, 3.0, 0.7);
    CHECK_THAT(v, WithinAbs(12.0, 1e-12));
}

TEST_CASE("forced breakpoints make piecewise-linear integrands exact") {
    const double kink = 1.3377;
    auto f = [&](double t) { return t < kink ? t : kink + 3.0 * (t - kink); };
    const double exact = 0.5 * kink * kink + kink * (3.0 - kink) +
                         1.5 * (3.0 - kink) * (3.0 - kink);
    const double bp[] = {kink};
    CHECK_THAT(trapezoid(f, 0.0, 3.0, 0.5, bp), WithinAbs(exact, 1e-12));
}

TEST_CASE("trapezoid converges at second order on smooth integrands") {
    auto f = [](double t) { return std::exp(-0.3 * t); };
    const double exact = (1.0 - std::exp(-1.5)) / 0.3;
    const double e1 = std::abs(trapezoid(f, 0.0, 5.0, 0.1) - exact);
    const double e2 = std::abs(trapezoid(f, 0.0, 5.0, 0.05) - exact);
    CHECK(e2 < e1 / 3.5); // ~4x per halving
    CHECK_THAT(trapezoid(f, 0.0, 5.0), WithinRel(exact, 1e-9));
}

TEST_CASE("trapezoid rejects empty intervals") {
    CHECK_THROWS_AS(trapezoid([](double) { return 1.0; }, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(trapezoid([](double) { return 1.0; }, 2.0, 1.0), DomainError);
}

TEST_CASE("bracketed root finder solves within tolerance") {
    auto f = [](double x) { return x * x - 2.0; };
    const auto r = find_root_bracketed(f, 0.0, 2.0);
    CHECK_THAT(r.x, WithinAbs(std::sqrt(2.0), 1e-12));
    CHECK(std::abs(r.residual) < 1e-13);

    auto g = [](double x) { return std::cos(x) - x; };
    CHECK_THAT(find_root_bracketed(g, 0.0, 1.0).x,
               WithinAbs(0.7390851332151607, 1e-12));
}

TEST_CASE("root finder accepts roots sitting on the bracket ends") {
    auto f = [](double x) { return x - 1.0; };
    CHECK(find_root_bracketed(f, 1.0, 2.0).x == 1.0);
    CHECK(find_root_bracketed(f, 0.0, 1.0).x == 1.0);
}

TEST_CASE("unbracketed roots are an error") {
    auto f = [](double x) { return x * x + 1.0; };
    CHECK_THROWS_AS(find_root_bracketed(f, -1.0, 1.0), DomainError);
}

TEST_CASE("expm1_ratio is stable near zero") {
    CHECK_THAT(expm1_ratio(0.0), WithinAbs(1.0, 1e-15));
    CHECK_THAT(expm1_ratio(1e-13), WithinAbs(1.0, 1e-12));
    CHECK_THAT(expm1_ratio(0.5), WithinRel((1.0 - std::exp(-0.5)) / 0.5, 1e-14));
    CHECK_THAT(expm1_ratio(-0.3), WithinRel((1.0 - std::exp(0.3)) / -0.3, 1e-14));
}

TEST_CASE("splitmix stream is deterministic") {
    std::uint64_t a = 42, b = 42;
    for (int i = 0; i < 100; ++i)
        CHECK(mix64(a) == mix64(b));
    std::uint64_t c = 7;
    for (int i = 0; i < 1000; ++i) {
        const double u = uniform(c, -1.0, 3.0);
        CHECK(u >= -1.0);
        CHECK(u < 3.0);
    }
}
