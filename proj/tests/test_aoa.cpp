#include <catch2/catch_amalgamated.hpp>

#include <cdsarb/aoa.hpp>
#include <cdsarb/synthetic.hpp>

#include "helpers.hpp"

#include <cmath>

using namespace cdsarb;
using Catch::Matchers::WithinAbs;

TEST_CASE("the 5y/10y inversion of 03/12/2008 is a violation") {
    const auto v = check_thm1_pair(0.008953, Tenor(5), 0.003355, Tenor(10));
    REQUIRE(v.has_value());
    CHECK_THAT(v->lhs_value, WithinAbs(0.044765, 1e-12));
    CHECK_THAT(v->rhs_value, WithinAbs(0.033550, 1e-12));
    CHECK_THAT(v->mar, WithinAbs(1.33428, 1e-5));
}

TEST_CASE("flat curves are clean, equality is a violation") {
    CHECK_FALSE(check_thm1_pair(0.01, Tenor(1), 0.01, Tenor(2)).has_value());
    // (T - T0) s must increase *strictly*: exact equality is flagged
    const auto boundary = check_thm1_pair(0.02, Tenor(1), 0.01, Tenor(2));
    REQUIRE(boundary.has_value());
    CHECK(boundary->mar == 1.0);
    // a positive margin requirement drops the boundary case
    CHECK_FALSE(check_thm1_pair(0.02, Tenor(1), 0.01, Tenor(2), 0.0, 1e-6).has_value());
}

TEST_CASE("pair check validates ordering") {
    CHECK_THROWS_AS(check_thm1_pair(0.01, Tenor(2), 0.01, Tenor(1)), DomainError);
    CHECK_THROWS_AS(check_thm1_pair(0.01, Tenor(1), 0.01, Tenor(2), 1.5), DomainError);
    CHECK_THROWS_AS(check_thm1_pair(-0.01, Tenor(1), 0.01, Tenor(2)), DomainError);
}

TEST_CASE("maturity adjusted spread ratio") {
    CHECK_THAT(mar(0.008953, 5.0, 0.003355, 10.0), WithinAbs(1.33428, 1e-5));
    CHECK(mar(0.01, 1.0, 0.01, 2.0) == 0.5);
    CHECK(mar(0.02, 1.0, 0.01, 2.0) == 1.0);
    CHECK_THROWS_AS(mar(0.01, 1.0, 0.0, 2.0), DomainError);
    CHECK_THROWS_AS(mar(0.01, 2.0, 0.01, 1.0), DomainError);
}

TEST_CASE("census pairs over the crisis fixtures") {
    const auto msft = check_thm1_curve(msft_curve_20081203());
    REQUIRE(msft.violations.size() == 1);
    CHECK(msft.violations[0].tenor_short == Tenor(5));
    CHECK(msft.violations[0].tenor_long == Tenor(10));

    const auto aib = check_thm1_curve(aib_curve_20081204());
    REQUIRE(aib.violations.size() == 1);
    CHECK(aib.violations[0].tenor_short == Tenor(1, 2));
    CHECK(aib.violations[0].tenor_long == Tenor(1));
}

TEST_CASE("a 400bp/150bp short-end inversion is flagged") {
    EntityMeta meta;
    meta.entity_id = "X";
    const CdsCurve c(Date(2008, 9, 1), 0.0, meta,
                     {{Tenor(1, 2), 0.04, QuoteKind::mid},
                      {Tenor(1), 0.015, QuoteKind::mid}});
    const auto v = check_thm1_curve(c, {{Tenor(1, 2), Tenor(1)}});
    REQUIRE(v.violations.size() == 1);
    CHECK_THAT(v.violations[0].lhs_value, WithinAbs(0.020, 1e-12));
    CHECK_THAT(v.violations[0].rhs_value, WithinAbs(0.015, 1e-12));
}

TEST_CASE("missing tenors are skipped, never interpolated") {
    EntityMeta meta;
    meta.entity_id = "GAPPY";
    const CdsCurve c(Date(2008, 9, 1), 0.0, meta,
                     {{Tenor(1, 2), 0.02, QuoteKind::mid},
                      {Tenor(5), 0.03, QuoteKind::mid}});
    const auto v = check_thm1_curve(c);
    CHECK(v.clean());
    CHECK(v.skipped.size() == 4); // every census pair needs a tenor the curve lacks
}

TEST_CASE("upward-sloping curves are clean everywhere") {
    std::uint64_t rng = 8;
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = testutil::random_clean_curve(rng);
        CHECK(check_thm1_curve(c, {}).clean()); // all ordered pairs
    }
}

TEST_CASE("violations always carry lhs >= rhs and are sorted") {
    std::uint64_t rng = 12;
    const auto ds = generate_dataset(rng, 200, 60);
    for (const auto& curve : ds.curves) {
        const auto v = check_thm1_curve(curve);
        for (std::size_t i = 0; i < v.violations.size(); ++i) {
            CHECK(v.violations[i].lhs_value >= v.violations[i].rhs_value);
            if (i > 0)
                CHECK(v.violations[i - 1].tenor_short < v.violations[i].tenor_short);
        }
    }
}

TEST_CASE("verdicts are invariant under spread scaling") {
    std::uint64_t rng = 404;
    const auto ds = generate_dataset(rng, 50, 25);
    for (const auto& curve : ds.curves) {
        const auto base = check_thm1_curve(curve, {});
        for (double c : {0.5, 2.0, 4.0}) { // powers of two scale exactly
            std::vector<CdsQuote> scaled = curve.quotes();
            for (auto& q : scaled)
                q.spread *= c;
            const CdsCurve sc(curve.as_of(), 0.0, curve.entity(), scaled);
            const auto v = check_thm1_curve(sc, {});
            REQUIRE(v.violations.size() == base.violations.size());
            for (std::size_t i = 0; i < v.violations.size(); ++i) {
                CHECK(v.violations[i].tenor_short == base.violations[i].tenor_short);
                CHECK(v.violations[i].tenor_long == base.violations[i].tenor_long);
            }
        }
    }
}

TEST_CASE("a strict violation means the curve is inverted on that pair") {
    std::uint64_t rng = 999;
    const auto ds = generate_dataset(rng, 300, 100);
    for (const auto& curve : ds.curves)
        for (const auto& v : check_thm1_curve(curve).violations) {
            const double s1 = *curve.spread_at(v.tenor_short);
            const double s2 = *curve.spread_at(v.tenor_long);
            CHECK(s1 >= s2);
            if (v.lhs_value > v.rhs_value)
                CHECK(s1 > s2);
        }
}

TEST_CASE("under zero rates the annuity-weighted checks coincide with thm1") {
    std::uint64_t rng = 31;
    const auto d = DiscountCurve::flat(0.0);
    const auto ds = generate_dataset(rng, 40, 15);
    for (const auto& curve : ds.curves) {
        const auto v1 = check_thm1_curve(curve, {});
        const auto v2 = check_thm2_curve(curve, d);
        const auto v3 = check_thm3_curve(curve, d, 4);
        CHECK(v1.violations.size() == v2.violations.size());
        CHECK(v1.violations.size() == v3.violations.size());
        for (std::size_t i = 0; i < v1.violations.size(); ++i) {
            CHECK(v1.violations[i].tenor_short == v2.violations[i].tenor_short);
            CHECK(v1.violations[i].tenor_short == v3.violations[i].tenor_short);
        }
    }
}

TEST_CASE("the annuity-weighted condition is strictly stronger under positive rates") {
    // tuned so (T)s passes by a hair while A(T)s fails
    EntityMeta meta;
    meta.entity_id = "EDGE";
    const CdsCurve c(Date(2008, 3, 3), 0.0, meta,
                     {{Tenor(1), 0.0197, QuoteKind::mid},
                      {Tenor(2), 0.0100, QuoteKind::mid}});
    const auto d = DiscountCurve::flat(0.05);
    CHECK(check_thm1_curve(c, {{Tenor(1), Tenor(2)}}).clean());
    CHECK_FALSE(check_thm2_curve(c, d).clean());
}

TEST_CASE("thm2-clean implies thm1-clean when rates are strictly positive") {
    std::uint64_t rng = 606;
    const auto ds = generate_dataset(rng, 60, 30);
    int thm2_clean_seen = 0;
    for (const auto& curve : ds.curves) {
        const double r = uniform(rng, 0.002, 0.08);
        const auto d = DiscountCurve::flat(r);
        if (check_thm2_curve(curve, d).clean()) {
            ++thm2_clean_seen;
            CHECK(check_thm1_curve(curve, {}).clean());
        }
    }
    CHECK(thm2_clean_seen > 0);
}

TEST_CASE("negative rates with flat spreads stay clean under thm2") {
    EntityMeta meta;
    meta.entity_id = "FLAT";
    std::vector<CdsQuote> quotes;
    for (const auto& tenor : canonical_tenors())
        quotes.push_back({tenor, 0.012, QuoteKind::mid});
    const CdsCurve c(Date(2016, 7, 1), 0.0, meta, quotes);
    CHECK(check_thm2_curve(c, DiscountCurve::flat(-0.01)).clean());
}

TEST_CASE("discrete annuity weighting agrees with the continuous one at a fine mesh") {
    std::uint64_t rng = 2718;
    const auto d = DiscountCurve::flat(0.02);
    const auto ds = generate_dataset(rng, 25, 10);
    for (const auto& curve : ds.curves) {
        const auto fine = check_thm3_curve(curve, d, 365);
        const auto cont = check_thm2_curve(curve, d);
        REQUIRE(fine.violations.size() == cont.violations.size());
        for (std::size_t i = 0; i < fine.violations.size(); ++i)
            CHECK(fine.violations[i].tenor_short == cont.violations[i].tenor_short);
    }
}

TEST_CASE("the 5y/10y violation survives discounting at 2%") {
    const auto v =
        check_thm3_curve(msft_curve_20081203(), DiscountCurve::flat(0.02), 4);
    bool found = false;
    for (const auto& viol : v.violations)
        found = found || (viol.tenor_short == Tenor(5) && viol.tenor_long == Tenor(10));
    CHECK(found);
}

TEST_CASE("swap-rate corollary reduces to the annuity condition") {
    std::uint64_t rng = 161;
    const auto d = DiscountCurve::flat(0.03);
    const auto ds = generate_dataset(rng, 25, 10);
    for (const auto& curve : ds.curves) {
        const auto v2 = check_thm2_curve(curve, d);
        const auto vc = check_irs_corollary(curve, d);
        REQUIRE(vc.violations.size() == v2.violations.size());
        for (std::size_t i = 0; i < vc.violations.size(); ++i)
            CHECK(vc.violations[i].tenor_short == v2.violations[i].tenor_short);
    }
}

TEST_CASE("swap-rate corollary is degenerate under zero rates") {
    std::uint64_t rng = 5150;
    const auto curve = testutil::random_clean_curve(rng);
    CHECK_THROWS_AS(check_irs_corollary(curve, DiscountCurve::flat(0.0)),
                    DegenerateCurveError);
}

TEST_CASE("hyperbola diagnostic tags exactly the thm1 violations of the anchor") {
    EntityMeta meta;
    meta.entity_id = "HYP";
    const CdsCurve c(Date(2008, 9, 1), 0.0, meta,
                     {{Tenor(1, 2), 0.04, QuoteKind::mid},
                      {Tenor(1), 0.015, QuoteKind::mid},
                      {Tenor(2), 0.025, QuoteKind::mid},
                      {Tenor(5), 0.012, QuoteKind::mid}});
    const auto series = hyperbola_plot_data(c, Tenor(1, 2));
    int tagged = 0, hyperbola_points = 0;
    for (const auto& p : series.points) {
        if (p.series == "hyperbola")
            ++hyperbola_points;
        if (p.violation)
            ++tagged;
    }
    CHECK(hyperbola_points == 100);
    // (1, 150bp): 0.015 <= C = 0.02 tagged; (2, 250bp): 0.05 > C clean;
    // (5, 120bp): 0.06 > C clean
    CHECK(tagged == 1);

    const auto loglog = hyperbola_plot_data(c, Tenor(1, 2), true);
    int tagged_log = 0;
    for (const auto& p : loglog.points)
        if (p.violation)
            ++tagged_log;
    CHECK(tagged_log == tagged); // monotone transform preserves the comparison
}

TEST_CASE("hyperbola tags match thm1 pair violations on random curves") {
    std::uint64_t rng = 42424;
    const auto ds = generate_dataset(rng, 60, 30);
    for (const auto& curve : ds.curves) {
        const auto& quotes = curve.quotes();
        for (const auto& anchor : {quotes.front().tenor, quotes[3].tenor}) {
            const auto series = hyperbola_plot_data(curve, anchor);
            for (const auto& p : series.points) {
                if (p.series != "quotes" || p.x <= anchor.years())
                    continue;
                Tenor t = Tenor::parse("1");
                for (const auto& q : quotes)
                    if (std::abs(q.tenor.years() - p.x) < 1e-12)
                        t = q.tenor;
                const bool violates =
                    check_thm1_pair(*curve.spread_at(anchor), anchor,
                                    *curve.spread_at(t), t)
                        .has_value();
                CHECK(p.violation == violates);
            }
        }
    }
}

TEST_CASE("flat curves produce no hyperbola tags") {
    EntityMeta meta;
    meta.entity_id = "FLAT";
    std::vector<CdsQuote> quotes;
    for (const auto& tenor : canonical_tenors())
        quotes.push_back({tenor, 0.02, QuoteKind::mid});
    const CdsCurve c(Date(2008, 9, 1), 0.0, meta, quotes);
    for (const auto& p : hyperbola_plot_data(c, Tenor(1)).points)
        CHECK_FALSE(p.violation);
    CHECK_THROWS_AS(hyperbola_plot_data(c, Tenor(6)), DomainError);
}
