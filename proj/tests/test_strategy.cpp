#include <catch2/catch_amalgamated.hpp>

#include <cdsarb/strategy.hpp>
#include <cdsarb/synthetic.hpp>

#include "helpers.hpp"

#include <cmath>

using namespace cdsarb;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const auto kZeroRates = DiscountCurve::flat(0.0);
const auto kLgd60 = RecoverySpec::constant(0.6);

/// Independent oracle: price both contracts by enumerating the four outcomes
/// of tau with their risk-neutral probabilities. No shared code with the
/// closed forms under test.
std::pair<double, double> brute_force_spreads(double lambda, double l2, double l3) {
    const double p1 = lambda;
    const double p2 = lambda * (1.0 - lambda);
    const double p3 = lambda * (1.0 - lambda) * (1.0 - lambda);
    const double p_never = (1.0 - lambda) * (1.0 - lambda) * (1.0 - lambda);

    double fee1 = 0.0, prot1 = 0.0, fee2 = 0.0, prot2 = 0.0;
    struct Outcome {
        double p;
        int tau; // 0 = never
    };
    for (const auto& o : {Outcome{p1, 1}, Outcome{p2, 2}, Outcome{p3, 3},
                          Outcome{p_never, 0}}) {
        const bool ge2 = o.tau == 0 || o.tau >= 2;
        const bool ge3 = o.tau == 0 || o.tau >= 3;
        if (ge2)
            fee1 += o.p;
        if (o.tau == 2)
            prot1 += o.p * l2;
        if (ge2)
            fee2 += o.p;
        if (ge3)
            fee2 += o.p;
        if (o.tau == 2)
            prot2 += o.p * l2;
        if (o.tau == 3)
            prot2 += o.p * l3;
    }
    return {prot1 / fee1, prot2 / fee2};
}

} // namespace

TEST_CASE("three-period payoff cases") {
    CHECK(three_period_payoff(0.03, 0.01, ThreePeriodDefault::at_1, 0.4) == 0.0);
    CHECK_THAT(three_period_payoff(0.03, 0.01, ThreePeriodDefault::at_2, 0.4),
               WithinAbs(0.02, 1e-15));
    CHECK_THAT(three_period_payoff(0.03, 0.01, ThreePeriodDefault::at_3, 0.4),
               WithinAbs(0.61, 1e-15));
    CHECK_THAT(three_period_payoff(0.03, 0.01, ThreePeriodDefault::never, 0.4),
               WithinAbs(0.01, 1e-15));
    CHECK_THROWS_AS(three_period_payoff(0.03, 0.01, ThreePeriodDefault::never, 1.0),
                    DomainError);
}

TEST_CASE("s1 >= 2 s2 is an arbitrage: payoff nonnegative, strictly positive at tau=3") {
    for (double s2 = 0.0; s2 <= 0.05; s2 += 0.005) {
        for (double s1 = 2.0 * s2; s1 <= 0.12; s1 += 0.005) {
            for (double r3 : {0.0, 0.4, 0.99}) {
                for (auto tau : {ThreePeriodDefault::at_1, ThreePeriodDefault::at_2,
                                 ThreePeriodDefault::at_3, ThreePeriodDefault::never}) {
                    const double payoff = three_period_payoff(s1, s2, tau, r3);
                    CHECK(payoff >= 0.0);
                    if (tau == ThreePeriodDefault::at_3)
                        CHECK(payoff > 0.0);
                }
            }
        }
    }
}

TEST_CASE("three-period fair spreads match the displayed closed forms") {
    auto [s1, s2] = three_period_fair_spreads(0.1, 0.6, 0.6);
    CHECK_THAT(s1, WithinAbs(0.06, 1e-15));
    CHECK_THAT(s2, WithinAbs(0.06, 1e-15)); // equal LGDs collapse both to lambda*L

    auto [t1, t2] = three_period_fair_spreads(0.0, 0.6, 0.6);
    CHECK(t1 == 0.0);
    CHECK(t2 == 0.0);

    auto [u1, u2] = three_period_fair_spreads(0.2, 0.5, 0.8);
    CHECK_THAT(u1, WithinAbs(0.10, 1e-15));
    CHECK_THAT(u2, WithinAbs(0.1266666666666667, 1e-6));

    CHECK_THROWS_AS(three_period_fair_spreads(1.0, 0.6, 0.6), DomainError);
    CHECK_THROWS_AS(three_period_fair_spreads(0.1, 0.0, 0.6), DomainError);
}

TEST_CASE("closed forms agree with the enumeration oracle to 1e-12") {
    for (double lambda = 0.05; lambda <= 0.9001; lambda += 0.05) {
        for (double l2 = 0.2; l2 <= 1.0001; l2 += 0.2) {
            for (double l3 = 0.2; l3 <= 1.0001; l3 += 0.2) {
                const auto [s1, s2] = three_period_fair_spreads(lambda, l2, l3);
                const auto [o1, o2] = brute_force_spreads(lambda, l2, l3);
                CHECK_THAT(s1, WithinAbs(o1, 1e-12));
                CHECK_THAT(s2, WithinAbs(o2, 1e-12));
            }
        }
    }
}

TEST_CASE("fair spreads respect the sharper survival-ratio bound") {
    for (double lambda = 0.0; lambda < 1.0; lambda += 0.07) {
        for (double l2 : {0.3, 0.6, 1.0}) {
            for (double l3 : {0.3, 0.6, 1.0}) {
                const auto [s1, s2] = three_period_fair_spreads(lambda, l2, l3);
                const double q_ratio = 1.0 - lambda; // q(2)/q(1)
                CHECK(s1 <= (1.0 + q_ratio) * s2 + 1e-14);
                CHECK(s1 <= 2.0 * s2 + 1e-14);
            }
        }
    }
}

TEST_CASE("three-period spreads agree with the discrete pricer on the equivalent curve") {
    // default mass concentrated at the period ends reproduces the discrete
    // model's law; a flat hazard over each period does not (tested below)
    for (double lambda : {0.02, 0.1, 0.3, 0.7}) {
        for (auto [l2, l3] : {std::pair{0.6, 0.6}, std::pair{0.5, 0.8},
                              std::pair{1.0, 0.2}}) {
            const auto [s1c, s2c] = three_period_fair_spreads(lambda, l2, l3);
            const auto surv = three_period_survival(lambda);
            const auto rec = RecoverySpec::piecewise({{2.0, l2}, {3.0, l3}});
            const double s1 = fair_spread_discrete(kZeroRates, surv, rec,
                                                   PaymentSchedule({1.0, 2.0}));
            const double s2 = fair_spread_discrete(kZeroRates, surv, rec,
                                                   PaymentSchedule({1.0, 2.0, 3.0}));
            CHECK_THAT(s1, WithinAbs(s1c, 1e-9));
            CHECK_THAT(s2, WithinAbs(s2c, 1e-9));
        }
    }
}

TEST_CASE("a flat per-period hazard smears default mass and biases the spread up") {
    const double lambda = 0.1;
    const auto [s1c, s2c] = three_period_fair_spreads(lambda, 0.6, 0.6);
    const double h = -std::log1p(-lambda);
    const SurvivalCurve smeared({{1.0, h}, {2.0, h}, {3.0, h}});
    const double s2 = fair_spread_discrete(kZeroRates, smeared, kLgd60,
                                           PaymentSchedule({1.0, 2.0, 3.0}));
    CHECK(s2 > s2c);                  // accrual weighting shifts with the mass
    CHECK(std::abs(s2 - s2c) < lambda * s2c); // O(lambda) effect, not a bug
    CHECK_THAT(s2, WithinAbs(h * 0.6, 1e-9)); // it prices the smeared model exactly
    (void)s1c;
}

TEST_CASE("a position struck at the fair spread is worth zero") {
    const auto s = SurvivalCurve::flat(0.02);
    const auto sched = PaymentSchedule::regular(0.0, 5.0, 4);
    const double fair = fair_spread_discrete(kZeroRates, s, kLgd60, sched);
    const CdsPosition pos(TradeDirection::long_protection, 1e7, fair, sched, kLgd60);
    CHECK(std::abs(cds_mtm(pos, kZeroRates, s)) < 1e-9 * 1e7);
}

TEST_CASE("long protection gains when struck below fair") {
    const auto s = SurvivalCurve::flat(0.01);
    const auto sched = PaymentSchedule::regular(0.0, 5.0, 4);
    const double fair = fair_spread_discrete(kZeroRates, s, kLgd60, sched);
    const CdsPosition below(TradeDirection::long_protection, 1e7, fair - 0.001, sched,
                            kLgd60);
    CHECK(cds_mtm(below, kZeroRates, s) > 0.0);
}

TEST_CASE("10M long protection 1bp cheap is worth about the annuity") {
    // lambda = 1%, L = 0.6, fair = 60bp; struck at 50bp the value is
    // 10bp * A^d * notional with A^d = (1 - e^{-0.05}) / 0.01
    const auto s = SurvivalCurve::flat(0.01);
    const auto sched = PaymentSchedule::regular(0.0, 5.0, 4);
    const CdsPosition pos(TradeDirection::long_protection, 1e7, 0.005, sched, kLgd60);
    CHECK_THAT(cds_mtm(pos, kZeroRates, s), WithinRel(48770.57549928598, 0.01));
}

TEST_CASE("long and short positions cancel") {
    std::uint64_t rng = 1234;
    const auto d = testutil::random_discount(rng).curve;
    const auto s = testutil::random_survival(rng);
    const auto sched = PaymentSchedule::regular(0.0, 7.0, 4);
    const CdsPosition longp(TradeDirection::long_protection, 5e6, 0.012, sched, kLgd60);
    const CdsPosition shortp(TradeDirection::short_protection, 5e6, 0.012, sched, kLgd60);
    CHECK_THAT(cds_mtm(longp, d, s) + cds_mtm(shortp, d, s), WithinAbs(0.0, 1e-9));
}

namespace {

PairedTrade msft_trade(double notional = 1e7) {
    const auto rec = RecoverySpec::constant(0.6);
    return PairedTrade(
        CdsPosition(TradeDirection::short_protection, notional, 89.53e-4,
                    PaymentSchedule::regular(0.0, 5.0, 4), rec),
        CdsPosition(TradeDirection::long_protection, notional, 33.55e-4,
                    PaymentSchedule::regular(0.0, 10.0, 4), rec));
}

CdsCurve msft_next_day() {
    // 5y tightened 10bp, everything else unchanged
    const auto base = msft_curve_20081203();
    std::vector<CdsQuote> quotes = base.quotes();
    for (auto& q : quotes)
        if (q.tenor == Tenor(5))
            q.spread -= 10e-4;
    return CdsCurve(Date(2008, 12, 4), 0.0, base.entity(), quotes);
}

} // namespace

TEST_CASE("paired trade struck at the quoted curve is worth zero at inception") {
    const auto quoted = msft_curve_20081203();
    const auto surv = bootstrap_hazards(quoted, kZeroRates, kLgd60);
    CHECK(std::abs(paired_trade_mtm(msft_trade(), kZeroRates, surv)) < 0.01);
}

TEST_CASE("the short leg gains when its spread tightens") {
    const auto surv = bootstrap_hazards(msft_next_day(), kZeroRates, kLgd60);
    CHECK(paired_trade_mtm(msft_trade(), kZeroRates, surv) > 0.0);
}

TEST_CASE("replay path: zero at inception, positive afterwards") {
    const auto path = msft_replay_path();
    const auto trade = msft_trade();
    bool first = true;
    for (const auto& curve : path) {
        const auto surv = bootstrap_hazards(curve, kZeroRates, kLgd60);
        const double elapsed = year_fraction(path.front().as_of(), curve.as_of());
        const auto shorted = seasoned(trade.short_leg, elapsed);
        const auto longed = seasoned(trade.long_leg, elapsed);
        const double mtm =
            cds_mtm(shorted, kZeroRates, surv) + cds_mtm(longed, kZeroRates, surv);
        if (first) {
            CHECK(std::abs(mtm) < 0.01);
            first = false;
        } else {
            CHECK(mtm > 0.0);
        }
    }
}

TEST_CASE("zero-notional sensitivities vanish") {
    const auto trade = msft_trade(0.0);
    CHECK(dv01(trade, kZeroRates, msft_next_day(), kLgd60) == 0.0);
    CHECK(cr01(trade, kZeroRates, msft_next_day(), kLgd60) == 0.0);
}

TEST_CASE("seasoned trade sensitivities have the documented signs and scale") {
    const auto market = msft_next_day();
    const auto trade = msft_trade();
    const double v01 = dv01(trade, kZeroRates, market, kLgd60);
    const double c01 = cr01(trade, kZeroRates, market, kLgd60);
    CHECK(v01 < 0.0);
    CHECK(std::abs(v01) > 1.0);    // tens of dollars per 10M
    CHECK(std::abs(v01) < 500.0);
    CHECK(c01 > 0.0);              // dominated by the long 10y leg
    CHECK(c01 > 1000.0);           // thousands of dollars per 10M
    CHECK(c01 < 20000.0);
    CHECK(std::abs(c01) / std::abs(v01) > 10.0);
}

TEST_CASE("dv01 agrees with a central finite difference") {
    const auto market = msft_next_day();
    const auto trade = msft_trade();
    const double one_sided = dv01(trade, kZeroRates, market, kLgd60);
    const double up = dv01(trade, kZeroRates, market, kLgd60, 4, 0.5e-4);
    const double down = dv01(trade, kZeroRates, market, kLgd60, 4, -0.5e-4);
    const double central = up - down; // V(+0.5bp) - V(-0.5bp)
    CHECK(one_sided * central > 0.0);
    CHECK_THAT(one_sided, WithinRel(central, 0.05));
}

TEST_CASE("sensitivities are first order in the bump") {
    const auto market = msft_next_day();
    const auto trade = msft_trade();
    CHECK_THAT(dv01(trade, kZeroRates, market, kLgd60, 4, 2e-4),
               WithinRel(2.0 * dv01(trade, kZeroRates, market, kLgd60), 0.10));
    CHECK_THAT(cr01(trade, kZeroRates, market, kLgd60, 4, 2e-4),
               WithinRel(2.0 * cr01(trade, kZeroRates, market, kLgd60), 0.10));
}

TEST_CASE("cr01 of a single at-fair contract is the annuity times 1bp") {
    const auto quoted = msft_curve_20081203();
    const auto surv = bootstrap_hazards(quoted, kZeroRates, kLgd60);
    const auto sched = PaymentSchedule::regular(0.0, 10.0, 4);
    const CdsPosition pos(TradeDirection::long_protection, 1e7, 33.55e-4, sched, kLgd60);
    const double expected = discrete_defaultable_annuity(kZeroRates, surv, sched) *
                            1e-4 * 1e7;
    CHECK_THAT(cr01(pos, kZeroRates, quoted, kLgd60), WithinRel(expected, 0.02));
}

TEST_CASE("paired trade construction is validated") {
    const auto rec = RecoverySpec::constant(0.6);
    const auto s5 = PaymentSchedule::regular(0.0, 5.0, 4);
    const auto s10 = PaymentSchedule::regular(0.0, 10.0, 4);
    CHECK_THROWS_AS(
        PairedTrade(CdsPosition(TradeDirection::long_protection, 1e7, 0.01, s5, rec),
                    CdsPosition(TradeDirection::long_protection, 1e7, 0.01, s10, rec)),
        DomainError);
    CHECK_THROWS_AS(
        PairedTrade(CdsPosition(TradeDirection::short_protection, 1e7, 0.01, s10, rec),
                    CdsPosition(TradeDirection::long_protection, 1e7, 0.01, s5, rec)),
        DomainError);
    CHECK_THROWS_AS(
        PairedTrade(CdsPosition(TradeDirection::short_protection, 1e7, 0.01, s5, rec),
                    CdsPosition(TradeDirection::long_protection, 2e7, 0.01, s10, rec)),
        DomainError);
}
