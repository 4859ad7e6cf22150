#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "cdsarb/bootstrap.hpp"
#include "cdsarb/discount.hpp"
#include "cdsarb/errors.hpp"
#include "cdsarb/fair_spread.hpp"
#include "cdsarb/market.hpp"
#include "cdsarb/survival.hpp"

namespace cdsarb {

// ---------------------------------------------------------------------------
// Three-period model: zero rates, times 0..3, CDS_1 protects (1,2] at s1,
// CDS_2 protects (1,3] at s2. This is the exact discrete oracle behind the
// continuous machinery.
// ---------------------------------------------------------------------------

enum class ThreePeriodDefault { at_1, at_2, at_3, never };

/// Accumulated cash at t=3 of the paired trade (short s1, long s2):
///   (s1 - s2) 1{tau>1} - s2 1{tau>2} + (1 - R3) 1{tau=3}.
/// A default at t=2 nets to zero: the payments-upon-default of the two legs
/// cancel.
inline double three_period_payoff(double s1, double s2, ThreePeriodDefault tau,
                                  double recovery3) {
    if (s1 < 0.0 || s2 < 0.0)
        throw DomainError("three_period_payoff requires nonnegative spreads");
    if (recovery3 < 0.0 || recovery3 >= 1.0)
        throw DomainError("three_period_payoff requires recovery in [0, 1)");
    const bool after1 = tau != ThreePeriodDefault::at_1;
    const bool after2 = after1 && tau != ThreePeriodDefault::at_2;
    const bool at3 = tau == ThreePeriodDefault::at_3;
    double cash = 0.0;
    if (after1)
        cash += s1 - s2;
    if (after2)
        cash -= s2;
    if (at3)
        cash += 1.0 - recovery3;
    return cash;
}

/// Fair spreads of the two contracts when the per-period conditional default
/// probability is a constant lambda and LGDs at t=2,3 are L2, L3:
///   s1 = L2 lambda,   s2 = lambda (L2 + (1 - lambda) L3) / (2 - lambda).
inline std::pair<double, double> three_period_fair_spreads(double lambda, double lgd2,
                                                           double lgd3) {
    if (lambda < 0.0 || lambda >= 1.0)
        throw DomainError("three_period_fair_spreads requires lambda in [0, 1)");
    if (!(lgd2 > 0.0) || lgd2 > 1.0 || !(lgd3 > 0.0) || lgd3 > 1.0)
        throw DomainError("three_period_fair_spreads requires LGDs in (0, 1]");
    const double s1 = lgd2 * lambda;
    const double s2 = lambda * (lgd2 + (1.0 - lambda) * lgd3) / (2.0 - lambda);
    return {s1, s2};
}

/// Survival curve reproducing the three-period model's law of tau exactly:
/// default mass sits at the period ends, so each period is a zero-hazard
/// stretch followed by a concentrated segment of width `eps` carrying the
/// whole conditional default probability. The default width is a power of
/// two so that i - eps and the segment length are exact in floating point.
inline SurvivalCurve three_period_survival(double lambda, int periods = 3,
                                           double eps = 0x1p-32) {
    if (lambda < 0.0 || lambda >= 1.0)
        throw DomainError("three_period_survival requires lambda in [0, 1)");
    std::vector<HazardSegment> segs;
    const double spike = lambda > 0.0 ? -std::log1p(-lambda) / eps : 0.0;
    for (int i = 1; i <= periods; ++i) {
        segs.push_back({double(i) - eps, 0.0});
        segs.push_back({double(i), spike});
    }
    return SurvivalCurve(std::move(segs));
}

// ---------------------------------------------------------------------------
// Positions, mark-to-market, sensitivities
// ---------------------------------------------------------------------------

enum class TradeDirection { long_protection, short_protection };

/// A seasoned or new CDS position, valued against market curves.
struct CdsPosition {
    TradeDirection direction = TradeDirection::long_protection;
    double notional = 0.0;
    double contract_spread = 0.0; // decimal, fixed at inception
    PaymentSchedule schedule;     // spans (T0, T]
    RecoverySpec recovery;

    CdsPosition(TradeDirection dir, double notional_, double contract_spread_,
                PaymentSchedule sched, RecoverySpec rec)
        : direction(dir), notional(notional_), contract_spread(contract_spread_),
          schedule(std::move(sched)), recovery(std::move(rec)) {
        if (notional < 0.0)
            throw DomainError("position notional must be nonnegative");
        if (contract_spread < 0.0)
            throw DomainError("contract spread must be nonnegative");
    }

    double start() const { return schedule.start(); }
    double maturity() const { return schedule.maturity(); }
};

/// Short protection at the shorter maturity, long protection at the longer:
/// the trade that monetizes a Theorem 1 violation.
struct PairedTrade {
    CdsPosition short_leg;
    CdsPosition long_leg;

    PairedTrade(CdsPosition short_leg_, CdsPosition long_leg_)
        : short_leg(std::move(short_leg_)), long_leg(std::move(long_leg_)) {
        if (short_leg.direction != TradeDirection::short_protection ||
            long_leg.direction != TradeDirection::long_protection)
            throw DomainError("paired trade is short the near leg, long the far leg");
        if (!(short_leg.maturity() < long_leg.maturity()))
            throw DomainError("paired trade requires T1 < T2");
        if (short_leg.start() != long_leg.start())
            throw DomainError("paired trade legs must be co-initial");
        if (short_leg.notional != long_leg.notional)
            throw DomainError("paired trade legs must share the notional");
    }
};

/// Present value to the position holder. Long protection is worth the
/// protection leg minus the contracted premium leg; short is the negation.
/// A position struck at the current fair spread has zero value.
inline double cds_mtm(const CdsPosition& pos, const DiscountCurve& d,
                      const SurvivalCurve& s) {
    const double protection =
        protection_leg_value(d, s, pos.recovery, pos.start(), pos.maturity());
    const double premium =
        pos.contract_spread * discrete_defaultable_annuity(d, s, pos.schedule);
    const double pv_long = (protection - premium) * pos.notional;
    return pos.direction == TradeDirection::long_protection ? pv_long : -pv_long;
}

inline double paired_trade_mtm(const PairedTrade& trade, const DiscountCurve& d,
                               const SurvivalCurve& s) {
    return cds_mtm(trade.short_leg, d, s) + cds_mtm(trade.long_leg, d, s);
}

namespace detail {

/// Value under a parallel rate bump and a parallel quoted-spread bump, with
/// hazards re-bootstrapped from the (bumped) quotes under the (bumped)
/// discount curve: quotes are the market invariant, hazards are derived.
inline double value_under_bumps(const std::vector<const CdsPosition*>& legs,
                                const DiscountCurve& d, const CdsCurve& quoted,
                                const RecoverySpec& rec, int payments_per_year,
                                double rate_bump, double spread_bump) {
    const DiscountCurve d_b = rate_bump != 0.0 ? d.bumped(rate_bump) : d;
    const CdsCurve q_b = spread_bump != 0.0 ? quoted.bumped(spread_bump) : quoted;
    const SurvivalCurve s_b = bootstrap_hazards(q_b, d_b, rec, payments_per_year);
    double v = 0.0;
    for (const auto* leg : legs)
        v += cds_mtm(*leg, d_b, s_b);
    return v;
}

} // namespace detail

inline constexpr double kOneBp = 1e-4;

/// DV01 = V(r + 1bp, s) - V(r, s): 1bp parallel shift of the zero rates
/// behind the discount factors, survival re-bootstrapped from unchanged
/// quotes.
inline double dv01(const PairedTrade& trade, const DiscountCurve& d,
                   const CdsCurve& quoted, const RecoverySpec& rec,
                   int payments_per_year = 4, double bump = kOneBp) {
    const std::vector<const CdsPosition*> legs{&trade.short_leg, &trade.long_leg};
    return detail::value_under_bumps(legs, d, quoted, rec, payments_per_year, bump, 0.0) -
           detail::value_under_bumps(legs, d, quoted, rec, payments_per_year, 0.0, 0.0);
}

inline double dv01(const CdsPosition& pos, const DiscountCurve& d, const CdsCurve& quoted,
                   const RecoverySpec& rec, int payments_per_year = 4,
                   double bump = kOneBp) {
    const std::vector<const CdsPosition*> legs{&pos};
    return detail::value_under_bumps(legs, d, quoted, rec, payments_per_year, bump, 0.0) -
           detail::value_under_bumps(legs, d, quoted, rec, payments_per_year, 0.0, 0.0);
}

/// CR01 = V(r, s + 1bp) - V(r, s): all quoted spreads shifted in parallel,
/// hazards re-bootstrapped.
inline double cr01(const PairedTrade& trade, const DiscountCurve& d,
                   const CdsCurve& quoted, const RecoverySpec& rec,
                   int payments_per_year = 4, double bump = kOneBp) {
    const std::vector<const CdsPosition*> legs{&trade.short_leg, &trade.long_leg};
    return detail::value_under_bumps(legs, d, quoted, rec, payments_per_year, 0.0, bump) -
           detail::value_under_bumps(legs, d, quoted, rec, payments_per_year, 0.0, 0.0);
}

inline double cr01(const CdsPosition& pos, const DiscountCurve& d, const CdsCurve& quoted,
                   const RecoverySpec& rec, int payments_per_year = 4,
                   double bump = kOneBp) {
    const std::vector<const CdsPosition*> legs{&pos};
    return detail::value_under_bumps(legs, d, quoted, rec, payments_per_year, 0.0, bump) -
           detail::value_under_bumps(legs, d, quoted, rec, payments_per_year, 0.0, 0.0);
}

/// Roll a position forward by `elapsed` years: drop passed payment dates and
/// shift the remaining ones so valuation time is again 0. Used by the
/// mark-to-market replay.
inline CdsPosition seasoned(const CdsPosition& pos, double elapsed) {
    if (elapsed < 0.0)
        throw DomainError("cannot season a position by negative time");
    if (elapsed >= pos.maturity())
        throw DomainError("position already matured");
    std::vector<double> dates{0.0};
    for (double t : pos.schedule.dates())
        if (t - elapsed > 1e-9)
            dates.push_back(t - elapsed);
    return CdsPosition(pos.direction, pos.notional, pos.contract_spread,
                       PaymentSchedule(std::move(dates)), pos.recovery);
}

} // namespace cdsarb
