#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdsarb/annuity.hpp"
#include "cdsarb/discount.hpp"
#include "cdsarb/errors.hpp"
#include "cdsarb/market.hpp"
#include "cdsarb/tenor.hpp"

namespace cdsarb {

enum class AoACondition { thm1, thm2, thm3, irs_corollary };

inline const char* to_string(AoACondition c) {
    switch (c) {
    case AoACondition::thm1: return "thm1";
    case AoACondition::thm2: return "thm2";
    case AoACondition::thm3: return "thm3";
    default: return "irs";
    }
}

/// One violating maturity pair. lhs/rhs are the weighted spreads whose
/// ordering the theorem requires to be strictly increasing; a violation
/// always has lhs >= rhs. mar = lhs / rhs measures its strength (for
/// Theorem 1 with T0 = 0 this is the Maturity Adjusted Spread Ratio).
struct AoAViolation {
    Tenor tenor_short;
    Tenor tenor_long;
    double lhs_value;
    double rhs_value;
    double mar;
};

struct SkippedPair {
    Tenor tenor_short;
    Tenor tenor_long;
    std::string reason;
};

struct AoAVerdict {
    AoACondition condition = AoACondition::thm1;
    std::vector<AoAViolation> violations; // sorted by (T1, T2)
    std::vector<SkippedPair> skipped;
    bool clean() const { return violations.empty(); }
};

/// Maturity Adjusted Spread Ratio for spot-starting contracts (T0 = 0):
/// MAR = T1 s1 / (T2 s2). MAR >= 1 flags the pair.
inline double mar(double s1, double t1, double s2, double t2) {
    if (!(t1 > 0.0) || !(t2 > t1) || s1 < 0.0 || s2 < 0.0)
        throw DomainError("mar requires 0 < T1 < T2 and nonnegative spreads");
    if (s2 == 0.0 || t2 == 0.0)
        throw DomainError("mar undefined: T2*s2 = 0");
    return (t1 * s1) / (t2 * s2);
}

/// Theorem 1 pair check: (T - T0) s(T) must be *strictly* increasing, so a
/// violation is (T1-T0) s1 >= (T2-T0) s2 (equality counts). `epsilon` demands
/// the violation clear a margin before it is flagged.
inline std::optional<AoAViolation> check_thm1_pair(double s1, const Tenor& t1, double s2,
                                                   const Tenor& t2, double t0 = 0.0,
                                                   double epsilon = 0.0) {
    const double y1 = t1.years();
    const double y2 = t2.years();
    if (!(t0 < y1) || !(y1 < y2))
        throw DomainError("check_thm1_pair requires T0 < T1 < T2");
    if (s1 < 0.0 || s2 < 0.0)
        throw DomainError("check_thm1_pair requires nonnegative spreads");
    const double lhs = (y1 - t0) * s1;
    const double rhs = (y2 - t0) * s2;
    if (lhs >= rhs + epsilon) {
        const double ratio =
            rhs > 0.0 ? lhs / rhs : std::numeric_limits<double>::infinity();
        return AoAViolation{t1, t2, lhs, rhs, ratio};
    }
    return std::nullopt;
}

namespace detail {

/// Generic weighted-spread monotonicity check: violation on (T_i, T_j), i<j,
/// iff w(T_i) s_i >= w(T_j) s_j + epsilon. An empty pair list means all
/// ordered tenor pairs of the curve; requested pairs with a missing tenor are
/// skipped, never interpolated.
inline AoAVerdict check_weighted_curve(const CdsCurve& curve,
                                       const std::function<double(double)>& weight,
                                       AoACondition condition,
                                       const std::vector<std::pair<Tenor, Tenor>>& pairs,
                                       double epsilon) {
    AoAVerdict verdict;
    verdict.condition = condition;
    const auto& quotes = curve.quotes();

    std::vector<double> w(quotes.size(), std::numeric_limits<double>::quiet_NaN());
    auto weight_at = [&](std::size_t i) {
        if (std::isnan(w[i]))
            w[i] = weight(quotes[i].tenor.years());
        return w[i];
    };
    auto index_of = [&](const Tenor& t) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < quotes.size(); ++i)
            if (quotes[i].tenor == t)
                return i;
        return std::nullopt;
    };
    auto check_indices = [&](std::size_t i, std::size_t j) {
        const double lhs = weight_at(i) * quotes[i].spread;
        const double rhs = weight_at(j) * quotes[j].spread;
        if (lhs >= rhs + epsilon) {
            const double ratio =
                rhs > 0.0 ? lhs / rhs : std::numeric_limits<double>::infinity();
            verdict.violations.push_back(
                {quotes[i].tenor, quotes[j].tenor, lhs, rhs, ratio});
        }
    };

    if (pairs.empty()) {
        for (std::size_t i = 0; i < quotes.size(); ++i)
            for (std::size_t j = i + 1; j < quotes.size(); ++j)
                check_indices(i, j);
    } else {
        for (const auto& [t1, t2] : pairs) {
            if (!(t1 < t2))
                throw DomainError("pair tenors must satisfy T1 < T2");
            auto i = index_of(t1);
            auto j = index_of(t2);
            if (!i || !j) {
                verdict.skipped.push_back(
                    {t1, t2,
                     std::string("missing tenor ") + (!i ? t1.str() : t2.str()) + "y"});
                continue;
            }
            check_indices(*i, *j);
        }
    }
    // canonical ordering regardless of the pair list's order
    std::sort(verdict.violations.begin(), verdict.violations.end(),
              [](const AoAViolation& a, const AoAViolation& b) {
                  if (a.tenor_short != b.tenor_short)
                      return a.tenor_short < b.tenor_short;
                  return a.tenor_long < b.tenor_long;
              });
    return verdict;
}

} // namespace detail

/// Theorem 1 over a quoted curve. Defaults to the census pair set
/// {(0.5,1), (1,2), (2,5), (5,10)}; pass explicit pairs for other scopes.
inline AoAVerdict
check_thm1_curve(const CdsCurve& curve,
                 const std::vector<std::pair<Tenor, Tenor>>& pairs = default_maturity_pairs(),
                 double epsilon = 0.0) {
    const double t0 = curve.effective_start();
    return detail::check_weighted_curve(
        curve, [t0](double t) { return t - t0; }, AoACondition::thm1, pairs, epsilon);
}

/// Theorem 2: A_0(T0,T) s(T) must be increasing, valid in any rate
/// environment. Defaults to all ordered tenor pairs (single-curve diagnostic).
inline AoAVerdict check_thm2_curve(const CdsCurve& curve, const DiscountCurve& d,
                                   const std::vector<std::pair<Tenor, Tenor>>& pairs = {},
                                   double epsilon = 0.0) {
    const double t0 = curve.effective_start();
    if (curve.quotes().back().tenor.years() > d.max_time() + 1e-12)
        throw DomainError("discount curve does not span the CDS tenors");
    return detail::check_weighted_curve(
        curve, [&, t0](double t) { return standardized_annuity(d, t0, t); },
        AoACondition::thm2, pairs, epsilon);
}

/// Theorem 3 (discrete premiums): A_n s_n must be increasing, with A_n the
/// discrete standardized annuity over the induced payment schedule.
inline AoAVerdict check_thm3_curve(const CdsCurve& curve, const DiscountCurve& d,
                                   int payments_per_year = 4,
                                   const std::vector<std::pair<Tenor, Tenor>>& pairs = {},
                                   double epsilon = 0.0) {
    const double t0 = curve.effective_start();
    if (curve.quotes().back().tenor.years() > d.max_time() + 1e-12)
        throw DomainError("discount curve does not span the CDS tenors");
    return detail::check_weighted_curve(
        curve,
        [&, t0](double t) {
            return discrete_annuity(d, PaymentSchedule::regular(t0, t, payments_per_year));
        },
        AoACondition::thm3, pairs, epsilon);
}

/// IRS corollary of Theorem 2: (1 - F_0(T0,T)) s(T) / I_0(T0,T) must be
/// increasing, with F the forward bond price and I the fair swap rate. A
/// zero-rate curve makes I vanish and the quantity undefined; Theorem 2 is
/// the right form there.
inline AoAVerdict
check_irs_corollary(const CdsCurve& curve, const DiscountCurve& d,
                    const std::vector<std::pair<Tenor, Tenor>>& pairs = {},
                    double epsilon = 0.0) {
    const double t0 = curve.effective_start();
    if (curve.quotes().back().tenor.years() > d.max_time() + 1e-12)
        throw DomainError("discount curve does not span the CDS tenors");
    const double p0 = d.discount(t0);
    return detail::check_weighted_curve(
        curve,
        [&, t0, p0](double t) {
            const double rate = irs_fair_rate(d, t0, t);
            if (std::abs(rate) < 1e-12)
                throw DegenerateCurveError(
                    "IRS fair rate is zero at T=" + std::to_string(t) +
                    ": corollary quantity undefined, use the Theorem 2 check");
            const double fwd_price = d.discount(t) / p0;
            return (1.0 - fwd_price) / rate;
        },
        AoACondition::irs_corollary, pairs, epsilon);
}

/// Plot series for the graphical diagnostic: quoted points against the
/// no-arbitrage hyperbola through an anchor quote.
struct PlotPoint {
    double x;
    double s;
    std::string series; // "quotes" or "hyperbola"
    bool violation;
};

struct PlotSeries {
    bool log_log = false;
    double anchor_x = 0.0; // pre-transform coordinates
    double anchor_s = 0.0;
    std::vector<PlotPoint> points;
};

/// Quotes (x_i, s_i) with x = T - T0 plus the hyperbola s = C/x through the
/// anchor (C = x_a s_a), sampled at 100 points over [x_a, max x]. Quotes with
/// x > x_a lying on or below the hyperbola are tagged as violations. In
/// log-log mode coordinates are log-transformed and the hyperbola becomes the
/// slope -1 line through (log x_a, log s_a); the tag set is identical.
inline PlotSeries hyperbola_plot_data(const CdsCurve& curve, const Tenor& anchor,
                                      bool log_log = false) {
    const double t0 = curve.effective_start();
    auto anchor_spread = curve.spread_at(anchor);
    if (!anchor_spread)
        throw DomainError("anchor tenor " + anchor.str() + "y not quoted on this curve");
    const double xa = anchor.years() - t0;
    const double sa = *anchor_spread;
    const double c = xa * sa;

    PlotSeries series;
    series.log_log = log_log;
    series.anchor_x = xa;
    series.anchor_s = sa;
    auto tx = [log_log](double v) { return log_log ? std::log(v) : v; };

    double max_x = xa;
    for (const auto& q : curve.quotes()) {
        const double x = q.tenor.years() - t0;
        max_x = std::max(max_x, x);
        const bool tagged = x > xa && x * q.spread <= c;
        series.points.push_back({tx(x), tx(q.spread), "quotes", tagged});
    }
    const int samples = 100;
    for (int i = 0; i < samples; ++i) {
        const double x = xa + (max_x - xa) * double(i) / double(samples - 1);
        series.points.push_back({tx(x), tx(c / x), "hyperbola", false});
    }
    return series;
}

} // namespace cdsarb
