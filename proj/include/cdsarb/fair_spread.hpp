#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "cdsarb/annuity.hpp"
#include "cdsarb/discount.hpp"
#include "cdsarb/errors.hpp"
#include "cdsarb/market.hpp"
#include "cdsarb/numerics.hpp"
#include "cdsarb/survival.hpp"

namespace cdsarb {

namespace detail {

/// Merge and sort the kink locations of all curve pieces inside (t0, t).
inline std::vector<double> piece_boundaries(const DiscountCurve& d, const SurvivalCurve& s,
                                            const RecoverySpec& rec, double t0, double t) {
    std::vector<double> bs{t0, t};
    for (double k : d.knot_times())
        if (k > t0 && k < t)
            bs.push_back(k);
    for (double k : s.knot_times())
        if (k > t0 && k < t)
            bs.push_back(k);
    for (double k : rec.knot_times())
        if (k > t0 && k < t)
            bs.push_back(k);
    std::sort(bs.begin(), bs.end());
    bs.erase(std::unique(bs.begin(), bs.end(),
                         [](double a, double b) { return b - a < 1e-14; }),
             bs.end());
    return bs;
}

} // namespace detail

/// Expected discounted loss payment of the protection leg over (T0, T]:
///
///   -integral of L(t) P(0,t) dq(t)  =  integral of L(t) P(0,t) lambda(t) q(t) dt
///
/// paid at the time of default. Between kinks every factor is exponential or
/// constant, so piecewise-constant LGD is integrated in closed form; an
/// arbitrary deterministic L(t) falls back to trapezoid quadrature of
/// L P q per piece (dq = -lambda q dt).
inline double protection_leg_value(const DiscountCurve& d, const SurvivalCurve& s,
                                   const RecoverySpec& rec, double t0, double t,
                                   double step = kDailyStep) {
    if (!(t > t0))
        throw DomainError("protection leg requires T > T0");
    const auto bounds = detail::piece_boundaries(d, s, rec, t0, t);
    double value = 0.0;
    for (std::size_t i = 1; i < bounds.size(); ++i) {
        const double a = bounds[i - 1];
        const double b = bounds[i];
        const double dt = b - a;
        const double mid = 0.5 * (a + b);
        const double lambda = s.hazard_at(mid);
        if (lambda == 0.0)
            continue; // q flat: no default mass on this piece
        if (rec.piecewise_constant()) {
            const double pa = d.discount(a);
            const double qa = s.survival_prob(a);
            const double fwd = std::log(pa / d.discount(b)) / dt;
            value += rec.lgd(mid) * lambda * pa * qa * dt *
                     expm1_ratio((fwd + lambda) * dt);
        } else {
            value += lambda *
                     trapezoid(
                         [&](double u) {
                             return rec.lgd(u) * d.discount(u) * s.survival_prob(u);
                         },
                         a, b, step);
        }
    }
    return value;
}

/// Fair spread of a continuously paid CDS over [T0, T]:
/// protection leg divided by the defaultable standardized annuity.
inline double fair_spread_continuous(const DiscountCurve& d, const SurvivalCurve& s,
                                     const RecoverySpec& rec, double t0, double t,
                                     double step = kDailyStep) {
    const double annuity = defaultable_annuity(d, s, t0, t, step);
    if (!(annuity > 1e-300))
        throw DegenerateCurveError("defaultable annuity vanished: survival curve is "
                                   "degenerate over the requested horizon");
    return protection_leg_value(d, s, rec, t0, t, step) / annuity;
}

/// Fair spread with discretely paid premiums (accrued to the default time):
/// same protection leg over the discrete defaultable annuity A^d_n.
inline double fair_spread_discrete(const DiscountCurve& d, const SurvivalCurve& s,
                                   const RecoverySpec& rec, const PaymentSchedule& sched,
                                   double step = kDailyStep) {
    const double annuity = discrete_defaultable_annuity(d, s, sched);
    if (!(annuity > 1e-300))
        throw DegenerateCurveError("discrete defaultable annuity vanished");
    return protection_leg_value(d, s, rec, sched.start(), sched.maturity(), step) /
           annuity;
}

} // namespace cdsarb
