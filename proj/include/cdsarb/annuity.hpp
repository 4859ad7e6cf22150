#pragma once

#include <cmath>
#include <vector>

#include "cdsarb/discount.hpp"
#include "cdsarb/errors.hpp"
#include "cdsarb/market.hpp"
#include "cdsarb/numerics.hpp"
#include "cdsarb/survival.hpp"

namespace cdsarb {

/// Standardized risk-free annuity A_0(T0, T) = integral of P(0,t) over
/// [T0, T]: the present value of paying rate 1 continuously. This is the
/// maturity-replacing weight that keeps the no-arbitrage ordering valid when
/// rates go negative.
inline double standardized_annuity(const DiscountCurve& d, double t0, double t,
                                   double step = kDailyStep) {
    if (!(t > t0))
        throw DomainError("standardized annuity requires T > T0");
    if (t0 < 0.0)
        throw DomainError("standardized annuity requires T0 >= 0");
    const auto knots = d.knot_times();
    return trapezoid([&](double u) { return d.discount(u); }, t0, t, step, knots);
}

/// Discrete standardized annuity A_n = sum of (T_i - T_{i-1}) P(0, T_i).
inline double discrete_annuity(const DiscountCurve& d, const PaymentSchedule& sched) {
    double a = 0.0;
    const auto& ds = sched.dates();
    for (std::size_t i = 1; i < ds.size(); ++i)
        a += (ds[i] - ds[i - 1]) * d.discount(ds[i]);
    return a;
}

/// Defaultable standardized annuity A^d(T0, T) = integral of P(0,t) q(t):
/// the premium-leg divisor of the fair-spread formula.
inline double defaultable_annuity(const DiscountCurve& d, const SurvivalCurve& s,
                                  double t0, double t, double step = kDailyStep) {
    if (!(t > t0))
        throw DomainError("defaultable annuity requires T > T0");
    if (t0 < 0.0)
        throw DomainError("defaultable annuity requires T0 >= 0");
    auto knots = d.knot_times();
    for (double k : s.knot_times())
        knots.push_back(k);
    return trapezoid([&](double u) { return d.discount(u) * s.survival_prob(u); }, t0, t,
                     step, knots);
}

/// Discrete defaultable annuity with premium accrued to the default time:
/// A^d_n = sum of (Q(T_i) - Q(T_{i-1})) P(0, T_i), Q(T) = integral of q.
/// Q is evaluated in closed form per hazard segment.
inline double discrete_defaultable_annuity(const DiscountCurve& d, const SurvivalCurve& s,
                                           const PaymentSchedule& sched) {
    double a = 0.0;
    const auto& ds = sched.dates();
    double prev_q = s.survival_time_integral(ds.front());
    for (std::size_t i = 1; i < ds.size(); ++i) {
        const double q_i = s.survival_time_integral(ds[i]);
        a += (q_i - prev_q) * d.discount(ds[i]);
        prev_q = q_i;
    }
    return a;
}

/// Fair forward rate of a continuously exchanged fixed-for-floating swap over
/// [T0, T]:  I_0(T0, T) = (P(0,T0) - P(0,T)) / A_0(T0, T). At T = T0 the
/// instantaneous forward rate limit is returned (one-sided difference, daily
/// step).
inline double irs_fair_rate(const DiscountCurve& d, double t0, double t,
                            double step = kDailyStep) {
    if (t < t0)
        throw DomainError("irs_fair_rate requires T >= T0");
    if (t == t0) {
        const double h = step;
        const double p0 = d.discount(t0);
        return -(d.discount(t0 + h) - p0) / (h * p0);
    }
    return (d.discount(t0) - d.discount(t)) / standardized_annuity(d, t0, t, step);
}

} // namespace cdsarb
