#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "cdsarb/annuity.hpp"
#include "cdsarb/aoa.hpp"
#include "cdsarb/discount.hpp"
#include "cdsarb/errors.hpp"
#include "cdsarb/market.hpp"
#include "cdsarb/numerics.hpp"

namespace cdsarb {

/// Forward swap-rate curve T -> I_0(T0, T), sampled and linearly
/// interpolated. The value at T0 is the instantaneous forward-rate limit; if
/// the samples start after T0 it is filled in by linear extrapolation from
/// the first two samples and flagged.
class IrsForwardCurve {
public:
    struct Sample {
        double t;
        double rate;
    };

    IrsForwardCurve(double t0, std::vector<Sample> samples) : t0_(t0) {
        if (samples.empty())
            throw DomainError("IRS curve needs at least one sample");
        double prev = t0 - 1.0;
        for (const auto& s : samples) {
            if (!(s.t > prev))
                throw DomainError("IRS samples must be strictly increasing in T");
            if (s.t < t0)
                throw DomainError("IRS sample before T0");
            prev = s.t;
        }
        if (samples.front().t > t0 + 1e-12) {
            if (samples.size() < 2)
                throw DomainError("cannot extrapolate I(T0) from a single sample");
            const auto& a = samples.front();
            const auto& b = samples[1];
            const double slope = (b.rate - a.rate) / (b.t - a.t);
            samples.insert(samples.begin(), {t0, a.rate - slope * (a.t - t0)});
            extrapolated_t0_ = true;
        }
        samples_ = std::move(samples);
    }

    /// Sample I_0(T0, T) from a discount curve on a uniform grid (daily by
    /// default); the T0 entry is the instantaneous forward-rate limit.
    static IrsForwardCurve from_discount(const DiscountCurve& d, double t0, double t_max,
                                         double sample_step = kDailyStep) {
        if (!(t_max > t0))
            throw DomainError("IRS sampling requires t_max > T0");
        std::vector<Sample> ss;
        ss.push_back({t0, irs_fair_rate(d, t0, t0)});
        for (double t = t0 + sample_step; t < t_max - 1e-12; t += sample_step)
            ss.push_back({t, irs_fair_rate(d, t0, t)});
        ss.push_back({t_max, irs_fair_rate(d, t0, t_max)});
        return IrsForwardCurve(t0, std::move(ss));
    }

    double t0() const { return t0_; }
    double max_time() const { return samples_.back().t; }
    bool extrapolated_t0() const { return extrapolated_t0_; }
    const std::vector<Sample>& samples() const { return samples_; }

    double rate(double t) const {
        if (t < t0_ - 1e-12 || t > max_time() + 1e-12)
            throw DomainError("IRS rate query outside sample range");
        t = std::clamp(t, samples_.front().t, samples_.back().t);
        auto it = std::lower_bound(samples_.begin(), samples_.end(), t,
                                   [](const Sample& s, double x) { return s.t < x; });
        if (it->t == t || it == samples_.begin())
            return it->rate;
        const auto& hi = *it;
        const auto& lo = *std::prev(it);
        const double w = (t - lo.t) / (hi.t - lo.t);
        return lo.rate + w * (hi.rate - lo.rate);
    }

    std::vector<double> knot_times() const {
        std::vector<double> ts;
        ts.reserve(samples_.size());
        for (const auto& s : samples_)
            ts.push_back(s.t);
        return ts;
    }

private:
    double t0_;
    std::vector<Sample> samples_;
    bool extrapolated_t0_ = false;
};

/// Phi_0(U, T) = exp(-integral of I_0(T0, V) over [U, T]). Phi(T, T) = 1.
inline double phi(const IrsForwardCurve& irs, double u, double t,
                  double step = kDailyStep) {
    if (!(u >= irs.t0() - 1e-12) || !(t >= u) || t > irs.max_time() + 1e-12)
        throw DomainError("phi requires T0 <= U <= T within the IRS sample range");
    if (t == u)
        return 1.0;
    const auto knots = irs.knot_times();
    return std::exp(-trapezoid([&](double v) { return irs.rate(v); }, u, t, step, knots));
}

/// Integral of Phi_0(U, T) over U in [T0, T] — the annuity-like factor that
/// multiplies the spread in the CDS-IRS no-arbitrage condition. Computed on a
/// shared node grid: one cumulative pass for the inner rate integral, one
/// trapezoid pass for the outer integral.
inline double phi_integral(const IrsForwardCurve& irs, double t, double step = kDailyStep) {
    const double t0 = irs.t0();
    if (t < t0 || t > irs.max_time() + 1e-12)
        throw DomainError("phi_integral requires T0 <= T within the IRS sample range");
    if (t == t0)
        return 0.0;
    const auto nodes = quadrature_nodes(t0, t, step, irs.knot_times());
    const std::size_t n = nodes.size();
    std::vector<double> cum(n, 0.0); // integral of I from T0 to node k
    for (std::size_t k = 1; k < n; ++k)
        cum[k] = cum[k - 1] + 0.5 * (nodes[k] - nodes[k - 1]) *
                                  (irs.rate(nodes[k - 1]) + irs.rate(nodes[k]));
    const double total = cum[n - 1];
    double integral = 0.0;
    double prev = std::exp(-(total - cum[0]));
    for (std::size_t k = 1; k < n; ++k) {
        const double cur = std::exp(-(total - cum[k]));
        integral += 0.5 * (nodes[k] - nodes[k - 1]) * (prev + cur);
        prev = cur;
    }
    return integral;
}

/// Forward bond price recovered from the IRS forward curve alone:
/// F_0(T0, T) = 1 - I_0(T0, T) * integral of Phi_0(U, T) dU. F(T0) = 1.
inline double forward_bond_from_irs(const IrsForwardCurve& irs, double t,
                                    double step = kDailyStep) {
    if (t < irs.t0() || t > irs.max_time() + 1e-12)
        throw DomainError("forward bond query outside the IRS sample range");
    if (t == irs.t0())
        return 1.0;
    return 1.0 - irs.rate(t) * phi_integral(irs, t, step);
}

/// Instantaneous forward rate f_{0,T} = -(d/dT F)/F from the recovered
/// forward bond prices, by central finite difference (daily step, one-sided
/// at the sample-range ends). The Riccati route is equivalent and exercised
/// as a test residual only.
inline double forward_rate_from_irs(const IrsForwardCurve& irs, double t,
                                    double step = kDailyStep) {
    if (!(t > irs.t0()))
        throw DomainError("forward_rate_from_irs requires T > T0");
    const double f_t = forward_bond_from_irs(irs, t, step);
    if (!(f_t > 0.0))
        throw DegenerateCurveError("IRS curve implies a nonpositive forward bond price "
                                   "at T=" + std::to_string(t));
    const double lo = std::max(t - step, irs.t0());
    const double hi = std::min(t + step, irs.max_time());
    const double f_lo = forward_bond_from_irs(irs, lo, step);
    const double f_hi = forward_bond_from_irs(irs, hi, step);
    return -(f_hi - f_lo) / ((hi - lo) * f_t);
}

/// Diagnostic for the Appendix-A admissibility remark: under nonnegative
/// rates the recovered F must be non-increasing. Returns the grid times where
/// it increases instead of rejecting the curve.
inline std::vector<double> nonmonotone_forward_times(const IrsForwardCurve& irs,
                                                     double grid_step = 0.25) {
    std::vector<double> bad;
    double prev = 1.0;
    for (double t = irs.t0() + grid_step; t <= irs.max_time() + 1e-12; t += grid_step) {
        const double f = forward_bond_from_irs(irs, std::min(t, irs.max_time()));
        if (f > prev + 1e-12)
            bad.push_back(std::min(t, irs.max_time()));
        prev = f;
    }
    return bad;
}

/// Combined CDS-IRS no-arbitrage check (Theorem 2 rewritten against swap
/// rates): (integral of Phi(U, T_i) dU) s_i must be increasing across
/// maturities.
inline AoAVerdict check_irs_cds_aoa(const CdsCurve& curve, const IrsForwardCurve& irs,
                                    const std::vector<std::pair<Tenor, Tenor>>& pairs = {},
                                    double epsilon = 0.0) {
    if (std::abs(curve.effective_start() - irs.t0()) > 1e-9)
        throw DomainError("CDS curve and IRS curve must share T0");
    if (curve.quotes().back().tenor.years() > irs.max_time() + 1e-12)
        throw DomainError("IRS sample range does not cover the CDS tenors");
    return detail::check_weighted_curve(
        curve, [&](double t) { return phi_integral(irs, t); },
        AoACondition::irs_corollary, pairs, epsilon);
}

} // namespace cdsarb
