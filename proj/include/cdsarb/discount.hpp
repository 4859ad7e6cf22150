#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "cdsarb/errors.hpp"

namespace cdsarb {

/// Risk-free discount factors P(0, t) on pillars, log-linearly interpolated
/// (piecewise-constant forward rates). P(0, 0) = 1 is implicit. Monotonicity
/// is deliberately not required: negative rates are admitted.
class DiscountCurve {
public:
    struct Pillar {
        double t;
        double df;
    };

    DiscountCurve(std::vector<Pillar> pillars) : pillars_(std::move(pillars)) {
        if (pillars_.empty())
            throw DomainError("discount curve needs at least one pillar");
        double prev_t = 0.0;
        for (const auto& p : pillars_) {
            if (!(p.t > prev_t))
                throw DomainError("discount pillars must be strictly increasing in t");
            if (!(p.df > 0.0))
                throw DomainError("discount factors must be positive");
            prev_t = p.t;
        }
    }

    /// Flat continuously-compounded rate out to `t_max`.
    static DiscountCurve flat(double rate, double t_max = 40.0) {
        return DiscountCurve({{t_max, std::exp(-rate * t_max)}});
    }

    /// Sample P(t) = exp(-z(t) * t) from a zero-rate function on a uniform grid.
    template <class ZeroFn>
    static DiscountCurve from_zero_rates(ZeroFn&& z, double t_max, int pillars_count = 40) {
        std::vector<Pillar> ps;
        ps.reserve(std::size_t(pillars_count));
        for (int i = 1; i <= pillars_count; ++i) {
            double t = t_max * double(i) / double(pillars_count);
            ps.push_back({t, std::exp(-z(t) * t)});
        }
        return DiscountCurve(std::move(ps));
    }

    double max_time() const { return pillars_.back().t; }

    /// P(0, t). Exact at pillars, log-linear between, hard error beyond the
    /// last pillar.
    double discount(double t) const {
        if (t < 0.0)
            throw DomainError("discount factor requested at negative time");
        if (t == 0.0)
            return 1.0;
        if (t > pillars_.back().t + 1e-12)
            throw ExtrapolationError("discount query t=" + std::to_string(t) +
                                     " beyond last pillar t=" +
                                     std::to_string(pillars_.back().t));
        t = std::min(t, pillars_.back().t);
        auto it = std::lower_bound(pillars_.begin(), pillars_.end(), t,
                                   [](const Pillar& p, double x) { return p.t < x; });
        const double t1 = it->t;
        const double lp1 = std::log(it->df);
        if (t1 == t)
            return it->df;
        double t0 = 0.0, lp0 = 0.0; // implicit (0, 1)
        if (it != pillars_.begin()) {
            t0 = std::prev(it)->t;
            lp0 = std::log(std::prev(it)->df);
        }
        const double w = (t - t0) / (t1 - t0);
        return std::exp(lp0 + w * (lp1 - lp0));
    }

    /// Pillar times; quadratures force these as nodes so the piecewise
    /// log-linear kinks never straddle an interval.
    std::vector<double> knot_times() const {
        std::vector<double> ts;
        ts.reserve(pillars_.size());
        for (const auto& p : pillars_)
            ts.push_back(p.t);
        return ts;
    }

    /// Parallel shift of the continuously-compounded zero curve by `bump`
    /// (decimal per annum): P(t) -> P(t) * exp(-bump * t). Exact under
    /// log-linear interpolation, so applying it to pillars shifts the whole
    /// curve.
    DiscountCurve bumped(double bump) const {
        std::vector<Pillar> ps = pillars_;
        for (auto& p : ps)
            p.df *= std::exp(-bump * p.t);
        return DiscountCurve(std::move(ps));
    }

    const std::vector<Pillar>& pillars() const { return pillars_; }

private:
    std::vector<Pillar> pillars_;
};

} // namespace cdsarb
