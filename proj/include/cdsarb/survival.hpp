#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "cdsarb/errors.hpp"
#include "cdsarb/numerics.hpp"

namespace cdsarb {

/// Constant hazard `lambda` on (segment start, t_end]. Negative values are
/// legal: bootstrapped curves report them rather than clamping.
struct HazardSegment {
    double t_end;
    double lambda;
};

/// Piecewise-constant-hazard survival curve q(t) = Q(tau > t), q(0) = 1.
///
/// A curve is `pathological` when any hazard is negative or any implied
/// per-segment conditional default probability leaves [0, 1] — exactly the
/// nonsensical-probability output a violating CDS curve produces under
/// bootstrapping.
class SurvivalCurve {
public:
    explicit SurvivalCurve(std::vector<HazardSegment> segments)
        : segments_(std::move(segments)) {
        if (segments_.empty())
            throw DomainError("survival curve needs at least one hazard segment");
        double prev = 0.0;
        for (const auto& s : segments_) {
            if (!(s.t_end > prev))
                throw DomainError("hazard segment ends must be strictly increasing");
            prev = s.t_end;
        }
        // precompute q and Q at segment boundaries
        q_ends_.reserve(segments_.size());
        big_q_ends_.reserve(segments_.size());
        double q = 1.0, big_q = 0.0, t0 = 0.0;
        for (const auto& s : segments_) {
            const double dt = s.t_end - t0;
            big_q += q * dt * expm1_ratio(s.lambda * dt);
            q *= std::exp(-s.lambda * dt);
            q_ends_.push_back(q);
            big_q_ends_.push_back(big_q);
            t0 = s.t_end;
        }
        pathological_ = false;
        double prev_q = 1.0;
        for (double qe : q_ends_) {
            const double cond = 1.0 - qe / prev_q;
            if (cond < 0.0 || cond > 1.0)
                pathological_ = true;
            prev_q = qe;
        }
    }

    static SurvivalCurve flat(double lambda, double t_max = 40.0) {
        return SurvivalCurve({{t_max, lambda}});
    }

    double max_time() const { return segments_.back().t_end; }
    const std::vector<HazardSegment>& segments() const { return segments_; }
    bool pathological() const { return pathological_; }

    /// q(t). Can exceed 1 when hazards are negative; reported, never clamped.
    double survival_prob(double t) const {
        const auto [i, t_start] = locate(t);
        const double q0 = i == 0 ? 1.0 : q_ends_[i - 1];
        return q0 * std::exp(-segments_[i].lambda * (t - t_start));
    }

    /// Q(t) = integral of q over [0, t], in closed form per segment.
    double survival_time_integral(double t) const {
        const auto [i, t_start] = locate(t);
        const double q0 = i == 0 ? 1.0 : q_ends_[i - 1];
        const double base = i == 0 ? 0.0 : big_q_ends_[i - 1];
        const double dt = t - t_start;
        return base + q0 * dt * expm1_ratio(segments_[i].lambda * dt);
    }

    /// Q(tau <= t2 | tau > t1) = 1 - q(t2)/q(t1). Outside [0, 1] it is
    /// nonsensical as a probability; the flag says so, the value stays raw.
    struct ConditionalDefaultProb {
        double value;
        bool nonsensical;
    };

    ConditionalDefaultProb conditional_default_prob(double t1, double t2) const {
        if (!(t1 >= 0.0) || !(t2 > t1))
            throw DomainError("conditional default probability requires 0 <= t1 < t2");
        const double v = 1.0 - survival_prob(t2) / survival_prob(t1);
        return {v, v < 0.0 || v > 1.0};
    }

    /// Hazard rate of the segment containing t.
    double hazard_at(double t) const { return segments_[locate(t).first].lambda; }

    /// Hazard segment boundaries; quadratures force these as nodes.
    std::vector<double> knot_times() const {
        std::vector<double> ts;
        ts.reserve(segments_.size());
        for (const auto& s : segments_)
            ts.push_back(s.t_end);
        return ts;
    }

    /// Curve truncated/extended helpers used by the bootstrapper.
    SurvivalCurve with_segment(double t_end, double lambda) const {
        auto segs = segments_;
        segs.push_back({t_end, lambda});
        return SurvivalCurve(std::move(segs));
    }

private:
    // segment index containing t, plus that segment's start time
    std::pair<std::size_t, double> locate(double t) const {
        if (t < 0.0)
            throw DomainError("survival query at negative time");
        if (t > segments_.back().t_end + 1e-12)
            throw DomainError("survival query t=" + std::to_string(t) +
                              " beyond curve domain t=" +
                              std::to_string(segments_.back().t_end));
        double t_start = 0.0;
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            if (t <= segments_[i].t_end)
                return {i, t_start};
            t_start = segments_[i].t_end;
        }
        return {segments_.size() - 1, segments_.size() > 1
                                          ? segments_[segments_.size() - 2].t_end
                                          : 0.0};
    }

    std::vector<HazardSegment> segments_;
    std::vector<double> q_ends_;     // q at segment ends
    std::vector<double> big_q_ends_; // Q at segment ends
    bool pathological_ = false;
};

} // namespace cdsarb
