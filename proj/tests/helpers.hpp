#pragma once

// Shared test utilities: deterministic random market-data builders.

#include <cdsarb/cdsarb.hpp>

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace testutil {

using namespace cdsarb;

struct RandomDiscount {
    DiscountCurve curve;
    bool nonnegative_rates;
};

/// Random discount curve: flat or piecewise zero rates in [lo, hi], domain to
/// t_max. Tracks whether all forward rates are nonnegative (P non-increasing).
inline RandomDiscount random_discount(std::uint64_t& rng, double lo = -0.02,
                                      double hi = 0.10, double t_max = 40.0) {
    if (mix64(rng) % 2 == 0) {
        const double r = uniform(rng, lo, hi);
        return {DiscountCurve::flat(r, t_max), r >= 0.0};
    }
    std::vector<DiscountCurve::Pillar> pillars;
    double lp = 0.0, prev_t = 0.0;
    bool nonneg = true;
    for (double t = 2.0; t <= t_max; t += 2.0) {
        const double fwd = uniform(rng, lo, hi);
        nonneg = nonneg && fwd >= 0.0;
        lp -= fwd * (t - prev_t);
        pillars.push_back({t, std::exp(lp)});
        prev_t = t;
    }
    return {DiscountCurve(std::move(pillars)), nonneg};
}

/// Random piecewise-constant hazards on the canonical tenor boundaries.
inline SurvivalCurve random_survival(std::uint64_t& rng, double lo = 0.0, double hi = 0.8) {
    std::vector<HazardSegment> segs;
    for (const auto& tenor : canonical_tenors())
        segs.push_back({tenor.years(), uniform(rng, lo, hi)});
    segs.push_back({40.0, uniform(rng, lo, hi)});
    return SurvivalCurve(std::move(segs));
}

/// Strictly upward-sloping quoted curve (clean under every check).
inline CdsCurve random_clean_curve(std::uint64_t& rng, Date as_of = Date(2008, 6, 2)) {
    EntityMeta meta;
    meta.entity_id = "TEST";
    meta.name = "Test Entity";
    std::vector<CdsQuote> quotes;
    double s = std::exp(uniform(rng, std::log(30e-4), std::log(400e-4)));
    for (const auto& tenor : canonical_tenors()) {
        quotes.push_back({tenor, s, QuoteKind::mid});
        s *= 1.0 + uniform(rng, 0.03, 0.3);
    }
    return CdsCurve(as_of, 0.0, meta, std::move(quotes));
}

} // namespace testutil
