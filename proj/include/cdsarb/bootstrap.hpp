#pragma once

#include <cmath>
#include <vector>

#include "cdsarb/errors.hpp"
#include "cdsarb/fair_spread.hpp"
#include "cdsarb/market.hpp"
#include "cdsarb/numerics.hpp"
#include "cdsarb/survival.hpp"

namespace cdsarb {

/// Hazard bracket for the per-tenor root solve. Wide enough to admit the
/// strongly negative hazards an inverted curve produces, narrow enough to
/// catch genuine divergence.
inline constexpr double kBootstrapHazardLo = -5.0;
inline constexpr double kBootstrapHazardHi = 10.0;

/// Sequentially calibrate piecewise-constant hazards so the quoted spread at
/// each tenor is reproduced exactly (residual < 1e-12) by the discrete fair
/// spread with `payments_per_year` premiums. Earlier segments are held fixed.
///
/// Negative hazards are returned as-is with the curve's pathological flag set:
/// surfacing them is the point, a violating quote pair *must* push some
/// segment negative.
inline SurvivalCurve bootstrap_hazards(const CdsCurve& curve, const DiscountCurve& d,
                                       const RecoverySpec& rec, int payments_per_year = 4) {
    const double t0 = curve.effective_start();
    std::vector<HazardSegment> segments;
    if (t0 > 0.0)
        segments.push_back({t0, 0.0}); // no default risk priced before T0

    for (const auto& quote : curve.quotes()) {
        const double maturity = quote.tenor.years();
        const auto sched = PaymentSchedule::regular(t0, maturity, payments_per_year);

        auto model_spread = [&](double lambda) {
            auto trial = segments;
            trial.push_back({maturity, lambda});
            return fair_spread_discrete(d, SurvivalCurve(std::move(trial)), rec, sched) -
                   quote.spread;
        };

        const double f_lo = model_spread(kBootstrapHazardLo);
        const double f_hi = model_spread(kBootstrapHazardHi);
        if ((f_lo > 0.0) == (f_hi > 0.0))
            throw BootstrapError("cannot bracket hazard for tenor " + quote.tenor.str() +
                                 "y in [-5, +10]: quoted spread " +
                                 std::to_string(quote.spread) + " unattainable");

        const auto root = find_root_bracketed(model_spread, kBootstrapHazardLo,
                                              kBootstrapHazardHi, 1e-13);
        if (std::abs(root.residual) >= 1e-12)
            throw BootstrapError("bootstrap did not converge at tenor " +
                                 quote.tenor.str() + "y (residual " +
                                 std::to_string(root.residual) + ")");
        segments.push_back({maturity, root.x});
    }
    return SurvivalCurve(std::move(segments));
}

} // namespace cdsarb
