#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdsarb/dates.hpp"
#include "cdsarb/errors.hpp"
#include "cdsarb/numerics.hpp"
#include "cdsarb/tenor.hpp"

namespace cdsarb {

enum class QuoteKind { mid, bid, ask };

enum class Region { Asia, Europe, NorthAmerica, Other };
enum class Sector { Banking, NonBanking };
enum class Rating { AAA, AA, A, BBB, NIG, NotRated };
enum class Seniority { Senior, SeniorSecured, Subordinated };

inline const char* to_string(QuoteKind k) {
    switch (k) {
    case QuoteKind::mid: return "mid";
    case QuoteKind::bid: return "bid";
    default: return "ask";
    }
}
inline const char* to_string(Region r) {
    switch (r) {
    case Region::Asia: return "Asia";
    case Region::Europe: return "Europe";
    case Region::NorthAmerica: return "NorthAmerica";
    default: return "Other";
    }
}
inline const char* to_string(Sector s) {
    return s == Sector::Banking ? "Banking" : "NonBanking";
}
inline const char* to_string(Rating r) {
    switch (r) {
    case Rating::AAA: return "AAA";
    case Rating::AA: return "AA";
    case Rating::A: return "A";
    case Rating::BBB: return "BBB";
    case Rating::NIG: return "NIG";
    default: return "NotRated";
    }
}
inline const char* to_string(Seniority s) {
    switch (s) {
    case Seniority::Senior: return "Senior";
    case Seniority::SeniorSecured: return "SeniorSecured";
    default: return "Subordinated";
    }
}

/// Reference-entity attributes carried through the anomaly census.
struct EntityMeta {
    std::string entity_id;
    std::string name;
    Region region = Region::Other;
    Sector sector = Sector::NonBanking;
    std::string currency = "USD"; // ISO 4217
    Rating rating = Rating::NotRated;
    Seniority seniority = Seniority::Senior;
};

/// One quoted CDS contract. Spreads are decimals internally (0.008953);
/// basis points exist only at the I/O boundary.
struct CdsQuote {
    Tenor tenor;
    double spread;
    QuoteKind kind = QuoteKind::mid;
};

/// A dated set of co-initial CDS quotes on one entity across maturities.
class CdsCurve {
public:
    CdsCurve(Date as_of, double effective_start, EntityMeta entity,
             std::vector<CdsQuote> quotes)
        : as_of_(as_of), effective_start_(effective_start), entity_(std::move(entity)),
          quotes_(std::move(quotes)) {
        if (entity_.entity_id.empty())
            throw DomainError("entity_id must be nonempty");
        if (effective_start_ < 0.0)
            throw DomainError("effective start T0 must be >= 0");
        if (quotes_.empty())
            throw DomainError("CDS curve needs at least one quote");
        for (std::size_t i = 0; i < quotes_.size(); ++i) {
            if (quotes_[i].spread < 0.0)
                throw DomainError("negative CDS spread");
            if (quotes_[i].tenor.years() <= effective_start_)
                throw DomainError("tenor " + quotes_[i].tenor.str() +
                                  " not beyond effective start");
            if (i > 0 && !(quotes_[i - 1].tenor < quotes_[i].tenor))
                throw DomainError("CDS quote tenors must be strictly increasing");
            if (quotes_[i].kind != quotes_[0].kind)
                throw DomainError("mixed quote kinds within one curve");
        }
    }

    const Date& as_of() const { return as_of_; }
    double effective_start() const { return effective_start_; }
    const EntityMeta& entity() const { return entity_; }
    const std::vector<CdsQuote>& quotes() const { return quotes_; }

    std::optional<double> spread_at(const Tenor& t) const {
        for (const auto& q : quotes_)
            if (q.tenor == t)
                return q.spread;
        return std::nullopt;
    }

    /// Curve with every spread shifted in parallel by `bump` (decimal).
    CdsCurve bumped(double bump) const {
        std::vector<CdsQuote> qs = quotes_;
        for (auto& q : qs)
            q.spread += bump;
        return CdsCurve(as_of_, effective_start_, entity_, std::move(qs));
    }

private:
    Date as_of_;
    double effective_start_;
    EntityMeta entity_;
    std::vector<CdsQuote> quotes_;
};

/// Premium payment dates t_0 = T0 < t_1 < ... < t_n = T, year offsets.
class PaymentSchedule {
public:
    explicit PaymentSchedule(std::vector<double> dates) : dates_(std::move(dates)) {
        if (dates_.size() < 2)
            throw DomainError("payment schedule needs T0 and at least one payment date");
        for (std::size_t i = 1; i < dates_.size(); ++i)
            if (!(dates_[i] > dates_[i - 1]))
                throw DomainError("payment dates must be strictly increasing");
    }

    /// Uniform schedule over (T0, T] at `payments_per_year`, last period
    /// shortened to land exactly on T.
    static PaymentSchedule regular(double t0, double t, int payments_per_year) {
        if (!(t > t0))
            throw DomainError("schedule requires T > T0");
        if (payments_per_year <= 0)
            throw DomainError("payments_per_year must be positive");
        const double step = 1.0 / payments_per_year;
        std::vector<double> ds{t0};
        for (double d = t0 + step; d < t - 1e-12; d += step)
            ds.push_back(d);
        ds.push_back(t);
        return PaymentSchedule(std::move(ds));
    }

    double start() const { return dates_.front(); }
    double maturity() const { return dates_.back(); }
    const std::vector<double>& dates() const { return dates_; }

private:
    std::vector<double> dates_;
};

/// Deterministic loss-given-default: a constant, a piecewise-constant profile
/// (closed-form protection legs), or an arbitrary function (quadrature path).
class RecoverySpec {
public:
    static RecoverySpec constant(double lgd) {
        check_lgd(lgd);
        RecoverySpec r;
        r.const_lgd_ = lgd;
        return r;
    }

    /// LGD given a market recovery rate R: L = 1 - R.
    static RecoverySpec from_recovery_rate(double recovery) {
        return constant(1.0 - recovery);
    }

    /// Piecewise-constant LGD: value `lgd` applies on (prev_end, t_end].
    static RecoverySpec piecewise(std::vector<std::pair<double, double>> t_end_lgd) {
        if (t_end_lgd.empty())
            throw DomainError("piecewise LGD needs at least one segment");
        double prev = 0.0;
        for (auto& [t, l] : t_end_lgd) {
            if (!(t > prev))
                throw DomainError("LGD segment ends must be strictly increasing");
            check_lgd(l);
            prev = t;
        }
        RecoverySpec r;
        r.segments_ = std::move(t_end_lgd);
        return r;
    }

    static RecoverySpec from_function(std::function<double(double)> fn) {
        RecoverySpec r;
        r.fn_ = std::move(fn);
        return r;
    }

    /// True when the protection leg can be integrated in closed form.
    bool piecewise_constant() const { return !fn_; }

    double lgd(double t) const {
        if (fn_)
            return (*fn_)(t);
        if (!segments_.empty()) {
            for (const auto& [t_end, l] : segments_)
                if (t <= t_end + 1e-12)
                    return l;
            return segments_.back().second; // flat past the last segment
        }
        return const_lgd_;
    }

    /// Interior kinks of the LGD profile, forced into quadratures and
    /// closed-form segmentations.
    std::vector<double> knot_times() const {
        std::vector<double> ts;
        for (const auto& [t_end, l] : segments_)
            ts.push_back(t_end);
        return ts;
    }

private:
    static void check_lgd(double l) {
        if (!(l > 0.0) || l > 1.0)
            throw DomainError("LGD must lie in (0, 1]");
    }

    double const_lgd_ = 0.6; // market-convention R = 40%
    std::vector<std::pair<double, double>> segments_;
    std::optional<std::function<double(double)>> fn_;
};

/// Default pair set of the anomaly census: (0.5y,1y), (1y,2y), (2y,5y), (5y,10y).
inline std::vector<std::pair<Tenor, Tenor>> default_maturity_pairs() {
    return {{Tenor(1, 2), Tenor(1)}, {Tenor(1), Tenor(2)}, {Tenor(2), Tenor(5)},
            {Tenor(5), Tenor(10)}};
}

} // namespace cdsarb
