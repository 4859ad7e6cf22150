#pragma once

#include <cstdio>
#include <iterator>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cdsarb/csv.hpp"
#include "cdsarb/dates.hpp"
#include "cdsarb/market.hpp"
#include "cdsarb/numerics.hpp"
#include "cdsarb/scan.hpp"
#include "cdsarb/tenor.hpp"

namespace cdsarb {

// ---------------------------------------------------------------------------
// Hand-built crisis fixtures. Only the quotes the census reports verbatim are
// historical (Microsoft 5y/10y on 03/12/2008, the 1538bp 2y blowout); the
// intermediate tenors are synthetic, shaped to reproduce the documented
// pathologies sign-for-sign.
// ---------------------------------------------------------------------------

namespace detail {

inline CdsCurve make_fixture(Date as_of, EntityMeta meta,
                             std::vector<std::pair<Tenor, double>> tenor_bp) {
    std::vector<CdsQuote> quotes;
    quotes.reserve(tenor_bp.size());
    for (auto& [tenor, bp] : tenor_bp)
        quotes.push_back({tenor, bp * 1e-4, QuoteKind::mid});
    return CdsCurve(as_of, 0.0, std::move(meta), std::move(quotes));
}

} // namespace detail

/// Microsoft, 03/12/2008: 5y at 89.53bp against 10y at 33.55bp. One (5,10)
/// violation; bootstrapping goes negative on the 4y and 7y segments.
inline CdsCurve msft_curve_20081203() {
    return detail::make_fixture(
        Date(2008, 12, 3),
        {"MSFT", "Microsoft Corp", Region::NorthAmerica, Sector::NonBanking, "USD",
         Rating::AAA, Seniority::Senior},
        {{Tenor(1, 2), 115.0},
         {Tenor(1), 105.0},
         {Tenor(2), 95.0},
         {Tenor(3), 88.0},
         {Tenor(4), 60.0},
         {Tenor(5), 89.53},
         {Tenor(7), 46.0},
         {Tenor(10), 33.55}});
}

/// AIB, 04/12/2008: short end blown out, one (0.5,1) violation, negative
/// 1-year hazard segment.
inline CdsCurve aib_curve_20081204() {
    return detail::make_fixture(
        Date(2008, 12, 4),
        {"AIB", "Allied Irish Banks", Region::Europe, Sector::Banking, "EUR", Rating::A,
         Seniority::Senior},
        {{Tenor(1, 2), 380.0},
         {Tenor(1), 180.0},
         {Tenor(2), 195.0},
         {Tenor(3), 210.0},
         {Tenor(4), 225.0},
         {Tenor(5), 240.0},
         {Tenor(7), 230.0},
         {Tenor(10), 220.0}});
}

/// Post-Lehman 2y blowout against otherwise normal AAA spreads: the (2,5)
/// pair carries a ~16.5 MAR, the outlier the census excludes from averages.
inline CdsCurve freddie_style_curve_20080926() {
    return detail::make_fixture(
        Date(2008, 9, 26),
        {"FRE", "Freddie Mac", Region::NorthAmerica, Sector::NonBanking, "USD",
         Rating::AAA, Seniority::Senior},
        {{Tenor(1, 2), 40.0},
         {Tenor(1), 35.0},
         {Tenor(2), 1538.0},
         {Tenor(3), 45.0},
         {Tenor(4), 40.0},
         {Tenor(5), 37.2},
         {Tenor(7), 40.0},
         {Tenor(10), 42.0}});
}

/// Quote path for the mark-to-market replay: starts at the violating
/// 03/12/2008 curve and blends toward a normal upward-sloping curve, with the
/// 5y staying below its inception quote and the 10y above. The paired trade
/// struck at inception is worth zero on day one and positive afterwards.
inline std::vector<CdsCurve> msft_replay_path() {
    const auto inception = msft_curve_20081203();
    const double normal_bp[8] = {40.0, 45.0, 52.0, 58.0, 63.0, 67.0, 72.0, 76.0};
    const Date dates[] = {Date(2008, 12, 3),  Date(2008, 12, 10), Date(2009, 1, 15),
                          Date(2009, 3, 20),  Date(2009, 6, 19),  Date(2009, 9, 21),
                          Date(2009, 12, 21), Date(2010, 3, 22),  Date(2010, 6, 21)};
    std::vector<CdsCurve> path;
    const int n = int(std::size(dates));
    for (int i = 0; i < n; ++i) {
        const double f = double(i) / double(n - 1);
        std::vector<CdsQuote> quotes;
        for (std::size_t k = 0; k < inception.quotes().size(); ++k) {
            const auto& q = inception.quotes()[k];
            quotes.push_back(
                {q.tenor, (1.0 - f) * q.spread + f * normal_bp[k] * 1e-4, QuoteKind::mid});
        }
        path.emplace_back(dates[i], 0.0, inception.entity(), std::move(quotes));
    }
    return path;
}

// ---------------------------------------------------------------------------
// Synthetic dataset generator: clean upward-sloping curves with a chosen
// number of planted Theorem 1 violations and a ground-truth manifest.
// ---------------------------------------------------------------------------

struct SyntheticDataset {
    std::uint64_t seed = 0;
    std::vector<CdsCurve> curves;
    std::vector<AnomalyRecord> planted; // ground truth, condition = thm1

    std::map<std::string, long> planted_count_by(const std::string& key) const {
        return count_records_by(planted, key);
    }
};

/// Generate `n_curves` dated CDS curves over 2007-01..2010-06 with exactly
/// `n_violations` planted pair violations (at most one per curve). A plant
/// raises the short-leg spread of one census pair to mar in [1.0001, 1.35];
/// every other curve is strictly upward-sloping and clean by construction.
inline SyntheticDataset generate_dataset(std::uint64_t seed, long n_curves,
                                         long n_violations) {
    if (n_violations > n_curves)
        throw DomainError("cannot plant more violations than curves");
    SyntheticDataset ds;
    ds.seed = seed;
    std::uint64_t rng = seed;

    const Date start(2007, 1, 2);
    const Date end(2010, 6, 30);
    const long span = end.serial() - start.serial();

    static const Region regions[] = {Region::NorthAmerica, Region::NorthAmerica,
                                     Region::NorthAmerica, Region::Europe, Region::Europe,
                                     Region::Asia, Region::Other};
    static const Sector sectors[] = {Sector::NonBanking, Sector::NonBanking,
                                     Sector::NonBanking, Sector::NonBanking,
                                     Sector::NonBanking, Sector::Banking};
    static const char* currencies[] = {"USD", "USD", "USD", "EUR", "EUR", "GBP", "JPY"};
    static const Rating ratings[] = {Rating::AAA,      Rating::AA,  Rating::AA,
                                     Rating::A,        Rating::A,   Rating::A,
                                     Rating::BBB,      Rating::BBB, Rating::BBB,
                                     Rating::NIG,      Rating::NIG, Rating::NotRated};
    static const Seniority seniorities[] = {
        Seniority::Senior,        Seniority::Senior, Seniority::Senior,
        Seniority::Senior,        Seniority::Senior, Seniority::Senior,
        Seniority::SeniorSecured, Seniority::Subordinated};

    std::set<long> plant_at;
    while (long(plant_at.size()) < n_violations)
        plant_at.insert(long(uniform_index(rng, std::uint64_t(n_curves))));

    const auto pairs = default_maturity_pairs();
    for (long i = 0; i < n_curves; ++i) {
        EntityMeta meta;
        char id[16];
        std::snprintf(id, sizeof id, "SYN%05ld", i);
        meta.entity_id = id;
        meta.name = std::string("Synthetic Entity ") + std::to_string(i);
        meta.region = regions[uniform_index(rng, std::size(regions))];
        meta.sector = sectors[uniform_index(rng, std::size(sectors))];
        meta.currency = currencies[uniform_index(rng, std::size(currencies))];
        meta.rating = ratings[uniform_index(rng, std::size(ratings))];
        meta.seniority = seniorities[uniform_index(rng, std::size(seniorities))];

        // weekday quote date
        long offset = long(uniform_index(rng, std::uint64_t(span)));
        int weekday = int((start.serial() + offset + 4) % 7); // 0 = Sunday
        if (weekday == 0)
            ++offset;
        else if (weekday == 6)
            offset += 2;
        const long serial = start.serial() + std::min(offset, span);
        const auto days = std::chrono::sys_days(std::chrono::days(serial));
        const std::chrono::year_month_day ymd(days);
        const Date as_of(int(ymd.year()), unsigned(ymd.month()), unsigned(ymd.day()));

        // strictly increasing spreads: clean at every pair
        const double base = std::exp(uniform(rng, std::log(20e-4), std::log(600e-4)));
        std::vector<CdsQuote> quotes;
        double s = base;
        for (const auto& tenor : canonical_tenors()) {
            quotes.push_back({tenor, s, QuoteKind::mid});
            s *= 1.0 + uniform(rng, 0.02, 0.25);
        }

        if (plant_at.count(i)) {
            const auto& [t1, t2] = pairs[uniform_index(rng, pairs.size())];
            const double target_mar = uniform(rng, 1.0001, 1.35);
            double s2 = 0.0;
            for (const auto& q : quotes)
                if (q.tenor == t2)
                    s2 = q.spread;
            const double s1 = s2 * (t2.years() / t1.years()) * target_mar;
            for (auto& q : quotes)
                if (q.tenor == t1)
                    q.spread = s1;
            ds.planted.push_back({as_of, meta, t1, t2, s1, s2,
                                  (t1.years() * s1) / (t2.years() * s2),
                                  AoACondition::thm1});
        }
        ds.curves.emplace_back(as_of, 0.0, std::move(meta), std::move(quotes));
    }

    std::sort(ds.planted.begin(), ds.planted.end(),
              [](const AnomalyRecord& a, const AnomalyRecord& b) {
                  if (a.as_of != b.as_of)
                      return a.as_of < b.as_of;
                  return a.entity.entity_id < b.entity.entity_id;
              });
    return ds;
}

/// Serialize curves in the scanner's quote-CSV schema.
inline std::string to_quote_csv(const std::vector<CdsCurve>& curves) {
    std::string out = std::string(kQuoteCsvHeader) + "\n";
    char buf[64];
    for (const auto& c : curves) {
        for (const auto& q : c.quotes()) {
            std::snprintf(buf, sizeof buf, ",%s,%.10g,%s\n", q.tenor.str().c_str(),
                          q.spread * 1e4, to_string(q.kind));
            out += c.as_of().iso() + "," + c.entity().entity_id + "," + c.entity().name +
                   "," + to_string(c.entity().region) + "," + to_string(c.entity().sector) +
                   "," + c.entity().currency + "," + to_string(c.entity().rating) + "," +
                   to_string(c.entity().seniority) + buf;
        }
    }
    return out;
}

} // namespace cdsarb
