#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cdsarb/aoa.hpp"
#include "cdsarb/dates.hpp"
#include "cdsarb/discount.hpp"
#include "cdsarb/errors.hpp"
#include "cdsarb/irs.hpp"
#include "cdsarb/market.hpp"

namespace cdsarb {

/// One violating maturity pair found in a dataset, with everything needed to
/// aggregate it and to re-verify it independently.
struct AnomalyRecord {
    Date as_of;
    EntityMeta entity;
    Tenor tenor_short;
    Tenor tenor_long;
    double spread_short; // decimal
    double spread_long;
    double mar;
    AoACondition condition;
};

inline std::string pair_key(const Tenor& t1, const Tenor& t2) {
    return t1.str() + "-" + t2.str();
}

struct ScanOptions {
    AoACondition condition = AoACondition::thm1;
    std::optional<DiscountCurve> discount;     // thm2/thm3/irs_corollary
    std::optional<IrsForwardCurve> irs;        // irs condition against swap rates
    int payments_per_year = 4;                 // thm3 schedules
    double epsilon = 0.0;                      // required violation margin
};

struct ScanReport {
    AoACondition condition = AoACondition::thm1;
    long curves_scanned = 0;
    long pairs_skipped = 0;
    std::vector<AnomalyRecord> records; // sorted by (as_of, entity_id, T1, T2)

    long total() const { return long(records.size()); }

    std::map<std::string, long> count_by(const std::string& group_key) const;
};

namespace detail {

inline std::string group_value(const AnomalyRecord& r, const std::string& key) {
    if (key == "pair")
        return pair_key(r.tenor_short, r.tenor_long);
    if (key == "month")
        return r.as_of.month_key();
    if (key == "rating")
        return to_string(r.entity.rating);
    if (key == "region")
        return to_string(r.entity.region);
    if (key == "sector")
        return to_string(r.entity.sector);
    if (key == "currency")
        return r.entity.currency;
    if (key == "seniority")
        return to_string(r.entity.seniority);
    throw UsageError("unknown group key '" + key +
                     "' (expected pair|month|rating|region|sector|currency|seniority)");
}

} // namespace detail

inline std::map<std::string, long> count_records_by(const std::vector<AnomalyRecord>& records,
                                                    const std::string& group_key) {
    std::map<std::string, long> counts;
    for (const auto& r : records)
        ++counts[detail::group_value(r, group_key)];
    return counts;
}

inline std::map<std::string, long> ScanReport::count_by(const std::string& group_key) const {
    return count_records_by(records, group_key);
}

/// Run the selected no-arbitrage check over every curve. Record order is
/// canonical (date, entity, T1, T2), so the report is independent of input
/// order.
inline ScanReport scan(const std::vector<CdsCurve>& curves,
                       const std::vector<std::pair<Tenor, Tenor>>& pairs,
                       const ScanOptions& options) {
    ScanReport report;
    report.condition = options.condition;
    for (const auto& curve : curves) {
        ++report.curves_scanned;
        AoAVerdict verdict;
        switch (options.condition) {
        case AoACondition::thm1:
            verdict = check_thm1_curve(curve, pairs, options.epsilon);
            break;
        case AoACondition::thm2:
            if (!options.discount)
                throw UsageError("thm2 scan needs a discount curve");
            verdict = check_thm2_curve(curve, *options.discount, pairs, options.epsilon);
            break;
        case AoACondition::thm3:
            if (!options.discount)
                throw UsageError("thm3 scan needs a discount curve");
            verdict = check_thm3_curve(curve, *options.discount,
                                       options.payments_per_year, pairs, options.epsilon);
            break;
        case AoACondition::irs_corollary:
            if (options.irs)
                verdict = check_irs_cds_aoa(curve, *options.irs, pairs, options.epsilon);
            else if (options.discount)
                verdict =
                    check_irs_corollary(curve, *options.discount, pairs, options.epsilon);
            else
                throw UsageError("irs scan needs an IRS curve or a discount curve");
            break;
        }
        report.pairs_skipped += long(verdict.skipped.size());
        for (const auto& v : verdict.violations) {
            const double s1 = *curve.spread_at(v.tenor_short);
            const double s2 = *curve.spread_at(v.tenor_long);
            report.records.push_back({curve.as_of(), curve.entity(), v.tenor_short,
                                      v.tenor_long, s1, s2, v.mar, options.condition});
        }
    }
    std::sort(report.records.begin(), report.records.end(),
              [](const AnomalyRecord& a, const AnomalyRecord& b) {
                  if (a.as_of != b.as_of)
                      return a.as_of < b.as_of;
                  if (a.entity.entity_id != b.entity.entity_id)
                      return a.entity.entity_id < b.entity.entity_id;
                  if (a.tenor_short != b.tenor_short)
                      return a.tenor_short < b.tenor_short;
                  return a.tenor_long < b.tenor_long;
              });
    return report;
}

inline ScanReport scan(const std::vector<CdsCurve>& curves, const ScanOptions& options) {
    return scan(curves, default_maturity_pairs(), options);
}

/// Calendar-month anomaly counts, zero-filled between the first and last
/// record month, with the CDS roll months (Mar/Jun/Sep/Dec) flagged.
struct MonthlyCount {
    std::string month; // "YYYY-MM"
    long count = 0;
    bool roll_month = false;
};

inline std::vector<MonthlyCount> aggregate_monthly(const ScanReport& report) {
    if (report.records.empty())
        return {};
    Date lo = report.records.front().as_of;
    Date hi = lo;
    std::map<std::string, long> counts;
    for (const auto& r : report.records) {
        lo = std::min(lo, r.as_of);
        hi = std::max(hi, r.as_of);
        ++counts[r.as_of.month_key()];
    }
    std::vector<MonthlyCount> series;
    int y = lo.year();
    unsigned m = lo.month();
    for (int i = 0; i < months_spanned(lo, hi); ++i) {
        Date first_of_month(y, m, 1);
        const auto key = first_of_month.month_key();
        auto it = counts.find(key);
        series.push_back(
            {key, it == counts.end() ? 0 : it->second, first_of_month.in_roll_month()});
        if (++m > 12) {
            m = 1;
            ++y;
        }
    }
    return series;
}

/// Mean and max MAR per group, with an entity-id exclusion list for outliers
/// (the census excludes one distorting name from its averages the same way).
struct MarStat {
    long count = 0;
    double mean = 0.0;
    double max = 0.0;
};

inline std::map<std::string, MarStat>
mar_stats_by_group(const ScanReport& report, const std::string& group_key,
                   const std::set<std::string>& exclude_entities = {}) {
    std::map<std::string, MarStat> stats;
    for (const auto& r : report.records) {
        if (exclude_entities.count(r.entity.entity_id))
            continue;
        auto& s = stats[detail::group_value(r, group_key)];
        ++s.count;
        s.mean += r.mar; // running sum; normalized below
        s.max = std::max(s.max, r.mar);
    }
    for (auto& [key, s] : stats)
        s.mean /= double(s.count);
    return stats;
}

} // namespace cdsarb
