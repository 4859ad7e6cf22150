#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "cdsarb/aoa.hpp"
#include "cdsarb/errors.hpp"
#include "cdsarb/scan.hpp"

namespace cdsarb {

enum class ReportFormat { json, csv };

namespace detail {

// Fixed decimal formatting keeps reports byte-stable: spreads carry 4
// decimals in basis points, MARs 5 decimals.
inline std::string fmt_bp(double spread_decimal) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", spread_decimal * 1e4);
    return buf;
}

inline std::string fmt_mar(double mar) {
    if (!std::isfinite(mar))
        return mar > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.5f", mar);
    return buf;
}

inline std::string fmt_years(double y) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", y);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

struct GroupBlock {
    std::string key;
    std::map<std::string, long> counts;
    std::map<std::string, MarStat> stats;
};

inline std::vector<GroupBlock> group_blocks(const ScanReport& report,
                                            const std::set<std::string>& exclude) {
    std::vector<GroupBlock> blocks;
    for (const char* key : {"pair", "rating", "region", "sector", "currency", "seniority"})
        blocks.push_back({key, report.count_by(key), mar_stats_by_group(report, key, exclude)});
    return blocks;
}

} // namespace detail

/// Render the scan report as JSON. Key order is fixed, maps are sorted, and
/// all decimals use pinned formats, so identical inputs yield identical bytes.
inline std::string render_report_json(const ScanReport& report,
                                      const std::set<std::string>& exclude = {}) {
    using detail::json_escape;
    std::string out;
    out += "{\n";
    out += "  \"condition\": \"" + std::string(to_string(report.condition)) + "\",\n";
    out += "  \"total_anomalies\": " + std::to_string(report.total()) + ",\n";
    out += "  \"curves_scanned\": " + std::to_string(report.curves_scanned) + ",\n";
    out += "  \"pairs_skipped\": " + std::to_string(report.pairs_skipped) + ",\n";
    out += "  \"mar_excluded_entities\": [";
    bool first = true;
    for (const auto& id : exclude) {
        out += (first ? "" : ", ") + ("\"" + json_escape(id) + "\"");
        first = false;
    }
    out += "],\n";

    for (const auto& block : detail::group_blocks(report, exclude)) {
        out += "  \"by_" + block.key + "\": {";
        first = true;
        for (const auto& [name, count] : block.counts) {
            out += (first ? "\n" : ",\n");
            out += "    \"" + json_escape(name) + "\": {\"count\": " +
                   std::to_string(count);
            auto it = block.stats.find(name);
            if (it != block.stats.end() && it->second.count > 0)
                out += ", \"mean_mar\": " + detail::fmt_mar(it->second.mean) +
                       ", \"max_mar\": " + detail::fmt_mar(it->second.max);
            out += "}";
            first = false;
        }
        out += first ? "},\n" : "\n  },\n";
    }

    out += "  \"by_month\": [";
    first = true;
    for (const auto& m : aggregate_monthly(report)) {
        out += (first ? "\n" : ",\n");
        out += "    {\"month\": \"" + m.month + "\", \"count\": " +
               std::to_string(m.count) + ", \"roll_month\": " +
               (m.roll_month ? "true" : "false") + "}";
        first = false;
    }
    out += first ? "],\n" : "\n  ],\n";

    out += "  \"records\": [";
    first = true;
    for (const auto& r : report.records) {
        out += (first ? "\n" : ",\n");
        out += "    {\"as_of\": \"" + r.as_of.iso() + "\"";
        out += ", \"entity_id\": \"" + json_escape(r.entity.entity_id) + "\"";
        out += ", \"entity_name\": \"" + json_escape(r.entity.name) + "\"";
        out += ", \"region\": \"" + std::string(to_string(r.entity.region)) + "\"";
        out += ", \"sector\": \"" + std::string(to_string(r.entity.sector)) + "\"";
        out += ", \"currency\": \"" + json_escape(r.entity.currency) + "\"";
        out += ", \"rating\": \"" + std::string(to_string(r.entity.rating)) + "\"";
        out += ", \"seniority\": \"" + std::string(to_string(r.entity.seniority)) + "\"";
        out += ", \"condition\": \"" + std::string(to_string(r.condition)) + "\"";
        out += ", \"t1\": " + detail::fmt_years(r.tenor_short.years());
        out += ", \"t2\": " + detail::fmt_years(r.tenor_long.years());
        out += ", \"s1_bp\": " + detail::fmt_bp(r.spread_short);
        out += ", \"s2_bp\": " + detail::fmt_bp(r.spread_long);
        out += ", \"mar\": " + detail::fmt_mar(r.mar) + "}";
        first = false;
    }
    out += first ? "]\n" : "\n  ]\n";
    out += "}\n";
    return out;
}

/// Render the scan report as sectioned CSV (summary, per-group counts and MAR
/// stats, monthly series, then one row per anomaly record).
inline std::string render_report_csv(const ScanReport& report,
                                     const std::set<std::string>& exclude = {}) {
    std::string out;
    out += "# section: summary\n";
    out += "condition," + std::string(to_string(report.condition)) + "\n";
    out += "total_anomalies," + std::to_string(report.total()) + "\n";
    out += "curves_scanned," + std::to_string(report.curves_scanned) + "\n";
    out += "pairs_skipped," + std::to_string(report.pairs_skipped) + "\n";
    {
        std::string ids;
        for (const auto& id : exclude)
            ids += (ids.empty() ? "" : ";") + id;
        out += "mar_excluded_entities," + ids + "\n";
    }

    for (const auto& block : detail::group_blocks(report, exclude)) {
        out += "# section: by_" + block.key + "\n";
        out += block.key + ",count,mean_mar,max_mar\n";
        for (const auto& [name, count] : block.counts) {
            auto it = block.stats.find(name);
            const bool has = it != block.stats.end() && it->second.count > 0;
            out += name + "," + std::to_string(count) + "," +
                   (has ? detail::fmt_mar(it->second.mean) : "") + "," +
                   (has ? detail::fmt_mar(it->second.max) : "") + "\n";
        }
    }

    out += "# section: by_month\n";
    out += "month,count,roll_month\n";
    for (const auto& m : aggregate_monthly(report))
        out += m.month + "," + std::to_string(m.count) + "," +
               (m.roll_month ? "1" : "0") + "\n";

    out += "# section: records\n";
    out += "as_of,entity_id,entity_name,region,sector,currency,rating,seniority,"
           "condition,t1,t2,s1_bp,s2_bp,mar\n";
    for (const auto& r : report.records) {
        out += r.as_of.iso() + "," + r.entity.entity_id + "," + r.entity.name + "," +
               to_string(r.entity.region) + "," + to_string(r.entity.sector) + "," +
               r.entity.currency + "," + to_string(r.entity.rating) + "," +
               to_string(r.entity.seniority) + "," + to_string(r.condition) + "," +
               detail::fmt_years(r.tenor_short.years()) + "," +
               detail::fmt_years(r.tenor_long.years()) + "," +
               detail::fmt_bp(r.spread_short) + "," + detail::fmt_bp(r.spread_long) +
               "," + detail::fmt_mar(r.mar) + "\n";
    }
    return out;
}

/// Write the report to `path` in the requested format.
inline void emit_report(const ScanReport& report, ReportFormat format,
                        const std::string& path, const std::set<std::string>& exclude = {}) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open report path '" + path + "' for writing");
    out << (format == ReportFormat::json ? render_report_json(report, exclude)
                                         : render_report_csv(report, exclude));
    if (!out)
        throw Error("failed writing report to '" + path + "'");
}

/// Plot-data CSV for the hyperbola diagnostic: columns x, s, series_id,
/// violation_flag. Spreads are emitted in basis points (their logarithm in
/// log-log mode).
inline std::string render_plot_csv(const PlotSeries& series) {
    std::string out = "x,s,series_id,violation_flag\n";
    char buf[96];
    for (const auto& p : series.points) {
        const double s_out = series.log_log ? p.s + std::log(1e4) : p.s * 1e4;
        std::snprintf(buf, sizeof buf, "%.8f,%.6f,%s,%d\n", p.x, s_out,
                      p.series.c_str(), p.violation ? 1 : 0);
        out += buf;
    }
    return out;
}

inline void write_plot_csv(const PlotSeries& series, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open plot path '" + path + "' for writing");
    out << render_plot_csv(series);
}

} // namespace cdsarb
