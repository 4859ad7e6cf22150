#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cdsarb/dates.hpp"
#include "cdsarb/discount.hpp"
#include "cdsarb/errors.hpp"
#include "cdsarb/irs.hpp"
#include "cdsarb/market.hpp"

namespace cdsarb {

/// Quote-file schema, one quote per row, header required.
inline constexpr const char* kQuoteCsvHeader =
    "as_of,entity_id,entity_name,region,sector,currency,rating,seniority,"
    "tenor_years,spread_bp,quote_kind";

struct Diagnostic {
    int line = 0; // 1-based, header is line 1
    std::string message;
};

struct IngestResult {
    std::vector<CdsCurve> curves; // sorted by (as_of, entity_id)
    std::vector<Diagnostic> diagnostics;
    long rows_loaded = 0;
};

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    return s;
}

inline std::optional<double> parse_number(const std::string& s) {
    if (s.empty())
        return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size())
        return std::nullopt;
    if (!(v == v) || v == HUGE_VAL || v == -HUGE_VAL)
        return std::nullopt;
    return v;
}

inline Region parse_region(const std::string& s, bool& known) {
    const auto v = lower(s);
    known = true;
    if (v == "asia")
        return Region::Asia;
    if (v == "europe")
        return Region::Europe;
    if (v == "northamerica" || v == "north america")
        return Region::NorthAmerica;
    if (v == "other")
        return Region::Other;
    known = false;
    return Region::Other;
}

inline Sector parse_sector(const std::string& s, bool& known) {
    const auto v = lower(s);
    known = true;
    if (v == "banking")
        return Sector::Banking;
    if (v == "nonbanking" || v == "non-banking")
        return Sector::NonBanking;
    known = false;
    return Sector::NonBanking;
}

inline Rating parse_rating(const std::string& s, bool& known) {
    const auto v = lower(s);
    known = true;
    if (v == "aaa")
        return Rating::AAA;
    if (v == "aa")
        return Rating::AA;
    if (v == "a")
        return Rating::A;
    if (v == "bbb")
        return Rating::BBB;
    if (v == "nig")
        return Rating::NIG;
    if (v == "notrated" || v == "not rated" || v == "nr")
        return Rating::NotRated;
    known = false;
    return Rating::NotRated;
}

inline Seniority parse_seniority(const std::string& s, bool& known) {
    const auto v = lower(s);
    known = true;
    if (v == "senior")
        return Seniority::Senior;
    if (v == "seniorsecured" || v == "senior secured")
        return Seniority::SeniorSecured;
    if (v == "subordinated")
        return Seniority::Subordinated;
    known = false;
    return Seniority::Senior;
}

inline std::optional<QuoteKind> parse_quote_kind(const std::string& s) {
    const auto v = lower(s);
    if (v == "mid")
        return QuoteKind::mid;
    if (v == "bid")
        return QuoteKind::bid;
    if (v == "ask")
        return QuoteKind::ask;
    return std::nullopt;
}

} // namespace detail

/// Parse a quote CSV stream into curves, grouping rows by (as_of, entity_id).
/// Rows with unparseable fields are rejected with line-numbered diagnostics
/// and the rest still load; duplicate (date, entity, tenor) rows are rejected
/// the same way. Tenors are never interpolated: a two-quote curve simply
/// skips the pairs it cannot form downstream.
inline IngestResult ingest_csv(std::istream& in, const std::string& source_name = "input") {
    IngestResult result;
    std::string line;
    if (!std::getline(in, line))
        throw SchemaError(source_name + ": empty file, expected header '" +
                          kQuoteCsvHeader + "'");

    const auto header = detail::split_csv(line);
    const auto expected = detail::split_csv(kQuoteCsvHeader);
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i)
        col[detail::lower(header[i])] = i;
    for (const auto& name : expected)
        if (!col.count(name))
            throw SchemaError(source_name + ": missing required column '" + name + "'");

    struct Row {
        int line;
        Date as_of;
        EntityMeta meta;
        Tenor tenor;
        double spread;
        QuoteKind kind;
    };
    std::map<std::pair<long, std::string>, std::vector<Row>> groups;
    std::set<std::tuple<long, std::string, std::int64_t, std::int64_t>> seen;

    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r")
            continue;
        const auto fields = detail::split_csv(line);
        if (fields.size() != header.size()) {
            result.diagnostics.push_back(
                {line_no, "rejected: expected " + std::to_string(header.size()) +
                              " fields, got " + std::to_string(fields.size())});
            continue;
        }
        auto field = [&](const char* name) -> const std::string& {
            return fields[col.at(name)];
        };
        try {
            Row row{line_no,
                    Date::parse(field("as_of")),
                    EntityMeta{},
                    Tenor::parse(field("tenor_years")),
                    0.0,
                    QuoteKind::mid};
            row.meta.entity_id = field("entity_id");
            if (row.meta.entity_id.empty())
                throw DomainError("empty entity_id");
            row.meta.name = field("entity_name");
            row.meta.currency = field("currency");

            bool known = true;
            row.meta.region = detail::parse_region(field("region"), known);
            if (!known)
                result.diagnostics.push_back({line_no, "warning: unknown region '" +
                                                           field("region") +
                                                           "' mapped to Other"});
            row.meta.sector = detail::parse_sector(field("sector"), known);
            if (!known)
                result.diagnostics.push_back({line_no, "warning: unknown sector '" +
                                                           field("sector") +
                                                           "' mapped to NonBanking"});
            row.meta.rating = detail::parse_rating(field("rating"), known);
            if (!known)
                result.diagnostics.push_back({line_no, "warning: unknown rating '" +
                                                           field("rating") +
                                                           "' mapped to NotRated"});
            row.meta.seniority = detail::parse_seniority(field("seniority"), known);
            if (!known)
                result.diagnostics.push_back({line_no, "warning: unknown seniority '" +
                                                           field("seniority") +
                                                           "' mapped to Senior"});

            const auto spread_bp = detail::parse_number(field("spread_bp"));
            if (!spread_bp)
                throw DomainError("unparseable spread_bp '" + field("spread_bp") + "'");
            if (*spread_bp < 0.0)
                throw DomainError("negative spread_bp");
            row.spread = *spread_bp * 1e-4;

            const auto kind = detail::parse_quote_kind(field("quote_kind"));
            if (!kind)
                throw DomainError("unknown quote_kind '" + field("quote_kind") + "'");
            row.kind = *kind;

            const auto dup_key = std::make_tuple(row.as_of.serial(), row.meta.entity_id,
                                                 row.tenor.num(), row.tenor.den());
            if (!seen.insert(dup_key).second) {
                result.diagnostics.push_back(
                    {line_no, "rejected: duplicate quote for (" + row.as_of.iso() + ", " +
                                  row.meta.entity_id + ", " + row.tenor.str() + "y)"});
                continue;
            }
            groups[{row.as_of.serial(), row.meta.entity_id}].push_back(std::move(row));
            ++result.rows_loaded;
        } catch (const Error& e) {
            result.diagnostics.push_back({line_no, std::string("rejected: ") + e.what()});
        }
    }

    for (auto& [key, rows] : groups) {
        std::sort(rows.begin(), rows.end(),
                  [](const Row& a, const Row& b) { return a.tenor < b.tenor; });
        // canonical meta comes from the shortest-tenor row
        const EntityMeta& meta = rows.front().meta;
        for (const auto& r : rows)
            if (to_string(r.meta.rating) != to_string(meta.rating) ||
                to_string(r.meta.region) != to_string(meta.region) ||
                r.meta.currency != meta.currency)
                result.diagnostics.push_back(
                    {r.line, "warning: inconsistent entity attributes within (" +
                                 r.as_of.iso() + ", " + meta.entity_id +
                                 "); shortest-tenor row wins"});
        std::vector<CdsQuote> quotes;
        quotes.reserve(rows.size());
        for (const auto& r : rows)
            quotes.push_back({r.tenor, r.spread, r.kind});
        try {
            result.curves.emplace_back(rows.front().as_of, 0.0, meta, std::move(quotes));
        } catch (const Error& e) {
            result.diagnostics.push_back(
                {rows.front().line, std::string("curve skipped: ") + e.what()});
        }
    }
    return result;
}

inline IngestResult ingest_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw SchemaError("cannot open quote file '" + path + "'");
    return ingest_csv(in, path);
}

/// Discount-curve CSV: header "t_years,discount_factor".
inline DiscountCurve load_discount_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw SchemaError("cannot open discount file '" + path + "'");
    std::string line;
    if (!std::getline(in, line) ||
        detail::lower(line.find('\r') == std::string::npos
                          ? line
                          : line.substr(0, line.find('\r'))) != "t_years,discount_factor")
        throw SchemaError(path + ": expected header 't_years,discount_factor'");
    std::vector<DiscountCurve::Pillar> pillars;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r")
            continue;
        const auto fields = detail::split_csv(line);
        const auto t = fields.size() == 2 ? detail::parse_number(fields[0]) : std::nullopt;
        const auto df = fields.size() == 2 ? detail::parse_number(fields[1]) : std::nullopt;
        if (!t || !df)
            throw SchemaError(path + ": unparseable discount row at line " +
                              std::to_string(line_no));
        pillars.push_back({*t, *df});
    }
    return DiscountCurve(std::move(pillars));
}

/// IRS forward-curve CSV: header "T_years,rate_decimal"; T0 is supplied by
/// the caller (command line).
inline IrsForwardCurve load_irs_csv(const std::string& path, double t0) {
    std::ifstream in(path);
    if (!in)
        throw SchemaError("cannot open IRS file '" + path + "'");
    std::string line;
    if (!std::getline(in, line) ||
        detail::lower(line.find('\r') == std::string::npos
                          ? line
                          : line.substr(0, line.find('\r'))) != "t_years,rate_decimal")
        throw SchemaError(path + ": expected header 'T_years,rate_decimal'");
    std::vector<IrsForwardCurve::Sample> samples;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r")
            continue;
        const auto fields = detail::split_csv(line);
        const auto t = fields.size() == 2 ? detail::parse_number(fields[0]) : std::nullopt;
        const auto r = fields.size() == 2 ? detail::parse_number(fields[1]) : std::nullopt;
        if (!t || !r)
            throw SchemaError(path + ": unparseable IRS row at line " +
                              std::to_string(line_no));
        samples.push_back({*t, *r});
    }
    return IrsForwardCurve(t0, std::move(samples));
}

} // namespace cdsarb
