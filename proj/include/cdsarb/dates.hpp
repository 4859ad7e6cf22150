#pragma once

#include <chrono>
#include <compare>
#include <cstdio>
#include <string>

#include "cdsarb/errors.hpp"

namespace cdsarb {

/// Calendar date. Only used at the data boundary: quote dates, monthly
/// aggregation and elapsed-time conversion. All analytics work in year offsets.
class Date {
public:
    Date() = default;

    Date(int y, unsigned m, unsigned d)
        : ymd_{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}} {
        if (!ymd_.ok())
            throw DomainError("invalid calendar date " + iso());
    }

    /// Parse strict ISO-8601 "YYYY-MM-DD".
    static Date parse(const std::string& s) {
        int y = 0;
        unsigned m = 0, d = 0;
        char tail = 0;
        if (std::sscanf(s.c_str(), "%d-%u-%u%c", &y, &m, &d, &tail) != 3)
            throw DomainError("unparseable date '" + s + "' (expected YYYY-MM-DD)");
        return Date(y, m, d);
    }

    int year() const { return int(ymd_.year()); }
    unsigned month() const { return unsigned(ymd_.month()); }
    unsigned day() const { return unsigned(ymd_.day()); }

    /// Days since the civil epoch; basis for all date arithmetic.
    long serial() const {
        return std::chrono::sys_days{ymd_}.time_since_epoch().count();
    }

    std::string iso() const {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year(), month(), day());
        return buf;
    }

    /// "YYYY-MM" bucket key for monthly aggregation.
    std::string month_key() const {
        char buf[12];
        std::snprintf(buf, sizeof buf, "%04d-%02u", year(), month());
        return buf;
    }

    /// Months containing a CDS roll date (20th of Mar/Jun/Sep/Dec).
    bool in_roll_month() const {
        unsigned m = month();
        return m == 3 || m == 6 || m == 9 || m == 12;
    }

    friend bool operator==(const Date& a, const Date& b) { return a.serial() == b.serial(); }
    friend std::strong_ordering operator<=>(const Date& a, const Date& b) {
        return a.serial() <=> b.serial();
    }

private:
    std::chrono::year_month_day ymd_{std::chrono::year{1970}, std::chrono::month{1},
                                     std::chrono::day{1}};
};

/// ACT/365.25 year fraction between two dates (ingestion-boundary convention).
inline double year_fraction(const Date& from, const Date& to) {
    return double(to.serial() - from.serial()) / 365.25;
}

/// Number of calendar months from `from`'s month to `to`'s month (inclusive of both).
inline int months_spanned(const Date& from, const Date& to) {
    return (to.year() - from.year()) * 12 + int(to.month()) - int(from.month()) + 1;
}

} // namespace cdsarb
