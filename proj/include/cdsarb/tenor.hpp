#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <string>

#include "cdsarb/errors.hpp"

namespace cdsarb {

/// Contract maturity as an exact rational number of years, so canonical tenors
/// (0.5y, 1y, ..., 10y) compare without float-equality ambiguity.
class Tenor {
public:
    /// num/den years, reduced. den defaults to 1 for whole-year tenors.
    explicit Tenor(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
        if (den_ <= 0 || num_ <= 0)
            throw DomainError("tenor must be a positive number of years");
        auto g = std::gcd(num_, den_);
        num_ /= g;
        den_ /= g;
    }

    /// Parse a decimal-years token ("0.5", "10", "2.25"). Exact: the decimal
    /// expansion is taken literally as a rational.
    static Tenor parse(const std::string& s) {
        std::int64_t whole = 0, frac = 0, den = 1;
        std::size_t i = 0;
        bool digits = false;
        for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
            whole = whole * 10 + (s[i] - '0');
            digits = true;
        }
        if (i < s.size() && s[i] == '.') {
            for (++i; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
                if (den > 100000000)
                    throw DomainError("tenor '" + s + "' has too many decimals");
                frac = frac * 10 + (s[i] - '0');
                den *= 10;
                digits = true;
            }
        }
        if (!digits || i != s.size())
            throw DomainError("unparseable tenor_years '" + s + "'");
        return Tenor(whole * den + frac, den);
    }

    double years() const { return double(num_) / double(den_); }
    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    /// Shortest decimal form: "0.5", "1", "7".
    std::string str() const {
        if (den_ == 1)
            return std::to_string(num_);
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", years());
        return buf;
    }

    friend bool operator==(const Tenor& a, const Tenor& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Tenor& a, const Tenor& b) {
        // cross-multiplied exact comparison
        return a.num_ * b.den_ <=> b.num_ * a.den_;
    }

private:
    std::int64_t num_ = 1;
    std::int64_t den_ = 1;
};

inline Tenor operator""_y(unsigned long long y) { return Tenor(std::int64_t(y)); }

/// The quoted maturities of a standard single-name CDS curve.
inline const std::array<Tenor, 8>& canonical_tenors() {
    static const std::array<Tenor, 8> ts = {Tenor(1, 2), Tenor(1), Tenor(2), Tenor(3),
                                            Tenor(4),    Tenor(5), Tenor(7), Tenor(10)};
    return ts;
}

} // namespace cdsarb
