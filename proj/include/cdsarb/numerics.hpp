#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "cdsarb/errors.hpp"

namespace cdsarb {

/// One trading day in year units; the default quadrature and difference step.
inline constexpr double kDailyStep = 1.0 / 365.0;

/// (1 - exp(-x)) / x, stable near 0. Shows up in every piecewise-exponential
/// closed form (survival integrals, protection legs).
inline double expm1_ratio(double x) {
    if (std::abs(x) < 1e-12)
        return 1.0 - 0.5 * x;
    return -std::expm1(-x) / x;
}

/// Build the composite-trapezoid node set for [a, b]: every multiple of `h`
/// from `a`, the endpoint `b`, and any interior breakpoints. Breakpoints are
/// forced in so that integrands with kinks there are handled exactly.
inline std::vector<double> quadrature_nodes(double a, double b, double h,
                                            std::span<const double> breakpoints = {}) {
    if (!(b > a))
        throw DomainError("quadrature interval requires b > a");
    std::vector<double> nodes;
    nodes.reserve(std::size_t((b - a) / h) + breakpoints.size() + 2);
    for (double t = a; t < b; t += h)
        nodes.push_back(t);
    nodes.push_back(b);
    for (double bp : breakpoints)
        if (bp > a && bp < b)
            nodes.push_back(bp);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end(),
                            [](double x, double y) { return y - x < 1e-14; }),
                nodes.end());
    return nodes;
}

/// Composite trapezoid rule over [a, b] at step h with forced breakpoints.
/// Summation order is left-to-right and therefore deterministic.
template <class F>
double trapezoid(F&& f, double a, double b, double h = kDailyStep,
                 std::span<const double> breakpoints = {}) {
    const auto nodes = quadrature_nodes(a, b, h, breakpoints);
    double sum = 0.0;
    double prev_t = nodes[0];
    double prev_f = f(prev_t);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double t = nodes[i];
        const double ft = f(t);
        sum += 0.5 * (t - prev_t) * (prev_f + ft);
        prev_t = t;
        prev_f = ft;
    }
    return sum;
}

struct RootResult {
    double x = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

/// Derivative-free bracketed root finder: secant steps confined to the
/// bracket, bisection whenever the secant stalls or escapes. Requires
/// f(lo) and f(hi) of opposite sign.
template <class F>
RootResult find_root_bracketed(F&& f, double lo, double hi, double f_tol = 1e-13,
                               double x_tol = 1e-15, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0)
        return {lo, 0.0, 0};
    if (fhi == 0.0)
        return {hi, 0.0, 0};
    if ((flo > 0.0) == (fhi > 0.0))
        throw DomainError("root not bracketed");

    double x = lo, fx = flo;
    for (int it = 1; it <= max_iter; ++it) {
        double step = hi - lo;
        double cand;
        if (std::abs(fhi - flo) > 0.0) {
            cand = lo - flo * (hi - lo) / (fhi - flo);
            // reject secant points that hug the bracket ends
            const double margin = 1e-3 * step;
            if (!(cand > lo + margin) || !(cand < hi - margin))
                cand = 0.5 * (lo + hi);
        } else {
            cand = 0.5 * (lo + hi);
        }
        x = cand;
        fx = f(x);
        if (std::abs(fx) < f_tol)
            return {x, fx, it};
        if ((fx > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        if (hi - lo < x_tol * (1.0 + std::abs(lo) + std::abs(hi)))
            break;
    }
    // return the best endpoint
    if (std::abs(flo) < std::abs(fx)) {
        x = lo;
        fx = flo;
    }
    if (std::abs(fhi) < std::abs(fx)) {
        x = hi;
        fx = fhi;
    }
    return {x, fx, max_iter};
}

/// Deterministic 64-bit mix (splitmix64); seeds the fixture generator without
/// depending on distribution implementations.
inline std::uint64_t mix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Uniform double in [lo, hi) from a splitmix64 stream.
inline double uniform(std::uint64_t& state, double lo, double hi) {
    const double u = double(mix64(state) >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

/// Uniform integer in [0, n).
inline std::uint64_t uniform_index(std::uint64_t& state, std::uint64_t n) {
    return mix64(state) % n;
}

} // namespace cdsarb
