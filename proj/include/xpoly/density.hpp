#pragma once

// Log-domain evaluation of the packing-density formulas and the comparisons
// between them, plus an exact big-rational mode for small dimensions.
//
// The per-n optimizers evaluate the integer argmax over t from the real
// stationary point's floor/ceil and their +-1 neighbours (the objectives are
// strictly concave in t, so this is the exact argmax); ties break toward the
// smaller t.

#include <cmath>
#include <cstdint>

#include "xpoly/numtheory.hpp"

namespace xpoly {

inline double rush_log2_at(std::uint64_t n, int t) {
    return n * std::log2(2.0 * t + 1.0) - log2_factorial(n) - t * std::log2(2.0 * n + 1.0);
}

inline double rs_log2_at(std::uint64_t n, int t, std::uint64_t p) {
    return n * std::log2(2.0 * t) - log2_factorial(n) - t * std::log2(static_cast<double>(p));
}

/// Right-hand bound of the Sidon-packing theorem: (2t)^{n-1} / (n! q^{t-1}).
inline double sidon_bound_log2_at(std::uint64_t n, int t, std::uint64_t q) {
    return (n - 1.0) * std::log2(2.0 * t) - log2_factorial(n) -
           (t - 1.0) * std::log2(static_cast<double>(q));
}

namespace detail {

// Candidates ascending with a strict comparison: ties resolve to smaller t.
// The objectives are strictly concave in t, so floor/ceil of the stationary
// point and their neighbours always contain the true integer argmax.
template <typename Eval>
int best_integer_t(std::uint64_t n, double stationary, Eval eval) {
    const long long lo = 1, hi = static_cast<long long>(n);
    long long base = static_cast<long long>(std::floor(stationary));
    int best_t = 0;
    double best_v = 0;
    long long prev = -1;
    for (long long c : {base - 1, base, base + 1, base + 2}) {
        long long t = std::clamp(c, lo, hi);
        if (t == prev)
            continue;
        prev = t;
        double v = eval(static_cast<int>(t));
        if (best_t == 0 || v > best_v) {
            best_t = static_cast<int>(t);
            best_v = v;
        }
    }
    return best_t;
}

} // namespace detail

struct RushDensity {
    int t = 1;
    double log2_density = 0;
    bool conforming = false; // n = (p-1)/2 for an odd prime p, i.e. 2n+1 prime
};

struct RsDensity {
    int t = 1;
    std::uint64_t p = 2;
    double log2_density = 0;
};

struct SidonDensity {
    int t = 1;
    std::uint64_t q = 2;
    double log2_density = 0;
};

/// max_t (2t+1)^n / (n! (2n+1)^t). Evaluated for every n; `conforming`
/// records whether n is in the construction's native range.
inline RushDensity rush_log2_density(std::uint64_t n) {
    if (n < 1)
        throw std::invalid_argument("rush_log2_density: n must be >= 1");
    double tau = n / std::log(2.0 * n + 1.0) - 0.5;
    int t = detail::best_integer_t(n, tau, [&](int c) { return rush_log2_at(n, c); });
    return {t, rush_log2_at(n, t), is_prime(2 * n + 1)};
}

/// max_t (2t)^n / (n! p(n)^t), p(n) the smallest prime above n.
inline RsDensity rs_log2_density(std::uint64_t n) {
    if (n < 1)
        throw std::invalid_argument("rs_log2_density: n must be >= 1");
    const std::uint64_t p = next_prime(n);
    double tau = n / std::log(static_cast<double>(p));
    int t = detail::best_integer_t(n, tau, [&](int c) { return rs_log2_at(n, c, p); });
    return {t, p, rs_log2_at(n, t, p)};
}

/// max_t (2t)^{n-1} / (n! q(n)^{t-1}), q(n) the smallest prime power >= n.
inline SidonDensity sidon_bound_log2_density(std::uint64_t n) {
    if (n < 1)
        throw std::invalid_argument("sidon_bound_log2_density: n must be >= 1");
    const std::uint64_t q = next_prime_power(std::max<std::uint64_t>(n, 2)).value;
    double tau = (n - 1.0) / std::log(static_cast<double>(q));
    int t = detail::best_integer_t(n, tau, [&](int c) { return sidon_bound_log2_at(n, c, q); });
    return {t, q, sidon_bound_log2_at(n, t, q)};
}

/// (2t)^{n-1} / (n! |G|) with an explicit group order (the g^S surrogate).
inline double sidon_log2_density(std::uint64_t n, int t, const BigInt& group_order) {
    if (t < 1 || group_order < 1)
        throw std::invalid_argument("sidon_log2_density: need t >= 1 and a positive group order");
    return (n - 1.0) * std::log2(2.0 * t) - log2_factorial(n) - log2_big(group_order);
}

/// Discrete packing bound |tC_n ∩ Z^n| / ((2t+1) |G|) in log2.
inline double discrete_log2_density(std::uint64_t n, int t, const BigInt& group_order) {
    if (t < 1 || group_order < 1)
        throw std::invalid_argument("discrete_log2_density: need t >= 1 and a positive group order");
    return log2_big(ball_cardinality(n, t)) - std::log2(2.0 * t + 1.0) - log2_big(group_order);
}

/// Continuous packing density from a certified determinant: (2t)^n / (n! det).
inline double continuous_log2_density(std::uint64_t n, int t, const BigInt& det) {
    return n * std::log2(2.0 * t) - log2_factorial(n) - log2_big(det);
}

/// Discrete packing density from a certified determinant: |tC_n ∩ Z^n| / det.
inline double discrete_log2_density_from_det(std::uint64_t n, int t, const BigInt& det) {
    return log2_big(ball_cardinality(n, t)) - log2_big(det);
}

/// Exact asymptotic value 2^t / (t! (2t+1)) of the discrete bound as n grows.
inline BigRational discrete_asymptote(int t) {
    if (t < 1)
        throw std::invalid_argument("discrete_asymptote: t must be >= 1");
    BigInt num = BigInt(1) << t;
    BigInt den = factorial_big(t) * (2 * t + 1);
    return BigRational(num, den);
}

struct RatioVsRush {
    double log2_ratio = 0;
    bool conforming = false;
};

/// log2 of the RS density over the Rush density, each at its own optimal t.
inline RatioVsRush ratio_rs_vs_rush_log2(std::uint64_t n) {
    RushDensity rush = rush_log2_density(n);
    RsDensity rs = rs_log2_density(n);
    return {rs.log2_density - rush.log2_density, rush.conforming};
}

/// Closed form of the same ratio at a matched t:
/// (2t/(2t+1))^n ((2n+1)/p(n))^t, in log2. Validation identity for tests.
inline double ratio_closed_form_log2(std::uint64_t n, int t) {
    const std::uint64_t p = next_prime(n);
    return n * std::log2(2.0 * t / (2.0 * t + 1.0)) +
           t * std::log2((2.0 * n + 1.0) / static_cast<double>(p));
}

// ---- exact big-rational mode (n <= 20) ----

inline constexpr std::uint64_t kExactDensityMaxN = 20;

namespace detail {
inline void check_exact_range(std::uint64_t n) {
    if (n > kExactDensityMaxN)
        throw std::invalid_argument("exact density mode is limited to n <= 20");
}
} // namespace detail

inline BigRational rush_density_exact(std::uint64_t n, int t) {
    detail::check_exact_range(n);
    BigInt num = 1;
    for (std::uint64_t i = 0; i < n; ++i)
        num *= 2 * t + 1;
    BigInt den = factorial_big(n);
    for (int i = 0; i < t; ++i)
        den *= 2 * n + 1;
    return BigRational(num, den);
}

inline BigRational rs_density_exact(std::uint64_t n, int t, std::uint64_t p) {
    detail::check_exact_range(n);
    BigInt num = 1;
    for (std::uint64_t i = 0; i < n; ++i)
        num *= 2 * t;
    BigInt den = factorial_big(n);
    for (int i = 0; i < t; ++i)
        den *= p;
    return BigRational(num, den);
}

/// (2t)^n / (n! det) as an exact rational.
inline BigRational continuous_density_exact(std::uint64_t n, int t, const BigInt& det) {
    detail::check_exact_range(n);
    BigInt num = 1;
    for (std::uint64_t i = 0; i < n; ++i)
        num *= 2 * t;
    return BigRational(num, factorial_big(n) * det);
}

/// |tC_n ∩ Z^n| / det as an exact rational.
inline BigRational discrete_density_exact(std::uint64_t n, int t, const BigInt& det) {
    detail::check_exact_range(n);
    return BigRational(ball_cardinality(n, t), det);
}

} // namespace xpoly
