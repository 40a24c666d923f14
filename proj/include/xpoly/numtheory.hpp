#pragma once

// Integer arithmetic services: deterministic primality, factorization,
// prime / prime-power search, exact combinatorics, discrete ball sizes.
// Everything here is pure and safe for concurrent use.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace xpoly {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Thrown when a documented resource guard (enumeration size, group-order
/// cap, table range) would be exceeded. Kept distinct from
/// std::invalid_argument so the CLI can map it to its own exit code.
class guard_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1)
        return 0;
    std::uint64_t r = 1;
    base %= m;
    while (exp) {
        if (exp & 1)
            r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

/// p^k as uint64, or nullopt on overflow.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t p, int k) {
    unsigned __int128 acc = 1;
    for (int i = 0; i < k; ++i) {
        acc *= p;
        if (acc > UINT64_MAX)
            return std::nullopt;
    }
    return static_cast<std::uint64_t>(acc);
}

namespace detail {

inline bool is_sprp(std::uint64_t a, std::uint64_t n) {
    a %= n;
    if (a == 0)
        return true;
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

} // namespace detail

/// Deterministic Miller-Rabin; the 12-witness set is exact for all n < 2^64.
inline bool is_prime(std::uint64_t n) {
    constexpr std::uint64_t witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 2)
        return false;
    for (std::uint64_t p : witnesses) {
        if (n == p)
            return true;
        if (n % p == 0)
            return false;
    }
    for (std::uint64_t a : witnesses)
        if (!detail::is_sprp(a, n))
            return false;
    return true;
}

struct Factorization {
    std::uint64_t value = 1;
    std::vector<std::pair<std::uint64_t, int>> factors; // (prime, exponent), primes increasing
};

namespace detail {

// Brent-cycle Pollard rho. Fixed schedule (x0 = 2, c = 1, 2, 3, ...) keeps
// the output deterministic across runs.
inline std::uint64_t pollard_rho(std::uint64_t n) {
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t x = 2, y = 2, d = 1;
        std::uint64_t power = 1, lam = 0;
        while (d == 1) {
            if (power == lam) {
                x = y;
                power <<= 1;
                lam = 0;
            }
            y = (mulmod(y, y, n) + c) % n;
            ++lam;
            std::uint64_t diff = x > y ? x - y : y - x;
            d = diff ? std::gcd(diff, n) : n;
        }
        if (d != n)
            return d;
    }
}

constexpr std::uint64_t kTrialDivisionBound = 1000000;

} // namespace detail

/// Complete factorization: trial division to 10^6, then Pollard rho with the
/// fixed seed schedule. Deterministic.
inline Factorization factorize(std::uint64_t n) {
    if (n < 2)
        throw std::invalid_argument("factorize: n must be >= 2");
    Factorization out;
    out.value = n;
    std::vector<std::uint64_t> primes;
    for (std::uint64_t d : {2ull, 3ull, 5ull})
        while (n % d == 0) {
            primes.push_back(d);
            n /= d;
        }
    if (n > 1 && is_prime(n)) {
        primes.push_back(n);
        n = 1;
    }
    for (std::uint64_t d = 7; n > 1 && d <= detail::kTrialDivisionBound && d * d <= n; d += 2) {
        if (n % d == 0) {
            while (n % d == 0) {
                primes.push_back(d);
                n /= d;
            }
            if (n > 1 && is_prime(n)) {
                primes.push_back(n);
                n = 1;
            }
        }
    }
    if (n > 1) {
        std::vector<std::uint64_t> stack{n};
        while (!stack.empty()) {
            std::uint64_t m = stack.back();
            stack.pop_back();
            if (is_prime(m)) {
                primes.push_back(m);
                continue;
            }
            std::uint64_t d = detail::pollard_rho(m);
            stack.push_back(d);
            stack.push_back(m / d);
        }
    }
    std::sort(primes.begin(), primes.end());
    for (std::uint64_t p : primes) {
        if (!out.factors.empty() && out.factors.back().first == p)
            ++out.factors.back().second;
        else
            out.factors.emplace_back(p, 1);
    }
    return out;
}

/// Smallest prime strictly greater than n.
inline std::uint64_t next_prime(std::uint64_t n) {
    if (n < 2)
        return 2;
    if (n >= 18446744073709551557ull) // largest prime below 2^64
        throw std::overflow_error("next_prime: no prime above n fits in 64 bits");
    std::uint64_t c = n + 1;
    if (c == 2)
        return 2;
    if (c % 2 == 0)
        ++c;
    while (!is_prime(c))
        c += 2;
    return c;
}

struct PrimePower {
    std::uint64_t p = 0;
    int k = 0;
    std::uint64_t value = 0; // p^k
};

/// Smallest prime power p^k >= n (k >= 1).
inline PrimePower next_prime_power(std::uint64_t n) {
    if (n < 2)
        throw std::invalid_argument("next_prime_power: n must be >= 2");
    PrimePower best;
    best.p = next_prime(n - 1);
    best.k = 1;
    best.value = best.p;
    for (int k = 2; k < 64; ++k) {
        if ((std::uint64_t(1) << k) >= best.value)
            break;
        // smallest integer r with r^k >= n, from a float root plus correction
        std::uint64_t r = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
        while (r > 2 && checked_pow(r - 1, k).value_or(UINT64_MAX) >= n)
            --r;
        while (checked_pow(r, k).value_or(UINT64_MAX) < n)
            ++r;
        std::uint64_t p = is_prime(r) ? r : next_prime(r);
        auto v = checked_pow(p, k);
        if (v && *v < best.value)
            best = PrimePower{p, k, *v};
    }
    return best;
}

/// Exact binomial coefficient; 0 when k > n.
inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i; // exact at every step
    }
    return r;
}

inline BigInt factorial_big(std::uint64_t n) {
    BigInt r = 1;
    for (std::uint64_t i = 2; i <= n; ++i)
        r *= i;
    return r;
}

/// log2(n!) via lgamma; relative error well below 1e-9.
inline double log2_factorial(std::uint64_t n) {
    return std::lgamma(static_cast<double>(n) + 1.0) / std::log(2.0);
}

/// log2 of a positive big integer, accurate to ~1 ulp of double.
inline double log2_big(const BigInt& x) {
    if (x <= 0)
        throw std::domain_error("log2_big: argument must be positive");
    unsigned bits = boost::multiprecision::msb(x);
    if (bits <= 900)
        return std::log2(x.convert_to<double>());
    BigInt top = x >> (bits - 64);
    return static_cast<double>(bits - 64) + std::log2(top.convert_to<double>());
}

/// Number of integer points x with sum |x_i| <= r in dimension n:
/// sum_j 2^j C(n,j) C(r,j).
inline BigInt ball_cardinality(std::uint64_t n, std::uint64_t r) {
    BigInt total = 0;
    BigInt cn = 1, cr = 1, p2 = 1;
    std::uint64_t jmax = std::min(n, r);
    for (std::uint64_t j = 0; j <= jmax; ++j) {
        if (j > 0) {
            cn = cn * (n - j + 1) / j;
            cr = cr * (r - j + 1) / j;
            p2 <<= 1;
        }
        total += p2 * cn * cr;
    }
    return total;
}

} // namespace xpoly
