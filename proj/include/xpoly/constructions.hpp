#pragma once

// The three lattice families as congruence systems: Reed-Solomon congruence
// lattices, Sidon-set lattices, and their discrete (strict-distance)
// variant, plus the density-optimal radius selectors.

#include <cstdint>
#include <optional>
#include <string>

#include "xpoly/density.hpp"
#include "xpoly/lattice.hpp"
#include "xpoly/sidon.hpp"

namespace xpoly {

enum class Family { rs, sidon, sidon_discrete };

inline const char* to_string(Family f) {
    switch (f) {
    case Family::rs: return "rs";
    case Family::sidon: return "sidon";
    case Family::sidon_discrete: return "sidon-discrete";
    }
    return "?";
}

inline std::optional<Family> family_from_string(const std::string& s) {
    if (s == "rs") return Family::rs;
    if (s == "sidon") return Family::sidon;
    if (s == "sidon-discrete") return Family::sidon_discrete;
    return std::nullopt;
}

struct PackingDesign {
    Family family;
    int n;
    int t;
    std::uint64_t p = 0;                  // rs family
    std::optional<SidonSet> sidon_set;    // sidon families
    CongruenceSystem system;
    int guaranteed_min_dist = 0;
};

/// Rows sum_i i^s x_i == 0 (mod p) for s = 0..t-1 (the s = 0 row is all
/// ones). Requires 1 <= t <= n < p with p prime. The family's distance
/// guarantee is 2t; note that for 2t > p the lattice contains p e_1 of norm
/// p, so the guarantee only has force when 2t <= p — certification reports
/// the true minimum either way.
inline PackingDesign rs_lattice(int n, int t, std::uint64_t p) {
    if (!is_prime(p))
        throw std::invalid_argument("rs_lattice: p must be prime");
    if (t < 1 || t > n)
        throw std::invalid_argument("rs_lattice: need 1 <= t <= n");
    if (static_cast<std::uint64_t>(n) >= p)
        throw std::invalid_argument("rs_lattice: need n < p (distinct nonzero evaluation points)");
    std::vector<CongruenceRow> rows;
    rows.reserve(t);
    for (int s = 0; s < t; ++s) {
        CongruenceRow row;
        row.modulus = p;
        row.coeffs.resize(n);
        for (int i = 0; i < n; ++i)
            row.coeffs[i] = powmod(static_cast<std::uint64_t>(i + 1), s, p);
        rows.push_back(std::move(row));
    }
    return {Family::rs, n, t, p, std::nullopt, CongruenceSystem(n, std::move(rows)), 2 * t};
}

namespace detail {

inline std::vector<CongruenceRow> sidon_rows(int n, std::uint64_t first_modulus,
                                             const SidonSet& b) {
    std::vector<CongruenceRow> rows;
    rows.reserve(1 + b.group.size());
    rows.push_back({std::vector<std::uint64_t>(n, 1), first_modulus});
    for (std::size_t c = 0; c < b.group.size(); ++c) {
        CongruenceRow row;
        row.modulus = b.group[c];
        row.coeffs.resize(n);
        for (int i = 0; i < n; ++i)
            row.coeffs[i] = b.elements[i][c];
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace detail

/// sum x_i == 0 (mod 2t) plus sum x_i b_i = 0 in G, for an order-(t-1) Sidon
/// set B. Guaranteed minimum distance 2t; expected determinant 2t |G|.
inline PackingDesign sidon_lattice(int n, int t, const SidonSet& b) {
    if (t < 1)
        throw std::invalid_argument("sidon_lattice: t must be >= 1");
    if (static_cast<int>(b.elements.size()) != n)
        throw std::invalid_argument("sidon_lattice: set size must equal the dimension");
    if (b.order_h != t - 1)
        throw std::invalid_argument("sidon_lattice: set order must be t - 1");
    return {Family::sidon, n, t, 0, b,
            CongruenceSystem(n, detail::sidon_rows(n, 2 * t, b)), 2 * t};
}

/// The discrete variant: modulus 2t+1 and an order-t set, giving the strict
/// guarantee of minimum distance >= 2t + 1.
inline PackingDesign sidon_discrete_lattice(int n, int t, const SidonSet& b) {
    if (t < 1)
        throw std::invalid_argument("sidon_discrete_lattice: t must be >= 1");
    if (static_cast<int>(b.elements.size()) != n)
        throw std::invalid_argument("sidon_discrete_lattice: set size must equal the dimension");
    if (b.order_h != t)
        throw std::invalid_argument("sidon_discrete_lattice: set order must be t");
    return {Family::sidon_discrete, n, t, 0, b,
            CongruenceSystem(n, detail::sidon_rows(n, 2 * t + 1, b)), 2 * t + 1};
}

/// Determinant the family rules predict (p^t, 2t|G|, (2t+1)|G|); the actual
/// determinant can be a proper divisor when the residue map is not
/// surjective.
inline BigInt expected_determinant(const PackingDesign& d) {
    switch (d.family) {
    case Family::rs: {
        BigInt r = 1;
        for (int i = 0; i < d.t; ++i)
            r *= d.p;
        return r;
    }
    case Family::sidon:
        return BigInt(2 * d.t) * d.sidon_set->group_order();
    case Family::sidon_discrete:
        return BigInt(2 * d.t + 1) * d.sidon_set->group_order();
    }
    throw std::logic_error("expected_determinant: unknown family");
}

inline int optimal_t_rush(std::uint64_t n) { return rush_log2_density(n).t; }
inline int optimal_t_rs(std::uint64_t n) { return rs_log2_density(n).t; }
inline int optimal_t_sidon(std::uint64_t n) { return sidon_bound_log2_density(n).t; }

} // namespace xpoly
