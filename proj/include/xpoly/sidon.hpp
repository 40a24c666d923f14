#pragma once

// Sidon sets of order h in finite Abelian groups (products of cyclic
// factors): the Bose-Chowla construction, exhaustive verification of the
// defining property, trimming, and a small exact search for the minimal
// cyclic group containing an n-element order-h set.

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "xpoly/finite_field.hpp"
#include "xpoly/numtheory.hpp"

namespace xpoly {

/// Elements of G = Z_{g1} x ... x Z_{gc} with a declared Sidon order.
/// Coordinates are reduced mod their factor. Elements are pairwise distinct
/// for order_h >= 1; the degenerate order-0 set (trivial group, repeated
/// zeros) is allowed as the t = 1 lattice input.
struct SidonSet {
    std::vector<std::uint64_t> group;
    std::vector<std::vector<std::uint64_t>> elements;
    int order_h = 0;

    BigInt group_order() const {
        BigInt r = 1;
        for (std::uint64_t g : group)
            r *= g;
        return r;
    }
};

/// Outcome of verify_sidon; on failure, lhs/rhs are the first colliding
/// index multisets in enumeration order (nondecreasing index sequences).
struct SidonCheck {
    bool ok = true;
    std::vector<int> lhs, rhs;
    explicit operator bool() const { return ok; }
};

namespace detail {

// C(n + k - 1, k) as uint64; callers stay far below overflow (guarded).
inline std::uint64_t multichoose(std::uint64_t n, std::uint64_t k) {
    BigInt b = binomial(n + k - 1, k);
    return b.convert_to<std::uint64_t>();
}

// Multiset with the given rank in the lex enumeration of nondecreasing
// length-h index sequences over {0..n-1}.
inline std::vector<int> unrank_multiset(std::uint64_t rank, int n, int h) {
    std::vector<int> out;
    out.reserve(h);
    int floor = 0;
    for (int pos = 0; pos < h; ++pos) {
        for (int v = floor; v < n; ++v) {
            std::uint64_t cnt = multichoose(n - v, h - pos - 1);
            if (rank < cnt) {
                out.push_back(v);
                floor = v;
                break;
            }
            rank -= cnt;
        }
    }
    return out;
}

inline void check_set_shape(const SidonSet& s) {
    for (const auto& e : s.elements) {
        if (e.size() != s.group.size())
            throw std::invalid_argument("SidonSet: element arity does not match the group");
        for (std::size_t c = 0; c < e.size(); ++c)
            if (s.group[c] == 0 || e[c] >= s.group[c])
                throw std::invalid_argument("SidonSet: coordinate out of range");
    }
}

} // namespace detail

inline constexpr std::uint64_t kSidonEnumerationGuard = 100000000; // 10^8 multisets

/// True iff all h-fold multiset sums of s are pairwise distinct in G.
/// h = 0 is vacuously true. Enumeration is O(C(n+h-1, h)) with early exit.
inline SidonCheck verify_sidon(const SidonSet& s, int h) {
    if (h < 0)
        throw std::invalid_argument("verify_sidon: order must be >= 0");
    detail::check_set_shape(s);
    if (h == 0 || s.elements.empty())
        return {};
    const int n = static_cast<int>(s.elements.size());
    if (binomial(n + h - 1, h) > kSidonEnumerationGuard)
        throw guard_error("verify_sidon: multiset count exceeds the 10^8 guard");

    const std::size_t c = s.group.size();
    // exact u64 key via mixed radix when the group order fits, else ordered map
    bool fits = true;
    unsigned __int128 prod = 1;
    for (std::uint64_t g : s.group) {
        prod *= g;
        if (prod > UINT64_MAX) {
            fits = false;
            break;
        }
    }
    std::unordered_map<std::uint64_t, std::uint32_t> seen_key;
    std::map<std::vector<std::uint64_t>, std::uint32_t> seen_vec;

    std::vector<std::vector<std::uint64_t>> sums(h + 1, std::vector<std::uint64_t>(c, 0));
    std::vector<int> stack;
    stack.reserve(h);
    std::uint32_t rank = 0;
    SidonCheck result;

    // depth-first over nondecreasing index sequences, sum accumulated per depth
    auto descend = [&](auto&& self, int depth, int from) -> bool {
        if (depth == h) {
            const auto& sum = sums[h];
            std::uint32_t prev;
            bool dup;
            if (fits) {
                std::uint64_t key = 0;
                for (std::size_t i = 0; i < c; ++i)
                    key = key * s.group[i] + sum[i];
                auto [it, inserted] = seen_key.emplace(key, rank);
                dup = !inserted;
                prev = it->second;
            } else {
                auto [it, inserted] = seen_vec.emplace(sum, rank);
                dup = !inserted;
                prev = it->second;
            }
            if (dup) {
                result.ok = false;
                result.lhs = detail::unrank_multiset(prev, n, h);
                result.rhs = stack;
                return false;
            }
            ++rank;
            return true;
        }
        for (int i = from; i < n; ++i) {
            for (std::size_t k = 0; k < c; ++k) {
                std::uint64_t v = sums[depth][k] + s.elements[i][k];
                sums[depth + 1][k] = v >= s.group[k] ? v - s.group[k] : v;
            }
            stack.push_back(i);
            bool go = self(self, depth + 1, i);
            stack.pop_back();
            if (!go)
                return false;
        }
        return true;
    };
    descend(descend, 0, 0);
    return result;
}

/// Bose-Chowla order-h Sidon set of size q in Z_{q^h - 1}: the exponents b
/// with beta^b = beta + alpha, alpha ranging over the order-q subfield of
/// GF(q^h). Output sorted ascending, so b_1 = 1 comes first. Requires h >= 2
/// (Z_{q-1} cannot hold q distinct elements).
inline SidonSet bose_chowla(std::uint64_t q, int h) {
    if (h < 2)
        throw std::invalid_argument("bose_chowla: order must be >= 2");
    if (q < 2)
        throw std::invalid_argument("bose_chowla: q must be a prime power >= 2");
    const Factorization fac = factorize(q);
    if (fac.factors.size() != 1)
        throw std::invalid_argument("bose_chowla: q must be a prime power");
    const std::uint64_t p = fac.factors[0].first;
    const unsigned k = static_cast<unsigned>(fac.factors[0].second);

    unsigned __int128 order = 1;
    for (int i = 0; i < h; ++i) {
        order *= q;
        if (order - 1 > kDiscreteLogGroupCap)
            throw guard_error("bose_chowla: q^h - 1 exceeds the discrete-log cap");
    }

    const Field field(p, k * static_cast<unsigned>(h));
    const FieldElement beta = find_primitive(field);
    const auto subfield = enumerate_subfield(field, q);

    std::vector<std::uint64_t> bs;
    bs.reserve(q);
    for (const auto& alpha : subfield)
        bs.push_back(discrete_log(field, beta, beta + alpha));
    std::sort(bs.begin(), bs.end());

    SidonSet out;
    out.group = {field.order() - 1};
    out.order_h = h;
    out.elements.reserve(bs.size());
    for (std::uint64_t b : bs)
        out.elements.push_back({b});
    return out;
}

/// Keep the n numerically smallest elements (tuple lex order).
inline SidonSet trim(const SidonSet& s, std::size_t n) {
    if (n > s.elements.size())
        throw std::invalid_argument("trim: target size exceeds the set size");
    SidonSet out = s;
    std::sort(out.elements.begin(), out.elements.end());
    out.elements.resize(n);
    return out;
}

/// An n-element order-h Sidon set via next_prime_power + bose_chowla + trim.
/// Degenerate orders: h = 0 gives the trivial-group set (t = 1 lattices);
/// h = 1 gives {0..n-1} in Z_n, the smallest group with n distinct elements.
inline SidonSet sidon_set_for(std::size_t n, int h) {
    if (n < 1)
        throw std::invalid_argument("sidon_set_for: size must be >= 1");
    if (h == 0) {
        SidonSet out;
        out.group = {1};
        out.elements.assign(n, {0});
        out.order_h = 0;
        return out;
    }
    if (h == 1) {
        SidonSet out;
        out.group = {static_cast<std::uint64_t>(n)};
        out.order_h = 1;
        for (std::size_t i = 0; i < n; ++i)
            out.elements.push_back({static_cast<std::uint64_t>(i)});
        return out;
    }
    const PrimePower q = next_prime_power(std::max<std::uint64_t>(n, 2));
    return trim(bose_chowla(q.value, h), n);
}

struct MinCyclicSidon {
    std::uint64_t modulus = 0;
    SidonSet witness;
};

namespace detail {

// incremental DFS state for the minimal-cyclic search
struct MinCyclicSearch {
    std::uint64_t m;
    int n, h;
    std::vector<std::uint64_t> elements;
    std::vector<std::vector<std::uint64_t>> sums_by_size; // sizes 0..h-1 over current set
    std::unordered_map<std::uint64_t, int> h_sums;

    bool add(std::uint64_t e, std::vector<std::size_t>& saved_sizes,
             std::vector<std::uint64_t>& added_h) {
        // new k-multisets containing e exactly j >= 1 times: j*e + (k-j)-multisets
        saved_sizes.resize(h);
        for (int k = 0; k < h; ++k)
            saved_sizes[k] = sums_by_size[k].size();
        added_h.clear();
        for (std::uint64_t j = 1; j <= static_cast<std::uint64_t>(h); ++j) {
            std::uint64_t je = mulmod(j % m, e % m, m);
            int rest = h - static_cast<int>(j);
            for (std::size_t idx = 0; idx < saved_sizes[rest]; ++idx) {
                std::uint64_t sum = sums_by_size[rest][idx] + je;
                if (sum >= m)
                    sum -= m;
                if (h_sums.count(sum)) {
                    rollback(saved_sizes, added_h);
                    return false;
                }
                h_sums.emplace(sum, 1);
                added_h.push_back(sum);
            }
        }
        for (int k = 1; k < h; ++k) {
            for (int j = 1; j <= k; ++j) {
                std::uint64_t je = mulmod(static_cast<std::uint64_t>(j) % m, e % m, m);
                int rest = k - j;
                std::size_t limit = saved_sizes[rest];
                for (std::size_t idx = 0; idx < limit; ++idx) {
                    std::uint64_t sum = sums_by_size[rest][idx] + je;
                    if (sum >= m)
                        sum -= m;
                    sums_by_size[k].push_back(sum);
                }
            }
        }
        elements.push_back(e);
        return true;
    }

    void rollback(const std::vector<std::size_t>& saved_sizes,
                  const std::vector<std::uint64_t>& added_h) {
        for (std::uint64_t s : added_h)
            h_sums.erase(s);
        for (int k = 1; k < h; ++k)
            if (sums_by_size[k].size() > saved_sizes[k])
                sums_by_size[k].resize(saved_sizes[k]);
    }

    bool dfs() {
        if (static_cast<int>(elements.size()) == n)
            return true;
        std::uint64_t from = elements.empty() ? 0 : elements.back() + 1;
        for (std::uint64_t e = from; e < m; ++e) {
            std::vector<std::size_t> saved;
            std::vector<std::uint64_t> added;
            if (!add(e, saved, added))
                continue;
            if (dfs())
                return true;
            elements.pop_back();
            rollback(saved, added);
        }
        return false;
    }
};

} // namespace detail

/// Exact search: the smallest m <= m_max such that Z_m contains an n-element
/// Sidon set of order h, with the lex-smallest witness (anchored at 0 by
/// translation invariance). Bounded to n <= 6, h <= 3, m_max <= 200.
inline std::optional<MinCyclicSidon> sidon_min_cyclic(int n, int h, std::uint64_t m_max) {
    if (n < 1 || h < 1)
        throw std::invalid_argument("sidon_min_cyclic: need n >= 1 and h >= 1");
    if (n > 6 || h > 3 || m_max > 200)
        throw guard_error("sidon_min_cyclic: search guards exceeded (n <= 6, h <= 3, m <= 200)");
    for (std::uint64_t m = 1; m <= m_max; ++m) {
        if (static_cast<std::uint64_t>(n) > m)
            continue;
        if (detail::multichoose(n, h) > m)
            continue; // pigeonhole: C(n+h-1, h) distinct sums must fit in Z_m
        detail::MinCyclicSearch search;
        search.m = m;
        search.n = n;
        search.h = h;
        search.sums_by_size.assign(h, {});
        search.sums_by_size[0].push_back(0); // the empty multiset
        std::vector<std::size_t> saved;
        std::vector<std::uint64_t> added;
        if (!search.add(0, saved, added))
            continue;
        if (!search.dfs())
            continue;
        MinCyclicSidon out;
        out.modulus = m;
        out.witness.group = {m};
        out.witness.order_h = h;
        for (std::uint64_t e : search.elements)
            out.witness.elements.push_back({e});
        return out;
    }
    return std::nullopt;
}

} // namespace xpoly
