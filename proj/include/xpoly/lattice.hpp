#pragma once

// Congruence-defined sublattices of Z^n: membership, Hermite-normal-form
// basis extraction (exact integer arithmetic throughout), determinants, and
// exhaustive minimum-l1-distance certification by increasing-norm
// enumeration.

#include <climits>
#include <cstdint>
#include <numeric>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "xpoly/numtheory.hpp"

namespace xpoly {

struct CongruenceRow {
    std::vector<std::uint64_t> coeffs; // reduced mod modulus
    std::uint64_t modulus = 1;
};

/// L = { x in Z^n : coeffs . x == 0 (mod modulus), for every row }.
class CongruenceSystem {
  public:
    CongruenceSystem(int n, std::vector<CongruenceRow> rows)
        : n_(n), rows_(std::move(rows)) {
        if (n_ < 1)
            throw std::invalid_argument("CongruenceSystem: dimension must be >= 1");
        for (auto& row : rows_) {
            if (static_cast<int>(row.coeffs.size()) != n_)
                throw std::invalid_argument("CongruenceSystem: row arity mismatch");
            if (row.modulus < 1)
                throw std::invalid_argument("CongruenceSystem: modulus must be >= 1");
            for (auto& c : row.coeffs)
                c %= row.modulus;
        }
    }

    int dimension() const { return n_; }
    const std::vector<CongruenceRow>& rows() const { return rows_; }

    bool contains(const std::vector<long long>& x) const {
        if (static_cast<int>(x.size()) != n_)
            throw std::invalid_argument("contains: dimension mismatch");
        for (const auto& row : rows_) {
            const std::uint64_t m = row.modulus;
            std::uint64_t acc = 0;
            for (int i = 0; i < n_; ++i) {
                long long r = x[i] % static_cast<long long>(m);
                std::uint64_t xi = r < 0 ? static_cast<std::uint64_t>(r + static_cast<long long>(m))
                                         : static_cast<std::uint64_t>(r);
                acc = (acc + mulmod(row.coeffs[i], xi, m)) % m;
            }
            if (acc != 0)
                return false;
        }
        return true;
    }

    BigInt moduli_product() const {
        BigInt r = 1;
        for (const auto& row : rows_)
            r *= row.modulus;
        return r;
    }

    BigInt moduli_lcm() const {
        BigInt r = 1;
        for (const auto& row : rows_) {
            BigInt m = row.modulus;
            r = r / boost::multiprecision::gcd(r, m) * m;
        }
        return r;
    }

  private:
    int n_;
    std::vector<CongruenceRow> rows_;
};

namespace detail {

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0)))
        --q;
    return q;
}

// Row-style HNF of a generating set (full column rank n expected):
// lower-triangular, positive diagonal, entries below the diagonal reduced
// into [0, diag).
inline std::vector<std::vector<BigInt>> hnf_from_generators(std::vector<std::vector<BigInt>> gens,
                                                            int n) {
    std::vector<std::vector<BigInt>> basis(n);
    for (int col = n - 1; col >= 0; --col) {
        // Euclid on column entries until a single generator hits this column
        while (true) {
            int nonzero = -1, count = 0;
            for (std::size_t r = 0; r < gens.size(); ++r)
                if (gens[r][col] != 0) {
                    ++count;
                    if (nonzero < 0 || boost::multiprecision::abs(gens[r][col]) <
                                           boost::multiprecision::abs(gens[nonzero][col]))
                        nonzero = static_cast<int>(r);
                }
            if (count == 0)
                throw std::logic_error("hnf_from_generators: generators do not have full rank");
            if (count == 1) {
                basis[col] = std::move(gens[nonzero]);
                gens.erase(gens.begin() + nonzero);
                break;
            }
            const auto& pivot = gens[nonzero];
            for (std::size_t r = 0; r < gens.size(); ++r) {
                if (static_cast<int>(r) == nonzero || gens[r][col] == 0)
                    continue;
                BigInt q = gens[r][col] / pivot[col]; // truncated is fine mid-reduction
                if (q == 0)
                    continue;
                for (int j = 0; j <= col; ++j)
                    gens[r][j] -= q * pivot[j];
            }
        }
        if (basis[col][col] < 0)
            for (auto& v : basis[col])
                v = -v;
    }
    // reduce below-diagonal entries
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k) {
            BigInt q = floor_div(basis[k][i], basis[i][i]);
            if (q == 0)
                continue;
            for (int j = 0; j <= i; ++j)
                basis[k][j] -= q * basis[i][j];
        }
    return basis;
}

} // namespace detail

/// n x n integer basis in lower-triangular Hermite normal form with cached
/// determinant (the product of the diagonal).
class LatticeBasis {
  public:
    explicit LatticeBasis(std::vector<std::vector<BigInt>> rows) : rows_(std::move(rows)) {
        n_ = static_cast<int>(rows_.size());
        if (n_ < 1)
            throw std::invalid_argument("LatticeBasis: empty basis");
        det_ = 1;
        for (int i = 0; i < n_; ++i) {
            if (static_cast<int>(rows_[i].size()) != n_)
                throw std::invalid_argument("LatticeBasis: basis must be square");
            if (rows_[i][i] <= 0)
                throw std::invalid_argument("LatticeBasis: diagonal must be positive");
            for (int j = i + 1; j < n_; ++j)
                if (rows_[i][j] != 0)
                    throw std::invalid_argument("LatticeBasis: not lower triangular");
            det_ *= rows_[i][i];
        }
        for (int i = 0; i < n_; ++i)
            for (int k = i + 1; k < n_; ++k)
                if (rows_[k][i] < 0 || rows_[k][i] >= rows_[i][i])
                    throw std::invalid_argument("LatticeBasis: off-diagonal entries not reduced");
    }

    int dimension() const { return n_; }
    const std::vector<std::vector<BigInt>>& rows() const { return rows_; }
    const BigInt& det() const { return det_; }

    /// Exact membership via back-substitution against the triangular rows.
    bool contains(std::vector<BigInt> v) const {
        if (static_cast<int>(v.size()) != n_)
            throw std::invalid_argument("LatticeBasis::contains: dimension mismatch");
        for (int i = n_ - 1; i >= 0; --i) {
            if (v[i] % rows_[i][i] != 0)
                return false;
            BigInt q = v[i] / rows_[i][i];
            if (q == 0)
                continue;
            for (int j = 0; j <= i; ++j)
                v[j] -= q * rows_[i][j];
        }
        for (const auto& x : v)
            if (x != 0)
                return false;
        return true;
    }

  private:
    int n_;
    std::vector<std::vector<BigInt>> rows_;
    BigInt det_;
};

/// |det| by fraction-free (Bareiss) elimination; throws on a singular input.
inline BigInt determinant(std::vector<std::vector<BigInt>> m) {
    const int n = static_cast<int>(m.size());
    for (const auto& row : m)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("determinant: matrix must be square");
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int swap = -1;
            for (int r = k + 1; r < n; ++r)
                if (m[r][k] != 0) {
                    swap = r;
                    break;
                }
            if (swap < 0)
                throw std::invalid_argument("determinant: singular matrix");
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    BigInt d = m[n - 1][n - 1] * sign;
    return d < 0 ? -d : d;
}

/// HNF basis of the congruence lattice, via the integer kernel of [A | D]
/// (D = diag of moduli): L is the projection of that kernel onto the x
/// coordinates. The result is verified internally: every basis row satisfies
/// the congruences, det divides the product of the moduli, and lcm(m_j) e_i
/// lies in the basis lattice for every i.
inline LatticeBasis basis_from_congruences(const CongruenceSystem& sys) {
    const int n = sys.dimension();
    const int r = static_cast<int>(sys.rows().size());

    std::vector<std::vector<BigInt>> gens;
    if (r == 0) {
        gens.resize(n, std::vector<BigInt>(n, 0));
        for (int i = 0; i < n; ++i)
            gens[i][i] = 1;
    } else {
        // rows of [C^T | I], C = [A | D]; row ops preserve left = right * C^T
        const int rows = n + r;
        std::vector<std::vector<BigInt>> m(rows, std::vector<BigInt>(r + rows, 0));
        for (int j = 0; j < r; ++j) {
            for (int i = 0; i < n; ++i)
                m[i][j] = sys.rows()[j].coeffs[i];
            m[n + j][j] = sys.rows()[j].modulus;
        }
        for (int i = 0; i < rows; ++i)
            m[i][r + i] = 1;

        int top = 0;
        for (int col = 0; col < r; ++col) {
            while (true) {
                int best = -1, count = 0;
                for (int i = top; i < rows; ++i)
                    if (m[i][col] != 0) {
                        ++count;
                        if (best < 0 || boost::multiprecision::abs(m[i][col]) <
                                            boost::multiprecision::abs(m[best][col]))
                            best = i;
                    }
                if (count == 0)
                    break;
                if (count == 1) {
                    std::swap(m[top], m[best]);
                    ++top;
                    break;
                }
                for (int i = top; i < rows; ++i) {
                    if (i == best || m[i][col] == 0)
                        continue;
                    BigInt q = m[i][col] / m[best][col];
                    if (q == 0)
                        continue;
                    for (int j = col; j < r + rows; ++j)
                        m[i][j] -= q * m[best][j];
                }
            }
        }
        // rows below `top` have zero left block: their right blocks span ker C
        for (int i = top; i < rows; ++i) {
            std::vector<BigInt> x(n);
            for (int j = 0; j < n; ++j)
                x[j] = m[i][r + j];
            gens.push_back(std::move(x));
        }
    }

    LatticeBasis basis(detail::hnf_from_generators(std::move(gens), n));

    // internal sanity: D3 checks from the construction contract
    for (const auto& row : basis.rows()) {
        std::vector<long long> v(n);
        bool fits = true;
        for (int i = 0; i < n; ++i) {
            if (row[i] < LLONG_MIN || row[i] > LLONG_MAX)
                fits = false;
            else
                v[i] = row[i].convert_to<long long>();
        }
        if (fits && !sys.contains(v))
            throw std::logic_error("basis_from_congruences: basis row violates a congruence");
    }
    if (sys.moduli_product() % basis.det() != 0)
        throw std::logic_error("basis_from_congruences: determinant does not divide the moduli product");
    const BigInt lcm = sys.moduli_lcm();
    for (int i = 0; i < n; ++i) {
        std::vector<BigInt> e(n, 0);
        e[i] = lcm;
        if (!basis.contains(std::move(e)))
            throw std::logic_error("basis_from_congruences: lcm * e_i is not representable");
    }
    return basis;
}

struct MinDistanceResult {
    std::optional<int> distance;     // empty means "> bound"
    std::vector<long long> witness;  // minimal-norm member when distance is set
    int bound = 0;
};

namespace detail {

// first member of the norm-d sphere in canonical order, restricted to
// support-combination ranks congruent to `lane` mod `stride`; returns the
// rank for deterministic merging across lanes
struct SphereHit {
    std::uint64_t support_rank;
    std::vector<long long> point;
};

inline std::optional<SphereHit> scan_norm_sphere(const CongruenceSystem& sys, int d, int k,
                                                 std::uint64_t lane, std::uint64_t stride) {
    const int n = sys.dimension();
    std::vector<int> support(k);
    for (int i = 0; i < k; ++i)
        support[i] = i;
    std::vector<int> parts(k);
    std::vector<long long> x(n, 0);
    std::optional<SphereHit> hit;

    // compositions of d into k positive parts, first part largest first
    auto compositions = [&](auto&& self, int pos, int left) -> bool {
        if (pos == k - 1) {
            parts[pos] = left;
            for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
                for (int i = 0; i < k; ++i) {
                    bool neg = (mask >> (k - 1 - i)) & 1;
                    x[support[i]] = neg ? -parts[i] : parts[i];
                }
                if (sys.contains(x))
                    return true;
                for (int i = 0; i < k; ++i)
                    x[support[i]] = 0;
            }
            return false;
        }
        for (int a = left - (k - 1 - pos); a >= 1; --a) {
            parts[pos] = a;
            if (self(self, pos + 1, left - a))
                return true;
        }
        return false;
    };

    std::uint64_t rank = 0;
    bool more = true;
    while (more) {
        if (rank % stride == lane) {
            if (compositions(compositions, 0, d)) {
                hit = SphereHit{rank, x};
                break;
            }
        }
        // next k-combination of {0..n-1} in lex order
        int i = k - 1;
        while (i >= 0 && support[i] == n - k + i)
            --i;
        if (i < 0)
            more = false;
        else {
            ++support[i];
            for (int j = i + 1; j < k; ++j)
                support[j] = support[j - 1] + 1;
        }
        ++rank;
    }
    return hit;
}

} // namespace detail

/// Exact minimum l1 norm of a nonzero lattice vector, by enumeration in
/// strictly increasing norm (so the first hit certifies the minimum), or
/// "> bound" when no member exists up to the bound. The witness is the first
/// member in the canonical enumeration order (norm; support size; support
/// set lex; compositions largest-first; signs + before -), which is
/// reproduced deterministically regardless of the worker count.
inline MinDistanceResult min_l1_distance(const CongruenceSystem& sys, int bound, int threads = 1) {
    if (bound < 1)
        throw std::invalid_argument("min_l1_distance: bound must be >= 1");
    const int n = sys.dimension();
    if (ball_cardinality(n, bound) > BigInt(1000000000))
        throw guard_error("min_l1_distance: enumeration would exceed the 10^9 point guard");
    if (threads < 1)
        threads = 1;

    for (int d = 1; d <= bound; ++d) {
        for (int k = 1; k <= std::min(d, n); ++k) {
            const BigInt combos = binomial(n, k);
            std::uint64_t lanes = static_cast<std::uint64_t>(threads);
            if (threads == 1 || combos < 64) {
                auto hit = detail::scan_norm_sphere(sys, d, k, 0, 1);
                if (hit)
                    return {d, hit->point, bound};
                continue;
            }
            std::vector<std::optional<detail::SphereHit>> results(lanes);
            std::vector<std::thread> pool;
            pool.reserve(lanes);
            for (std::uint64_t w = 0; w < lanes; ++w)
                pool.emplace_back([&, w] { results[w] = detail::scan_norm_sphere(sys, d, k, w, lanes); });
            for (auto& t : pool)
                t.join();
            const detail::SphereHit* best = nullptr;
            for (const auto& rr : results)
                if (rr && (!best || rr->support_rank < best->support_rank))
                    best = &*rr;
            if (best)
                return {d, best->point, bound};
        }
    }
    return {std::nullopt, {}, bound};
}

} // namespace xpoly
