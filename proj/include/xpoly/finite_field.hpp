#pragma once

// Arithmetic in GF(p^m): canonical field construction (lex-smallest monic
// irreducible modulus), element operations, primitive-element search,
// subfield enumeration, and baby-step/giant-step discrete logarithms.
//
// Fields are immutable after construction and cheap to copy (shared data);
// elements carry their field handle, so mixing fields is detected.

#include <cmath>
#include <cstdint>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "xpoly/numtheory.hpp"

namespace xpoly {

namespace detail {

// Polynomials over GF(p), coefficient vectors with the constant term first.

inline void poly_trim(std::vector<std::uint64_t>& a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

// Remainder of a modulo the monic polynomial f.
inline void poly_reduce(std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& f,
                        std::uint64_t p) {
    const std::size_t df = f.size() - 1;
    while (a.size() > df) {
        std::uint64_t lead = a.back();
        std::size_t shift = a.size() - 1 - df;
        if (lead) {
            for (std::size_t i = 0; i < df; ++i) {
                std::uint64_t sub = mulmod(lead, f[i], p);
                std::uint64_t& c = a[shift + i];
                c = (c + p - sub) % p;
            }
        }
        a.pop_back();
    }
    poly_trim(a);
}

inline std::vector<std::uint64_t> poly_mulmod(const std::vector<std::uint64_t>& a,
                                              const std::vector<std::uint64_t>& b,
                                              const std::vector<std::uint64_t>& f,
                                              std::uint64_t p) {
    if (a.empty() || b.empty())
        return {};
    std::vector<std::uint64_t> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    poly_reduce(r, f, p);
    return r;
}

inline std::vector<std::uint64_t> poly_powmod(std::vector<std::uint64_t> base, std::uint64_t e,
                                              const std::vector<std::uint64_t>& f,
                                              std::uint64_t p) {
    std::vector<std::uint64_t> r{1};
    poly_reduce(base, f, p);
    while (e) {
        if (e & 1)
            r = poly_mulmod(r, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

inline std::vector<std::uint64_t> poly_mod(std::vector<std::uint64_t> a,
                                           const std::vector<std::uint64_t>& b, std::uint64_t p) {
    // general remainder, b not necessarily monic
    std::uint64_t inv = powmod(b.back(), p - 2, p);
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        std::uint64_t q = mulmod(a.back(), inv, p);
        std::size_t shift = a.size() - 1 - db;
        if (q)
            for (std::size_t i = 0; i < b.size(); ++i)
                a[shift + i] = (a[shift + i] + p - mulmod(q, b[i], p)) % p;
        a.pop_back();
        poly_trim(a);
        if (a.size() <= db)
            break;
    }
    poly_trim(a);
    return a;
}

inline std::vector<std::uint64_t> poly_gcd(std::vector<std::uint64_t> a,
                                           std::vector<std::uint64_t> b, std::uint64_t p) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        a = poly_mod(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

// Rabin's test: f (monic, degree m) is irreducible over GF(p) iff
// x^{p^m} == x (mod f) and gcd(x^{p^{m/r}} - x, f) = 1 for every prime r | m.
inline bool is_irreducible(const std::vector<std::uint64_t>& f, std::uint64_t p) {
    const std::size_t m = f.size() - 1;
    if (m == 1)
        return true;
    const std::vector<std::uint64_t> x{0, 1};
    auto frob = [&](std::uint64_t k) { // x^{p^k} mod f
        auto r = x;
        for (std::uint64_t i = 0; i < k; ++i)
            r = poly_powmod(std::move(r), p, f, p);
        return r;
    };
    auto minus_x = [&](std::vector<std::uint64_t> g) {
        if (g.size() < 2)
            g.resize(2, 0);
        g[1] = (g[1] + p - 1) % p;
        poly_trim(g);
        return g;
    };
    if (!minus_x(frob(m)).empty())
        return false;
    for (std::size_t r = 2; r <= m; ++r) {
        if (m % r != 0)
            continue;
        bool prime = true;
        for (std::size_t d = 2; d * d <= r; ++d)
            if (r % d == 0)
                prime = false;
        if (!prime)
            continue;
        auto g = minus_x(frob(m / r));
        if (poly_gcd(g, f, p).size() != 1)
            return false;
    }
    return true;
}

struct FieldData {
    std::uint64_t p = 0;
    unsigned m = 0;
    std::uint64_t order = 0;                // p^m
    std::vector<std::uint64_t> modulus;     // length m+1, constant first, monic
};

} // namespace detail

class FieldElement;

/// GF(p^m). The default constructor picks the canonical modulus: the
/// lexicographically smallest monic irreducible, coefficients compared in
/// order (c0, ..., c_{m-1}). Order is capped below 2^63.
class Field {
  public:
    Field(std::uint64_t p, unsigned m) : Field(p, m, {}) {}

    Field(std::uint64_t p, unsigned m, std::vector<std::uint64_t> modulus) {
        if (!is_prime(p))
            throw std::invalid_argument("Field: characteristic must be prime");
        if (m < 1)
            throw std::invalid_argument("Field: degree must be >= 1");
        unsigned __int128 order = 1;
        for (unsigned i = 0; i < m; ++i) {
            order *= p;
            if (order >= (static_cast<unsigned __int128>(1) << 63))
                throw std::invalid_argument("Field: order must be below 2^63");
        }
        auto data = std::make_shared<detail::FieldData>();
        data->p = p;
        data->m = m;
        data->order = static_cast<std::uint64_t>(order);
        if (!modulus.empty()) {
            if (modulus.size() != m + 1 || modulus.back() != 1)
                throw std::invalid_argument("Field: modulus must be monic of degree m");
            for (auto& c : modulus)
                c %= p;
            modulus.back() = 1;
            if (!detail::is_irreducible(modulus, p))
                throw std::invalid_argument("Field: modulus is not irreducible");
            data->modulus = std::move(modulus);
        } else {
            data->modulus = canonical_modulus(p, m, data->order);
        }
        d_ = std::move(data);
    }

    std::uint64_t characteristic() const { return d_->p; }
    unsigned degree() const { return d_->m; }
    std::uint64_t order() const { return d_->order; }
    const std::vector<std::uint64_t>& modulus() const { return d_->modulus; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement element(std::vector<std::uint64_t> coeffs) const;

    /// i-th element in lex order of the coefficient tuple (c0 most significant).
    FieldElement element_at(std::uint64_t index) const;
    std::uint64_t index_of(const FieldElement& e) const;

    bool operator==(const Field& other) const {
        return d_ == other.d_ ||
               (d_->p == other.d_->p && d_->m == other.d_->m && d_->modulus == other.d_->modulus);
    }
    bool operator!=(const Field& other) const { return !(*this == other); }

  private:
    static std::vector<std::uint64_t> canonical_modulus(std::uint64_t p, unsigned m,
                                                        std::uint64_t order) {
        if (m == 1)
            return {0, 1}; // prime field convention: modulus x
        for (std::uint64_t idx = 0; idx < order; ++idx) {
            std::vector<std::uint64_t> f(m + 1, 0);
            std::uint64_t v = idx;
            for (unsigned j = 0; j < m; ++j) { // c0 is the most significant digit
                unsigned pos = m - 1 - j;
                f[pos] = v % p;
                v /= p;
            }
            f[m] = 1;
            if (detail::is_irreducible(f, p))
                return f;
        }
        throw std::logic_error("Field: no irreducible polynomial found"); // unreachable
    }

    std::shared_ptr<const detail::FieldData> d_;
    friend class FieldElement;
};

/// Element of GF(p^m) as a reduced coefficient vector of length m.
class FieldElement {
  public:
    FieldElement(Field field, std::vector<std::uint64_t> coeffs)
        : field_(std::move(field)), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != field_.degree())
            throw std::invalid_argument("FieldElement: coefficient count must equal the degree");
        for (auto& c : coeffs_)
            c %= field_.characteristic();
    }

    const Field& field() const { return field_; }
    const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (auto c : coeffs_)
            if (c)
                return false;
        return true;
    }

    FieldElement operator+(const FieldElement& o) const {
        check_same(o);
        const std::uint64_t p = field_.characteristic();
        std::vector<std::uint64_t> r(coeffs_.size());
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = (coeffs_[i] + o.coeffs_[i]) % p;
        return FieldElement(field_, std::move(r));
    }

    FieldElement operator-(const FieldElement& o) const {
        check_same(o);
        const std::uint64_t p = field_.characteristic();
        std::vector<std::uint64_t> r(coeffs_.size());
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = (coeffs_[i] + p - o.coeffs_[i]) % p;
        return FieldElement(field_, std::move(r));
    }

    FieldElement operator*(const FieldElement& o) const {
        check_same(o);
        auto r = detail::poly_mulmod(coeffs_, o.coeffs_, field_.modulus(),
                                     field_.characteristic());
        r.resize(field_.degree(), 0);
        return FieldElement(field_, std::move(r));
    }

    /// Square-and-multiply.
    FieldElement pow(std::uint64_t e) const {
        auto r = detail::poly_powmod(coeffs_, e, field_.modulus(), field_.characteristic());
        r.resize(field_.degree(), 0);
        return FieldElement(field_, std::move(r));
    }

    FieldElement inverse() const {
        if (is_zero())
            throw std::invalid_argument("FieldElement: zero has no inverse");
        return pow(field_.order() - 2);
    }

    bool operator==(const FieldElement& o) const {
        return field_ == o.field_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

  private:
    void check_same(const FieldElement& o) const {
        if (field_ != o.field_)
            throw std::invalid_argument("FieldElement: operands belong to different fields");
    }

    Field field_;
    std::vector<std::uint64_t> coeffs_;
};

inline FieldElement Field::zero() const {
    return FieldElement(*this, std::vector<std::uint64_t>(d_->m, 0));
}

inline FieldElement Field::one() const {
    std::vector<std::uint64_t> c(d_->m, 0);
    c[0] = 1;
    return FieldElement(*this, std::move(c));
}

inline FieldElement Field::element(std::vector<std::uint64_t> coeffs) const {
    return FieldElement(*this, std::move(coeffs));
}

inline FieldElement Field::element_at(std::uint64_t index) const {
    std::vector<std::uint64_t> c(d_->m, 0);
    for (unsigned j = 0; j < d_->m; ++j) {
        unsigned pos = d_->m - 1 - j;
        c[pos] = index % d_->p;
        index /= d_->p;
    }
    return FieldElement(*this, std::move(c));
}

inline std::uint64_t Field::index_of(const FieldElement& e) const {
    std::uint64_t idx = 0;
    for (unsigned j = 0; j < d_->m; ++j)
        idx = idx * d_->p + e.coeffs()[j];
    return idx;
}

/// Lexicographically smallest element beta with beta^{(q-1)/f} != 1 for every
/// prime factor f of q - 1 (i.e. the canonical primitive element).
inline FieldElement find_primitive(const Field& field) {
    const std::uint64_t q = field.order();
    if (q == 2)
        return field.one(); // trivial multiplicative group
    const auto fac = factorize(q - 1);
    const FieldElement one = field.one();
    for (std::uint64_t i = 1; i < q; ++i) {
        FieldElement e = field.element_at(i);
        bool primitive = true;
        for (const auto& [f, exp] : fac.factors) {
            if (e.pow((q - 1) / f) == one) {
                primitive = false;
                break;
            }
        }
        if (primitive)
            return e;
    }
    throw std::logic_error("find_primitive: exhausted field"); // unreachable
}

/// The order-q subfield of GF(q^h), as {0} followed by the powers
/// beta^{j (q^h - 1)/(q - 1)}, j = 0 .. q-2, for the canonical primitive beta.
inline std::vector<FieldElement> enumerate_subfield(const Field& field, std::uint64_t q) {
    const std::uint64_t p = field.characteristic();
    std::uint64_t v = q;
    unsigned k = 0;
    while (v > 1 && v % p == 0) {
        v /= p;
        ++k;
    }
    if (v != 1 || k == 0 || field.degree() % k != 0)
        throw std::invalid_argument("enumerate_subfield: q is not a subfield order");
    const std::uint64_t stride = (field.order() - 1) / (q - 1);
    const FieldElement beta = find_primitive(field);
    const FieldElement step = beta.pow(stride);
    std::vector<FieldElement> out;
    out.reserve(q);
    out.push_back(field.zero());
    FieldElement cur = field.one();
    for (std::uint64_t j = 0; j + 1 < q; ++j) {
        out.push_back(cur);
        cur = cur * step;
    }
    return out;
}

inline constexpr std::uint64_t kDiscreteLogGroupCap = std::uint64_t(1) << 40;

/// Baby-step/giant-step: the exponent e in [0, q-2] with base^e = y.
/// base must be primitive; group order is capped at 2^40.
inline std::uint64_t discrete_log(const Field& field, const FieldElement& base,
                                  const FieldElement& y) {
    if (base.field() != field || y.field() != field)
        throw std::invalid_argument("discrete_log: elements from a different field");
    if (y.is_zero())
        throw std::invalid_argument("discrete_log: zero is not in the multiplicative group");
    const std::uint64_t ord = field.order() - 1;
    if (ord > kDiscreteLogGroupCap)
        throw guard_error("discrete_log: group order exceeds the 2^40 cap");
    if (ord == 1)
        return 0;
    const std::uint64_t m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(ord))));
    std::unordered_map<std::uint64_t, std::uint64_t> baby;
    baby.reserve(m);
    FieldElement cur = field.one();
    for (std::uint64_t j = 0; j < m; ++j) {
        baby.emplace(field.index_of(cur), j);
        cur = cur * base;
    }
    const FieldElement giant = base.pow(ord - m % ord); // base^{-m}
    FieldElement g = y;
    for (std::uint64_t i = 0; i * m <= ord; ++i) {
        auto it = baby.find(field.index_of(g));
        if (it != baby.end())
            return (i * m + it->second) % ord;
        g = g * giant;
    }
    throw std::logic_error("discrete_log: not found (base not primitive?)");
}

} // namespace xpoly
