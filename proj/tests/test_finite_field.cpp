#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "xpoly/finite_field.hpp"

using namespace xpoly;

namespace {
std::vector<std::uint64_t> C(std::initializer_list<std::uint64_t> v) { return v; }
} // namespace

TEST_CASE("canonical moduli") {
    CHECK(Field(3, 1).modulus() == C({0, 1})); // prime field convention
    CHECK(Field(3, 2).modulus() == C({1, 0, 1}));
    CHECK(Field(2, 2).modulus() == C({1, 1, 1}));
    CHECK(Field(2, 4).modulus() == C({1, 0, 0, 1, 1}));
    CHECK(Field(5, 2).modulus() == C({1, 1, 1}));
    CHECK(Field(7, 2).modulus() == C({1, 0, 1}));
    CHECK(Field(2, 6).modulus() == C({1, 0, 0, 0, 0, 1, 1}));
    CHECK(Field(3, 3).modulus() == C({1, 0, 2, 1}));
    CHECK(Field(3, 4).modulus() == C({1, 0, 1, 1, 1}));
    CHECK(Field(5, 3).modulus() == C({1, 0, 1, 1}));
}

TEST_CASE("canonical modulus is the lex-smallest irreducible") {
    // independent scan with the naive trial-division irreducibility test
    for (auto [p, m] : {std::pair<std::uint64_t, unsigned>{2, 4}, {3, 2}, {2, 5}, {5, 2}}) {
        Field f(p, m);
        std::uint64_t canon_idx = 0;
        for (unsigned j = 0; j < m; ++j)
            canon_idx = canon_idx * p + f.modulus()[j];
        REQUIRE(oracle::naive_irreducible(f.modulus(), p));
        for (std::uint64_t idx = 0; idx < canon_idx; ++idx) {
            std::vector<std::uint64_t> g(m + 1, 0);
            std::uint64_t v = idx;
            for (unsigned j = 0; j < m; ++j) {
                g[m - 1 - j] = v % p;
                v /= p;
            }
            g[m] = 1;
            REQUIRE_FALSE(oracle::naive_irreducible(g, p));
        }
    }
}

TEST_CASE("field construction errors") {
    CHECK_THROWS_AS(Field(4, 2), std::invalid_argument);  // characteristic not prime
    CHECK_THROWS_AS(Field(2, 63), std::invalid_argument); // order cap
    CHECK_THROWS_AS(Field(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(Field(2, 2, {1, 0, 1}), std::invalid_argument); // (x+1)^2, reducible
    CHECK_THROWS_AS(Field(3, 2, {1, 0}), std::invalid_argument);    // not degree m
    CHECK_NOTHROW(Field(3, 2, {2, 1, 1})); // explicit irreducible override
}

TEST_CASE("canonical determinism") {
    Field a(2, 8), b(2, 8);
    REQUIRE(a.modulus() == b.modulus());
    REQUIRE(find_primitive(a) == find_primitive(b));
}

TEST_CASE("element arithmetic in GF(9)") {
    Field f(3, 2);
    auto xp1 = f.element({1, 1}); // x + 1
    CHECK((xp1 * xp1).coeffs() == C({0, 2})); // (x+1)^2 = 2x mod (x^2+1, 3)
    for (std::uint64_t i = 0; i < f.order(); ++i) {
        auto a = f.element_at(i);
        CHECK(a + f.zero() == a);
        if (!a.is_zero())
            CHECK(a * a.inverse() == f.one());
        CHECK(a - a == f.zero());
    }
    CHECK_THROWS_AS(f.zero().inverse(), std::invalid_argument);
}

TEST_CASE("inverses across a few fields") {
    for (auto [p, m] : {std::pair<std::uint64_t, unsigned>{2, 3}, {5, 2}, {7, 1}, {13, 1}}) {
        Field f(p, m);
        for (std::uint64_t i = 1; i < f.order(); ++i) {
            auto a = f.element_at(i);
            REQUIRE(a * a.inverse() == f.one());
        }
    }
}

TEST_CASE("pow matches repeated multiplication") {
    Field f(5, 2);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = f.element_at(1 + rng() % (f.order() - 1));
        std::uint64_t e = rng() % 200;
        auto expect = f.one();
        for (std::uint64_t i = 0; i < e; ++i)
            expect = expect * a;
        REQUIRE(a.pow(e) == expect);
    }
}

TEST_CASE("mixed fields are rejected, equal-valued fields are not") {
    Field a(3, 2);          // x^2 + 1
    Field b(3, 2, {2, 1, 1}); // x^2 + x + 2
    CHECK_THROWS_AS(a.one() + b.one(), std::invalid_argument);
    CHECK_THROWS_AS(a.one() * b.one(), std::invalid_argument);
    Field c(3, 2); // same canonical modulus, separate instance
    CHECK(a.one() + c.one() == a.element({2, 0}));
}

TEST_CASE("find_primitive canonical outputs") {
    CHECK(find_primitive(Field(3, 2)).coeffs() == C({1, 1})); // x + 1
    CHECK(find_primitive(Field(5, 1)).coeffs() == C({2}));
    CHECK(find_primitive(Field(2, 1)).coeffs() == C({1}));
}

TEST_CASE("find_primitive returns a generator, and the lex-first one") {
    for (auto [p, m] : {std::pair<std::uint64_t, unsigned>{2, 1}, {2, 4}, {2, 8}, {2, 10},
                        {3, 2}, {3, 4}, {3, 6}, {5, 2}, {5, 4}, {7, 2}, {7, 3},
                        {11, 2}, {13, 2}, {31, 1}, {101, 1}, {251, 1}, {4093, 1}}) {
        Field f(p, m);
        auto beta = find_primitive(f);
        REQUIRE(oracle::element_order(beta) == f.order() - 1);
        // nothing lex-smaller generates
        for (std::uint64_t i = 1; i < f.index_of(beta); ++i)
            REQUIRE(oracle::element_order(f.element_at(i)) < f.order() - 1);
    }
}

TEST_CASE("enumerate_subfield fixed cases") {
    Field f9(3, 2);
    auto sub = enumerate_subfield(f9, 3);
    REQUIRE(sub.size() == 3);
    CHECK(sub[0].coeffs() == C({0, 0}));
    CHECK(sub[1].coeffs() == C({1, 0}));
    CHECK(sub[2].coeffs() == C({2, 0})); // beta^4 = 2 in this model

    Field f4(2, 2);
    auto sub2 = enumerate_subfield(f4, 2);
    REQUIRE(sub2.size() == 2);
    CHECK(sub2[0].is_zero());
    CHECK(sub2[1] == f4.one());
}

TEST_CASE("enumerate_subfield closure and fixed points") {
    struct Case {
        std::uint64_t p;
        unsigned m;
        std::uint64_t q;
    };
    for (auto [p, m, q] : {Case{2, 4, 4}, Case{2, 6, 2}, Case{2, 6, 4}, Case{2, 6, 8},
                           Case{3, 4, 3}, Case{3, 4, 9}, Case{5, 2, 5}}) {
        Field f(p, m);
        auto sub = enumerate_subfield(f, q);
        REQUIRE(sub.size() == q);
        REQUIRE(sub[0].is_zero());
        for (const auto& a : sub) {
            REQUIRE(a.pow(q) == a); // fixed points of the q-power Frobenius
            for (const auto& b : sub) {
                auto s = a + b;
                auto prod = a * b;
                REQUIRE(std::count(sub.begin(), sub.end(), s) == 1);
                REQUIRE(std::count(sub.begin(), sub.end(), prod) == 1);
            }
        }
    }
    CHECK_THROWS_AS(enumerate_subfield(Field(2, 4), 3), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_subfield(Field(2, 3), 4), std::invalid_argument); // 2 does not divide 3
}

TEST_CASE("discrete_log in GF(9)") {
    Field f(3, 2);
    auto beta = find_primitive(f);
    CHECK(discrete_log(f, beta, f.element({2, 1})) == 7); // x + 2 = beta^7
    CHECK(discrete_log(f, beta, f.element({0, 1})) == 6); // x = beta^6
    CHECK(discrete_log(f, beta, beta) == 1);
    CHECK(discrete_log(f, beta, f.one()) == 0);
    CHECK_THROWS_AS(discrete_log(f, beta, f.zero()), std::invalid_argument);
}

TEST_CASE("discrete_log round-trips") {
    std::mt19937_64 rng(11);
    for (auto [p, m] : {std::pair<std::uint64_t, unsigned>{3, 2}, {2, 6}, {7, 3}, {5, 4}, {2, 1}}) {
        Field f(p, m);
        auto beta = find_primitive(f);
        std::uint64_t ord = f.order() - 1;
        for (int i = 0; i < 100; ++i) {
            std::uint64_t k = ord == 1 ? 0 : rng() % ord;
            REQUIRE(discrete_log(f, beta, beta.pow(k)) == k);
        }
    }
}

TEST_CASE("discrete_log group-order guard") {
    Field f(3, 26); // order ~2.5e12, beyond the 2^40 cap
    CHECK_THROWS_AS(discrete_log(f, f.one(), f.one()), guard_error);
}
