#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "xpoly/constructions.hpp"
#include "xpoly/density.hpp"

using namespace xpoly;
using Catch::Matchers::WithinAbs;

TEST_CASE("rush density") {
    auto r = rush_log2_density(2);
    CHECK(r.t == 1);
    CHECK_THAT(r.log2_density, WithinAbs(std::log2(9.0 / 10.0), 1e-9));
    CHECK(r.conforming); // 2n+1 = 5 is prime

    auto r1 = rush_log2_density(1);
    CHECK(r1.t == 1);
    CHECK_THAT(r1.log2_density, WithinAbs(0.0, 1e-9)); // 3/(1! * 3) = 1

    CHECK_FALSE(rush_log2_density(4).conforming); // 9 composite
    CHECK(rush_density_exact(2, 1) == BigRational(9, 10));
}

TEST_CASE("rush identity restated") {
    // 2^log2v * n! * (2n+1)^t == (2t+1)^n, checked in the exact domain
    for (std::uint64_t n : {1, 2, 3, 7, 12}) {
        auto r = rush_log2_density(n);
        BigRational exact = rush_density_exact(n, r.t);
        CHECK_THAT(r.log2_density,
                   WithinAbs(std::log2(exact.convert_to<double>()), 1e-9));
    }
}

TEST_CASE("rs density") {
    auto r = rs_log2_density(2);
    CHECK(r.t == 2);
    CHECK(r.p == 3);
    CHECK_THAT(r.log2_density, WithinAbs(std::log2(8.0 / 9.0), 1e-9));
    CHECK(rs_density_exact(2, 2, 3) == BigRational(8, 9));

    auto r1 = rs_log2_density(1);
    CHECK(r1.t == 1);
    CHECK(r1.p == 2);
    CHECK_THAT(r1.log2_density, WithinAbs(0.0, 1e-9));
}

TEST_CASE("rs density matches certified designs") {
    for (int n = 2; n <= 8; ++n) {
        const std::uint64_t p = next_prime(n);
        for (int t = 1; t <= std::min(n, 4); ++t) {
            auto basis = basis_from_congruences(rs_lattice(n, t, p).system);
            CHECK_THAT(rs_log2_at(n, t, p),
                       WithinAbs(continuous_log2_density(n, t, basis.det()), 1e-9));
        }
    }
}

TEST_CASE("sidon density") {
    CHECK_THAT(sidon_log2_density(3, 3, BigInt(8)),
               WithinAbs(std::log2(0.75), 1e-9)); // 36/48/6... = (2t)^{n-1}/(n!|G|)
    // degenerate t = 1 with the trivial group: 2^{n-1}/n!
    CHECK_THAT(sidon_log2_density(4, 1, BigInt(1)),
               WithinAbs(3.0 - std::log2(24.0), 1e-9));
    // smaller group order can only help
    for (std::uint64_t n : {3, 5, 9}) {
        auto s = sidon_bound_log2_density(n);
        std::uint64_t q = s.q;
        BigInt full = 1, minus = 1;
        for (int i = 0; i + 1 < s.t; ++i)
            full *= q;
        minus = full - 1;
        if (minus >= 1)
            CHECK(sidon_log2_density(n, s.t, minus) >= sidon_log2_density(n, s.t, full));
    }
}

TEST_CASE("discrete density and asymptote") {
    CHECK(discrete_asymptote(2) == BigRational(2, 5));
    CHECK(discrete_asymptote(1) == BigRational(2, 3));
    CHECK(discrete_asymptote(3) == BigRational(8, 42));
    CHECK_THROWS_AS(discrete_asymptote(0), std::invalid_argument);

    CHECK_THAT(discrete_log2_density(3, 2, BigInt(8)),
               WithinAbs(std::log2(25.0 / 40.0), 1e-9)); // ball(3,2) = 25

    // the bound approaches the asymptote: within 2% at n = 10^4
    const std::uint64_t n = 10000;
    const std::uint64_t q = next_prime_power(n).value;
    for (int t : {2, 3, 4}) {
        BigInt group = 1;
        for (int i = 0; i < t; ++i)
            group *= q;
        double ratio = std::exp2(discrete_log2_density(n, t, group) -
                                 std::log2(discrete_asymptote(t).convert_to<double>()));
        CHECK(std::abs(ratio - 1.0) <= 0.02);
    }
}

TEST_CASE("rs vs rush ratio") {
    auto r = ratio_rs_vs_rush_log2(2);
    CHECK_THAT(r.log2_ratio, WithinAbs(std::log2(80.0 / 81.0), 1e-9));
    CHECK(r.conforming);
    CHECK_FALSE(ratio_rs_vs_rush_log2(4).conforming);
}

TEST_CASE("ratio closed form matches the density difference at matched t") {
    for (std::uint64_t n = 1; n <= 50; ++n) {
        const std::uint64_t p = next_prime(n);
        for (int t = 1; t <= static_cast<int>(n); ++t)
            REQUIRE_THAT(rs_log2_at(n, t, p) - rush_log2_at(n, t),
                         Catch::Matchers::WithinAbs(ratio_closed_form_log2(n, t), 1e-9));
    }
}

TEST_CASE("continuous densities never exceed 1") {
    for (std::uint64_t n = 1; n <= 300; ++n) {
        CHECK(rush_log2_density(n).log2_density <= 1e-12);
        CHECK(rs_log2_density(n).log2_density <= 1e-12);
        CHECK(sidon_bound_log2_density(n).log2_density <= 1e-12);
    }
}

TEST_CASE("exact mode") {
    auto basis48 = BigInt(48);
    CHECK(continuous_density_exact(3, 3, basis48) == BigRational(216, 288)); // = 3/4
    CHECK(continuous_density_exact(3, 3, basis48) == BigRational(3, 4));
    CHECK(discrete_density_exact(3, 2, BigInt(40)) == BigRational(25, 40));
    CHECK_THROWS_AS(rush_density_exact(21, 1), std::invalid_argument);
    CHECK_THROWS_AS(continuous_density_exact(25, 2, basis48), std::invalid_argument);
}

TEST_CASE("log and exact domains agree") {
    for (std::uint64_t n : {2, 5, 11, 20}) {
        auto rs = rs_log2_density(n);
        double via_exact = std::log2(rs_density_exact(n, rs.t, rs.p).convert_to<double>());
        REQUIRE_THAT(rs.log2_density, Catch::Matchers::WithinAbs(via_exact, 1e-9));
    }
}
