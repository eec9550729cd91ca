#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skmaass/theta.hpp"

#include <cmath>

using namespace skm;

namespace {

Int coeff_at(const ThetaSeries& s, long a8, long b8, long c8) {
    auto it = s.terms().find(ThetaSeries::pack(a8, b8, c8));
    return it == s.terms().end() ? Int(0) : it->second;
}

/* quadratic-time reference product, used to pin the fast kernels */
ThetaSeries naive_mul(const ThetaSeries& x, const ThetaSeries& y, long bound8) {
    ThetaSeries out(bound8);
    for (const auto& [kx, vx] : x.terms())
        for (const auto& [ky, vy] : y.terms()) {
            std::uint64_t k = ThetaSeries::combine(kx, ky);
            if (ThetaSeries::trace8(k) > bound8)
                continue;
            long a8, b8, c8;
            ThetaSeries::unpack(k, a8, b8, c8);
            out.add(a8, b8, c8, vx * vy);
        }
    out.prune_zeros();
    return out;
}

} // namespace

TEST_CASE("even_characteristics: exactly the 10 even ones") {
    auto chars = even_characteristics();
    CHECK(chars.size() == 10);
    for (const auto& ch : chars) {
        CHECK(ch.is_even());
        for (int x : {ch.a[0], ch.a[1], ch.b[0], ch.b[1]})
            CHECK((x == 0 || x == 1));
    }
    /* duplicate-free */
    for (std::size_t i = 0; i < chars.size(); ++i)
        for (std::size_t j = i + 1; j < chars.size(); ++j)
            CHECK(!(chars[i] == chars[j]));
}

TEST_CASE("pack/unpack/trace/combine roundtrip") {
    const long samples[][3] = {{0, 0, 0},   {1, 2, 1},    {4, -8, 4},   {100, -37, 250},
                               {524287, 0, 0}, {0, 0, 524287}, {9, 12, 25}};
    for (const auto& t : samples) {
        std::uint64_t k = ThetaSeries::pack(t[0], t[1], t[2]);
        long a8, b8, c8;
        ThetaSeries::unpack(k, a8, b8, c8);
        CHECK(a8 == t[0]);
        CHECK(b8 == t[1]);
        CHECK(c8 == t[2]);
        CHECK(ThetaSeries::trace8(k) == t[0] + t[2]);
    }
    CHECK(ThetaSeries::combine(ThetaSeries::pack(1, 2, 1), ThetaSeries::pack(4, -8, 4)) ==
          ThetaSeries::pack(5, -6, 5));
    CHECK(ThetaSeries::combine(ThetaSeries::pack(0, 0, 0), ThetaSeries::pack(9, 12, 25)) ==
          ThetaSeries::pack(9, 12, 25));
}

TEST_CASE("ThetaSeries: bounds and positive semidefinite guard") {
    CHECK_THROWS_AS(ThetaSeries(-1), std::domain_error);
    CHECK_THROWS_AS(ThetaSeries(ThetaSeries::max_trace8() + 1), std::domain_error);
    ThetaSeries s(16);
    s.add(1, 2, 1, 1);       /* rank 1, ok */
    s.add(4, 0, 4, -1);      /* definite, ok */
    CHECK_THROWS_AS(s.add(1, 3, 1, Int(1)), std::domain_error);  /* indefinite */
    CHECK_THROWS_AS(s.add(-1, 0, 1, Int(1)), std::domain_error); /* negative diagonal */
    CHECK_THROWS_AS(s.add(9, 0, 9, Int(1)), std::domain_error);  /* trace over bound */
    s.add(1, 2, 1, -1); /* cancels the first term */
    s.prune_zeros();
    CHECK(s.size() == 1);
    CHECK(ThetaSeries::one(8).size() == 1);
}

TEST_CASE("theta_constant: fixed small expansions") {
    /* characteristic 0: (u, v) runs over even vectors, +-(u, v) share a key */
    ThetaSeries t00 = theta_constant(ThetaChar{{0, 0}, {0, 0}}, 2);
    CHECK(coeff_at(t00, 0, 0, 0) == 1);
    CHECK(coeff_at(t00, 4, 0, 0) == 2);  /* (+-2, 0) */
    CHECK(coeff_at(t00, 0, 0, 4) == 2);
    CHECK(coeff_at(t00, 4, 8, 4) == 2);  /* +-(2, 2) */
    CHECK(coeff_at(t00, 4, -8, 4) == 2); /* +-(2, -2) */

    /* b = (1,1) weights (u, v) = (2s, 2t) by (-1)^(s+t) */
    ThetaSeries t01 = theta_constant(ThetaChar{{0, 0}, {1, 1}}, 2);
    CHECK(coeff_at(t01, 0, 0, 0) == 1);
    CHECK(coeff_at(t01, 4, 0, 0) == -2);
    CHECK(coeff_at(t01, 4, 8, 4) == 2); /* (-1)^(1+1) twice */

    /* a = (1,1): odd (u, v), no constant term */
    ThetaSeries t10 = theta_constant(ThetaChar{{1, 1}, {0, 0}}, 2);
    CHECK(coeff_at(t10, 0, 0, 0) == 0);
    CHECK(coeff_at(t10, 1, 2, 1) == 2);  /* +-(1, 1) */
    CHECK(coeff_at(t10, 1, -2, 1) == 2); /* +-(1, -1) */
    CHECK(coeff_at(t10, 9, 6, 1) == 2);  /* +-(3, 1) */

    /* full even characteristic: base sign -1, and b twists within a key pair */
    ThetaSeries t11 = theta_constant(ThetaChar{{1, 1}, {1, 1}}, 2);
    CHECK(coeff_at(t11, 1, 2, 1) == -2);
    CHECK(coeff_at(t11, 1, -2, 1) == 2);

    CHECK_THROWS_AS(theta_constant(ThetaChar{{1, 0}, {1, 0}}, 2), std::domain_error);
    CHECK_THROWS_AS(theta_constant(ThetaChar{{2, 0}, {0, 0}}, 2), std::domain_error);
}

TEST_CASE("theta_constant: exponents stay on the lattice of the characteristic") {
    for (const auto& ch : even_characteristics()) {
        ThetaSeries s = theta_constant(ch, 3);
        CHECK(!s.terms().empty());
        for (const auto& [k, coeff] : s.terms()) {
            CHECK(coeff != 0);
            long a8, b8, c8;
            ThetaSeries::unpack(k, a8, b8, c8);
            /* a8 = u^2, c8 = v^2, b8 = 2uv with u, v = a mod 2 */
            long u = long(std::sqrt(double(a8)) + 0.5), v = long(std::sqrt(double(c8)) + 0.5);
            CHECK(u * u == a8);
            CHECK(v * v == c8);
            CHECK((b8 == 2 * u * v || b8 == -2 * u * v));
            CHECK((u & 1) == ch.a[0]);
            CHECK((v & 1) == ch.a[1]);
        }
    }
}

TEST_CASE("theta multiplication: serial kernel equals naive reference") {
    auto chars = even_characteristics();
    const long bound8 = 24;
    ThetaSeries x = theta_constant(chars[0], 3);
    ThetaSeries y = theta_constant(chars[7], 3);
    ThetaSeries ref = naive_mul(x, y, bound8);
    ThetaSeries fast = theta_mul_serial(x, y, bound8);
    CHECK(fast.same_terms(ref));

    /* squares with sign structure */
    ThetaSeries z = theta_constant(chars[9], 3);
    CHECK(theta_mul_serial(z, z, bound8).same_terms(naive_mul(z, z, bound8)));
}

TEST_CASE("theta multiplication: parallel kernel is bit-identical to serial") {
    auto chars = even_characteristics();
    const long bound8 = 48;
    ThetaSeries prod_s = ThetaSeries::one(bound8);
    ThetaSeries prod_p = ThetaSeries::one(bound8);
    for (int i : {0, 3, 7, 9}) {
        ThetaSeries t = theta_constant(chars[i], 6);
        prod_s = theta_mul_serial(prod_s, t, bound8);
        prod_p = theta_mul_parallel(prod_p, t, bound8);
        CHECK(prod_p.same_terms(prod_s));
    }
    CHECK(theta_mul(prod_s, prod_s, bound8).same_terms(theta_mul_serial(prod_s, prod_s, bound8)));
}

TEST_CASE("theta multiplication: truncation is exact below the bound") {
    /* computing at a generous bound and re-truncating must agree with the
     * directly truncated product on every kept term */
    auto chars = even_characteristics();
    ThetaSeries x = theta_constant(chars[2], 6);
    ThetaSeries y = theta_constant(chars[5], 6);
    ThetaSeries big = theta_mul(x, y, 48);
    ThetaSeries small = theta_mul(x, y, 24);
    for (const auto& [k, v] : small.terms()) {
        auto it = big.terms().find(k);
        REQUIRE(it != big.terms().end());
        CHECK(it->second == v);
    }
    for (const auto& [k, v] : big.terms()) {
        if (ThetaSeries::trace8(k) > 24)
            continue;
        auto it = small.terms().find(k);
        REQUIRE(it != small.terms().end());
        CHECK(it->second == v);
    }
}
