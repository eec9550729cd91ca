#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skmaass/bessel.hpp"

using namespace skm;

TEST_CASE("BesselExpr: construction and zero handling") {
    CHECK_THROWS_AS(BesselExpr(4), std::domain_error);
    CHECK_THROWS_AS(BesselExpr(1), std::domain_error);
    BesselExpr e(5);
    CHECK(e.is_zero());
    e.add_term(2, Rat(1, 5));
    CHECK(!e.is_zero());
    CHECK(e.terms().at(2) == Rat(1, 5));
    e.add_term(2, Rat(-1, 5)); /* cancels, zero coefficient not stored */
    CHECK(e.is_zero());
    CHECK_THROWS_AS(e.add_term(-1, Rat(1)), std::domain_error);
}

TEST_CASE("iib_value: recursion at small indices") {
    {
        /* (p, 1, 0) -> B(0,1) + p^-1 B(0,0) */
        BesselExpr v = iib_value(3, 1, 0);
        BesselExpr want(3);
        want.add_term(1, Rat(1));
        want.add_term(0, Rat(1, 3));
        CHECK(v == want);
    }
    for (long m : {0L, 1L, 4L}) {
        /* (p, 0, m) -> B(0,m), single term, coefficient 1 */
        BesselExpr v = iib_value(7, 0, m);
        CHECK(v.terms().size() == 1);
        CHECK(v.terms().at(m) == Rat(1));
    }
    CHECK(iib_value(5, -1, 3).is_zero());
    CHECK(iib_value(5, 2, -1).is_zero());
    {
        /* (p, 2, 1) -> B(0,3) + p^-1 B(0,2) + p^-2 B(0,1) */
        BesselExpr v = iib_value(2, 2, 1);
        BesselExpr want(2);
        want.add_term(3, Rat(1));
        want.add_term(2, Rat(1, 2));
        want.add_term(1, Rat(1, 4));
        CHECK(v == want);
    }
}

TEST_CASE("BesselProductExpr: canonical form and mutation detection") {
    CHECK_THROWS_AS(BesselProductExpr({3, 2}), std::domain_error);  /* not ascending */
    CHECK_THROWS_AS(BesselProductExpr({2, 2}), std::domain_error);  /* repeated */
    CHECK_THROWS_AS(BesselProductExpr({2, 9}), std::domain_error);  /* not prime */

    BesselProductExpr a({2, 3}), b({2, 3});
    a.add_term({1, 0}, Rat(1, 2));
    a.add_term({0, 2}, Rat(3));
    b.add_term({0, 2}, Rat(3));
    b.add_term({1, 0}, Rat(1, 4));
    b.add_term({1, 0}, Rat(1, 4)); /* merged: same total */
    CHECK(a == b);
    CHECK(!(a == BesselProductExpr({2, 3})));

    /* perturbing any single coefficient breaks equality */
    BesselProductExpr c = a;
    c.set_term({0, 2}, Rat(2));
    CHECK(!(a == c));
    c.set_term({0, 2}, Rat(3));
    CHECK(a == c);

    CHECK_THROWS_AS(a.add_term({1}, Rat(1)), std::domain_error);     /* wrong arity */
    CHECK_THROWS_AS(a.add_term({1, -2}, Rat(1)), std::domain_error); /* negative index */
}

TEST_CASE("maass_identity_check: fixed examples") {
    for (long p : {2L, 3L, 5L, 97L})
        CHECK(maass_identity_check(p, 1, 1));
    for (long m : {1L, 2L, 12L})
        for (long n2 : {1L, 2L, 6L})
            CHECK(maass_identity_check(1, m, n2));
    CHECK(maass_identity_check(12, 2, 1));
    CHECK(maass_identity_check(8, 9, 1));
    CHECK(maass_identity_check(36, 6, 1));
}

TEST_CASE("maass_identity_check: N2 strips its primes from both sides") {
    /* support excludes primes of N2, so the check degenerates */
    CHECK(maass_identity_check(4, 1, 2));
    CHECK(maass_identity_check(4, 6, 2));
    CHECK(maass_identity_check(30, 30, 6));
    CHECK(maass_identity_check(8, 1, 8));
    /* pure-N2 content on both arguments: empty support, trivially true */
    CHECK(maass_identity_check(16, 8, 2));
}

TEST_CASE("maass_identity_check: full acceptance range sample") {
    for (long l = 1; l <= 40; ++l)
        for (long m = 1; l * m <= 40; ++m)
            for (long n2 : {1L, 2L, 3L, 12L})
                CHECK(maass_identity_check(l, m, n2));
}

TEST_CASE("bessel_exists_lookup: table cells") {
    using RT = ReprType;
    using TK = TorusKind;

    auto all = [](RT t, TK k) { return bessel_exists_lookup(t, k).all; };
    auto none = [](RT t, TK k) { return bessel_exists_lookup(t, k).none(); };

    /* unconditional rows */
    CHECK(all(RT::I, TK::Split));
    CHECK(all(RT::I, TK::Field));
    CHECK(all(RT::IIIa, TK::Split));
    CHECK(all(RT::IIIa, TK::Field));
    CHECK(all(RT::IIa, TK::Split));
    CHECK(all(RT::IVa, TK::Split));
    CHECK(all(RT::Va, TK::Split));
    CHECK(all(RT::VIa, TK::Split));

    /* empty cells */
    CHECK(none(RT::IVd, TK::Split));
    CHECK(none(RT::IVd, TK::Field));
    CHECK(none(RT::IIIb, TK::Field));
    CHECK(none(RT::IVc, TK::Field));
    CHECK(none(RT::Vd, TK::Split));
    CHECK(none(RT::VIb, TK::Split));
    CHECK(none(RT::VIc, TK::Field));
    CHECK(none(RT::VId, TK::Field));

    /* norm-twist conditions */
    {
        BesselCondition c = bessel_exists_lookup(RT::IIb, TK::Field);
        REQUIRE(c.norm_twists.size() == 1);
        CHECK(c.norm_twists[0] == std::pair{NormChar::ChiSigma, true});
    }
    {
        BesselCondition c = bessel_exists_lookup(RT::IIa, TK::Field);
        REQUIRE(c.norm_twists.size() == 1);
        CHECK(c.norm_twists[0] == std::pair{NormChar::ChiSigma, false});
    }
    {
        BesselCondition c = bessel_exists_lookup(RT::IVb, TK::Field);
        REQUIRE(c.norm_twists.size() == 1);
        CHECK(c.norm_twists[0] == std::pair{NormChar::Sigma, true});
    }
    {
        BesselCondition c = bessel_exists_lookup(RT::IVa, TK::Field);
        REQUIRE(c.norm_twists.size() == 1);
        CHECK(c.norm_twists[0] == std::pair{NormChar::Sigma, false});
    }
    {
        /* Va field: neither sigma nor xi sigma */
        BesselCondition c = bessel_exists_lookup(RT::Va, TK::Field);
        REQUIRE(c.norm_twists.size() == 2);
        CHECK(c.norm_twists[0] == std::pair{NormChar::Sigma, false});
        CHECK(c.norm_twists[1] == std::pair{NormChar::XiSigma, false});
    }
    {
        /* Vb: split sigma twist; field = sigma and != xi sigma */
        BesselCondition cs = bessel_exists_lookup(RT::Vb, TK::Split);
        REQUIRE(cs.norm_twists.size() == 1);
        CHECK(cs.norm_twists[0] == std::pair{NormChar::Sigma, true});
        BesselCondition cf = bessel_exists_lookup(RT::Vb, TK::Field);
        REQUIRE(cf.norm_twists.size() == 2);
        CHECK(cf.norm_twists[0] == std::pair{NormChar::Sigma, true});
        CHECK(cf.norm_twists[1] == std::pair{NormChar::XiSigma, false});
    }
    {
        BesselCondition c = bessel_exists_lookup(RT::VIa, TK::Field);
        REQUIRE(c.norm_twists.size() == 1);
        CHECK(c.norm_twists[0] == std::pair{NormChar::Sigma, false});
    }
    CHECK(bessel_exists_lookup(RT::VIc, TK::Split).norm_twists ==
          std::vector{std::pair{NormChar::Sigma, true}});
    CHECK(bessel_exists_lookup(RT::VId, TK::Split).norm_twists ==
          std::vector{std::pair{NormChar::Sigma, true}});
    CHECK(bessel_exists_lookup(RT::IIb, TK::Split).norm_twists ==
          std::vector{std::pair{NormChar::ChiSigma, true}});
    CHECK(bessel_exists_lookup(RT::IVb, TK::Split).norm_twists ==
          std::vector{std::pair{NormChar::Sigma, true}});
    CHECK(bessel_exists_lookup(RT::Vc, TK::Split).norm_twists ==
          std::vector{std::pair{NormChar::XiSigma, true}});
    CHECK(bessel_exists_lookup(RT::Vc, TK::Field).norm_twists ==
          std::vector{std::pair{NormChar::Sigma, false}, std::pair{NormChar::XiSigma, true}});
    CHECK(bessel_exists_lookup(RT::Vd, TK::Field).norm_twists ==
          std::vector{std::pair{NormChar::Sigma, true}, std::pair{NormChar::XiSigma, true}});
    CHECK(bessel_exists_lookup(RT::VIb, TK::Field).norm_twists ==
          std::vector{std::pair{NormChar::Sigma, true}});

    /* finite pair lists */
    {
        BesselCondition c = bessel_exists_lookup(RT::IIIb, TK::Split);
        REQUIRE(c.allowed_pairs.size() == 2);
        CHECK(c.allowed_pairs[0] == std::pair{SplitChar::ChiSigma, SplitChar::Sigma});
        CHECK(c.allowed_pairs[1] == std::pair{SplitChar::Sigma, SplitChar::ChiSigma});
    }
    {
        BesselCondition c = bessel_exists_lookup(RT::IVc, TK::Split);
        REQUIRE(c.allowed_pairs.size() == 2);
        CHECK(c.allowed_pairs[0] == std::pair{SplitChar::NuSigma, SplitChar::NuInvSigma});
        CHECK(c.allowed_pairs[1] == std::pair{SplitChar::NuInvSigma, SplitChar::NuSigma});
    }
}

TEST_CASE("repr_type round trip") {
    for (ReprType t : {ReprType::I, ReprType::IIa, ReprType::IIb, ReprType::IIIa, ReprType::IIIb,
                       ReprType::IVa, ReprType::IVb, ReprType::IVc, ReprType::IVd, ReprType::Va,
                       ReprType::Vb, ReprType::Vc, ReprType::Vd, ReprType::VIa, ReprType::VIb,
                       ReprType::VIc, ReprType::VId})
        CHECK(repr_type_from_string(to_string(t)) == t);
    CHECK_THROWS_AS(repr_type_from_string("VIe"), std::domain_error);
    CHECK_THROWS_AS(repr_type_from_string(""), std::domain_error);
}
