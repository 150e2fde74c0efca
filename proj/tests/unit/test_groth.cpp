#include <gtest/gtest.h>

#include <fibred/fixtures.hpp>
#include <fibred/groth.hpp>
#include <fibred/samples.hpp>

#include "indexed_oracles.hpp"
#include "oracles.hpp"

using namespace fibred;

TEST(Groth, TerminalBaseGivesFibre) {
    auto d = codiscrete_category(3);
    auto L = make_strict(terminal_category(), {d}, {identity_functor(d)});
    auto G = grothendieck(L);
    EXPECT_TRUE(find_isomorphism(G.total, d).has_value());
}

TEST(Groth, CountsAndAxioms) {
    for (const auto& fx : random_fixtures(3, 20)) {
        auto G = grothendieck(fx.L);
        long objs = 0;
        for (const auto& f : fx.L.fibres) objs += f->object_count();
        EXPECT_EQ(G.total->object_count(), objs) << fx.name;
        EXPECT_EQ(G.total->morphism_count(), oracle::total_morphism_count(fx.L)) << fx.name;
        EXPECT_TRUE(oracle::axioms_hold(*G.total)) << fx.name;
        EXPECT_TRUE(validate_functor(G.projection).ok()) << fx.name;
    }
}

TEST(Groth, ProjectionIsFibration) {
    for (const auto& fx : random_fixtures(5, 10)) {
        auto G = grothendieck(fx.L);
        auto res = verify_fibration(G.projection);
        EXPECT_TRUE(res.ok) << fx.name << ": " << res.failure;
        const auto& C = *fx.L.base;
        for (int e = 0; e < G.total->object_count(); ++e) {
            for (int f : C.in(G.projection.obj(e))) EXPECT_TRUE(is_cartesian(G.projection, canonical_lift(G, f, e)));
        }
    }
}

TEST(Groth, VerticalCartesianIffIso) {
    auto L = fam_over_finset(1, shape_walking_arrow().category);
    auto G = grothendieck(L);
    int checked = 0;
    for (int m = 0; m < G.total->morphism_count(); ++m) {
        const auto [f, u] = G.morphism_pair[m];
        if (!L.base->is_identity(f)) continue;
        const auto& fib = L.fibre(L.base->dom(f));
        EXPECT_EQ(is_cartesian(G.projection, m), is_iso(fib, u)) << G.total->morphism(m);
        ++checked;
    }
    EXPECT_GT(checked, 0);
    std::string why;
    // the non-identity vertical arrow over 1
    const int a = L.base->object_index("1");
    const auto& fib = L.fibre(a);
    int nonid = -1;
    for (int u = 0; u < fib.morphism_count(); ++u)
        if (!fib.is_identity(u)) nonid = u;
    ASSERT_GE(nonid, 0);
    const int m = G.morphism(L.base->identity(a), nonid, fib.cod(nonid));
    EXPECT_FALSE(is_cartesian(G.projection, m, &why));
    EXPECT_FALSE(why.empty());
}

TEST(Groth, DomainFunctorIsFibration) {
    for (const auto& c : {finset_skeleton(1), chain_category(3), shape_cospan().category}) {
        auto A = arrow_category(c);
        EXPECT_TRUE(verify_fibration(A.domain).ok);
    }
}

TEST(Groth, CodomainFibrationNeedsPullbacks) {
    EXPECT_TRUE(verify_fibration(arrow_category(chain_category(3)).codomain).ok);
    EXPECT_TRUE(verify_fibration(arrow_category(boolean_lattice(2)).codomain).ok);
    auto res = verify_fibration(arrow_category(shape_cospan().category).codomain);
    EXPECT_FALSE(res.ok);
    EXPECT_NE(res.failure.find("cartesian"), std::string::npos);
}

TEST(Groth, RoundTripStrictIsSplit) {
    for (const auto& L : {fam_over_finset(2, discrete_category(2)), representable_indexed(finset_skeleton(2), 2)}) {
        auto rt = round_trip(L);
        EXPECT_TRUE(rt.report.ok()) << (rt.report.ok() ? "" : rt.report.violations()[0].message);
        EXPECT_TRUE(rt.split);
    }
}

TEST(Groth, RoundTripPseudoNotSplit) {
    auto rt = round_trip(pseudo_swap_fixture());
    EXPECT_TRUE(rt.report.ok()) << (rt.report.ok() ? "" : rt.report.violations()[0].message);
    EXPECT_FALSE(rt.split);
    EXPECT_FALSE(rt.recovered.is_strict());
}

TEST(Groth, RoundTripRandom) {
    for (const auto& fx : random_fixtures(13, 20)) {
        auto rt = round_trip(fx.L);
        EXPECT_TRUE(rt.report.ok()) << fx.name << ": " << (rt.report.ok() ? "" : rt.report.violations()[0].message);
    }
}

TEST(Groth, CleavageFromFibrationRecoversDomainFibres) {
    auto A = arrow_category(chain_category(3));
    auto res = verify_fibration(A.domain);
    ASSERT_TRUE(res.ok);
    auto L = indexed_from_fibration(res.cleavage);
    EXPECT_TRUE(validate_indexed(L).ok());
    // fibre over i is the coslice i/C of a chain: 3 - i objects
    for (int a = 0; a < 3; ++a) EXPECT_EQ(L.fibre(a).object_count(), 3 - a);
}

TEST(Groth, Bifibration) {
    EXPECT_TRUE(bifibration_check(fam_over_finset(2, terminal_category())).report.ok());
    // reindexing along 0 -> 1 lands in the terminal fibre; d2 has no initial object
    auto r = bifibration_check(fam_over_finset(1, discrete_category(2)));
    EXPECT_FALSE(r.report.ok());
}
