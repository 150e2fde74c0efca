#include <gtest/gtest.h>

#include <fibred/fixtures.hpp>
#include <fibred/indexed.hpp>
#include <fibred/samples.hpp>

#include "indexed_oracles.hpp"
#include "oracles.hpp"

using namespace fibred;

namespace {

IndexedCat discrete_base(const CatPtr& a, const CatPtr& b) {
    return make_strict(discrete_category(2), {a, b}, {identity_functor(a), identity_functor(b)});
}

}  // namespace

TEST(Indexed, FamValidatesAndIsStrict) {
    auto L = fam_over_finset(2, discrete_category(2));
    EXPECT_TRUE(validate_indexed(L).ok());
    EXPECT_TRUE(L.is_strict());
    EXPECT_EQ(L.fibre(L.base->object_index("2")).object_count(), 4);
}

TEST(Indexed, SwapFixtureIsPseudo) {
    auto L = pseudo_swap_fixture();
    auto r = validate_indexed(L);
    EXPECT_TRUE(r.ok()) << (r.ok() ? "" : r.violations()[0].message);
    EXPECT_FALSE(L.is_strict());
    const int a = L.base->object_index("0");
    EXPECT_NE(L.eta(a, 0), L.fibre(a).identity(0));
}

TEST(Indexed, MutatedCompositorRejected) {
    auto L = pseudo_swap_fixture();
    ASSERT_FALSE(L.compositor.empty());
    auto& [key, comps] = *L.compositor.begin();
    const auto& fib = L.fibre(L.base->dom(key.first));
    // replace the first component with the identity on its domain
    comps[0] = fib.identity(fib.dom(comps[0]));
    auto r = validate_indexed(L);
    EXPECT_FALSE(r.ok());
}

TEST(Indexed, MutatedUnitorRejected) {
    auto L = pseudo_swap_fixture();
    const int a = L.base->object_index("0");
    ASSERT_FALSE(L.unitor[a].empty());
    L.unitor[a] = {};
    auto r = validate_indexed(L);
    EXPECT_FALSE(r.ok());
    EXPECT_TRUE(r.has("UnitorEndpoints") || r.has("UnitorCoherence") || r.has("CompositorCoherence"));
}

TEST(Indexed, RestrictAlongIdentityIsNoop) {
    for (const auto& L : {fam_over_finset(1, shape_walking_arrow().category), pseudo_swap_fixture()}) {
        auto R = restrict(L, identity_functor(L.base));
        ASSERT_EQ(R.fibres.size(), L.fibres.size());
        for (std::size_t a = 0; a < L.fibres.size(); ++a) EXPECT_EQ(*R.fibres[a], *L.fibres[a]);
        for (std::size_t f = 0; f < L.reindex.size(); ++f) EXPECT_EQ(R.reindex[f], L.reindex[f]);
        const auto& C = *L.base;
        for (int a = 0; a < C.object_count(); ++a)
            for (int x = 0; x < L.fibre(a).object_count(); ++x) EXPECT_EQ(R.eta(a, x), L.eta(a, x));
        for (int f = 0; f < C.morphism_count(); ++f)
            for (int g : C.out(C.cod(f)))
                for (int z = 0; z < L.fibre(C.cod(g)).object_count(); ++z) EXPECT_EQ(R.mu(f, g, z), L.mu(f, g, z));
    }
}

TEST(Indexed, SectionsOverDiscreteBaseAreProduct) {
    auto a = shape_walking_arrow().category;
    auto b = codiscrete_category(2);
    auto S = sections_category(discrete_base(a, b));
    auto P = product_category(a, b);
    EXPECT_TRUE(find_isomorphism(S.category, P.category).has_value());
}

TEST(Indexed, SectionCountsMatchBruteForce) {
    for (const auto& fx : random_fixtures(7, 15)) {
        auto S = sections_category(fx.L);
        EXPECT_EQ(static_cast<long>(S.objects.size()), oracle::section_count(fx.L)) << fx.name;
        EXPECT_TRUE(oracle::axioms_hold(*S.category)) << fx.name;
        for (const auto& s : S.objects) EXPECT_TRUE(validate_section(fx.L, s).ok()) << fx.name;
    }
}

TEST(Indexed, SwapFixtureSections) {
    auto L = pseudo_swap_fixture();
    // a section picks X0, X1 and the unique xi at each arrow: four of them
    EXPECT_EQ(oracle::section_count(L), 4);
    EXPECT_EQ(sections_category(L).objects.size(), 4u);
}

TEST(Indexed, RandomFixturesValidate) {
    for (const auto& fx : random_fixtures(11, 25)) {
        auto r = validate_indexed(fx.L);
        EXPECT_TRUE(r.ok()) << fx.name << ": " << (r.ok() ? "" : r.violations()[0].message);
        for (const auto& f : fx.L.fibres) {
            EXPECT_LE(f->object_count(), 4);
            EXPECT_LE(f->morphism_count(), 8);
        }
        EXPECT_LE(fx.L.base->morphism_count(), 8);
    }
}

TEST(Indexed, PowerCategory) {
    auto d = shape_walking_arrow().category;
    EXPECT_EQ(power_category(d, 0)->object_count(), 1);
    auto sq = power_category(d, 2);
    EXPECT_TRUE(find_isomorphism(sq, product_category(d, d).category).has_value());
}

TEST(Indexed, RepresentableFibresAreHomSets) {
    auto C = finset_skeleton(2);
    const int c = C->object_index("2");
    auto L = representable_indexed(C, c);
    EXPECT_TRUE(validate_indexed(L).ok());
    for (int a = 0; a < C->object_count(); ++a) EXPECT_EQ(L.fibre(a).object_count(), oracle::hom_count(*C, a, c));
}

TEST(Indexed, TransportByIdentityKeepsData) {
    auto L = fam_over_finset(1, discrete_category(2));
    std::vector<std::vector<int>> theta(L.base->morphism_count());
    auto T = transport(L, L.reindex, theta);
    EXPECT_TRUE(T.is_strict());
    EXPECT_TRUE(validate_indexed(T).ok());
}
