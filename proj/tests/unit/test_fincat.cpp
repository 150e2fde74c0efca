#include <gtest/gtest.h>

#include <fibred/fincat.hpp>
#include <fibred/fixtures.hpp>

#include "oracles.hpp"

using namespace fibred;

namespace {

FinCat walking_arrow_raw() {
    return FinCat({"0", "1"}, {{"id0", "0", "0"}, {"id1", "1", "1"}, {"a", "0", "1"}},
                  {{"0", "id0"}, {"1", "id1"}},
                  {{"id0", "id0", "id0"}, {"id1", "id1", "id1"}, {"a", "id0", "a"}, {"id1", "a", "a"}});
}

}  // namespace

TEST(FinCat, TerminalAndParallelPairAreValid) {
    EXPECT_TRUE(validate_category(*terminal_category()).ok());
    EXPECT_TRUE(validate_category(*shape_parallel_pair().category).ok());
    EXPECT_EQ(shape_parallel_pair().category->morphism_count(), 4);
}

TEST(FinCat, RawTablesRoundTripThroughLookup) {
    FinCat c = walking_arrow_raw();
    EXPECT_TRUE(validate_category(c).ok());
    EXPECT_TRUE(oracle::axioms_hold(c));
    const int a = c.morphism_index("a");
    EXPECT_EQ(c.object(c.dom(a)), "0");
    EXPECT_EQ(c.hom(0, 1).size(), 1u);
    EXPECT_EQ(c.hom(1, 0).size(), 0u);
}

TEST(FinCat, DuplicateAndDanglingIdsThrow) {
    try {
        FinCat({"0", "0"}, {}, {}, {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
    }
    try {
        FinCat({"0"}, {{"f", "0", "9"}}, {}, {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DanglingReference);
    }
}

TEST(FinCat, MutatedCellIsCited) {
    auto c = finset_skeleton(2);
    ASSERT_TRUE(validate_category(*c).ok());
    // Swap the composite of swap o swap from the identity to the swap itself.
    const int sw = c->morphism_index("2>2:10");
    FinCat bad = c->with_cell(sw, sw, sw);
    auto r = validate_category(bad);
    EXPECT_FALSE(r.ok());
    EXPECT_FALSE(oracle::axioms_hold(bad));
    bool cited = false;
    for (const auto& v : r.violations()) {
        for (const auto& id : v.cited) cited |= id == "2>2:10";
    }
    EXPECT_TRUE(cited);
}

TEST(FinCat, SkeletaSatisfyAxiomsByTripleLoop) {
    for (int n = 0; n <= 3; ++n) {
        EXPECT_TRUE(oracle::axioms_hold(*finset_skeleton(n))) << n;
        EXPECT_TRUE(oracle::axioms_hold(*pset_skeleton(n))) << n;
    }
    // |Set(a,b)| = b^a summed over 0..2
    EXPECT_EQ(finset_skeleton(2)->morphism_count(), 1 + 1 + 1 + 0 + 1 + 2 + 0 + 1 + 4);
    // |pSet(a,b)| = (b+1)^a
    EXPECT_EQ(pset_skeleton(2)->morphism_count(), 1 + 1 + 1 + 1 + 2 + 3 + 1 + 4 + 9);
}

TEST(FinCat, OppositeIsAnInvolution) {
    auto c = finset_skeleton(2);
    FinCat op = opposite(*c);
    EXPECT_TRUE(validate_category(op).ok());
    EXPECT_TRUE(opposite(op) == *c);
    const int sw = c->morphism_index("2>2:10");
    const int f = c->morphism_index("1>2:0");
    EXPECT_EQ(op.compose(f, sw), c->compose(sw, f));
}

TEST(FinCat, OppositeOfWalkingArrowReverses) {
    auto w = shape_walking_arrow().category;
    FinCat op = opposite(*w);
    const int a = op.morphism_index("a");
    EXPECT_EQ(op.object(op.dom(a)), "1");
    EXPECT_EQ(op.object(op.cod(a)), "0");
    auto t = terminal_category();
    EXPECT_TRUE(opposite(*t) == *t);
}

TEST(FinCat, ProductCategoryCounts) {
    auto w = shape_walking_arrow().category;
    auto sq = product_category(w, w);
    EXPECT_EQ(sq.category->object_count(), 4);
    EXPECT_EQ(sq.category->morphism_count(), 9);
    EXPECT_TRUE(validate_category(*sq.category).ok());
    EXPECT_TRUE(validate_functor(sq.first).ok());
    EXPECT_TRUE(validate_functor(sq.second).ok());

    auto d6 = product_category(discrete_category(2), discrete_category(3));
    EXPECT_TRUE(find_isomorphism(d6.category, discrete_category(6)).has_value());

    auto c = finset_skeleton(2);
    auto one_c = product_category(terminal_category(), c);
    EXPECT_TRUE(find_isomorphism(one_c.category, c).has_value());
}

TEST(FinCat, CommaCategories) {
    auto t = terminal_category();
    auto id1 = identity_functor(t);
    auto comma = comma_category(id1, id1);
    EXPECT_EQ(comma.category->object_count(), 1);
    EXPECT_EQ(comma.category->morphism_count(), 1);

    auto w = shape_walking_arrow().category;
    auto x = constant_functor(t, w, w->object_index("0"));
    auto under = comma_category(x, identity_functor(w));
    EXPECT_EQ(under.category->object_count(), 2);
    EXPECT_TRUE(validate_functor(under.left).ok());
    EXPECT_TRUE(validate_functor(under.right).ok());

    auto d2 = discrete_category(2);
    auto c2 = comma_category(identity_functor(d2), identity_functor(d2));
    EXPECT_TRUE(find_isomorphism(c2.category, d2).has_value());
}

TEST(FinCat, FunctorValidationAndMutation) {
    auto c = finset_skeleton(2);
    EXPECT_TRUE(validate_functor(identity_functor(c)).ok());
    EXPECT_TRUE(validate_functor(constant_functor(c, c, 1)).ok());
    auto id = identity_functor(c);
    const int sw = c->morphism_index("2>2:10");
    auto bad = id.with_mor(sw, c->identity(c->object_index("2")));
    auto r = validate_functor(bad);
    EXPECT_FALSE(r.ok());
    EXPECT_TRUE(r.has("FunctorComposition"));
}

TEST(FinCat, NaturalTransformationMutation) {
    auto c = finset_skeleton(2);
    auto id = identity_functor(c);
    FinNatTrans alpha = identity_transformation(id);
    EXPECT_TRUE(validate_nat_trans(alpha).ok());
    const int two = c->object_index("2");
    alpha.components[two] = c->morphism_index("2>2:10");
    auto r = validate_nat_trans(alpha);
    EXPECT_TRUE(r.has("Naturality"));
}

TEST(FinCat, IsomorphismSearch) {
    auto w = shape_walking_arrow().category;
    auto op = share(opposite(*w));
    auto iso = find_isomorphism(w, op);
    ASSERT_TRUE(iso.has_value());
    EXPECT_TRUE(is_isomorphism(*iso));
    EXPECT_FALSE(find_isomorphism(w, discrete_category(2)).has_value());
    EXPECT_THROW(find_isomorphism(discrete_category(9), discrete_category(9)), Error);
}

TEST(FinCat, ArrowCategoryOfWalkingArrow) {
    auto w = shape_walking_arrow().category;
    auto arr = arrow_category(w);
    EXPECT_EQ(arr.category->object_count(), 3);
    EXPECT_TRUE(oracle::axioms_hold(*arr.category));
    EXPECT_TRUE(validate_functor(arr.domain).ok());
    EXPECT_TRUE(validate_functor(arr.codomain).ok());
}

TEST(FinCat, PosetLattices) {
    EXPECT_TRUE(oracle::axioms_hold(*m3_lattice()));
    EXPECT_TRUE(oracle::axioms_hold(*n5_lattice()));
    EXPECT_EQ(boolean_lattice(2)->object_count(), 4);
    EXPECT_EQ(boolean_lattice(2)->morphism_count(), 9);
    EXPECT_EQ(chain_category(3)->morphism_count(), 6);
}
