#include <gtest/gtest.h>

#include <fibred/fixtures.hpp>
#include <fibred/search.hpp>

#include "oracles.hpp"

using namespace fibred;

namespace {

FinFunctor diagram(const CatPtr& shape, const CatPtr& c, std::vector<std::pair<std::string, std::string>> objs,
                   std::vector<std::pair<std::string, std::string>> mors) {
    for (int a = 0; a < shape->object_count(); ++a) {
        const std::string id = "id_" + shape->object(a);
        const std::string target = [&] {
            for (auto& [s, t] : objs) {
                if (s == shape->object(a)) return t;
            }
            return std::string();
        }();
        mors.push_back({id, c->morphism(c->identity(c->object_index(target)))});
    }
    return FinFunctor::from_ids(shape, c, objs, mors);
}

}  // namespace

TEST(Search, InitialAndTerminal) {
    auto t = terminal_category();
    EXPECT_EQ(find_initial(*t).object, 0);
    EXPECT_EQ(find_terminal(*t).object, 0);
    try {
        find_initial(*discrete_category(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotFound);
    }
    auto s = finset_skeleton(2);
    EXPECT_EQ(s->object(find_initial(*s).object), "0");
    EXPECT_EQ(s->object(find_terminal(*s).object), "1");
}

TEST(Search, LimitsInFinSet) {
    auto s = finset_skeleton(4);
    auto empty = FinFunctor(discrete_category(0), s, {}, {});
    EXPECT_EQ(s->object(find_limit(empty).apex), "1");
    EXPECT_EQ(s->object(find_colimit(empty).apex), "0");

    auto d2 = discrete_category(2);
    auto pair = diagram(d2, s, {{"0", "2"}, {"1", "2"}}, {});
    Cone prod = find_limit(pair);
    EXPECT_EQ(s->object(prod.apex), "4");
    // the oracle agrees on the number of cones over a product of two 2-element sets from 1
    EXPECT_EQ(oracle::all_cones(pair, s->object_index("1")).size(), 4u);
    EXPECT_EQ(enumerate_cones_at(pair, s->object_index("1")).size(), 4u);
    for (int x = 0; x < s->object_count(); ++x) {
        for (const auto& legs : oracle::all_cones(pair, x)) {
            EXPECT_EQ(factorizations(pair, prod, {x, legs}).size(), 1u);
        }
    }
    Cone coprod = find_colimit(pair);
    EXPECT_EQ(s->object(coprod.apex), "4");
}

TEST(Search, EqualizerOfSwapIsEmpty) {
    auto s = finset_skeleton(3);
    auto pp = shape_parallel_pair().category;
    auto J = diagram(pp, s, {{"0", "2"}, {"1", "2"}}, {{"u", "2>2:01"}, {"v", "2>2:10"}});
    ASSERT_TRUE(validate_functor(J).ok());
    EXPECT_EQ(s->object(find_limit(J).apex), "0");
    EXPECT_EQ(s->object(find_colimit(J).apex), "1");
}

TEST(Search, NoLimitCarriesObstruction) {
    auto d2 = discrete_category(2);
    auto J = FinFunctor(d2, d2, {0, 1}, {0, 1});
    try {
        find_limit(J);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotFound);
        EXPECT_NE(std::string(e.what()).find("cone"), std::string::npos);
    }
}

TEST(Search, IdentityAdjunction) {
    auto s = finset_skeleton(2);
    auto w = find_left_adjoint(identity_functor(s));
    EXPECT_TRUE(w.left == identity_functor(s));
    for (int a = 0; a < s->object_count(); ++a) {
        EXPECT_EQ(w.unit.components[a], s->identity(a));
        EXPECT_EQ(w.counit.components[a], s->identity(a));
    }
}

TEST(Search, LeftAdjointToTerminalFunctorPicksInitial) {
    auto s = finset_skeleton(2);
    auto t = terminal_category();
    auto bang = constant_functor(s, t, 0);
    auto w = find_left_adjoint(bang);
    EXPECT_EQ(s->object(w.left.obj(0)), "0");
    auto r = find_right_adjoint(bang);
    EXPECT_EQ(s->object(r.right.obj(0)), "1");
}

TEST(Search, LeftAdjointOfDiagonalIsDisjointUnion) {
    auto s = finset_skeleton(3);
    auto prod = product_category(s, s);
    std::vector<int> om(s->object_count()), mm(s->morphism_count());
    for (int a = 0; a < s->object_count(); ++a) om[a] = prod.object(a, a);
    for (int f = 0; f < s->morphism_count(); ++f) mm[f] = prod.morphism(f, f);
    FinFunctor delta(s, prod.category, om, mm);
    ASSERT_TRUE(validate_functor(delta).ok());
    // Restrict to pairs whose sum fits: the left adjoint exists only on the bounded part,
    // so check the universal arrow pointwise.
    for (int a = 0; a <= 2; ++a) {
        for (int b = 0; a + b <= 3; ++b) {
            const int c = prod.object(s->object_index(std::to_string(a)), s->object_index(std::to_string(b)));
            auto ua = universal_arrow_from(delta, c);
            ASSERT_TRUE(ua.has_value()) << a << "," << b;
            EXPECT_EQ(s->object(ua->object), std::to_string(a + b));
        }
    }
    auto s2 = finset_skeleton(2);
    auto p2 = product_category(s2, s2);
    std::vector<int> om2(s2->object_count()), mm2(s2->morphism_count());
    for (int a = 0; a < s2->object_count(); ++a) om2[a] = p2.object(a, a);
    for (int f = 0; f < s2->morphism_count(); ++f) mm2[f] = p2.morphism(f, f);
    try {
        find_left_adjoint(FinFunctor(s2, p2.category, om2, mm2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotFound);
    }
}

TEST(Search, AdjointsCorrespondUnderOpposite) {
    auto s = finset_skeleton(2);
    auto t = terminal_category();
    auto bang = constant_functor(s, t, 0);
    auto left = find_left_adjoint(bang);
    auto sop = share(opposite(*s));
    auto top = share(opposite(*t));
    auto bang_op = opposite_functor(bang, sop, top);
    auto right = find_right_adjoint(bang_op);
    EXPECT_EQ(left.left.obj_map(), right.right.obj_map());
    EXPECT_EQ(left.left.mor_map(), right.right.mor_map());
    EXPECT_EQ(left.unit.components, right.counit.components);
    EXPECT_EQ(left.counit.components, right.unit.components);
}

TEST(Search, TriangleValidationCatchesBadUnit) {
    auto s = finset_skeleton(2);
    auto w = find_left_adjoint(identity_functor(s));
    w.unit.components[s->object_index("2")] = s->morphism_index("2>2:10");
    EXPECT_FALSE(validate_adjunction(w).ok());
}

TEST(Search, BijectionFamilies) {
    NaturalFamily fam;
    fam.index = {"x", "y"};
    fam.lhs_size = {2, 2};
    fam.rhs_size = {2, 2};
    fam.phi = {{0, 1}, {0, 1}};
    fam.actions.push_back({0, 1, "s", {1, 0}, {1, 0}});
    EXPECT_TRUE(check_bijection_natural(fam).ok());

    auto bad = fam;
    bad.rhs_size[1] = 3;
    auto r = check_bijection_natural(bad);
    EXPECT_TRUE(r.has("SizeMismatch"));
    EXPECT_EQ(r.violations()[0].cited[0], "y");

    auto unnatural = fam;
    unnatural.phi[1] = {1, 0};
    EXPECT_TRUE(check_bijection_natural(unnatural).has("NotNatural"));
}
