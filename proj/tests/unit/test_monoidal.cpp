#include <gtest/gtest.h>

#include <fibred/fixtures.hpp>
#include <fibred/monoidal.hpp>

using namespace fibred;

namespace {

std::string first(const ValidationReport& r) { return r.ok() ? "" : r.violations()[0].code + ": " + r.violations()[0].message; }

// Partial maps a -> b counted by hand: each point goes somewhere or nowhere.
std::uint64_t partial_count(int a, int b) {
    std::uint64_t n = 1;
    for (int i = 0; i < a; ++i) n *= static_cast<std::uint64_t>(b + 1);
    return n;
}

}  // namespace

TEST(Models, HomSizesAndRoundTrip) {
    for (const auto& m : {finset_model(3), pset_model(3), f2vect_model(2), opposite_model(pset_model(2))}) {
        for (int a = 0; a < m->object_count(); ++a)
            for (int b = 0; b < m->object_count(); ++b) {
                const auto hom = m->hom(a, b);
                for (std::uint64_t i = 0; i < hom.size(); ++i) {
                    EXPECT_TRUE(m->valid(a, b, hom[i]));
                    EXPECT_EQ(m->index_of(a, b, hom[i]), i);
                }
            }
    }
    EXPECT_EQ(pset_model(3)->hom_size(2, 1), partial_count(2, 1));
    EXPECT_EQ(f2vect_model(2)->hom_size(1, 1), 2u);
    EXPECT_EQ(opposite_model(opposite_model(finset_model(2)))->name(), "finset(2)");
}

TEST(Models, TabulatedAgreesWithSkeleton) {
    auto m = tabulated_model(pset_skeleton(2));
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) EXPECT_EQ(m->hom_size(a, b), partial_count(a, b));
}

TEST(Monoidal, StandardStructuresValidate) {
    for (const auto& m : {finset_cartesian(4), finset_cocartesian(4), pset_cocartesian(4), f2vect_biproduct(3),
                          tabulated_cartesian(boolean_lattice(2)), tabulated_cocartesian(chain_category(3)),
                          opposite_monoidal(finset_cartesian(4))}) {
        auto r = validate_monoidal(m, {2, 4096});
        EXPECT_TRUE(r.ok()) << m.name << " " << first(r);
    }
}

TEST(Monoidal, PentagonMutantCitesTuple) {
    auto m = finset_cartesian(4);
    // twist a(x)(b(x)c) = 2 by the swap at (2,1,1)
    const Arrow swap = {1, 0};
    auto bad = with_associator(m, 2, 1, 1, m.carrier->compose(2, 2, 2, swap, m.associator(2, 1, 1)));
    auto r = validate_monoidal(bad, {2, 4096});
    ASSERT_TRUE(r.has("Pentagon"));
    for (const auto& v : r.violations())
        if (v.code == "Pentagon") EXPECT_EQ(v.cited.size(), 4u);
}

TEST(Closure, FinsetAndHeyting) {
    EXPECT_TRUE(validate_closure(finset_cartesian(4), finset_closure(4), {2, 4096}).ok());
    auto b = tabulated_cartesian(chain_category(2));
    auto cl = tabulated_closure(b);
    EXPECT_TRUE(validate_closure(b, cl, {1, 64}).ok());
    // 1 => 0 is 0 and 0 => x is top
    EXPECT_EQ(cl.hom(1, 0), 0);
    EXPECT_EQ(cl.hom(0, 0), 1);
}

TEST(Tractable, CocartesianEverywhere) {
    for (const auto& m : {finset_cocartesian(4), pset_cocartesian(4), f2vect_biproduct(3),
                          tabulated_cocartesian(boolean_lattice(2))}) {
        auto r = validate_tractable(cotractable_cocartesian(m), {2, 2, 1u << 14});
        EXPECT_TRUE(r.report.ok()) << m.name << " " << first(r.report);
        EXPECT_FALSE(r.counts.empty());
    }
}

TEST(Tractable, PsetComplementNineEqualsNine) {
    auto t = pset_coproducts_tractable(6);
    auto r = validate_tractable(t, {3, 2, 1u << 16});
    EXPECT_TRUE(r.report.ok()) << first(r.report);
    bool found = false;
    for (const auto& [a, b, c, lhs, rhs] : r.counts)
        if (a == 2 && b == 1 && c == 1) {
            EXPECT_EQ(lhs, 9u);
            EXPECT_EQ(rhs, 9u);
            found = true;
        }
    EXPECT_TRUE(found);
    // the counts against an independent formula: sum over f of (c+1)^(|A| - |dom f|)
    for (const auto& [a, b, c, lhs, rhs] : r.counts) EXPECT_EQ(lhs, partial_count(a, b + c));
}

TEST(Tractable, ExtensiveFinset) {
    auto t = tractable_coproducts_extensive(finset_cocartesian(7), 3);
    auto r = validate_tractable(t, {3, 2, 1u << 16});
    EXPECT_TRUE(r.report.ok()) << first(r.report);
    for (const auto& [a, b, c, lhs, rhs] : r.counts)
        if (a == 1 && b == 1 && c == 1) EXPECT_EQ(rhs, 2u);
    // complement of a map through B is empty, of one avoiding B is everything
    EXPECT_EQ(t.data.dbar(2, 1, {0, 0}), 0);
    EXPECT_EQ(t.data.dbar(2, 1, {1, 1}), 2);
}

TEST(Tractable, PsetIsNotExtensive) {
    try {
        tractable_coproducts_extensive(pset_cocartesian(4), 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotExtensive);
    }
}

TEST(Tractable, FromClosure) {
    auto t = cotractable_from_closed(finset_cartesian(4), finset_closure(4), 0);
    auto r = validate_tractable(t, {2, 2, 1u << 14});
    EXPECT_TRUE(r.report.ok()) << first(r.report);
    // I -o A is A
    EXPECT_EQ(t.data.dbar(3, 1, {}), 3);
    auto bl = tabulated_cartesian(chain_category(2));
    auto tb = cotractable_from_closed(bl, tabulated_closure(bl), 0);
    EXPECT_TRUE(validate_tractable(tb, {1, 1, 64}).report.ok());
}

TEST(Tractable, PosetVerdicts) {
    EXPECT_TRUE(poset_tractability(boolean_lattice(2)).tractable);
    EXPECT_TRUE(poset_tractability(chain_category(3)).tractable);
    auto m3 = poset_tractability(m3_lattice());
    EXPECT_FALSE(m3.tractable);
    EXPECT_EQ(m3.witness, "a∧(b∨c) = a ≠ bot = (a∧b)∨(a∧c)");
    EXPECT_FALSE(poset_tractability(n5_lattice()).tractable);
    EXPECT_FALSE(validate_tractable(poset_tractable_data(m3_lattice()), {4, 1, 64}).report.ok());
    EXPECT_TRUE(validate_tractable(poset_tractable_data(boolean_lattice(2)), {3, 1, 64}).report.ok());
    try {
        poset_tractability(discrete_category(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotALattice);
    }
}

TEST(Tractable, ForcesT) {
    std::vector<TractableInstance> all = {tractable_coproducts_extensive(finset_cocartesian(7), 3),
                                          cotractable_cocartesian(finset_cocartesian(6)), pset_coproducts_tractable(6),
                                          tractable_cartesian(finset_cartesian(6))};
    for (const auto& t : all) {
        auto f = tractability_forces_T(t, 3);
        EXPECT_TRUE(f.report.ok()) << t.data.name << " " << first(f.report);
        EXPECT_GE(f.terminal, 0);
        EXPECT_FALSE(f.isos.empty());
    }
}

TEST(Tractable, MutatedPhiRejected) {
    auto t = pset_coproducts_tractable(4);
    auto base = t.data.phi;
    t.data.phi = [base](int a, int b, int c, const Arrow& g) {
        auto r = base(a, b, c, g);
        if (a == 1 && b == 1 && c == 1 && !r.second.empty()) r.second[0] = -1;
        return r;
    };
    EXPECT_FALSE(validate_tractable(t, {2, 2, 1u << 12}).report.ok());
}
