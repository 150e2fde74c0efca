#include <gtest/gtest.h>

#include <algorithm>

#include <fibred/dialectica.hpp>
#include <fibred/fixtures.hpp>

using namespace fibred;

namespace {

std::string first(const ValidationReport& r) { return r.ok() ? "" : r.violations()[0].code + ": " + r.violations()[0].message; }

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// Dial hom (U,X) -> (V,Y): a map U -> V and a map U x Y -> X
std::uint64_t dial_hom(int u, int x, int v, int y) { return ipow(v, u) * ipow(x, u * y); }

}  // namespace

TEST(DialPf, GrothHomCountsMatchFormula) {
    auto d = build_dial_pf(2);
    const auto& G = d.groth.G;
    const FinCat& T = *G.total;
    // |Hom((1,2),(2,1))| = 2 maps 1 -> 2 times |Set(1 x 1, 2)| = 4
    EXPECT_EQ(T.hom(G.object(1, 2), G.object(2, 1)).size(), 4u);
    for (int u = 0; u <= 2; ++u)
        for (int x = 0; x <= 2; ++x)
            for (int v = 0; v <= 2; ++v)
                for (int y = 0; y <= 2; ++y) {
                    EXPECT_EQ(T.hom(G.object(u, x), G.object(v, y)).size(), dial_hom(u, x, v, y));
                    if (u > 0)
                        EXPECT_EQ(fam_hom_count(d.fam, d.object(u, x), d.object(v, y)), dial_hom(u, x, v, y));
                }
}

TEST(DialPf, TensorIsProductOnBothSides) {
    auto d = build_dial_pf(2);
    const auto& G = d.groth.G;
    const int t = groth_tensor(d.groth, G.object(1, 2), G.object(2, 1));
    EXPECT_EQ(G.object_pair[t], std::make_pair(2, 2));
    EXPECT_EQ(fam_tensor(d.fam, d.object(1, 2), d.object(2, 1)), d.object(2, 2));
}

TEST(DialPf, HomSixtyFour) {
    auto d = build_dial_pf(2);
    auto h = dialectica_hom(d.fam, d.object(2, 2), d.object(2, 2));
    EXPECT_EQ(h.object.size(), 64u);  // (2 => 2) x (2 x 2 => 2) = 4 * 16
    EXPECT_TRUE(std::all_of(h.object.begin(), h.object.end(), [](int s) { return s == 4; }));
    EXPECT_EQ(fam_hom_count(d.fam, FamObj{1}, h.object), 64u);
    EXPECT_EQ(fam_hom_count(d.fam, d.object(2, 2), d.object(2, 2)), 64u);
    EXPECT_EQ(h.assembly.pi_sigma_count, 64u);
    auto perm = h.assembly.pi_sigma_to_index;
    std::sort(perm.begin(), perm.end());
    for (int i = 0; i < 64; ++i) EXPECT_EQ(perm[i], i);
    // the general shape ((U => V) x (U x Y => X), U x Y)
    for (int u = 1; u <= 2; ++u)
        for (int x = 0; x <= 2; ++x)
            for (int v = 0; v <= 2; ++v)
                for (int y = 0; y <= 2; ++y) {
                    auto e = dialectica_hom(d.fam, d.object(u, x), d.object(v, y));
                    EXPECT_EQ(e.object.size(), dial_hom(u, x, v, y));
                    for (int s : e.object) EXPECT_EQ(s, u * y);
                }
    EXPECT_EQ(dialectica_hom(d.fam, FamObj{1}, FamObj{1}).object, FamObj{1});
}

TEST(DialPf, ClosureExhaustive) {
    auto d = build_dial_pf(2);
    std::vector<FamObj> objs;
    for (int u = 1; u <= 2; ++u)
        for (int x = 0; x <= 2; ++x) objs.push_back(d.object(u, x));
    int checked = 0, natural = 0;
    for (const auto& a : objs)
        for (const auto& w : objs)
            for (const auto& b : objs) {
                auto r = verify_closure(d.fam, a, w, b, {d.object(1, 1), d.object(1, 2)}, {1u << 14, 64});
                if (r.report.has("OutOfBound")) continue;
                EXPECT_TRUE(r.report.ok()) << first(r.report);
                EXPECT_EQ(r.lhs, r.rhs);
                if (r.naturality_checked > 0) ++natural;
                ++checked;
            }
    EXPECT_GT(checked, 100);
    EXPECT_GT(natural, 50);
}

TEST(DialPf, MutatedDbarBreaksTheBijection) {
    auto d = build_dial_pf(2);
    auto base = d.fam.tractable.data.dbar;
    d.fam.tractable.data.dbar = [base](int a, int b, const Arrow& f) {
        const int r = base(a, b, f);
        return a == 2 && b == 2 ? r - 1 : r;
    };
    auto r = verify_closure(d.fam, d.object(1, 2), d.object(1, 2), d.object(1, 2));
    EXPECT_FALSE(r.report.ok());
    ASSERT_FALSE(r.report.violations().empty());
    EXPECT_EQ(r.report.violations()[0].cited.size(), 3u);
}

TEST(FamFlavors, BiproductIndexIsLinearMaps) {
    auto f = biproduct_fam(2);
    auto h = dialectica_hom(f, FamObj{1}, FamObj{1});
    EXPECT_EQ(h.object.size(), 2u);  // F2-linear maps 1 -> 1
    EXPECT_TRUE(compare_exponentials(f, FamObj{1}, FamObj{1}).ok());
    EXPECT_TRUE(compare_exponentials(f, FamObj{1, 0}, FamObj{1, 1}).ok());
    auto fb = fibredness_check(f, FamObj{1}, FamObj{1});
    EXPECT_FALSE(fb.fibred);
    EXPECT_EQ(fb.first, 2u);
    for (const auto& [a, w, b] : std::vector<std::tuple<FamObj, FamObj, FamObj>>{
             {{1}, {1, 0}, {1, 1}}, {{1, 1}, {1}, {1}}, {{0, 1}, {1, 1}, {1}}}) {
        auto r = verify_closure(f, a, w, b, {{1}, {0, 1}});
        EXPECT_TRUE(r.report.ok()) << first(r.report);
        EXPECT_GT(r.naturality_checked, 0u);
    }
}

TEST(FamFlavors, ExtensiveIndexIsMapsIntoSumWithPoint) {
    auto f = extensive_fam(4);
    auto h = dialectica_hom(f, FamObj{1}, FamObj{1});
    EXPECT_EQ(h.object.size(), 2u);  // Set(1, 1 + 1)
    EXPECT_TRUE(compare_exponentials(f, FamObj{1}, FamObj{1}).ok());
    EXPECT_TRUE(compare_exponentials(f, FamObj{2, 1}, FamObj{1, 2}).ok());
    EXPECT_FALSE(fibredness_check(f, FamObj{1}, FamObj{1}).fibred);
    auto r = verify_closure(f, FamObj{1}, FamObj{1, 2}, FamObj{2}, {{1}, {0, 2}});
    EXPECT_TRUE(r.report.ok()) << first(r.report);
}

TEST(FamFlavors, ClosedIsFibred) {
    auto f = closed_fam(chain_category(2));
    for (const auto& [a, b] : std::vector<std::pair<FamObj, FamObj>>{{{1}, {0}}, {{0, 1}, {1, 0}}, {{1, 1}, {0}}}) {
        auto fb = fibredness_check(f, a, b);
        EXPECT_TRUE(fb.fibred);
        EXPECT_TRUE(compare_exponentials(f, a, b).ok()) << first(compare_exponentials(f, a, b));
        auto r = verify_closure(f, a, {1, 0}, b, {{0}, {1, 1}});
        EXPECT_TRUE(r.report.ok()) << first(r.report);
    }
    // 1 => 0 is 0 in the two-element chain
    EXPECT_EQ(dialectica_hom(f, FamObj{1}, FamObj{0}).object, FamObj{0});
}

TEST(FamFlavors, PartialMaps) {
    auto f = partial_maps_fam(4);
    EXPECT_TRUE(compare_exponentials(f, FamObj{1, 2}, FamObj{1}).ok());
    auto r = verify_closure(f, FamObj{1}, FamObj{1}, FamObj{1, 1}, {{1}, {2}});
    EXPECT_TRUE(r.report.ok()) << first(r.report);
}

TEST(FamFlavors, NonDistributiveLatticeRefused) {
    auto t = poset_tractable_data(m3_lattice());
    MonoidalData sums = t.monoidal;
    try {
        build_fam_instance("m3", FamFlavor::Custom, t, sums, {4, 1, 64});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotTractable);
    }
}

TEST(FamFlavors, OutOfBoundReportsSize) {
    auto d = build_dial_pf(2);
    d.fam.index_bound = 63;
    try {
        dialectica_hom(d.fam, d.object(2, 2), d.object(2, 2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SizeExceeded);
        EXPECT_NE(std::string(e.what()).find("64"), std::string::npos);
    }
}
