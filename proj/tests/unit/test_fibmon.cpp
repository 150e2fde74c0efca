#include <gtest/gtest.h>

#include <fibred/fibmon.hpp>
#include <fibred/fixtures.hpp>

using namespace fibred;

namespace {

std::string first(const ValidationReport& r) { return r.ok() ? "" : r.violations()[0].code + ": " + r.violations()[0].message; }

// X^(U*Y), counted without the model
std::uint64_t dial_count(int u, int x, int y) {
    std::uint64_t n = 1;
    for (int i = 0; i < u * y; ++i) n *= static_cast<std::uint64_t>(x);
    return n;
}

}  // namespace

TEST(Tabulation, DialFibreRoundTrip) {
    auto m = dial_fibre_model(2, 2);
    for (int x = 0; x <= 2; ++x)
        for (int y = 0; y <= 2; ++y) EXPECT_EQ(m->hom_size(x, y), dial_count(2, x, y));
    auto t = tabulate(m);
    EXPECT_TRUE(validate_category(*t.category).ok());
    for (int f = 0; f < t.category->morphism_count(); ++f)
        EXPECT_EQ(t.morphism(t.category->dom(f), t.category->cod(f), t.arrow(f)), f);
}

TEST(Tabulation, TransferKeepsCoherence) {
    auto d = dial_fibre_coproducts(2, 4);
    EXPECT_TRUE(validate_monoidal(d, {2, 256}).ok()) << first(validate_monoidal(d, {2, 256}));
    auto t = transfer_monoidal(dial_fibre_coproducts(2, 2), tabulate(dial_fibre_model(2, 2)));
    EXPECT_TRUE(validate_monoidal(t, {2, 4096}).ok());
    try {
        tabulate(dial_fibre_model(2, 4));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SizeExceeded);
    }
}

TEST(IndexedMonoidal, FixturesValidate) {
    auto fam = fam_monoidal(2, chain_category(2));
    EXPECT_TRUE(validate_indexed_monoidal(fam).ok()) << first(validate_indexed_monoidal(fam));
    auto dial = dial_pf_indexed(2, 2);
    EXPECT_TRUE(validate_indexed_monoidal(dial).ok()) << first(validate_indexed_monoidal(dial));
}

TEST(IndexedMonoidal, MixedFibresRejected) {
    auto fam = fam_monoidal(2, chain_category(2));
    // coproducts over 2 while the rest use products: diagonals stop preserving the tensor
    fam.fibres[2] = tabulated_cocartesian(fam.L.fibres[2]);
    EXPECT_TRUE(validate_indexed_monoidal(fam).has("TensorWitness"));
}

TEST(GrothMonoidal, TotalStructureValidates) {
    for (const auto& im : {fam_monoidal(2, chain_category(2)), dial_pf_indexed(2, 2)}) {
        auto gm = groth_monoidal(im);
        auto r = validate_monoidal(gm.total, {gm.G.total->object_count() - 1, 4096});
        EXPECT_TRUE(r.ok()) << first(r);
        // unit sits over the terminal base object
        EXPECT_EQ(gm.G.object_pair[groth_unit(gm)].first, gm.base.unit);
    }
}

TEST(GrothMonoidal, TensorOverProducts) {
    auto gm = groth_monoidal(fam_monoidal(2, chain_category(2)));
    const int one = gm.G.total->object_index("(1,(1))");
    const int two = gm.G.total->object_index("(2,(0,1))");
    const int t = groth_tensor(gm, one, two);
    EXPECT_EQ(gm.G.total->object(t), "(2,(0,1))");
    try {
        groth_tensor(gm, two, two);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SizeExceeded);
    }
}

TEST(GrothMonoidal, NonIdentityWitnessRefused) {
    auto im = fam_monoidal(1, chain_category(2));
    im.tensor_witness[0] = {0};
    try {
        groth_monoidal(im);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Unsupported);
    }
}

TEST(GrothMonoidal, FibresRecovered) {
    for (const auto& im : {fam_monoidal(2, chain_category(2)), fam_monoidal(2, chain_category(3), false),
                           dial_pf_indexed(2, 2)}) {
        auto gm = groth_monoidal(im);
        auto rec = fibre_monoidal_from_groth(gm, im);
        EXPECT_TRUE(rec.report.ok()) << first(rec.report);
        EXPECT_TRUE(rec.fibres[1].carrier != nullptr);
        // 2 x 2 is beyond the skeleton
        EXPECT_TRUE(rec.fibres[2].carrier == nullptr);
    }
}

TEST(FibredHom, HeytingFibresOverFinset) {
    auto im = fam_monoidal(2, chain_category(2));
    auto gm = groth_monoidal(im);
    auto fc = fibred_closure_data(gm, im);
    auto bc = check_beck_chevalley(gm, im, fc);
    EXPECT_TRUE(bc.ok()) << first(bc);
    auto cr = verify_fibred_hom(gm, im, fc);
    EXPECT_TRUE(cr.report.ok()) << first(cr.report);
    EXPECT_FALSE(cr.counts.empty());
    // (1,x) -o (1,y) is (1, x => y)
    const int h = fibred_hom(gm, im, fc, gm.G.total->object_index("(1,(1))"), gm.G.total->object_index("(1,(0))"));
    EXPECT_EQ(gm.G.total->object(h), "(1,(0))");
}

TEST(FibredHom, ChainBase) {
    auto im = fam_monoidal_along(chain_into_finset(3), chain_category(2));
    ASSERT_TRUE(validate_indexed_monoidal(im).ok());
    auto gm = groth_monoidal(im);
    auto fc = fibred_closure_data(gm, im);
    EXPECT_TRUE(check_beck_chevalley(gm, im, fc).ok());
    auto cr = verify_fibred_hom(gm, im, fc);
    EXPECT_TRUE(cr.report.ok()) << first(cr.report);
    EXPECT_EQ(cr.skipped, 0);
}

TEST(FibredHom, PiAlongProjectionPadsWithTop) {
    auto im = fam_monoidal_along(chain_into_finset(3), chain_category(2));
    auto gm = groth_monoidal(im);
    auto pi = pi_along_projection(gm, tabulated_closure(gm.total), 1, 2);
    ASSERT_TRUE(pi.report.ok()) << first(pi.report);
    // restriction from two coordinates to one; its right adjoint fills the new one with the top
    const FinCat& F1 = im.L.fibre(1);
    const FinCat& F2 = im.L.fibre(2);
    for (int m = 0; m < F1.object_count(); ++m) {
        const std::string want = "(" + F1.object(m).substr(1, 1) + ",1)";
        EXPECT_EQ(F2.object(pi.objects[m]), want);
    }
}
