#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "fibred/groth.hpp"
#include "fibred/monoidal.hpp"

namespace fibred {

// A concrete model written out as a FinCat, objects "0".."k".
struct Tabulation {
    CatPtr category;
    ModelPtr source;
    ModelPtr model;                                            // tabulated_model(category)
    std::map<std::tuple<int, int, std::uint64_t>, int> index;  // (a, b, hom position) -> morphism
    std::vector<std::uint64_t> position;                       // by morphism

    int morphism(int a, int b, const Arrow& f) const;
    Arrow arrow(int m) const;
};

// The composition table is quadratic in the arrow count.
Tabulation tabulate(const ModelPtr& m, std::uint64_t bound = 4000);
// Move m onto the tabulated carrier; objects keep their indices.
MonoidalData transfer_monoidal(const MonoidalData& m, const Tabulation& t);

// Fibrewise monoidal structure with strong monoidal reindexing.
// tensor_witness[f] holds L(f)(X(x)Y) -> L(f)X (x) L(f)Y indexed X * |fibre(cod f)| + Y,
// unit_witness[f] is L(f)I -> I; empty or -1 stands for the identity.
struct IndexedMonoidal {
    IndexedCat L;
    std::vector<MonoidalData> fibres;
    std::vector<std::vector<int>> tensor_witness;
    std::vector<int> unit_witness;

    bool identity_witnesses() const;
};

ValidationReport validate_indexed_monoidal(const IndexedMonoidal& im, const MonoidalCheck& check = {8, 4096});

// Fam(d) over the FinSet skeleton with pointwise products (or coproducts) of d.
IndexedMonoidal fam_monoidal(int n, const CatPtr& d, bool cartesian = true);
// The same pulled back along P : C -> FinSet skeleton.
IndexedMonoidal fam_monoidal_along(const FinFunctor& P, const CatPtr& d, bool cartesian = true);
// Chain 0 < .. < n-1 into the skeleton: i is the set of size i, i <= j the inclusion.
FinFunctor chain_into_finset(int n);

// Fibre over U: objects 0..N, arrows X -> Y are maps U x Y -> X composed
// pointwise in u; tensor X.Y with coprojections (u, (x, y)) |-> x, y.
ModelPtr dial_fibre_model(int u, int n);
MonoidalData dial_fibre_coproducts(int u, int n);
IndexedMonoidal dial_pf_indexed(int base_n, int fibre_n);

// Monoidal structure on the total category: base products, fibre tensors
// of the reindexed objects. Needs strict L and identity witnesses.
struct GrothMonoidal {
    GrothCat G;
    MonoidalData base;
    MonoidalData total;
};

GrothMonoidal groth_monoidal(const IndexedMonoidal& im);
int groth_tensor(const GrothMonoidal& gm, int e1, int e2);  // SizeExceeded beyond the bound
int groth_unit(const GrothMonoidal& gm);

// Fibre tensors recovered by reindexing the total one along diagonals.
struct RecoveredFibres {
    std::vector<MonoidalData> fibres;  // carrier null where the diagonal is beyond the bound
    ValidationReport report;           // comparison with the given fibres
};

RecoveredFibres fibre_monoidal_from_groth(const GrothMonoidal& gm, const IndexedMonoidal& im);

// Closed structure on the total category from closed base and fibres and
// right adjoints to reindexing along product projections.
struct FibredClosure {
    ClosedData base;
    std::vector<ClosedData> fibres;
    std::map<int, AdjunctionWitness> pushforward;  // by projection morphism of the base
};

FibredClosure fibred_closure_data(const GrothMonoidal& gm, const IndexedMonoidal& im);
// (C, X) -o (C', Y); SizeExceeded when a piece is beyond the bound, NoRightAdjoint when a push is missing.
int fibred_hom(const GrothMonoidal& gm, const IndexedMonoidal& im, FibredClosure& fc, int e1, int e2);
// ev : A (x) (A -o B) -> B in the total category.
int fibred_eval(const GrothMonoidal& gm, const IndexedMonoidal& im, FibredClosure& fc, int e1, int e2);

// Mates L(g) R => R'' L(id x g) for every projection pair; each must be invertible.
ValidationReport check_beck_chevalley(const GrothMonoidal& gm, const IndexedMonoidal& im, FibredClosure& fc);

struct CurryReport {
    ValidationReport report;
    std::vector<std::tuple<int, int, int, std::uint64_t, std::uint64_t>> counts;  // (A, B, C, |hom(A(x)B, C)|, |hom(B, A-oC)|)
    int skipped = 0;
};

// g |-> ev o (A (x) g) is a bijection hom(B, A -o C) -> hom(A (x) B, C), natural in B.
CurryReport verify_fibred_hom(const GrothMonoidal& gm, const IndexedMonoidal& im, FibredClosure& fc);

// Right adjoint of L(pi2) for pi2 : C x C' -> C', computed as
// L(curry id)(pi2 ((C, I) -o (C x C', M))) from a closure of the total category.
struct PiAlongProjection {
    int c = -1, c2 = -1, product = -1, projection = -1;
    std::vector<int> objects;       // per object M of the fibre over C x C'
    AdjunctionWitness adjunction;
    ValidationReport report;
};

PiAlongProjection pi_along_projection(const GrothMonoidal& gm, const ClosedData& total_closure, int c, int c2);

}  // namespace fibred
