#pragma once

#include <cstddef>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "fibred/fincat.hpp"

namespace fibred {

// Pseudofunctor data over a finite base. For f : A -> B the reindexing L(f)
// goes fibre(B) -> fibre(A). Unitors eta^A : id => L(id_A) live in fibre(A);
// compositors mu^{f,g} : L(f) L(g) => L(g o f) for f : A -> B, g : B -> C,
// with components indexed by objects of fibre(C). Empty component lists
// stand for identities.
struct IndexedCat {
    CatPtr base;
    std::vector<CatPtr> fibres;
    std::vector<FinFunctor> reindex;
    std::vector<std::vector<int>> unitor;
    std::map<std::pair<int, int>, std::vector<int>> compositor;

    const FinCat& fibre(int a) const { return *fibres[a]; }
    int apply(int f, int y) const { return reindex[f].obj(y); }
    int apply_mor(int f, int v) const { return reindex[f].mor(v); }
    int eta(int a, int x) const;
    int mu(int f, int g, int z) const;
    bool is_strict() const;
};

// Auto-fills identity unitors and compositors.
IndexedCat make_strict(CatPtr base, std::vector<CatPtr> fibres, std::vector<FinFunctor> reindex);

ValidationReport validate_indexed(const IndexedCat& L);

// Precompose with F : D -> base.
IndexedCat restrict(const IndexedCat& L, const FinFunctor& F);

// A section: X_C per base object and xi_f : X_A -> L(f)(X_B) per base morphism.
struct SectionObj {
    std::vector<int> x;
    std::vector<int> xi;
    bool operator==(const SectionObj&) const = default;
};

ValidationReport validate_section(const IndexedCat& L, const SectionObj& s);

struct SectionsCategory {
    CatPtr category;
    std::vector<SectionObj> objects;             // by object index
    std::vector<std::vector<int>> components;    // by morphism index, one per base object
    std::map<std::pair<std::vector<int>, std::vector<int>>, int> object_lookup;
    std::map<std::tuple<int, int, std::vector<int>>, int> morphism_lookup;

    int index_of(const SectionObj& s) const;     // -1 when absent
    int morphism_of(int src, int tgt, const std::vector<int>& comps) const;  // -1 when absent
};

inline constexpr std::size_t kDefaultSectionBound = 10000;

SectionsCategory sections_category(const IndexedCat& L, std::size_t bound = kDefaultSectionBound);

// For a cone lambda_e : apex -> J1(e) and a section J2 of L restricted along J1,
// the functor E -> fibre(apex), e |-> L(lambda_e)(X_e).
FinFunctor reindex_section(const IndexedCat& L, const FinFunctor& J1, int apex, const std::vector<int>& lambda,
                           const SectionObj& J2);

// Fixture builders.
CatPtr power_category(const CatPtr& d, int n);  // d^n, tuples "(x0,x1,..)"
// L(A) = d^{P(A)}, reindexing by precomposition with P(f); P lands in a FinSet skeleton.
IndexedCat fam_indexed(const FinFunctor& P, const CatPtr& d);
// L(A) = discrete category on hom(A, c), reindexing by precomposition.
IndexedCat representable_indexed(const CatPtr& base, int c);
// Transport a strict L along isos theta_f : L(f) => P_f, one per base morphism.
// Produces the pseudo structure eta = theta_id, mu = theta_{gf} (L(f) theta_g^-1) theta_f^-1.
IndexedCat transport(const IndexedCat& strict, const std::vector<FinFunctor>& P,
                     const std::vector<std::vector<int>>& theta);

}  // namespace fibred
