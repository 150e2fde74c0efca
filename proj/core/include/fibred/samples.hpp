#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fibred/fibcolim.hpp"
#include "fibred/fixtures.hpp"
#include "fibred/indexed.hpp"

namespace fibred {

// n objects "x0".., exactly one morphism between any two ("xi>xj").
CatPtr codiscrete_category(int n);

struct Subcategory {
    CatPtr category;
    FinFunctor inclusion;
};

// Smallest subcategory containing the objects and morphisms (closed under composition).
Subcategory subcategory(const CatPtr& c, const std::vector<int>& objects, const std::vector<int>& morphisms);

// Base walking arrow, fibres codiscrete on two objects, L(id_0) and L(a) swap
// the objects, so unitors and compositors are non-identity isos.
IndexedCat pseudo_swap_fixture();

// Fam over the FinSet skeleton {0..n}: L(k) = d^k.
IndexedCat fam_over_finset(int n, const CatPtr& d);

// A DiagramPair from a functor and a chosen section.
DiagramPair make_diagram(const IndexedCat& L, const Shape& shape, const FinFunctor& J1, const SectionObj& J2);

// The parallel pair (f, alpha), (g, beta) : (A, X) => (B, Y).
DiagramPair parallel_pair_diagram(const IndexedCat& L, int f, int alpha, int g, int beta, int x, int y);

struct RandomFixture {
    std::string name;
    IndexedCat L;
};

// Small random indexed categories: Fam over random subcategories of FinSet {0,1,2},
// representables, and transported (pseudo) variants. Bases and fibres stay
// within 4 objects and 8 morphisms.
std::vector<RandomFixture> random_fixtures(std::uint64_t seed, int count);

// Uniformly chosen functor shape -> base and section over it; false if none exist.
bool random_diagram(const IndexedCat& L, const Shape& shape, std::mt19937_64& rng, DiagramPair& out);

}  // namespace fibred
