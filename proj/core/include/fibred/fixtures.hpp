#pragma once

#include <string>
#include <vector>

#include "fibred/fincat.hpp"

namespace fibred {

// Bounded skeleta with objects "0".."N". Morphism ids spell the function,
// e.g. "2>3:02" maps 0->0, 1->2; "-" marks an undefined point of a partial map.
CatPtr finset_skeleton(int n);
CatPtr pset_skeleton(int n);

std::string function_id(int dom, int cod, const std::vector<int>& values);
std::vector<int> function_values(const std::string& id);

// Thin category on named elements; leq[i][j] means element i <= element j.
CatPtr poset_category(const std::vector<std::string>& elements, const std::vector<std::vector<bool>>& leq);
CatPtr chain_category(int n);           // 0 < 1 < ... < n-1
CatPtr boolean_lattice(int atoms);      // subsets of {0..atoms-1}, named by bit strings
CatPtr m3_lattice();                    // bot < a,b,c < top
CatPtr n5_lattice();                    // bot < a < b < top, bot < c < top

struct ArrowCategory {
    CatPtr category;     // objects are morphisms of c, morphisms are commuting squares
    FinFunctor domain;   // to c
    FinFunctor codomain; // to c
};

ArrowCategory arrow_category(const CatPtr& c);

}  // namespace fibred
