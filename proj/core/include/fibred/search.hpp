#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fibred/fincat.hpp"

namespace fibred {

// Limit cones have legs apex -> J(e); colimit cocones have legs J(e) -> apex.
struct Cone {
    int apex = -1;
    std::vector<int> legs;
    bool operator==(const Cone&) const = default;
};

std::vector<Cone> enumerate_cones(const FinFunctor& J);
std::vector<Cone> enumerate_cones_at(const FinFunctor& J, int apex);
std::vector<Cone> enumerate_cocones(const FinFunctor& J);

// Morphisms h : other.apex -> limit.apex with limit.legs[e] o h = other.legs[e].
std::vector<int> factorizations(const FinFunctor& J, const Cone& limit, const Cone& other);
std::vector<int> cofactorizations(const FinFunctor& J, const Cone& colimit, const Cone& other);

bool is_cone(const FinFunctor& J, const Cone& c);
bool is_cocone(const FinFunctor& J, const Cone& c);
bool is_limit_cone(const FinFunctor& J, const Cone& c, std::string* obstruction = nullptr);
bool is_colimit_cone(const FinFunctor& J, const Cone& c, std::string* obstruction = nullptr);

// Terminal among all cones; NotFound carries the obstruction.
Cone find_limit(const FinFunctor& J);
Cone find_colimit(const FinFunctor& J);

std::string describe_cone(const FinCat& c, const Cone& cone);

struct UniversalObject {
    int object = -1;
    std::vector<int> arrows;  // the unique arrow to (or from) every object, by index
};

UniversalObject find_initial(const FinCat& c);
UniversalObject find_terminal(const FinCat& c);

struct AdjunctionWitness {
    FinFunctor left;
    FinFunctor right;
    FinNatTrans unit;    // id => right o left
    FinNatTrans counit;  // left o right => id
};

ValidationReport validate_adjunction(const AdjunctionWitness& w);

struct UniversalArrow {
    int object = -1;  // in the source of G
    int arrow = -1;   // c -> G(object) for arrows from c, G(object) -> c for arrows to c
};

// Initial object of (c | G); restricted to one candidate object when only_object >= 0.
std::optional<UniversalArrow> universal_arrow_from(const FinFunctor& G, int c, std::string* obstruction = nullptr,
                                                   int only_object = -1);
// Terminal object of (G | c).
std::optional<UniversalArrow> universal_arrow_to(const FinFunctor& G, int c, std::string* obstruction = nullptr,
                                                 int only_object = -1);

// Left adjoint assembled from chosen universal arrows (one per object of the target of G).
AdjunctionWitness assemble_left_adjoint(const FinFunctor& G, const std::vector<UniversalArrow>& arrows);
AdjunctionWitness assemble_right_adjoint(const FinFunctor& G, const std::vector<UniversalArrow>& arrows);

AdjunctionWitness find_left_adjoint(const FinFunctor& G);
AdjunctionWitness find_right_adjoint(const FinFunctor& G);

// Finite family of maps phi_i : lhs(i) -> rhs(i) with actions i -> j on both sides.
struct NaturalFamily {
    struct Action {
        int from = 0;
        int to = 0;
        std::string label;
        std::vector<int> lhs;
        std::vector<int> rhs;
    };
    std::vector<std::string> index;
    std::vector<int> lhs_size;
    std::vector<int> rhs_size;
    std::vector<std::vector<int>> phi;
    std::vector<Action> actions;
};

ValidationReport check_bijection_natural(const NaturalFamily& family);

// All functors source -> target, in lexicographic order of (object map, morphism map).
// Throws SizeExceeded once more than `limit` have been produced.
std::vector<FinFunctor> enumerate_functors(const CatPtr& source, const CatPtr& target, std::size_t limit = 100000);

}  // namespace fibred
