#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fibred/indexed.hpp"
#include "fibred/search.hpp"

namespace fibred {

// Total category of an indexed category. Objects "(A,X)", morphisms "(f,u|Y)"
// with u : X -> L(f)(Y) in the fibre over dom f; Y is kept in the id since
// L(f) need not be injective on objects.
struct GrothCat {
    IndexedCat source;
    CatPtr total;
    FinFunctor projection;
    std::vector<std::pair<int, int>> object_pair;    // (A, X)
    std::vector<std::pair<int, int>> morphism_pair;  // (f, u)
    std::map<std::pair<int, int>, int> object_of;
    std::map<std::tuple<int, int, int>, int> morphism_of;  // (f, u, Y)

    int object(int a, int x) const { return object_of.at({a, x}); }
    int morphism(int f, int u, int y) const { return morphism_of.at({f, u, y}); }
};

inline constexpr std::size_t kDefaultTotalBound = 200000;

GrothCat grothendieck(const IndexedCat& L, std::size_t bound = kDefaultTotalBound);

// (f, id_{L(f)Y}) : (A, L(f)Y) -> (B, Y).
int canonical_lift(const GrothCat& G, int f, int total_object);

bool is_cartesian(const FinFunctor& P, int e, std::string* obstruction = nullptr);

struct Cleavage {
    FinFunctor projection;
    std::map<std::pair<int, int>, int> lift;  // (base morphism, total object over its codomain) -> total morphism
    int at(int f, int e) const { return lift.at({f, e}); }
};

struct FibrationResult {
    bool ok = false;
    Cleavage cleavage;
    int failing_morphism = -1;
    int failing_object = -1;
    std::string failure;
};

// Lexicographically smallest cartesian lift per (f, E).
FibrationResult verify_fibration(const FinFunctor& P);
Cleavage canonical_cleavage(const GrothCat& G);

// Strict fibres of P; reindexing, unitors and compositors by unique factorization.
struct FibreData {
    std::vector<std::vector<int>> total_object;    // per base object, fibre index -> total object
    std::vector<std::vector<int>> total_morphism;  // per base object, fibre index -> total morphism
};

IndexedCat indexed_from_fibration(const Cleavage& cl, FibreData* data = nullptr);

bool split_check(const Cleavage& cl);

struct BifibrationReport {
    ValidationReport report;
    std::vector<std::optional<AdjunctionWitness>> left_adjoints;  // per base morphism
};

BifibrationReport bifibration_check(const IndexedCat& L);

// Fibrewise comparison X |-> (C, X), u |-> (id, eta o u) from L into the
// indexed category recovered from its canonical cleavage.
struct RoundTrip {
    GrothCat groth;
    IndexedCat recovered;
    std::vector<FinFunctor> comparison;
    bool split = false;
    ValidationReport report;
};

RoundTrip round_trip(const IndexedCat& L);

}  // namespace fibred
