#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fibred/fincat.hpp"

namespace fibred {

// Arrows of a concrete model; the encoding is the model's business
// (value tables for sets, column masks for F2 maps, {index} for tables).
using Arrow = std::vector<int>;

// A finite category whose hom-sets are enumerated on demand, so objects
// can be larger than anything we would want to tabulate.
class Model {
public:
    virtual ~Model() = default;
    virtual std::string name() const = 0;
    virtual int object_count() const = 0;
    virtual std::string object_name(int a) const { return std::to_string(a); }
    // Saturates at kHomCap.
    virtual std::uint64_t hom_size(int a, int b) const = 0;
    virtual Arrow arrow_at(int a, int b, std::uint64_t index) const = 0;
    virtual std::uint64_t index_of(int a, int b, const Arrow& f) const = 0;
    virtual Arrow identity(int a) const = 0;
    // Well-typed arrow a -> b under the model's encoding.
    virtual bool valid(int a, int b, const Arrow& f) const = 0;
    // g o f for f : a -> b, g : b -> c
    virtual Arrow compose(int a, int b, int c, const Arrow& g, const Arrow& f) const = 0;
    virtual std::string arrow_name(int a, int b, const Arrow& f) const;
    // Value-table models (sets, partial maps) answer true; -1 marks undefined.
    virtual bool set_like() const { return false; }

    std::vector<Arrow> hom(int a, int b) const;

    static constexpr std::uint64_t kHomCap = std::uint64_t{1} << 40;
};

using ModelPtr = std::shared_ptr<const Model>;

ModelPtr finset_model(int n);   // sets 0..n, total maps
ModelPtr pset_model(int n);     // sets 0..n, partial maps
ModelPtr f2vect_model(int n);   // F2^0..F2^n, linear maps
ModelPtr opposite_model(const ModelPtr& m);  // op(op(m)) is m
ModelPtr tabulated_model(const CatPtr& c);
const FinCat* tabulated_source(const Model& m);  // null unless tabulated

std::optional<Arrow> inverse_arrow(const Model& m, int a, int b, const Arrow& f);
// The unique arrow a -> t, if there is exactly one.
std::optional<Arrow> unique_arrow(const Model& m, int a, int t);

struct MonoidalData {
    std::string name;
    ModelPtr carrier;
    int unit = 0;
    std::function<int(int, int)> tensor;  // -1 beyond the bound
    // f : a -> a2, g : b -> b2 gives a(x)b -> a2(x)b2
    std::function<Arrow(int, int, int, int, const Arrow&, const Arrow&)> tensor_arrow;
    std::function<Arrow(int, int, int)> associator;      // (a(x)b)(x)c -> a(x)(b(x)c)
    std::function<Arrow(int, int, int)> associator_inv;
    std::function<Arrow(int)> left_unitor;               // I(x)a -> a
    std::function<Arrow(int)> left_unitor_inv;
    std::function<Arrow(int)> right_unitor;              // a(x)I -> a
    std::function<Arrow(int)> right_unitor_inv;

    // Chosen product structure when the tensor is cartesian.
    std::function<Arrow(int, int)> proj1, proj2;
    std::function<Arrow(int, int, int, const Arrow&, const Arrow&)> pair;  // (x, a, b, f, g)
    // Chosen coproduct structure when the tensor is cocartesian.
    std::function<Arrow(int, int)> inj1, inj2;
    std::function<Arrow(int, int, int, const Arrow&, const Arrow&)> copair;  // (a, b, x, f, g)

    bool cartesian() const { return static_cast<bool>(pair); }
    bool cocartesian() const { return static_cast<bool>(copair); }
};

struct ProductData {
    int terminal = 0;
    std::function<int(int, int)> product;
    std::function<Arrow(int, int)> proj1, proj2;
    std::function<Arrow(int, int, int, const Arrow&, const Arrow&)> pair;
};

MonoidalData from_products(std::string name, ModelPtr carrier, ProductData p);
// Coprojections a -> a+b, copair (a, b, x, f, g) : a+b -> x.
MonoidalData from_coproducts(std::string name, ModelPtr carrier, ProductData p);
MonoidalData opposite_monoidal(const MonoidalData& m);

MonoidalData finset_cartesian(int n);
MonoidalData finset_cocartesian(int n);
MonoidalData pset_cocartesian(int n);
MonoidalData f2vect_biproduct(int n);  // carries both product and coproduct maps
// Chosen (co)products found by search; pairs without one are left undefined.
MonoidalData tabulated_cartesian(const CatPtr& c);
MonoidalData tabulated_cocartesian(const CatPtr& c);

// Replace the associator at one triple (negative fixtures).
MonoidalData with_associator(const MonoidalData& m, int a, int b, int c, Arrow replacement);

struct MonoidalCheck {
    int max_object = 3;                        // objects 0..max_object
    std::uint64_t max_hom = 4096;              // larger hom-sets are skipped, not sampled
};

ValidationReport validate_monoidal(const MonoidalData& m, const MonoidalCheck& check = {});

// Left closure: M(B(x)C, A) = M(C, B -o A).
struct ClosedData {
    std::function<int(int, int)> hom;                                  // (b, a) -> b -o a, -1 beyond bound
    std::function<Arrow(int, int)> eval;                               // b(x)(b -o a) -> a
    std::function<Arrow(int, int, int, const Arrow&)> curry;           // (b, c, a, k : b(x)c -> a)
};

ClosedData finset_closure(int n);  // for finset_cartesian(n)
// Brute force; pairs (b, c) with b(x)c beyond the bound are not tested.
ClosedData tabulated_closure(const MonoidalData& m);
ValidationReport validate_closure(const MonoidalData& m, const ClosedData& cl, const MonoidalCheck& check = {});

// Sigma-tractable data: M(A, B(x)C) = Sum_{f : A -> TB} M(dbar(A,B,f), C).
struct TractableData {
    std::string name;
    std::function<int(int)> T;
    std::function<Arrow(int, int, const Arrow&)> T_arrow;  // (b, b2, beta)
    std::function<int(int, int, const Arrow&)> dbar;       // (a, b, f : a -> Tb), -1 beyond bound
    // alpha : a1 -> a, beta : b -> b2, f : a -> Tb, f' = T(beta) f alpha;
    // returns dbar(a1, b2, f') -> dbar(a, b, f)
    std::function<Arrow(int, int, int, int, const Arrow&, const Arrow&, const Arrow&)> dbar_arrow;
    std::function<std::pair<Arrow, Arrow>(int, int, int, const Arrow&)> phi;      // (a, b, c, g)
    std::function<Arrow(int, int, int, const Arrow&, const Arrow&)> phi_inv;      // (a, b, c, f, r)
    bool dbar_arrows_implementation_defined = false;
};

// Cotractable instances are tractable data on the opposite structure.
struct TractableInstance {
    MonoidalData monoidal;
    TractableData data;
    bool co = false;
};

struct TractableCheck {
    int max_object = 2;
    int naturality_max = 2;       // objects used to test naturality and functoriality
    std::uint64_t max_hom = 1u << 16;
};

struct TractableReport {
    ValidationReport report;
    // (a, b, c, lhs, rhs) per checked triple
    std::vector<std::tuple<int, int, int, std::uint64_t, std::uint64_t>> counts;
    int skipped = 0;
};

TractableReport validate_tractable(const TractableInstance& t, const TractableCheck& check = {});

TractableInstance tractable_cartesian(const MonoidalData& m);     // T = id, dbar = A
TractableInstance cotractable_cocartesian(const MonoidalData& m); // the same on the opposite
TractableInstance pset_coproducts_tractable(int n);               // dbar = A minus f^-1(B)
// Set-like carrier with chosen coproducts and terminal 1; T = (-)+1.
TractableInstance tractable_coproducts_extensive(const MonoidalData& finset_cocart, int max_check = 2);
TractableInstance cotractable_from_closed(const MonoidalData& m, const ClosedData& cl, int initial);

struct PosetVerdict {
    bool tractable = false;
    std::string witness;     // distributivity failure or missing implication
    int failing_x = -1, failing_y = -1;
    ClosedData implication;  // on the opposite, when tractable
};

// Join structure of a finite lattice: tractable iff the opposite is cartesian closed.
PosetVerdict poset_tractability(const CatPtr& lattice);
// Candidate data (T = top, dbar = a chosen minimal complement); validates exactly when tractable.
TractableInstance poset_tractable_data(const CatPtr& lattice);

// Builds T(b) = b(x)1 from phi at C = 1 and checks both composites.
struct ForcesT {
    ValidationReport report;
    int terminal = -1;
    std::vector<std::pair<Arrow, Arrow>> isos;  // per object: b(x)1 -> Tb, Tb -> b(x)1
};

ForcesT tractability_forces_T(const TractableInstance& t, int max_object = 3);

// Lattice helpers (thin categories).
std::optional<int> lattice_join(const FinCat& x, int a, int b);
std::optional<int> lattice_meet(const FinCat& x, int a, int b);
bool is_thin(const FinCat& x);

}  // namespace fibred
