#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fibred/fibmon.hpp"
#include "fibred/monoidal.hpp"

namespace fibred {

// Fam(D) for D = N^op, where N carries Sigma-tractable data. A family is the
// list of its members (objects of N); the index set is 0..size-1. An arrow
// (X, x) -> (Y, y) is phi : X -> Y with comps[i] in N(y_phi(i), x_i),
// i.e. x_i -> y_phi(i) in D.
using FamObj = std::vector<int>;

struct FamArrow {
    std::vector<int> map;
    std::vector<Arrow> comps;
    bool operator==(const FamArrow&) const = default;
    bool operator<(const FamArrow& o) const { return map != o.map ? map < o.map : comps < o.comps; }
};

enum class FamFlavor { Closed, Biproduct, Extensive, PartialMaps, DialPf, Custom };
std::string flavor_name(FamFlavor f);

struct FamInstance {
    std::string name;
    FamFlavor flavor = FamFlavor::Custom;
    TractableInstance tractable;  // on N
    MonoidalData sums;            // chosen coproducts of N: products of D, used for Pi over an index set
    std::uint64_t index_bound = 4096;
    bool constant_families = false;  // Dial_pf: every member the same object

    const Model& N() const { return *tractable.monoidal.carrier; }
};

// Validates the tractable data first; failure is NotTractable.
FamInstance build_fam_instance(std::string name, FamFlavor flavor, TractableInstance t, MonoidalData sums,
                               const TractableCheck& check = {2, 2, 1u << 14});
FamInstance closed_fam(const CatPtr& heyting);     // D a Heyting algebra, T constant at the bottom
FamInstance biproduct_fam(int dim);                // D = F2 spaces up to dim
FamInstance extensive_fam(int n);                  // D = FinSet^op on 0..n
FamInstance partial_maps_fam(int n);               // D = pSet^op on 0..n
FamInstance dial_pf_fam(int n);                    // Fam(FinSet^op) on constant families, T = id

std::uint64_t fam_hom_count(const FamInstance& inst, const FamObj& a, const FamObj& b);
// Calls f on every arrow in a fixed order; stops early when f returns false.
void for_each_fam_arrow(const FamInstance& inst, const FamObj& a, const FamObj& b,
                        const std::function<bool(const FamArrow&)>& f);
bool valid_fam_arrow(const FamInstance& inst, const FamObj& a, const FamObj& b, const FamArrow& h);
FamArrow fam_identity(const FamInstance& inst, const FamObj& a);
FamArrow fam_compose(const FamInstance& inst, const FamObj& a, const FamObj& b, const FamObj& c, const FamArrow& g,
                     const FamArrow& f);  // g o f
FamObj fam_tensor(const FamInstance& inst, const FamObj& a, const FamObj& b);  // index (i, k) is i * |b| + k
FamArrow fam_tensor_arrow(const FamInstance& inst, const FamObj& a, const FamObj& a2, const FamObj& b,
                          const FamObj& b2, const FamArrow& f, const FamArrow& g);

// One member of the exponential: phi : X -> Y and f_i in N(y_phi(i), T x_i).
struct ExpIndex {
    std::vector<int> map;
    std::vector<Arrow> f;
};

// Generic element data per (member e, i in X): the zeta triple
// (i, ev(phi_e, i), ev(f_e, i)) and the represented dbar object.
struct ZetaEntry {
    int e = -1, i = -1, j = -1;
    Arrow v;
    int dbar = -1;
};

struct DialecticaAssembly {
    std::vector<ExpIndex> index;         // Sigma_{X=>Y} Pi_X form, in enumeration order
    std::uint64_t pi_sigma_count = 0;    // |Pi_X Sigma_Y (Tx -o y)|, counted per coordinate
    std::vector<int> pi_sigma_to_index;  // iso from the Pi Sigma form (choice tuples, mixed radix) to index
    std::vector<ZetaEntry> zeta;
    std::vector<std::vector<int>> dbar;  // per member, dbar objects before the product
    std::map<std::pair<std::vector<int>, std::vector<Arrow>>, int> lookup;  // (phi, f) -> member
};

struct DialecticaHom {
    FamObj object;
    DialecticaAssembly assembly;
};

// (X, x) -o (Y, y); SizeExceeded with the required cardinality when out of bound.
DialecticaHom dialectica_hom(const FamInstance& inst, const FamObj& a, const FamObj& b);

// The bijection hom(A (x) W, B) -> hom(W, A -o B), step by step through phi.
FamArrow curry_fam(const FamInstance& inst, const FamObj& a, const FamObj& w, const FamObj& b,
                   const DialecticaHom& hom, const FamArrow& h);

// Closed forms, one per flavor, computed without the tractable data.
struct ClosedForm {
    std::vector<std::vector<int>> maps;            // phi per member
    std::vector<std::vector<Arrow>> data;          // extra index data per member, empty when none
    FamObj object;
};

ClosedForm fam_exponential(const FamInstance& inst, const FamObj& a, const FamObj& b);
// Matches members of the closed form with those of dialectica_hom and compares fibres.
ValidationReport compare_exponentials(const FamInstance& inst, const FamObj& a, const FamObj& b);

struct ClosureCheck {
    std::uint64_t max_enumeration = 1u << 20;
    std::uint64_t max_naturality = 20000;  // (h, s) pairs per W'
};

struct ClosureReport {
    ValidationReport report;
    std::uint64_t lhs = 0, rhs = 0;
    std::uint64_t naturality_checked = 0;
};

// Bijectivity for (A, W, B) and naturality along every arrow W' -> W for W' in `sources`.
ClosureReport verify_closure(const FamInstance& inst, const FamObj& a, const FamObj& w, const FamObj& b,
                             const std::vector<FamObj>& sources = {}, const ClosureCheck& check = {});

struct Fibredness {
    bool fibred = false;
    std::uint64_t first = 0;      // members of A -o B
    std::uint64_t exponent = 0;   // |Y|^|X|
    ValidationReport report;
};

Fibredness fibredness_check(const FamInstance& inst, const FamObj& a, const FamObj& b);

// Predicate-free Dialectica: Grothendieck side (tabulated, for hom counts) and Fam side (for closure).
struct DialPf {
    int n = 0;
    IndexedMonoidal indexed;
    GrothMonoidal groth;
    FamInstance fam;

    FamObj object(int u, int x) const { return FamObj(static_cast<std::size_t>(u), x); }
};

DialPf build_dial_pf(int n);

}  // namespace fibred
