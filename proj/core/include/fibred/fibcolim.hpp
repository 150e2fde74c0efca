#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fibred/groth.hpp"
#include "fibred/search.hpp"

namespace fibred {

// J1 : shape -> base together with a section J2 of L restricted along J1.
struct DiagramPair {
    Shape shape;
    FinFunctor J1;
    SectionObj J2;
};

ValidationReport validate_diagram(const IndexedCat& L, const DiagramPair& D);

// e |-> (J1 e, X_e), u |-> (J1 u, xi_u).
FinFunctor total_diagram(const GrothCat& G, const DiagramPair& D);

struct FibredResult {
    int base_apex = -1;
    std::vector<int> lambda;  // base (co)cone legs
    int fibre_object = -1;    // in the fibre over base_apex
    Cone fibre_cone;          // limit: in the apex fibre; colimit: unused
    int total_object = -1;
    Cone total_cone;
    std::string route;        // colimits: "global adjoint" or "pointwise"
};

FibredResult fibred_limit(const GrothCat& G, const DiagramPair& D);
FibredResult fibred_colimit(const GrothCat& G, const DiagramPair& D);

// The comparison functor L(apex) -> sections over the diagram, for a base cocone.
struct Comparison {
    IndexedCat restricted;
    SectionsCategory sections;
    FinFunctor functor;
};

Comparison comparison_functor(const IndexedCat& L, const FinFunctor& J1, int apex, const std::vector<int>& lambda);

// Formula path against search on the total category.
struct OracleComparison {
    bool formula_ok = false;
    bool oracle_ok = false;
    std::optional<FibredResult> formula;
    std::optional<Cone> oracle;
    std::string formula_error;  // error code name
    std::string formula_message;
    std::string oracle_message;
    int iso = -1;            // total morphism between the two apexes when both succeed
    bool consistent = false; // agreement, or a formula failure the oracle explains
};

OracleComparison compare_limit(const GrothCat& G, const DiagramPair& D);
OracleComparison compare_colimit(const GrothCat& G, const DiagramPair& D);

struct MateResult {
    int coequalizer = -1;  // base object Q
    int q = -1;            // base morphism B -> Q
    int lambda0 = -1;      // base morphism A -> Q
    int alpha_hat = -1;    // fibre morphisms over Q
    int beta_hat = -1;
    int fibre_object = -1;
    int total_object = -1;
    Cone total_cocone;
};

// (f, alpha), (g, beta) : (A, X) => (B, Y) in the total category.
MateResult coequalizer_via_mates(const GrothCat& G, int f, int alpha, int g, int beta, int x, int y);

enum class Extensivity { Extensive, LeftKan, Neither };

const char* extensivity_name(Extensivity e);

struct ExtensivityReport {
    Extensivity verdict = Extensivity::Extensive;
    int diagrams_checked = 0;
    int diagrams_skipped = 0;  // no base colimit
    std::optional<FinFunctor> witness;  // weakest diagram
    std::string detail;
};

// Generators default to every diagram of the shape in the base.
ExtensivityReport check_extensive(const IndexedCat& L, const Shape& shape,
                                  const std::vector<FinFunctor>* generators = nullptr);

bool groupoid_check(const FinCat& c);

// Full faithfulness plus essential surjectivity.
bool is_equivalence(const FinFunctor& F, std::string* obstruction = nullptr);

}  // namespace fibred
