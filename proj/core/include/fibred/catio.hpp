#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fibred/dialectica.hpp"
#include "fibred/fibcolim.hpp"
#include "fibred/groth.hpp"
#include "fibred/indexed.hpp"
#include "fibred/monoidal.hpp"

namespace fibred {

// Text format, version 1. A document starts with `fibred 1 <kind>` and is a
// list of statements, one per line: a key, whitespace separated arguments,
// and optionally a `{ ... }` block of nested statements. `#` starts a comment.
//
//   fibred 1 category
//   objects 0 1
//   arrow a : 0 -> 1
//   arrow id_0 : 0 -> 0
//   arrow id_1 : 1 -> 1
//   identity 0 id_0
//   identity 1 id_1
//
// Composites with an identity are filled in when omitted and left out when
// printed. `builtin NAME ARGS` replaces the tables with a named construction.

struct SourceLoc {
    int line = 0;
    int column = 0;
};

class DocumentError : public Error {
public:
    DocumentError(ErrorCode code, SourceLoc at, const std::string& message);
    SourceLoc where() const noexcept { return at_; }

private:
    SourceLoc at_;
};

enum class DocKind { Category, Functor, NatTrans, Indexed, Monoidal, Tractable, Instance };

const char* doc_kind_name(DocKind k);

struct Builtin {
    std::string name;
    std::vector<std::string> args;
    bool operator==(const Builtin&) const = default;
};

using IdMap = std::vector<std::pair<std::string, std::string>>;

struct CategoryDoc {
    std::optional<Builtin> builtin;
    std::vector<std::string> objects;
    std::vector<MorphismRecord> arrows;
    IdMap identities;                      // object -> identity arrow
    std::vector<CompositionEntry> compose;
};

struct FunctorDoc {
    CategoryDoc source;
    std::optional<CategoryDoc> target;  // absent: the total category of an indexed document
    IdMap objects;
    IdMap arrows;
};

struct NatTransDoc {
    FunctorDoc source;
    FunctorDoc target;
    IdMap components;
};

struct ReindexDoc {
    std::string arrow;  // base arrow f : A -> B; the maps go fibre(B) -> fibre(A)
    IdMap objects;
    IdMap arrows;
};

struct ComponentsDoc {
    std::vector<std::string> at;  // object, or the pair (f, g) for compositors
    IdMap components;
};

struct IndexedDoc {
    std::optional<Builtin> builtin;    // fam N, representable C, pseudo_swap, dial_pf N
    std::optional<CategoryDoc> base;
    std::optional<CategoryDoc> values; // d for fam
    std::vector<std::pair<std::string, CategoryDoc>> fibres;
    std::vector<ReindexDoc> reindex;
    std::vector<ComponentsDoc> unitors;
    std::vector<ComponentsDoc> compositors;
};

// dbar A B K X: dbar on (A, B, K-th arrow of N(A, TB)) becomes X; K may be `*`.
struct Perturbation {
    std::string what;
    std::vector<std::string> args;
    bool operator==(const Perturbation&) const = default;
};

struct MonoidalDoc {
    std::optional<Builtin> builtin;      // finset_cartesian N, finset_cocartesian N, pset_cocartesian N, f2_biproduct N
    std::optional<CategoryDoc> carrier;
    std::string structure;               // cartesian | cocartesian, with a carrier
    std::vector<Perturbation> perturb;   // associator A B C M
};

struct TractableDoc {
    std::optional<Builtin> builtin;      // finset_cartesian N, pset N, extensive N, f2_biproduct N
    std::optional<CategoryDoc> carrier;
    std::string structure;               // cartesian | cocartesian | poset, with a carrier
    std::vector<Perturbation> perturb;
};

struct InstanceDoc {
    std::string flavor;                  // closed | biproduct | extensive | partial_maps | dial_pf
    int size = 0;
    std::optional<CategoryDoc> lattice;  // closed only
    std::vector<Perturbation> perturb;
};

using DocBody = std::variant<CategoryDoc, FunctorDoc, NatTransDoc, IndexedDoc, MonoidalDoc, TractableDoc, InstanceDoc>;

struct Document {
    int format_version = 1;
    DocKind kind = DocKind::Category;
    DocBody body;
};

// SyntaxError, UnknownField and DanglingReference carry a location.
Document parse_document(std::string_view text);
std::string print_document(const Document& doc);
Document read_document(const std::filesystem::path& path);  // InvalidInput when unreadable

CatPtr build_category(const CategoryDoc& d);
// `total` resolves a functor without a target.
FinFunctor build_functor(const FunctorDoc& d, const GrothCat* total = nullptr);
FinNatTrans build_nat_trans(const NatTransDoc& d);
IndexedCat build_indexed(const IndexedDoc& d);
MonoidalData build_monoidal(const MonoidalDoc& d);
TractableInstance build_tractable(const TractableDoc& d);
FamInstance build_instance(const InstanceDoc& d);

CategoryDoc describe_category(const FinCat& c);
Document category_document(const FinCat& c);

// Runs the validator for the document's kind. Tractable data on a tabulated
// carrier is checked on every object, builtins up to size 3.
ValidationReport validate_document(const Document& doc);

// A diagram given as a functor into the total category.
DiagramPair diagram_from_total(const GrothCat& G, const FinFunctor& J);

// "(U,X)" is a constant family, "[x0,x1,...]" lists the members.
FamObj parse_fam_object(std::string_view s);
std::string show_fam_object(const FamObj& x);

}  // namespace fibred
