#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fibred/errors.hpp"

namespace fibred {

struct MorphismRecord {
    std::string id;
    std::string dom;
    std::string cod;
};

struct CompositionEntry {
    std::string g;
    std::string f;
    std::string h;  // g o f = h
};

// Morphism produced by a construction; dom/cod are positions in the
// construction's own object list.
struct GeneratedMorphism {
    std::string id;
    int dom;
    int cod;
};

// A fully tabulated finite category. Objects and morphisms are kept in
// lexicographic order of their ids, so indices are deterministic.
class FinCat {
public:
    FinCat() = default;

    // Raw tables. Duplicate or dangling ids throw InvalidInput; axiom
    // violations (bad cells, missing composites) are kept for validate_category.
    FinCat(std::vector<std::string> objects,
           std::vector<MorphismRecord> morphisms,
           std::vector<std::pair<std::string, std::string>> identities,
           std::vector<CompositionEntry> composition);

    // Tabulates a construction. identity(obj_pos) and compose(g_pos, f_pos)
    // return positions into `morphisms`; compose is only called on composable pairs.
    static FinCat generate(std::vector<std::string> objects,
                           std::vector<GeneratedMorphism> morphisms,
                           const std::function<int(int)>& identity,
                           const std::function<int(int, int)>& compose,
                           std::vector<int>* object_index_of_pos = nullptr,
                           std::vector<int>* morphism_index_of_pos = nullptr);

    int object_count() const noexcept { return static_cast<int>(objects_.size()); }
    int morphism_count() const noexcept { return static_cast<int>(mor_ids_.size()); }

    const std::string& object(int a) const { return objects_.at(a); }
    const std::string& morphism(int f) const { return mor_ids_.at(f); }
    const std::vector<std::string>& objects() const noexcept { return objects_; }
    const std::vector<std::string>& morphism_ids() const noexcept { return mor_ids_; }

    std::optional<int> find_object(std::string_view id) const;
    std::optional<int> find_morphism(std::string_view id) const;
    int object_index(std::string_view id) const;
    int morphism_index(std::string_view id) const;

    int dom(int f) const { return dom_[f]; }
    int cod(int f) const { return cod_[f]; }
    int identity(int a) const { return identity_[a]; }  // -1 when absent
    bool is_identity(int f) const { return identity_[dom_[f]] == f; }

    // g o f, or -1 when the pair is not composable or the cell is missing.
    int compose(int g, int f) const;

    std::span<const int> hom(int a, int b) const;
    std::span<const int> out(int a) const { return out_[a]; }
    std::span<const int> in(int b) const { return in_[b]; }

    // Every stored composition cell, including ones that break the axioms.
    struct Cell {
        int g;
        int f;
        int h;
    };
    std::vector<Cell> cells() const;
    const std::vector<Cell>& stray_cells() const noexcept { return stray_; }
    const std::vector<Cell>& conflicting_cells() const noexcept { return conflicts_; }

    // Replace one composition cell (used to build negative fixtures).
    FinCat with_cell(int g, int f, int h) const;

    bool operator==(const FinCat& other) const;

private:
    void index_ids();
    void build_adjacency();
    void set_cell(int g, int f, int h);

    std::vector<std::string> objects_;
    std::vector<std::string> mor_ids_;
    std::vector<int> dom_;
    std::vector<int> cod_;
    std::vector<int> identity_;
    std::vector<std::vector<int>> out_;  // by (cod, index)
    std::vector<std::vector<int>> in_;   // by (dom, index)
    std::vector<int> pos_in_out_;
    std::vector<std::vector<int>> rows_;  // rows_[f][pos_in_out_[g]] = g o f
    std::vector<Cell> stray_;
    std::vector<Cell> conflicts_;
    std::unordered_map<std::string, int> object_lookup_;
    std::unordered_map<std::string, int> morphism_lookup_;
};

using CatPtr = std::shared_ptr<const FinCat>;

CatPtr share(FinCat c);

class FinFunctor {
public:
    FinFunctor() = default;
    FinFunctor(CatPtr source, CatPtr target, std::vector<int> obj_map, std::vector<int> mor_map);

    static FinFunctor from_ids(CatPtr source, CatPtr target,
                               const std::vector<std::pair<std::string, std::string>>& obj_map,
                               const std::vector<std::pair<std::string, std::string>>& mor_map);

    const FinCat& source() const { return *source_; }
    const FinCat& target() const { return *target_; }
    const CatPtr& source_ptr() const { return source_; }
    const CatPtr& target_ptr() const { return target_; }

    int obj(int a) const { return obj_map_[a]; }
    int mor(int f) const { return mor_map_[f]; }
    const std::vector<int>& obj_map() const noexcept { return obj_map_; }
    const std::vector<int>& mor_map() const noexcept { return mor_map_; }

    FinFunctor with_mor(int f, int image) const;

    // Equality of source, target (as tables) and both maps.
    bool operator==(const FinFunctor& other) const;

private:
    CatPtr source_;
    CatPtr target_;
    std::vector<int> obj_map_;
    std::vector<int> mor_map_;
};

struct FinNatTrans {
    FinFunctor source;
    FinFunctor target;
    std::vector<int> components;  // per source object, a morphism of the target category
};

ValidationReport validate_category(const FinCat& c);
ValidationReport validate_functor(const FinFunctor& F);
ValidationReport validate_nat_trans(const FinNatTrans& alpha);

FinFunctor identity_functor(const CatPtr& c);
FinFunctor constant_functor(const CatPtr& source, const CatPtr& target, int object);
FinFunctor compose_functors(const FinFunctor& G, const FinFunctor& F);  // G o F
FinNatTrans identity_transformation(const FinFunctor& F);

FinCat opposite(const FinCat& c);
// F^op between the given opposite categories (indices are shared with the originals).
FinFunctor opposite_functor(const FinFunctor& F, const CatPtr& source_op, const CatPtr& target_op);
FinFunctor opposite_functor(const FinFunctor& F);

std::string pair_id(std::string_view a, std::string_view b);

struct ProductCategory {
    CatPtr category;
    FinFunctor first;
    FinFunctor second;
    int object(int a, int b) const;
    int morphism(int f, int g) const;
    int c_objects = 0;
    int c_morphisms = 0;
    std::vector<int> object_of_pair;    // a * |Ob d| + b
    std::vector<int> morphism_of_pair;  // f * |Mor d| + g
};

ProductCategory product_category(const CatPtr& c, const CatPtr& d);

struct CommaCategory {
    CatPtr category;
    FinFunctor left;   // to the source of f
    FinFunctor right;  // to the source of g
    std::vector<int> alpha;  // per comma object, the morphism f(d) -> g(e)
};

CommaCategory comma_category(const FinFunctor& f, const FinFunctor& g);

enum class ShapeKind { Discrete, ParallelPair, Span, Cospan, WalkingArrow, Custom };

struct Shape {
    ShapeKind kind = ShapeKind::Discrete;
    int n = 0;
    CatPtr category;
    std::string name() const;
};

CatPtr terminal_category();
CatPtr discrete_category(int n);
Shape shape_discrete(int n);
Shape shape_parallel_pair();
Shape shape_span();
Shape shape_cospan();
Shape shape_walking_arrow();
Shape shape_custom(CatPtr c);

bool is_iso(const FinCat& c, int f);
std::optional<int> inverse(const FinCat& c, int f);

// Exhaustive search for an isomorphism of categories (bounded by object count).
std::optional<FinFunctor> find_isomorphism(const CatPtr& c, const CatPtr& d, int max_objects = 8);
// True iff F is bijective on objects and morphisms and a functor.
bool is_isomorphism(const FinFunctor& F);

}  // namespace fibred
