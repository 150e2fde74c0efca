#include "fibred/fincat.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace fibred {

namespace {

std::vector<int> sorted_order(const std::vector<std::string>& ids) {
    std::vector<int> order(ids.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return ids[a] < ids[b]; });
    return order;
}

void require_unique(const std::vector<std::string>& sorted, const char* what) {
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i] == sorted[i - 1]) {
            fail(ErrorCode::InvalidInput, std::string("duplicate ") + what + " id '" + sorted[i] + "'");
        }
    }
}

}  // namespace

FinCat::FinCat(std::vector<std::string> objects,
               std::vector<MorphismRecord> morphisms,
               std::vector<std::pair<std::string, std::string>> identities,
               std::vector<CompositionEntry> composition) {
    std::sort(objects.begin(), objects.end());
    require_unique(objects, "object");
    objects_ = std::move(objects);

    std::sort(morphisms.begin(), morphisms.end(),
              [](const MorphismRecord& a, const MorphismRecord& b) { return a.id < b.id; });
    for (const auto& m : morphisms) mor_ids_.push_back(m.id);
    require_unique(mor_ids_, "morphism");
    index_ids();

    for (const auto& m : morphisms) {
        auto d = find_object(m.dom);
        auto c = find_object(m.cod);
        if (!d || !c) {
            fail(ErrorCode::DanglingReference,
                 "morphism '" + m.id + "' cites missing object '" + (!d ? m.dom : m.cod) + "'");
        }
        dom_.push_back(*d);
        cod_.push_back(*c);
    }

    identity_.assign(objects_.size(), -1);
    for (const auto& [obj, mor] : identities) {
        auto a = find_object(obj);
        auto f = find_morphism(mor);
        if (!a) fail(ErrorCode::DanglingReference, "identity cites missing object '" + obj + "'");
        if (!f) fail(ErrorCode::DanglingReference, "identity cites missing morphism '" + mor + "'");
        if (identity_[*a] != -1 && identity_[*a] != *f) {
            fail(ErrorCode::InvalidInput, "object '" + obj + "' has two identities");
        }
        identity_[*a] = *f;
    }

    build_adjacency();
    for (const auto& e : composition) {
        auto g = find_morphism(e.g);
        auto f = find_morphism(e.f);
        auto h = find_morphism(e.h);
        if (!g || !f || !h) {
            const std::string& missing = !g ? e.g : (!f ? e.f : e.h);
            fail(ErrorCode::DanglingReference, "composition cites missing morphism '" + missing + "'");
        }
        set_cell(*g, *f, *h);
    }
}

FinCat FinCat::generate(std::vector<std::string> objects,
                        std::vector<GeneratedMorphism> morphisms,
                        const std::function<int(int)>& identity,
                        const std::function<int(int, int)>& compose,
                        std::vector<int>* object_index_of_pos,
                        std::vector<int>* morphism_index_of_pos) {
    FinCat c;
    const auto obj_order = sorted_order(objects);
    std::vector<int> obj_index(objects.size());
    for (std::size_t i = 0; i < obj_order.size(); ++i) {
        obj_index[obj_order[i]] = static_cast<int>(i);
        c.objects_.push_back(std::move(objects[obj_order[i]]));
    }
    require_unique(c.objects_, "object");

    std::vector<std::string> mor_ids;
    mor_ids.reserve(morphisms.size());
    for (const auto& m : morphisms) mor_ids.push_back(m.id);
    const auto mor_order = sorted_order(mor_ids);
    std::vector<int> mor_index(morphisms.size());
    for (std::size_t i = 0; i < mor_order.size(); ++i) {
        const auto& m = morphisms[mor_order[i]];
        mor_index[mor_order[i]] = static_cast<int>(i);
        c.mor_ids_.push_back(m.id);
        c.dom_.push_back(obj_index[m.dom]);
        c.cod_.push_back(obj_index[m.cod]);
    }
    require_unique(c.mor_ids_, "morphism");
    c.index_ids();

    c.identity_.assign(c.objects_.size(), -1);
    for (std::size_t pos = 0; pos < obj_index.size(); ++pos) {
        c.identity_[obj_index[pos]] = mor_index[identity(static_cast<int>(pos))];
    }
    c.build_adjacency();
    for (int f = 0; f < c.morphism_count(); ++f) {
        const auto& row_targets = c.out_[c.cod_[f]];
        auto& row = c.rows_[f];
        for (std::size_t k = 0; k < row_targets.size(); ++k) {
            const int g = row_targets[k];
            row[k] = mor_index[compose(mor_order[g], mor_order[f])];
        }
    }
    if (object_index_of_pos) *object_index_of_pos = std::move(obj_index);
    if (morphism_index_of_pos) *morphism_index_of_pos = std::move(mor_index);
    return c;
}

void FinCat::index_ids() {
    object_lookup_.clear();
    morphism_lookup_.clear();
    object_lookup_.reserve(objects_.size());
    morphism_lookup_.reserve(mor_ids_.size());
    for (int i = 0; i < object_count(); ++i) object_lookup_.emplace(objects_[i], i);
    for (int i = 0; i < morphism_count(); ++i) morphism_lookup_.emplace(mor_ids_[i], i);
}

void FinCat::build_adjacency() {
    const int n = object_count();
    const int m = morphism_count();
    out_.assign(n, {});
    in_.assign(n, {});
    for (int f = 0; f < m; ++f) {
        out_[dom_[f]].push_back(f);
        in_[cod_[f]].push_back(f);
    }
    for (auto& row : out_) {
        std::stable_sort(row.begin(), row.end(), [&](int a, int b) { return cod_[a] < cod_[b]; });
    }
    for (auto& row : in_) {
        std::stable_sort(row.begin(), row.end(), [&](int a, int b) { return dom_[a] < dom_[b]; });
    }
    pos_in_out_.assign(m, 0);
    for (const auto& row : out_) {
        for (std::size_t k = 0; k < row.size(); ++k) pos_in_out_[row[k]] = static_cast<int>(k);
    }
    rows_.assign(m, {});
    for (int f = 0; f < m; ++f) rows_[f].assign(out_[cod_[f]].size(), -1);
}

void FinCat::set_cell(int g, int f, int h) {
    if (dom_[g] != cod_[f]) {
        stray_.push_back({g, f, h});
        return;
    }
    int& cell = rows_[f][pos_in_out_[g]];
    if (cell != -1 && cell != h) {
        conflicts_.push_back({g, f, h});
        return;
    }
    cell = h;
}

std::optional<int> FinCat::find_object(std::string_view id) const {
    auto it = object_lookup_.find(std::string(id));
    if (it == object_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> FinCat::find_morphism(std::string_view id) const {
    auto it = morphism_lookup_.find(std::string(id));
    if (it == morphism_lookup_.end()) return std::nullopt;
    return it->second;
}

int FinCat::object_index(std::string_view id) const {
    auto r = find_object(id);
    if (!r) fail(ErrorCode::NotFound, "no object '" + std::string(id) + "'");
    return *r;
}

int FinCat::morphism_index(std::string_view id) const {
    auto r = find_morphism(id);
    if (!r) fail(ErrorCode::NotFound, "no morphism '" + std::string(id) + "'");
    return *r;
}

int FinCat::compose(int g, int f) const {
    if (dom_[g] != cod_[f]) return -1;
    return rows_[f][pos_in_out_[g]];
}

std::span<const int> FinCat::hom(int a, int b) const {
    const auto& row = out_[a];
    auto lo = std::lower_bound(row.begin(), row.end(), b, [&](int f, int t) { return cod_[f] < t; });
    auto hi = std::upper_bound(lo, row.end(), b, [&](int t, int f) { return t < cod_[f]; });
    return {row.data() + (lo - row.begin()), static_cast<std::size_t>(hi - lo)};
}

std::vector<FinCat::Cell> FinCat::cells() const {
    std::vector<Cell> out;
    for (int f = 0; f < morphism_count(); ++f) {
        const auto& targets = out_[cod_[f]];
        for (std::size_t k = 0; k < targets.size(); ++k) {
            if (rows_[f][k] != -1) out.push_back({targets[k], f, rows_[f][k]});
        }
    }
    out.insert(out.end(), stray_.begin(), stray_.end());
    return out;
}

FinCat FinCat::with_cell(int g, int f, int h) const {
    FinCat c = *this;
    if (c.dom_[g] == c.cod_[f]) {
        c.rows_[f][c.pos_in_out_[g]] = h;
    } else {
        c.stray_.push_back({g, f, h});
    }
    return c;
}

bool FinCat::operator==(const FinCat& other) const {
    auto same_cells = [](const std::vector<Cell>& a, const std::vector<Cell>& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].g != b[i].g || a[i].f != b[i].f || a[i].h != b[i].h) return false;
        }
        return true;
    };
    return objects_ == other.objects_ && mor_ids_ == other.mor_ids_ && dom_ == other.dom_ &&
           cod_ == other.cod_ && identity_ == other.identity_ && rows_ == other.rows_ &&
           same_cells(stray_, other.stray_) && same_cells(conflicts_, other.conflicts_);
}

CatPtr share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

FinFunctor::FinFunctor(CatPtr source, CatPtr target, std::vector<int> obj_map, std::vector<int> mor_map)
    : source_(std::move(source)), target_(std::move(target)), obj_map_(std::move(obj_map)),
      mor_map_(std::move(mor_map)) {
    if (!source_ || !target_) fail(ErrorCode::InvalidInput, "functor needs source and target");
    if (static_cast<int>(obj_map_.size()) != source_->object_count() ||
        static_cast<int>(mor_map_.size()) != source_->morphism_count()) {
        fail(ErrorCode::InvalidInput, "functor maps do not cover the source category");
    }
    for (int x : obj_map_) {
        if (x < 0 || x >= target_->object_count()) fail(ErrorCode::InvalidInput, "object image out of range");
    }
    for (int x : mor_map_) {
        if (x < 0 || x >= target_->morphism_count()) fail(ErrorCode::InvalidInput, "morphism image out of range");
    }
}

FinFunctor FinFunctor::from_ids(CatPtr source, CatPtr target,
                                const std::vector<std::pair<std::string, std::string>>& obj_map,
                                const std::vector<std::pair<std::string, std::string>>& mor_map) {
    std::vector<int> objs(source->object_count(), -1);
    std::vector<int> mors(source->morphism_count(), -1);
    for (const auto& [a, b] : obj_map) {
        auto x = source->find_object(a);
        auto y = target->find_object(b);
        if (!x || !y) fail(ErrorCode::DanglingReference, "object map cites '" + (!x ? a : b) + "'");
        objs[*x] = *y;
    }
    for (const auto& [f, g] : mor_map) {
        auto x = source->find_morphism(f);
        auto y = target->find_morphism(g);
        if (!x || !y) fail(ErrorCode::DanglingReference, "morphism map cites '" + (!x ? f : g) + "'");
        mors[*x] = *y;
    }
    for (int a = 0; a < source->object_count(); ++a) {
        if (objs[a] < 0) fail(ErrorCode::InvalidInput, "object '" + source->object(a) + "' has no image");
    }
    for (int f = 0; f < source->morphism_count(); ++f) {
        if (mors[f] < 0) fail(ErrorCode::InvalidInput, "morphism '" + source->morphism(f) + "' has no image");
    }
    return FinFunctor(std::move(source), std::move(target), std::move(objs), std::move(mors));
}

FinFunctor FinFunctor::with_mor(int f, int image) const {
    FinFunctor F = *this;
    F.mor_map_.at(f) = image;
    return F;
}

bool FinFunctor::operator==(const FinFunctor& other) const {
    auto same = [](const CatPtr& a, const CatPtr& b) { return a == b || *a == *b; };
    return same(source_, other.source_) && same(target_, other.target_) && obj_map_ == other.obj_map_ &&
           mor_map_ == other.mor_map_;
}

ValidationReport validate_category(const FinCat& c) {
    ValidationReport r;
    const int n = c.object_count();
    const int m = c.morphism_count();
    for (int a = 0; a < n; ++a) {
        const int i = c.identity(a);
        if (i < 0) {
            r.add("MissingIdentity", "object has no identity", {c.object(a)});
        } else if (c.dom(i) != a || c.cod(i) != a) {
            r.add("IdentityEndpoints", "identity is not an endomorphism of its object", {c.object(a), c.morphism(i)});
        }
    }
    for (const auto& cell : c.stray_cells()) {
        r.add("SpuriousComposite", "composite recorded for a non-composable pair",
              {c.morphism(cell.g), c.morphism(cell.f)});
    }
    for (const auto& cell : c.conflicting_cells()) {
        r.add("ConflictingComposite", "pair has two different composites", {c.morphism(cell.g), c.morphism(cell.f)});
    }
    bool complete = true;
    for (int f = 0; f < m; ++f) {
        for (int g : c.out(c.cod(f))) {
            const int h = c.compose(g, f);
            if (h < 0) {
                complete = false;
                r.add("MissingComposite", "composable pair has no composite", {c.morphism(g), c.morphism(f)});
            } else if (c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g)) {
                complete = false;
                r.add("CompositeEndpoints", "composite has wrong domain or codomain",
                      {c.morphism(g), c.morphism(f), c.morphism(h)});
            }
        }
    }
    for (int f = 0; f < m; ++f) {
        const int left = c.identity(c.cod(f));
        const int right = c.identity(c.dom(f));
        if (left >= 0 && c.compose(left, f) >= 0 && c.compose(left, f) != f) {
            r.add("LeftIdentity", "id o f != f", {c.morphism(f)});
        }
        if (right >= 0 && c.compose(f, right) >= 0 && c.compose(f, right) != f) {
            r.add("RightIdentity", "f o id != f", {c.morphism(f)});
        }
    }
    if (!complete) return r;
    for (int f = 0; f < m; ++f) {
        for (int g : c.out(c.cod(f))) {
            const int gf = c.compose(g, f);
            for (int h : c.out(c.cod(g))) {
                const int lhs = c.compose(h, gf);
                const int rhs = c.compose(c.compose(h, g), f);
                if (lhs != rhs) {
                    r.add("Associativity", "h o (g o f) != (h o g) o f",
                          {c.morphism(h), c.morphism(g), c.morphism(f)});
                }
            }
        }
    }
    return r;
}

ValidationReport validate_functor(const FinFunctor& F) {
    ValidationReport r;
    const FinCat& s = F.source();
    const FinCat& t = F.target();
    for (int f = 0; f < s.morphism_count(); ++f) {
        const int Ff = F.mor(f);
        if (t.dom(Ff) != F.obj(s.dom(f)) || t.cod(Ff) != F.obj(s.cod(f))) {
            r.add("FunctorEndpoints", "F(f) does not go from F(dom f) to F(cod f)", {s.morphism(f), t.morphism(Ff)});
        }
    }
    for (int a = 0; a < s.object_count(); ++a) {
        const int i = s.identity(a);
        if (i >= 0 && F.mor(i) != t.identity(F.obj(a))) {
            r.add("FunctorIdentity", "F(id) is not an identity", {s.object(a)});
        }
    }
    if (!r.ok()) return r;
    for (int f = 0; f < s.morphism_count(); ++f) {
        for (int g : s.out(s.cod(f))) {
            const int gf = s.compose(g, f);
            if (gf < 0) continue;
            if (F.mor(gf) != t.compose(F.mor(g), F.mor(f))) {
                r.add("FunctorComposition", "F(g o f) != F(g) o F(f)", {s.morphism(g), s.morphism(f)});
            }
        }
    }
    return r;
}

ValidationReport validate_nat_trans(const FinNatTrans& alpha) {
    ValidationReport r;
    const FinFunctor& F = alpha.source;
    const FinFunctor& G = alpha.target;
    auto same = [](const CatPtr& a, const CatPtr& b) { return a == b || *a == *b; };
    if (!same(F.source_ptr(), G.source_ptr()) || !same(F.target_ptr(), G.target_ptr())) {
        r.add("NatTransShape", "source and target functors are not parallel");
        return r;
    }
    const FinCat& s = F.source();
    const FinCat& t = F.target();
    if (static_cast<int>(alpha.components.size()) != s.object_count()) {
        r.add("NatTransShape", "component count differs from object count");
        return r;
    }
    for (int a = 0; a < s.object_count(); ++a) {
        const int c = alpha.components[a];
        if (c < 0 || c >= t.morphism_count() || t.dom(c) != F.obj(a) || t.cod(c) != G.obj(a)) {
            r.add("ComponentEndpoints", "component does not go from F(a) to G(a)", {s.object(a)});
        }
    }
    if (!r.ok()) return r;
    for (int u = 0; u < s.morphism_count(); ++u) {
        const int a = s.dom(u);
        const int b = s.cod(u);
        const int lhs = t.compose(G.mor(u), alpha.components[a]);
        const int rhs = t.compose(alpha.components[b], F.mor(u));
        if (lhs != rhs) {
            r.add("Naturality", "naturality square fails", {s.morphism(u), t.morphism(alpha.components[a]),
                                                          t.morphism(alpha.components[b])});
        }
    }
    return r;
}

FinFunctor identity_functor(const CatPtr& c) {
    std::vector<int> objs(c->object_count());
    std::vector<int> mors(c->morphism_count());
    std::iota(objs.begin(), objs.end(), 0);
    std::iota(mors.begin(), mors.end(), 0);
    return FinFunctor(c, c, std::move(objs), std::move(mors));
}

FinFunctor constant_functor(const CatPtr& source, const CatPtr& target, int object) {
    std::vector<int> objs(source->object_count(), object);
    std::vector<int> mors(source->morphism_count(), target->identity(object));
    return FinFunctor(source, target, std::move(objs), std::move(mors));
}

FinFunctor compose_functors(const FinFunctor& G, const FinFunctor& F) {
    std::vector<int> objs(F.source().object_count());
    std::vector<int> mors(F.source().morphism_count());
    for (std::size_t a = 0; a < objs.size(); ++a) objs[a] = G.obj(F.obj(static_cast<int>(a)));
    for (std::size_t f = 0; f < mors.size(); ++f) mors[f] = G.mor(F.mor(static_cast<int>(f)));
    return FinFunctor(F.source_ptr(), G.target_ptr(), std::move(objs), std::move(mors));
}

FinNatTrans identity_transformation(const FinFunctor& F) {
    std::vector<int> comps(F.source().object_count());
    for (std::size_t a = 0; a < comps.size(); ++a) comps[a] = F.target().identity(F.obj(static_cast<int>(a)));
    return {F, F, std::move(comps)};
}

FinCat opposite(const FinCat& c) {
    std::vector<MorphismRecord> mors;
    mors.reserve(c.morphism_count());
    for (int f = 0; f < c.morphism_count(); ++f) {
        mors.push_back({c.morphism(f), c.object(c.cod(f)), c.object(c.dom(f))});
    }
    std::vector<std::pair<std::string, std::string>> ids;
    for (int a = 0; a < c.object_count(); ++a) {
        if (c.identity(a) >= 0) ids.emplace_back(c.object(a), c.morphism(c.identity(a)));
    }
    // Cells are re-derived through generate-style tables to keep this O(cells).
    std::vector<GeneratedMorphism> gen;
    gen.reserve(mors.size());
    for (int f = 0; f < c.morphism_count(); ++f) gen.push_back({c.morphism(f), c.cod(f), c.dom(f)});
    const bool clean = c.stray_cells().empty() && c.conflicting_cells().empty();
    bool total = true;
    for (int a = 0; a < c.object_count() && total; ++a) total = c.identity(a) >= 0;
    for (int f = 0; f < c.morphism_count() && total; ++f) {
        for (int g : c.out(c.cod(f))) {
            if (c.compose(g, f) < 0) {
                total = false;
                break;
            }
        }
    }
    if (clean && total) {
        return FinCat::generate(
            c.objects(), std::move(gen), [&](int a) { return c.identity(a); },
            [&](int g, int f) { return c.compose(f, g); });
    }
    std::vector<CompositionEntry> comp;
    for (const auto& cell : c.cells()) {
        comp.push_back({c.morphism(cell.f), c.morphism(cell.g), c.morphism(cell.h)});
    }
    for (const auto& cell : c.conflicting_cells()) {
        comp.push_back({c.morphism(cell.f), c.morphism(cell.g), c.morphism(cell.h)});
    }
    return FinCat(c.objects(), std::move(mors), std::move(ids), std::move(comp));
}

FinFunctor opposite_functor(const FinFunctor& F, const CatPtr& source_op, const CatPtr& target_op) {
    return FinFunctor(source_op, target_op, F.obj_map(), F.mor_map());
}

FinFunctor opposite_functor(const FinFunctor& F) {
    return opposite_functor(F, share(opposite(F.source())), share(opposite(F.target())));
}

std::string pair_id(std::string_view a, std::string_view b) {
    std::string s;
    s.reserve(a.size() + b.size() + 3);
    s += '(';
    s += a;
    s += ',';
    s += b;
    s += ')';
    return s;
}

int ProductCategory::object(int a, int b) const {
    return object_of_pair[static_cast<std::size_t>(a) * (object_of_pair.size() / c_objects) + b];
}

int ProductCategory::morphism(int f, int g) const {
    return morphism_of_pair[static_cast<std::size_t>(f) * (morphism_of_pair.size() / c_morphisms) + g];
}

ProductCategory product_category(const CatPtr& c, const CatPtr& d) {
    const int nc = c->object_count();
    const int nd = d->object_count();
    const int mc = c->morphism_count();
    const int md = d->morphism_count();
    std::vector<std::string> objs;
    objs.reserve(static_cast<std::size_t>(nc) * nd);
    for (int a = 0; a < nc; ++a) {
        for (int b = 0; b < nd; ++b) objs.push_back(pair_id(c->object(a), d->object(b)));
    }
    std::vector<GeneratedMorphism> mors;
    mors.reserve(static_cast<std::size_t>(mc) * md);
    for (int f = 0; f < mc; ++f) {
        for (int g = 0; g < md; ++g) {
            mors.push_back({pair_id(c->morphism(f), d->morphism(g)), c->dom(f) * nd + d->dom(g),
                            c->cod(f) * nd + d->cod(g)});
        }
    }
    ProductCategory p;
    p.c_objects = nc;
    p.c_morphisms = mc;
    FinCat cat = FinCat::generate(
        std::move(objs), std::move(mors),
        [&](int pos) { return c->identity(pos / nd) * md + d->identity(pos % nd); },
        [&](int gpos, int fpos) {
            return c->compose(gpos / md, fpos / md) * md + d->compose(gpos % md, fpos % md);
        },
        &p.object_of_pair, &p.morphism_of_pair);
    p.category = share(std::move(cat));
    std::vector<int> o1(p.category->object_count()), o2(p.category->object_count());
    std::vector<int> m1(p.category->morphism_count()), m2(p.category->morphism_count());
    for (int pos = 0; pos < nc * nd; ++pos) {
        o1[p.object_of_pair[pos]] = pos / nd;
        o2[p.object_of_pair[pos]] = pos % nd;
    }
    for (int pos = 0; pos < mc * md; ++pos) {
        m1[p.morphism_of_pair[pos]] = pos / md;
        m2[p.morphism_of_pair[pos]] = pos % md;
    }
    p.first = FinFunctor(p.category, c, std::move(o1), std::move(m1));
    p.second = FinFunctor(p.category, d, std::move(o2), std::move(m2));
    return p;
}

CommaCategory comma_category(const FinFunctor& f, const FinFunctor& g) {
    const FinCat& C = f.target();
    const FinCat& D = f.source();
    const FinCat& E = g.source();
    if (!(f.target_ptr() == g.target_ptr() || f.target() == g.target())) {
        fail(ErrorCode::InvalidInput, "comma category needs functors into the same category");
    }
    struct Obj {
        int d, e, alpha;
    };
    std::vector<Obj> objs;
    std::vector<std::string> obj_ids;
    for (int d = 0; d < D.object_count(); ++d) {
        for (int e = 0; e < E.object_count(); ++e) {
            for (int a : C.hom(f.obj(d), g.obj(e))) {
                objs.push_back({d, e, a});
                obj_ids.push_back("(" + D.object(d) + "," + E.object(e) + "," + C.morphism(a) + ")");
            }
        }
    }
    struct Mor {
        int src, tgt, h, k;
    };
    std::vector<Mor> mors;
    std::vector<GeneratedMorphism> gen;
    std::map<std::tuple<int, int, int, int>, int> lookup;
    for (int s = 0; s < static_cast<int>(objs.size()); ++s) {
        for (int t = 0; t < static_cast<int>(objs.size()); ++t) {
            const Obj& x = objs[s];
            const Obj& y = objs[t];
            for (int h : D.hom(x.d, y.d)) {
                for (int k : E.hom(x.e, y.e)) {
                    if (C.compose(g.mor(k), x.alpha) != C.compose(y.alpha, f.mor(h))) continue;
                    lookup[{s, t, h, k}] = static_cast<int>(mors.size());
                    mors.push_back({s, t, h, k});
                    gen.push_back({"<" + obj_ids[s] + ";" + D.morphism(h) + ";" + E.morphism(k) + ";" + obj_ids[t] + ">",
                                   s, t});
                }
            }
        }
    }
    std::vector<int> obj_index;
    std::vector<int> mor_index;
    CommaCategory out;
    FinCat cat = FinCat::generate(
        obj_ids, gen,
        [&](int pos) { return lookup.at({pos, pos, D.identity(objs[pos].d), E.identity(objs[pos].e)}); },
        [&](int gp, int fp) {
            const Mor& a = mors[fp];
            const Mor& b = mors[gp];
            return lookup.at({a.src, b.tgt, D.compose(b.h, a.h), E.compose(b.k, a.k)});
        },
        &obj_index, &mor_index);
    out.category = share(std::move(cat));
    const int n = out.category->object_count();
    const int m = out.category->morphism_count();
    std::vector<int> lo(n), ro(n), lm(m), rm(m);
    out.alpha.assign(n, -1);
    for (std::size_t pos = 0; pos < objs.size(); ++pos) {
        lo[obj_index[pos]] = objs[pos].d;
        ro[obj_index[pos]] = objs[pos].e;
        out.alpha[obj_index[pos]] = objs[pos].alpha;
    }
    for (std::size_t pos = 0; pos < mors.size(); ++pos) {
        lm[mor_index[pos]] = mors[pos].h;
        rm[mor_index[pos]] = mors[pos].k;
    }
    out.left = FinFunctor(out.category, f.source_ptr(), std::move(lo), std::move(lm));
    out.right = FinFunctor(out.category, g.source_ptr(), std::move(ro), std::move(rm));
    return out;
}

namespace {

// Small category whose only composites involve identities.
CatPtr arrows_only(std::vector<std::string> objects, const std::vector<MorphismRecord>& arrows) {
    std::vector<MorphismRecord> mors = arrows;
    std::vector<std::pair<std::string, std::string>> ids;
    std::vector<CompositionEntry> comp;
    for (const auto& o : objects) {
        mors.push_back({"id_" + o, o, o});
        ids.emplace_back(o, "id_" + o);
        comp.push_back({"id_" + o, "id_" + o, "id_" + o});
    }
    for (const auto& a : arrows) {
        comp.push_back({"id_" + a.cod, a.id, a.id});
        comp.push_back({a.id, "id_" + a.dom, a.id});
    }
    return share(FinCat(std::move(objects), std::move(mors), std::move(ids), std::move(comp)));
}

}  // namespace

std::string Shape::name() const {
    switch (kind) {
        case ShapeKind::Discrete: return "discrete(" + std::to_string(n) + ")";
        case ShapeKind::ParallelPair: return "parallel_pair";
        case ShapeKind::Span: return "span";
        case ShapeKind::Cospan: return "cospan";
        case ShapeKind::WalkingArrow: return "walking_arrow";
        case ShapeKind::Custom: return "custom";
    }
    return "custom";
}

CatPtr terminal_category() { return arrows_only({"*"}, {}); }

CatPtr discrete_category(int n) {
    std::vector<std::string> objs;
    for (int i = 0; i < n; ++i) objs.push_back(std::to_string(i));
    return arrows_only(std::move(objs), {});
}

Shape shape_discrete(int n) { return {ShapeKind::Discrete, n, discrete_category(n)}; }

Shape shape_parallel_pair() {
    return {ShapeKind::ParallelPair, 2, arrows_only({"0", "1"}, {{"u", "0", "1"}, {"v", "0", "1"}})};
}

Shape shape_span() {
    return {ShapeKind::Span, 3, arrows_only({"0", "1", "2"}, {{"p", "0", "1"}, {"q", "0", "2"}})};
}

Shape shape_cospan() {
    return {ShapeKind::Cospan, 3, arrows_only({"0", "1", "2"}, {{"p", "1", "0"}, {"q", "2", "0"}})};
}

Shape shape_walking_arrow() { return {ShapeKind::WalkingArrow, 2, arrows_only({"0", "1"}, {{"a", "0", "1"}})}; }

Shape shape_custom(CatPtr c) {
    const int n = c->object_count();
    return {ShapeKind::Custom, n, std::move(c)};
}

std::optional<int> inverse(const FinCat& c, int f) {
    for (int g : c.hom(c.cod(f), c.dom(f))) {
        if (c.compose(g, f) == c.identity(c.dom(f)) && c.compose(f, g) == c.identity(c.cod(f))) return g;
    }
    return std::nullopt;
}

bool is_iso(const FinCat& c, int f) { return inverse(c, f).has_value(); }

bool is_isomorphism(const FinFunctor& F) {
    if (!validate_functor(F).ok()) return false;
    const FinCat& s = F.source();
    const FinCat& t = F.target();
    if (s.object_count() != t.object_count() || s.morphism_count() != t.morphism_count()) return false;
    std::vector<char> seen_o(t.object_count(), 0), seen_m(t.morphism_count(), 0);
    for (int a = 0; a < s.object_count(); ++a) {
        if (seen_o[F.obj(a)]++) return false;
    }
    for (int f = 0; f < s.morphism_count(); ++f) {
        if (seen_m[F.mor(f)]++) return false;
    }
    return true;
}

namespace {

struct IsoSearch {
    const FinCat& c;
    const FinCat& d;
    std::vector<int> obj;
    std::vector<int> mor;
    std::vector<char> used_obj;
    std::vector<char> used_mor;
    std::vector<std::vector<FinCat::Cell>> cells_of;
    std::vector<int> order;

    bool objects(int i) {
        if (i == c.object_count()) return morphisms(0);
        for (int y = 0; y < d.object_count(); ++y) {
            if (used_obj[y]) continue;
            bool ok = true;
            for (int j = 0; j <= i && ok; ++j) {
                const int x = (j == i) ? y : obj[j];
                ok = c.hom(i, j).size() == d.hom(y, x).size() && c.hom(j, i).size() == d.hom(x, y).size();
            }
            if (!ok) continue;
            obj[i] = y;
            used_obj[y] = 1;
            if (objects(i + 1)) return true;
            used_obj[y] = 0;
        }
        obj[i] = -1;
        return false;
    }

    bool consistent(int f) {
        for (const auto& cell : cells_of[f]) {
            if (mor[cell.g] < 0 || mor[cell.f] < 0 || mor[cell.h] < 0) continue;
            if (d.compose(mor[cell.g], mor[cell.f]) != mor[cell.h]) return false;
        }
        return true;
    }

    bool morphisms(int k) {
        if (k == static_cast<int>(order.size())) return true;
        const int f = order[k];
        if (c.is_identity(f)) {
            mor[f] = d.identity(obj[c.dom(f)]);
            if (!used_mor[mor[f]] && consistent(f)) {
                used_mor[mor[f]] = 1;
                if (morphisms(k + 1)) return true;
                used_mor[mor[f]] = 0;
            }
            mor[f] = -1;
            return false;
        }
        for (int g : d.hom(obj[c.dom(f)], obj[c.cod(f)])) {
            if (used_mor[g] || d.is_identity(g)) continue;
            mor[f] = g;
            if (consistent(f)) {
                used_mor[g] = 1;
                if (morphisms(k + 1)) return true;
                used_mor[g] = 0;
            }
        }
        mor[f] = -1;
        return false;
    }
};

}  // namespace

std::optional<FinFunctor> find_isomorphism(const CatPtr& c, const CatPtr& d, int max_objects) {
    if (c->object_count() > max_objects) {
        fail(ErrorCode::SizeExceeded, "isomorphism search limited to " + std::to_string(max_objects) +
                                          " objects, got " + std::to_string(c->object_count()));
    }
    if (c->object_count() != d->object_count() || c->morphism_count() != d->morphism_count()) return std::nullopt;
    IsoSearch s{*c, *d, std::vector<int>(c->object_count(), -1), std::vector<int>(c->morphism_count(), -1),
                std::vector<char>(d->object_count(), 0), std::vector<char>(d->morphism_count(), 0), {}, {}};
    s.cells_of.assign(c->morphism_count(), {});
    for (const auto& cell : c->cells()) {
        s.cells_of[cell.g].push_back(cell);
        if (cell.f != cell.g) s.cells_of[cell.f].push_back(cell);
        if (cell.h != cell.g && cell.h != cell.f) s.cells_of[cell.h].push_back(cell);
    }
    for (int f = 0; f < c->morphism_count(); ++f) s.order.push_back(f);
    std::stable_sort(s.order.begin(), s.order.end(), [&](int a, int b) {
        return std::pair(c->dom(a), c->cod(a)) < std::pair(c->dom(b), c->cod(b));
    });
    if (!s.objects(0)) return std::nullopt;
    return FinFunctor(c, d, s.obj, s.mor);
}

}  // namespace fibred
