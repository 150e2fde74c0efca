#include "fibred/indexed.hpp"

#include <algorithm>
#include <functional>

#include "fibred/fixtures.hpp"

namespace fibred {

int IndexedCat::eta(int a, int x) const {
    const auto& u = unitor[a];
    if (u.empty()) return fibre(a).identity(x);
    return u[x];
}

int IndexedCat::mu(int f, int g, int z) const {
    auto it = compositor.find({f, g});
    if (it == compositor.end() || it->second.empty()) {
        return fibre(base->dom(f)).identity(apply(base->compose(g, f), z));
    }
    return it->second[z];
}

bool IndexedCat::is_strict() const {
    for (const auto& u : unitor) {
        if (!u.empty()) return false;
    }
    for (const auto& [k, v] : compositor) {
        if (!v.empty()) return false;
    }
    return true;
}

IndexedCat make_strict(CatPtr base, std::vector<CatPtr> fibres, std::vector<FinFunctor> reindex) {
    if (static_cast<int>(fibres.size()) != base->object_count()) {
        fail(ErrorCode::InvalidInput, "one fibre per base object is required");
    }
    if (static_cast<int>(reindex.size()) != base->morphism_count()) {
        fail(ErrorCode::InvalidInput, "one reindexing functor per base morphism is required");
    }
    IndexedCat L;
    L.base = std::move(base);
    L.fibres = std::move(fibres);
    L.reindex = std::move(reindex);
    L.unitor.assign(L.base->object_count(), {});
    return L;
}

namespace {

std::string cite_obj(const FinCat& c, int x) { return x >= 0 && x < c.object_count() ? c.object(x) : "?"; }

// Component family check: endpoints, invertibility, naturality.
void check_transformation(ValidationReport& r, const FinCat& fib, const std::vector<int>& comps,
                          const std::function<int(int)>& src_obj, const std::function<int(int)>& tgt_obj,
                          const std::function<int(int)>& src_mor, const std::function<int(int)>& tgt_mor,
                          const FinCat& index_cat, const std::string& code, const std::vector<std::string>& cite) {
    const int n = index_cat.object_count();
    bool shape_ok = true;
    for (int z = 0; z < n; ++z) {
        const int c = comps[z];
        if (c < 0 || c >= fib.morphism_count() || fib.dom(c) != src_obj(z) || fib.cod(c) != tgt_obj(z)) {
            auto cited = cite;
            cited.push_back(index_cat.object(z));
            r.add(code + "Endpoints", "component has the wrong endpoints", cited);
            shape_ok = false;
            continue;
        }
        if (!is_iso(fib, c)) {
            auto cited = cite;
            cited.push_back(index_cat.object(z));
            r.add(code + "NotInvertible", "component " + fib.morphism(c) + " is not an isomorphism", cited);
        }
    }
    if (!shape_ok) return;
    for (int w = 0; w < index_cat.morphism_count(); ++w) {
        const int a = index_cat.dom(w);
        const int b = index_cat.cod(w);
        if (fib.compose(comps[b], src_mor(w)) != fib.compose(tgt_mor(w), comps[a])) {
            auto cited = cite;
            cited.push_back(index_cat.morphism(w));
            r.add(code + "Naturality", "naturality square fails", cited);
            return;
        }
    }
}

}  // namespace

ValidationReport validate_indexed(const IndexedCat& L) {
    ValidationReport r;
    if (!L.base) {
        r.add("MissingBase", "indexed category has no base");
        return r;
    }
    const FinCat& C = *L.base;
    r.merge(validate_category(C), "base");
    if (static_cast<int>(L.fibres.size()) != C.object_count() ||
        static_cast<int>(L.reindex.size()) != C.morphism_count() ||
        static_cast<int>(L.unitor.size()) != C.object_count()) {
        r.add("IndexedShape", "fibre, reindexing or unitor tables do not match the base");
        return r;
    }
    for (int a = 0; a < C.object_count(); ++a) r.merge(validate_category(L.fibre(a)), "fibre " + C.object(a));
    if (!r.ok()) return r;
    bool shape_ok = true;
    for (int f = 0; f < C.morphism_count(); ++f) {
        const auto& F = L.reindex[f];
        const bool src_ok = F.source_ptr() == L.fibres[C.cod(f)] || F.source() == L.fibre(C.cod(f));
        const bool tgt_ok = F.target_ptr() == L.fibres[C.dom(f)] || F.target() == L.fibre(C.dom(f));
        if (!src_ok || !tgt_ok) {
            r.add("ReindexEndpoints", "reindexing has the wrong source or target fibre", {C.morphism(f)});
            shape_ok = false;
            continue;
        }
        r.merge(validate_functor(F), "reindex " + C.morphism(f));
    }
    for (int a = 0; a < C.object_count(); ++a) {
        if (!L.unitor[a].empty() && static_cast<int>(L.unitor[a].size()) != L.fibre(a).object_count()) {
            r.add("UnitorShape", "unitor has the wrong number of components", {C.object(a)});
            shape_ok = false;
        }
    }
    for (const auto& [key, comps] : L.compositor) {
        const auto [f, g] = key;
        if (f < 0 || g < 0 || f >= C.morphism_count() || g >= C.morphism_count() || C.cod(f) != C.dom(g)) {
            r.add("CompositorShape", "compositor indexed by a non-composable pair");
            shape_ok = false;
        } else if (!comps.empty() && static_cast<int>(comps.size()) != L.fibre(C.cod(g)).object_count()) {
            r.add("CompositorShape", "compositor has the wrong number of components", {C.morphism(f), C.morphism(g)});
            shape_ok = false;
        }
    }
    if (!r.ok() || !shape_ok) return r;

    // Unitors: id => L(id_A).
    for (int a = 0; a < C.object_count(); ++a) {
        const FinCat& fib = L.fibre(a);
        const int ida = C.identity(a);
        std::vector<int> comps(fib.object_count());
        for (int x = 0; x < fib.object_count(); ++x) comps[x] = L.eta(a, x);
        check_transformation(
            r, fib, comps, [](int x) { return x; }, [&](int x) { return L.apply(ida, x); }, [](int w) { return w; },
            [&](int w) { return L.apply_mor(ida, w); }, fib, "Unitor", {C.object(a)});
    }
    // Compositors: L(f) L(g) => L(g o f).
    for (int f = 0; f < C.morphism_count(); ++f) {
        for (int g : C.out(C.cod(f))) {
            const int gf = C.compose(g, f);
            const FinCat& fib = L.fibre(C.dom(f));
            const FinCat& top = L.fibre(C.cod(g));
            std::vector<int> comps(top.object_count());
            for (int z = 0; z < top.object_count(); ++z) comps[z] = L.mu(f, g, z);
            check_transformation(
                r, fib, comps, [&](int z) { return L.apply(f, L.apply(g, z)); }, [&](int z) { return L.apply(gf, z); },
                [&](int w) { return L.apply_mor(f, L.apply_mor(g, w)); }, [&](int w) { return L.apply_mor(gf, w); },
                top, "Compositor", {C.morphism(f), C.morphism(g)});
        }
    }
    if (!r.ok()) return r;

    // Unitor coherence: mu^{id,f} o eta_{L(f)Y} = id and mu^{f,id} o L(f)(eta_Y) = id.
    for (int f = 0; f < C.morphism_count(); ++f) {
        const int a = C.dom(f);
        const int b = C.cod(f);
        const FinCat& fib = L.fibre(a);
        for (int y = 0; y < L.fibre(b).object_count(); ++y) {
            const int lfy = L.apply(f, y);
            if (fib.compose(L.mu(C.identity(a), f, y), L.eta(a, lfy)) != fib.identity(lfy)) {
                r.add("UnitorCoherence", "left unitor triangle fails", {C.morphism(f), L.fibre(b).object(y)});
            }
            if (fib.compose(L.mu(f, C.identity(b), y), L.apply_mor(f, L.eta(b, y))) != fib.identity(lfy)) {
                r.add("UnitorCoherence", "right unitor triangle fails", {C.morphism(f), L.fibre(b).object(y)});
            }
        }
    }
    // Compositor coherence over every composable triple.
    for (int f = 0; f < C.morphism_count(); ++f) {
        for (int g : C.out(C.cod(f))) {
            for (int h : C.out(C.cod(g))) {
                const int hg = C.compose(h, g);
                const int gf = C.compose(g, f);
                const FinCat& fib = L.fibre(C.dom(f));
                const FinCat& top = L.fibre(C.cod(h));
                for (int z = 0; z < top.object_count(); ++z) {
                    const int lhs = fib.compose(L.mu(f, hg, z), L.apply_mor(f, L.mu(g, h, z)));
                    const int rhs = fib.compose(L.mu(gf, h, z), L.mu(f, g, L.apply(h, z)));
                    if (lhs != rhs) {
                        r.add("CompositorCoherence", "associativity square for compositors fails",
                              {C.morphism(f), C.morphism(g), C.morphism(h), cite_obj(top, z)});
                        break;
                    }
                }
            }
        }
    }
    return r;
}

IndexedCat restrict(const IndexedCat& L, const FinFunctor& F) {
    const FinCat& D = F.source();
    IndexedCat out;
    out.base = F.source_ptr();
    for (int d = 0; d < D.object_count(); ++d) {
        out.fibres.push_back(L.fibres[F.obj(d)]);
        out.unitor.push_back(L.unitor[F.obj(d)]);
    }
    for (int u = 0; u < D.morphism_count(); ++u) out.reindex.push_back(L.reindex[F.mor(u)]);
    for (int u = 0; u < D.morphism_count(); ++u) {
        for (int v : D.out(D.cod(u))) {
            auto it = L.compositor.find({F.mor(u), F.mor(v)});
            if (it != L.compositor.end() && !it->second.empty()) out.compositor[{u, v}] = it->second;
        }
    }
    return out;
}

ValidationReport validate_section(const IndexedCat& L, const SectionObj& s) {
    ValidationReport r;
    const FinCat& C = *L.base;
    if (static_cast<int>(s.x.size()) != C.object_count() || static_cast<int>(s.xi.size()) != C.morphism_count()) {
        r.add("SectionShape", "section tables do not match the base");
        return r;
    }
    for (int f = 0; f < C.morphism_count(); ++f) {
        const FinCat& fib = L.fibre(C.dom(f));
        const int c = s.xi[f];
        if (c < 0 || c >= fib.morphism_count() || fib.dom(c) != s.x[C.dom(f)] ||
            fib.cod(c) != L.apply(f, s.x[C.cod(f)])) {
            r.add("SectionEndpoints", "component has the wrong endpoints", {C.morphism(f)});
        }
    }
    if (!r.ok()) return r;
    for (int a = 0; a < C.object_count(); ++a) {
        if (s.xi[C.identity(a)] != L.eta(a, s.x[a])) {
            r.add("SectionUnit", "component at the identity is not the unitor", {C.object(a)});
        }
    }
    for (int f = 0; f < C.morphism_count(); ++f) {
        for (int g : C.out(C.cod(f))) {
            const FinCat& fib = L.fibre(C.dom(f));
            const int rhs = fib.compose(L.mu(f, g, s.x[C.cod(g)]), fib.compose(L.apply_mor(f, s.xi[g]), s.xi[f]));
            if (s.xi[C.compose(g, f)] != rhs) {
                r.add("SectionComposite", "component at a composite is not the reindexed composite",
                      {C.morphism(f), C.morphism(g)});
            }
        }
    }
    return r;
}

int SectionsCategory::index_of(const SectionObj& s) const {
    auto it = object_lookup.find({s.x, s.xi});
    return it == object_lookup.end() ? -1 : it->second;
}

int SectionsCategory::morphism_of(int src, int tgt, const std::vector<int>& comps) const {
    auto it = morphism_lookup.find({src, tgt, comps});
    return it == morphism_lookup.end() ? -1 : it->second;
}

namespace {

// Assignment order: base objects by index; a morphism joins once both its
// endpoints are placed. Composite checks fire when the last of f, g, g o f is set.
struct SectionPlan {
    std::vector<std::vector<int>> morphisms_at;  // per base object
    std::vector<int> order;                      // position of each morphism in assignment order
    std::vector<std::vector<std::pair<int, int>>> triggers;  // per morphism, composable pairs to check

    explicit SectionPlan(const FinCat& C) {
        morphisms_at.assign(C.object_count(), {});
        for (int f = 0; f < C.morphism_count(); ++f) morphisms_at[std::max(C.dom(f), C.cod(f))].push_back(f);
        order.assign(C.morphism_count(), 0);
        int pos = 0;
        for (const auto& ms : morphisms_at) {
            for (int f : ms) order[f] = pos++;
        }
        triggers.assign(C.morphism_count(), {});
        for (int f = 0; f < C.morphism_count(); ++f) {
            for (int g : C.out(C.cod(f))) {
                const int gf = C.compose(g, f);
                const int last = std::max({order[f], order[g], order[gf]}) == order[f]   ? f
                                 : std::max({order[f], order[g], order[gf]}) == order[g] ? g
                                                                                         : gf;
                triggers[last].push_back({f, g});
            }
        }
    }
};

}  // namespace

SectionsCategory sections_category(const IndexedCat& L, std::size_t bound) {
    const FinCat& C = *L.base;
    const int n = C.object_count();
    const int m = C.morphism_count();
    SectionPlan plan(C);

    std::vector<SectionObj> objs;
    SectionObj cur{std::vector<int>(n, -1), std::vector<int>(m, -1)};

    auto xi_ok = [&](int f) {
        for (auto [a, b] : plan.triggers[f]) {
            const FinCat& fib = L.fibre(C.dom(a));
            const int rhs =
                fib.compose(L.mu(a, b, cur.x[C.cod(b)]), fib.compose(L.apply_mor(a, cur.xi[b]), cur.xi[a]));
            if (cur.xi[C.compose(b, a)] != rhs) return false;
        }
        return true;
    };

    std::function<void(int, std::size_t)> assign_mor;
    std::function<void(int)> assign_obj = [&](int c) {
        if (c == n) {
            if (objs.size() >= bound) {
                fail(ErrorCode::SizeExceeded, "sections category exceeds " + std::to_string(bound) + " objects");
            }
            objs.push_back(cur);
            return;
        }
        for (int x = 0; x < L.fibre(c).object_count(); ++x) {
            cur.x[c] = x;
            assign_mor(c, 0);
        }
        cur.x[c] = -1;
    };
    assign_mor = [&](int c, std::size_t k) {
        if (k == plan.morphisms_at[c].size()) {
            assign_obj(c + 1);
            return;
        }
        const int f = plan.morphisms_at[c][k];
        const FinCat& fib = L.fibre(C.dom(f));
        if (C.is_identity(f)) {
            cur.xi[f] = L.eta(C.dom(f), cur.x[C.dom(f)]);
            if (xi_ok(f)) assign_mor(c, k + 1);
        } else {
            for (int h : fib.hom(cur.x[C.dom(f)], L.apply(f, cur.x[C.cod(f)]))) {
                cur.xi[f] = h;
                if (xi_ok(f)) assign_mor(c, k + 1);
            }
        }
        cur.xi[f] = -1;
    };
    assign_obj(0);

    // Morphisms: alpha_C per base object with L(f)(alpha_B) o xi_f = xi'_f o alpha_A.
    struct Mor {
        int src, tgt;
        std::vector<int> comps;
    };
    std::vector<Mor> mors;
    std::vector<int> alpha(n, -1);
    for (int s = 0; s < static_cast<int>(objs.size()); ++s) {
        for (int t = 0; t < static_cast<int>(objs.size()); ++t) {
            const auto& S = objs[s];
            const auto& T = objs[t];
            std::function<void(int)> go = [&](int c) {
                if (c == n) {
                    mors.push_back({s, t, alpha});
                    return;
                }
                for (int h : L.fibre(c).hom(S.x[c], T.x[c])) {
                    alpha[c] = h;
                    bool ok = true;
                    for (int f = 0; f < m && ok; ++f) {
                        const int a = C.dom(f);
                        const int b = C.cod(f);
                        if (std::max(a, b) != c) continue;
                        const FinCat& fib = L.fibre(a);
                        ok = fib.compose(L.apply_mor(f, alpha[b]), S.xi[f]) == fib.compose(T.xi[f], alpha[a]);
                    }
                    if (ok) go(c + 1);
                }
                alpha[c] = -1;
            };
            go(0);
        }
    }

    std::vector<std::string> obj_ids;
    for (const auto& s : objs) {
        std::string id = "[";
        for (int c = 0; c < n; ++c) {
            if (c) id += ",";
            id += L.fibre(c).object(s.x[c]);
        }
        std::string xs;
        for (int f = 0; f < m; ++f) {
            if (C.is_identity(f)) continue;
            if (!xs.empty()) xs += ",";
            xs += L.fibre(C.dom(f)).morphism(s.xi[f]);
        }
        if (!xs.empty()) id += "|" + xs;
        obj_ids.push_back(id + "]");
    }
    std::vector<GeneratedMorphism> gens;
    std::map<std::tuple<int, int, std::vector<int>>, int> lookup;
    for (std::size_t p = 0; p < mors.size(); ++p) {
        std::string comps;
        for (int c = 0; c < n; ++c) {
            if (c) comps += ",";
            comps += L.fibre(c).morphism(mors[p].comps[c]);
        }
        gens.push_back({"<" + comps + ">:" + obj_ids[mors[p].src] + "->" + obj_ids[mors[p].tgt], mors[p].src,
                        mors[p].tgt});
        lookup[{mors[p].src, mors[p].tgt, mors[p].comps}] = static_cast<int>(p);
    }
    std::vector<int> obj_index, mor_index;
    FinCat cat = FinCat::generate(
        obj_ids, gens,
        [&](int s) {
            std::vector<int> ids(n);
            for (int c = 0; c < n; ++c) ids[c] = L.fibre(c).identity(objs[s].x[c]);
            return lookup.at({s, s, ids});
        },
        [&](int gp, int fp) {
            std::vector<int> comps(n);
            for (int c = 0; c < n; ++c) comps[c] = L.fibre(c).compose(mors[gp].comps[c], mors[fp].comps[c]);
            return lookup.at({mors[fp].src, mors[gp].tgt, comps});
        },
        &obj_index, &mor_index);

    SectionsCategory out;
    out.category = share(std::move(cat));
    out.objects.resize(objs.size());
    for (std::size_t p = 0; p < objs.size(); ++p) {
        out.objects[obj_index[p]] = objs[p];
        out.object_lookup[{objs[p].x, objs[p].xi}] = obj_index[p];
    }
    out.components.resize(mors.size());
    for (std::size_t p = 0; p < mors.size(); ++p) {
        out.components[mor_index[p]] = mors[p].comps;
        out.morphism_lookup[{obj_index[mors[p].src], obj_index[mors[p].tgt], mors[p].comps}] = mor_index[p];
    }
    return out;
}

FinFunctor reindex_section(const IndexedCat& L, const FinFunctor& J1, int apex, const std::vector<int>& lambda,
                           const SectionObj& J2) {
    const FinCat& E = J1.source();
    const FinCat& C = *L.base;
    if (static_cast<int>(lambda.size()) != E.object_count()) {
        fail(ErrorCode::InvalidInput, "cone has the wrong number of legs");
    }
    for (int leg : lambda) {
        if (C.dom(leg) != apex) fail(ErrorCode::InvalidInput, "cone legs do not start at the apex");
    }
    const int L_apex = apex;
    std::vector<int> om(E.object_count()), mm(E.morphism_count());
    for (int e = 0; e < E.object_count(); ++e) om[e] = L.apply(lambda[e], J2.x[e]);
    const FinCat& fib = L.fibre(L_apex);
    for (int u = 0; u < E.morphism_count(); ++u) {
        const int e = E.dom(u);
        const int e2 = E.cod(u);
        mm[u] = fib.compose(L.mu(lambda[e], J1.mor(u), J2.x[e2]), L.apply_mor(lambda[e], J2.xi[u]));
    }
    return FinFunctor(J1.source_ptr(), L.fibres[L_apex], std::move(om), std::move(mm));
}

CatPtr power_category(const CatPtr& d, int n) {
    if (n < 0) fail(ErrorCode::InvalidInput, "negative exponent");
    const int ob = d->object_count();
    const int mo = d->morphism_count();
    auto tuples = [](int base, int len) {
        std::vector<std::vector<int>> out;
        std::vector<int> t(len, 0);
        if (len > 0 && base == 0) return out;
        while (true) {
            out.push_back(t);
            int i = len - 1;
            while (i >= 0 && ++t[i] == base) t[i--] = 0;
            if (i < 0) break;
        }
        return out;
    };
    auto otup = tuples(ob, n);
    auto mtup = tuples(mo, n);
    std::map<std::vector<int>, int> opos, mpos;
    std::vector<std::string> objs;
    for (const auto& t : otup) {
        opos[t] = static_cast<int>(objs.size());
        std::string id = "(";
        for (int i = 0; i < n; ++i) id += (i ? "," : "") + d->object(t[i]);
        objs.push_back(id + ")");
    }
    std::vector<GeneratedMorphism> gens;
    std::vector<std::vector<int>> mvals;
    for (const auto& t : mtup) {
        std::vector<int> dom(n), cod(n);
        for (int i = 0; i < n; ++i) {
            dom[i] = d->dom(t[i]);
            cod[i] = d->cod(t[i]);
        }
        mpos[t] = static_cast<int>(gens.size());
        std::string id = "(";
        for (int i = 0; i < n; ++i) id += (i ? "," : "") + d->morphism(t[i]);
        gens.push_back({id + ")", opos.at(dom), opos.at(cod)});
        mvals.push_back(t);
    }
    FinCat c = FinCat::generate(
        objs, gens,
        [&](int p) {
            std::vector<int> ids(n);
            for (int i = 0; i < n; ++i) ids[i] = d->identity(otup[p][i]);
            return mpos.at(ids);
        },
        [&](int g, int f) {
            std::vector<int> h(n);
            for (int i = 0; i < n; ++i) h[i] = d->compose(mvals[g][i], mvals[f][i]);
            return mpos.at(h);
        });
    return share(std::move(c));
}

namespace {

// Index map from tuple ids back to components, built by reparsing positions.
struct PowerIndex {
    CatPtr cat;
    std::map<std::vector<int>, int> obj, mor;
    std::vector<std::vector<int>> obj_tuple, mor_tuple;
};

PowerIndex power_index(const CatPtr& d, int n) {
    PowerIndex p;
    p.cat = power_category(d, n);
    const FinCat& c = *p.cat;
    p.obj_tuple.assign(c.object_count(), {});
    p.mor_tuple.assign(c.morphism_count(), {});
    // Regenerate tuples in the same order power_category uses and look up ids.
    std::function<void(int, std::vector<int>&, bool)> walk = [&](int i, std::vector<int>& t, bool objects) {
        if (i == n) {
            std::string id = "(";
            for (int k = 0; k < n; ++k) id += (k ? "," : "") + (objects ? d->object(t[k]) : d->morphism(t[k]));
            id += ")";
            if (objects) {
                const int x = c.object_index(id);
                p.obj[t] = x;
                p.obj_tuple[x] = t;
            } else {
                const int x = c.morphism_index(id);
                p.mor[t] = x;
                p.mor_tuple[x] = t;
            }
            return;
        }
        const int lim = objects ? d->object_count() : d->morphism_count();
        for (int v = 0; v < lim; ++v) {
            t[i] = v;
            walk(i + 1, t, objects);
        }
    };
    std::vector<int> t(n);
    walk(0, t, true);
    walk(0, t, false);
    return p;
}

}  // namespace

IndexedCat fam_indexed(const FinFunctor& P, const CatPtr& d) {
    const FinCat& C = P.source();
    const FinCat& S = P.target();
    std::map<int, PowerIndex> powers;
    std::vector<int> size(C.object_count());
    std::vector<CatPtr> fibres;
    for (int a = 0; a < C.object_count(); ++a) {
        size[a] = std::stoi(S.object(P.obj(a)));
        if (!powers.count(size[a])) powers.emplace(size[a], power_index(d, size[a]));
        fibres.push_back(powers.at(size[a]).cat);
    }
    std::vector<FinFunctor> reindex;
    for (int f = 0; f < C.morphism_count(); ++f) {
        const auto& src = powers.at(size[C.cod(f)]);
        const auto& tgt = powers.at(size[C.dom(f)]);
        const auto vals = function_values(S.morphism(P.mor(f)));
        std::vector<int> om(src.cat->object_count()), mm(src.cat->morphism_count());
        for (int y = 0; y < src.cat->object_count(); ++y) {
            std::vector<int> t(vals.size());
            for (std::size_t i = 0; i < vals.size(); ++i) t[i] = src.obj_tuple[y][vals[i]];
            om[y] = tgt.obj.at(t);
        }
        for (int v = 0; v < src.cat->morphism_count(); ++v) {
            std::vector<int> t(vals.size());
            for (std::size_t i = 0; i < vals.size(); ++i) t[i] = src.mor_tuple[v][vals[i]];
            mm[v] = tgt.mor.at(t);
        }
        reindex.emplace_back(src.cat, tgt.cat, std::move(om), std::move(mm));
    }
    return make_strict(P.source_ptr(), std::move(fibres), std::move(reindex));
}

IndexedCat representable_indexed(const CatPtr& base, int c) {
    const FinCat& C = *base;
    std::vector<CatPtr> fibres;
    std::vector<std::vector<int>> elems(C.object_count());
    for (int a = 0; a < C.object_count(); ++a) {
        std::vector<std::string> ids;
        for (int h : C.hom(a, c)) {
            ids.push_back(C.morphism(h));
            elems[a].push_back(h);
        }
        std::vector<GeneratedMorphism> gens;
        for (int i = 0; i < static_cast<int>(ids.size()); ++i) gens.push_back({"id_" + ids[i], i, i});
        std::vector<int> oi;
        FinCat f = FinCat::generate(
            ids, gens, [](int i) { return i; }, [](int g, int) { return g; }, &oi);
        fibres.push_back(share(std::move(f)));
    }
    std::vector<FinFunctor> reindex;
    for (int f = 0; f < C.morphism_count(); ++f) {
        const FinCat& src = *fibres[C.cod(f)];
        const FinCat& tgt = *fibres[C.dom(f)];
        std::vector<int> om(src.object_count()), mm(src.morphism_count());
        for (int y = 0; y < src.object_count(); ++y) {
            const int h = C.morphism_index(src.object(y));
            om[y] = tgt.object_index(C.morphism(C.compose(h, f)));
        }
        for (int v = 0; v < src.morphism_count(); ++v) mm[v] = tgt.identity(om[src.dom(v)]);
        reindex.emplace_back(fibres[C.cod(f)], fibres[C.dom(f)], std::move(om), std::move(mm));
    }
    return make_strict(base, std::move(fibres), std::move(reindex));
}

IndexedCat transport(const IndexedCat& L, const std::vector<FinFunctor>& P, const std::vector<std::vector<int>>& theta) {
    const FinCat& C = *L.base;
    if (static_cast<int>(P.size()) != C.morphism_count() || static_cast<int>(theta.size()) != C.morphism_count()) {
        fail(ErrorCode::InvalidInput, "transport needs one functor and one iso family per base morphism");
    }
    IndexedCat out;
    out.base = L.base;
    out.fibres = L.fibres;
    out.reindex = P;
    out.unitor.assign(C.object_count(), {});
    auto inv = [&](int a, int h) {
        auto i = inverse(L.fibre(a), h);
        if (!i) fail(ErrorCode::InvalidInput, "transport component is not invertible");
        return *i;
    };
    auto th = [&](int f, int y) {
        return theta[f].empty() ? L.fibre(C.dom(f)).identity(L.apply(f, y)) : theta[f][y];
    };
    for (int a = 0; a < C.object_count(); ++a) {
        const FinCat& fib = L.fibre(a);
        const int ida = C.identity(a);
        std::vector<int> comps(fib.object_count());
        bool trivial = true;
        for (int x = 0; x < fib.object_count(); ++x) {
            comps[x] = fib.compose(th(ida, x), L.eta(a, x));
            trivial &= comps[x] == fib.identity(x);
        }
        if (!trivial) out.unitor[a] = std::move(comps);
    }
    for (int f = 0; f < C.morphism_count(); ++f) {
        const int a = C.dom(f);
        const FinCat& fib = L.fibre(a);
        for (int g : C.out(C.cod(f))) {
            const int gf = C.compose(g, f);
            const FinCat& top = L.fibre(C.cod(g));
            std::vector<int> comps(top.object_count());
            bool trivial = true;
            for (int z = 0; z < top.object_count(); ++z) {
                const int pgz = P[g].obj(z);
                int h = inv(a, th(f, pgz));                                                  // P_f P_g z -> L(f) P_g z
                h = fib.compose(L.apply_mor(f, inv(C.cod(f), th(g, z))), h);                 // -> L(f) L(g) z
                h = fib.compose(L.mu(f, g, z), h);                                           // -> L(gf) z
                h = fib.compose(th(gf, z), h);                                               // -> P_gf z
                comps[z] = h;
                trivial &= h == fib.identity(fib.dom(h)) && fib.dom(h) == fib.cod(h);
            }
            if (!trivial) out.compositor[{f, g}] = std::move(comps);
        }
    }
    return out;
}

}  // namespace fibred
