#include "fibred/groth.hpp"

#include <algorithm>
#include <set>

namespace fibred {

GrothCat grothendieck(const IndexedCat& L, std::size_t bound) {
    const FinCat& C = *L.base;
    struct Obj {
        int a, x;
    };
    struct Mor {
        int f, u, y;
    };
    std::vector<Obj> objs;
    std::map<std::pair<int, int>, int> opos;
    std::vector<std::string> obj_ids;
    for (int a = 0; a < C.object_count(); ++a) {
        for (int x = 0; x < L.fibre(a).object_count(); ++x) {
            opos[{a, x}] = static_cast<int>(objs.size());
            objs.push_back({a, x});
            obj_ids.push_back(pair_id(C.object(a), L.fibre(a).object(x)));
        }
    }
    std::size_t count = 0;
    for (int f = 0; f < C.morphism_count(); ++f) {
        const FinCat& fa = L.fibre(C.dom(f));
        for (int y = 0; y < L.fibre(C.cod(f)).object_count(); ++y) {
            const int ly = L.apply(f, y);
            for (int x = 0; x < fa.object_count(); ++x) count += fa.hom(x, ly).size();
        }
    }
    if (count > bound) {
        fail(ErrorCode::SizeExceeded, "total category needs " + std::to_string(count) + " morphisms, bound is " +
                                          std::to_string(bound));
    }
    std::vector<Mor> mors;
    std::vector<GeneratedMorphism> gens;
    std::map<std::tuple<int, int, int>, int> mpos;
    mors.reserve(count);
    gens.reserve(count);
    for (int f = 0; f < C.morphism_count(); ++f) {
        const int a = C.dom(f);
        const int b = C.cod(f);
        const FinCat& fa = L.fibre(a);
        for (int y = 0; y < L.fibre(b).object_count(); ++y) {
            const int ly = L.apply(f, y);
            for (int x = 0; x < fa.object_count(); ++x) {
                for (int u : fa.hom(x, ly)) {
                    mpos[{f, u, y}] = static_cast<int>(mors.size());
                    mors.push_back({f, u, y});
                    gens.push_back({"(" + C.morphism(f) + "," + fa.morphism(u) + "|" + L.fibre(b).object(y) + ")",
                                    opos.at({a, x}), opos.at({b, y})});
                }
            }
        }
    }
    std::vector<int> obj_index, mor_index;
    FinCat total = FinCat::generate(
        obj_ids, gens,
        [&](int p) {
            const auto [a, x] = objs[p];
            return mpos.at({C.identity(a), L.eta(a, x), x});
        },
        [&](int gp, int fp) {
            const Mor& m1 = mors[fp];
            const Mor& m2 = mors[gp];
            const FinCat& fa = L.fibre(C.dom(m1.f));
            const int h = fa.compose(L.mu(m1.f, m2.f, m2.y), fa.compose(L.apply_mor(m1.f, m2.u), m1.u));
            return mpos.at({C.compose(m2.f, m1.f), h, m2.y});
        },
        &obj_index, &mor_index);

    GrothCat G;
    G.source = L;
    G.total = share(std::move(total));
    const int n = G.total->object_count();
    const int m = G.total->morphism_count();
    G.object_pair.resize(n);
    G.morphism_pair.resize(m);
    std::vector<int> pom(n), pmm(m);
    for (std::size_t p = 0; p < objs.size(); ++p) {
        const int i = obj_index[p];
        G.object_pair[i] = {objs[p].a, objs[p].x};
        G.object_of[{objs[p].a, objs[p].x}] = i;
        pom[i] = objs[p].a;
    }
    for (std::size_t p = 0; p < mors.size(); ++p) {
        const int i = mor_index[p];
        G.morphism_pair[i] = {mors[p].f, mors[p].u};
        G.morphism_of[{mors[p].f, mors[p].u, mors[p].y}] = i;
        pmm[i] = mors[p].f;
    }
    G.projection = FinFunctor(G.total, L.base, std::move(pom), std::move(pmm));
    return G;
}

int canonical_lift(const GrothCat& G, int f, int total_object) {
    const auto [b, y] = G.object_pair.at(total_object);
    const FinCat& C = *G.source.base;
    if (C.cod(f) != b) fail(ErrorCode::InvalidInput, "lift target does not lie over the codomain");
    const FinCat& fa = G.source.fibre(C.dom(f));
    return G.morphism(f, fa.identity(G.source.apply(f, y)), y);
}

bool is_cartesian(const FinFunctor& P, int e, std::string* obstruction) {
    const FinCat& T = P.source();
    const FinCat& C = P.target();
    const int X = T.dom(e);
    const int Y = T.cod(e);
    const int f = P.mor(e);
    for (int Z = 0; Z < T.object_count(); ++Z) {
        // Every h : Z -> X gives the pair (P h, e o h); cartesian iff this is a
        // bijection onto {(g, e') : f o g = P e'}.
        std::set<std::pair<int, int>> seen;
        for (int h : T.hom(Z, X)) {
            if (!seen.insert({P.mor(h), T.compose(e, h)}).second) {
                if (obstruction) {
                    *obstruction = "two factorizations through " + T.morphism(e) + " from " + T.object(Z) +
                                   " over " + C.morphism(P.mor(h));
                }
                return false;
            }
        }
        std::size_t expected = 0;
        for (int e2 : T.hom(Z, Y)) {
            for (int g : C.hom(P.obj(Z), P.obj(X))) {
                if (C.compose(f, g) == P.mor(e2)) {
                    ++expected;
                    if (!seen.count({g, e2}) && obstruction) {
                        *obstruction = T.morphism(e2) + " has no factorization over " + C.morphism(g);
                    }
                }
            }
        }
        if (expected != seen.size()) return false;
    }
    return true;
}

FibrationResult verify_fibration(const FinFunctor& P) {
    const FinCat& T = P.source();
    const FinCat& C = P.target();
    FibrationResult res;
    res.cleavage.projection = P;
    for (int f = 0; f < C.morphism_count(); ++f) {
        for (int E = 0; E < T.object_count(); ++E) {
            if (P.obj(E) != C.cod(f)) continue;
            std::vector<int> cands;
            for (int e : T.in(E)) {
                if (P.mor(e) == f) cands.push_back(e);
            }
            std::sort(cands.begin(), cands.end());
            int chosen = -1;
            for (int e : cands) {
                if (is_cartesian(P, e)) {
                    chosen = e;
                    break;
                }
            }
            if (chosen < 0) {
                res.ok = false;
                res.failing_morphism = f;
                res.failing_object = E;
                res.failure = "no cartesian lift of " + C.morphism(f) + " at " + T.object(E) + " (" +
                              std::to_string(cands.size()) + " candidate lift(s))";
                return res;
            }
            res.cleavage.lift[{f, E}] = chosen;
        }
    }
    res.ok = true;
    return res;
}

Cleavage canonical_cleavage(const GrothCat& G) {
    Cleavage cl;
    cl.projection = G.projection;
    const FinCat& C = *G.source.base;
    for (int f = 0; f < C.morphism_count(); ++f) {
        for (int y = 0; y < G.source.fibre(C.cod(f)).object_count(); ++y) {
            const int E = G.object(C.cod(f), y);
            cl.lift[{f, E}] = canonical_lift(G, f, E);
        }
    }
    return cl;
}

namespace {

int unique_vertical(const FinFunctor& P, int from, int to, int over, const std::function<bool(int)>& pred,
                    const std::string& what) {
    const FinCat& T = P.source();
    const FinCat& C = P.target();
    int found = -1;
    for (int h : T.hom(from, to)) {
        if (P.mor(h) != C.identity(over) || !pred(h)) continue;
        if (found >= 0) fail(ErrorCode::InvalidInput, what + ": factorization through the cleavage is not unique");
        found = h;
    }
    if (found < 0) fail(ErrorCode::InvalidInput, what + ": no factorization through the cleavage");
    return found;
}

}  // namespace

IndexedCat indexed_from_fibration(const Cleavage& cl, FibreData* data) {
    const FinFunctor& P = cl.projection;
    const FinCat& T = P.source();
    const FinCat& C = P.target();
    const int nb = C.object_count();
    std::vector<std::vector<int>> tot_obj(nb), tot_mor(nb);
    std::vector<int> fib_obj(T.object_count(), -1), fib_mor(T.morphism_count(), -1);
    std::vector<CatPtr> fibres(nb);
    for (int a = 0; a < nb; ++a) {
        std::vector<int> objs;
        std::vector<int> pos_of(T.object_count(), -1);
        for (int E = 0; E < T.object_count(); ++E) {
            if (P.obj(E) == a) {
                pos_of[E] = static_cast<int>(objs.size());
                objs.push_back(E);
            }
        }
        std::vector<int> mors;
        std::vector<int> mpos(T.morphism_count(), -1);
        for (int h = 0; h < T.morphism_count(); ++h) {
            if (P.mor(h) == C.identity(a)) {
                mpos[h] = static_cast<int>(mors.size());
                mors.push_back(h);
            }
        }
        std::vector<std::string> ids;
        for (int E : objs) ids.push_back(T.object(E));
        std::vector<GeneratedMorphism> gens;
        for (int h : mors) gens.push_back({T.morphism(h), pos_of[T.dom(h)], pos_of[T.cod(h)]});
        std::vector<int> oi, mi;
        FinCat fib = FinCat::generate(
            ids, gens, [&](int p) { return mpos[T.identity(objs[p])]; },
            [&](int g, int f) { return mpos[T.compose(mors[g], mors[f])]; }, &oi, &mi);
        tot_obj[a].assign(objs.size(), -1);
        tot_mor[a].assign(mors.size(), -1);
        for (std::size_t p = 0; p < objs.size(); ++p) {
            tot_obj[a][oi[p]] = objs[p];
            fib_obj[objs[p]] = oi[p];
        }
        for (std::size_t p = 0; p < mors.size(); ++p) {
            tot_mor[a][mi[p]] = mors[p];
            fib_mor[mors[p]] = mi[p];
        }
        fibres[a] = share(std::move(fib));
    }

    IndexedCat L;
    L.base = P.target_ptr();
    L.fibres = fibres;
    L.unitor.assign(nb, {});
    for (int f = 0; f < C.morphism_count(); ++f) {
        const int a = C.dom(f);
        const int b = C.cod(f);
        const FinCat& src = *fibres[b];
        std::vector<int> om(src.object_count()), mm(src.morphism_count());
        for (int y = 0; y < src.object_count(); ++y) om[y] = fib_obj[T.dom(cl.at(f, tot_obj[b][y]))];
        for (int v = 0; v < src.morphism_count(); ++v) {
            const int tv = tot_mor[b][v];
            const int e1 = cl.at(f, T.dom(tv));
            const int e2 = cl.at(f, T.cod(tv));
            const int target = T.compose(tv, e1);
            const int h = unique_vertical(P, T.dom(e1), T.dom(e2), a,
                                          [&](int k) { return T.compose(e2, k) == target; },
                                          "reindexing " + C.morphism(f));
            mm[v] = fib_mor[h];
        }
        L.reindex.emplace_back(fibres[b], fibres[a], std::move(om), std::move(mm));
    }
    for (int a = 0; a < nb; ++a) {
        const FinCat& fib = *fibres[a];
        std::vector<int> comps(fib.object_count());
        bool trivial = true;
        for (int x = 0; x < fib.object_count(); ++x) {
            const int E = tot_obj[a][x];
            const int e = cl.at(C.identity(a), E);
            const int h = unique_vertical(P, E, T.dom(e), a, [&](int k) { return T.compose(e, k) == T.identity(E); },
                                          "unitor at " + T.object(E));
            comps[x] = fib_mor[h];
            trivial &= comps[x] == fib.identity(x);
        }
        if (!trivial) L.unitor[a] = std::move(comps);
    }
    for (int f = 0; f < C.morphism_count(); ++f) {
        const int a = C.dom(f);
        const FinCat& fib = *fibres[a];
        for (int g : C.out(C.cod(f))) {
            const int gf = C.compose(g, f);
            const FinCat& top = *fibres[C.cod(g)];
            std::vector<int> comps(top.object_count());
            bool trivial = true;
            for (int z = 0; z < top.object_count(); ++z) {
                const int Z = tot_obj[C.cod(g)][z];
                const int eg = cl.at(g, Z);
                const int ef = cl.at(f, T.dom(eg));
                const int egf = cl.at(gf, Z);
                const int target = T.compose(eg, ef);
                const int h = unique_vertical(P, T.dom(ef), T.dom(egf), a,
                                              [&](int k) { return T.compose(egf, k) == target; },
                                              "compositor " + C.morphism(f) + "," + C.morphism(g));
                comps[z] = fib_mor[h];
                trivial &= T.dom(h) == T.cod(h) && h == T.identity(T.dom(h));
            }
            if (!trivial) L.compositor[{f, g}] = std::move(comps);
            (void)fib;
        }
    }
    if (data) {
        data->total_object = std::move(tot_obj);
        data->total_morphism = std::move(tot_mor);
    }
    return L;
}

bool split_check(const Cleavage& cl) {
    const FinFunctor& P = cl.projection;
    const FinCat& T = P.source();
    const FinCat& C = P.target();
    for (const auto& [key, e] : cl.lift) {
        const auto [f, E] = key;
        if (C.is_identity(f) && e != T.identity(E)) return false;
    }
    for (int f = 0; f < C.morphism_count(); ++f) {
        for (int g : C.out(C.cod(f))) {
            for (int E = 0; E < T.object_count(); ++E) {
                if (P.obj(E) != C.cod(g)) continue;
                const int eg = cl.at(g, E);
                if (T.compose(eg, cl.at(f, T.dom(eg))) != cl.at(C.compose(g, f), E)) return false;
            }
        }
    }
    return true;
}

BifibrationReport bifibration_check(const IndexedCat& L) {
    BifibrationReport out;
    const FinCat& C = *L.base;
    out.left_adjoints.resize(C.morphism_count());
    for (int f = 0; f < C.morphism_count(); ++f) {
        try {
            out.left_adjoints[f] = find_left_adjoint(L.reindex[f]);
        } catch (const Error& e) {
            out.report.add("NoLeftAdjoint", e.what(), {C.morphism(f)});
        }
    }
    return out;
}

RoundTrip round_trip(const IndexedCat& L) {
    RoundTrip rt;
    rt.groth = grothendieck(L);
    const Cleavage cl = canonical_cleavage(rt.groth);
    rt.split = split_check(cl);
    FibreData data;
    rt.recovered = indexed_from_fibration(cl, &data);
    const FinCat& C = *L.base;
    const GrothCat& G = rt.groth;
    const FinCat& T = *G.total;
    std::vector<int> fib_obj(T.object_count(), -1), fib_mor(T.morphism_count(), -1);
    for (int a = 0; a < C.object_count(); ++a) {
        for (std::size_t i = 0; i < data.total_object[a].size(); ++i) fib_obj[data.total_object[a][i]] = i;
        for (std::size_t i = 0; i < data.total_morphism[a].size(); ++i) fib_mor[data.total_morphism[a][i]] = i;
    }
    for (int a = 0; a < C.object_count(); ++a) {
        const FinCat& fib = L.fibre(a);
        std::vector<int> om(fib.object_count()), mm(fib.morphism_count());
        for (int x = 0; x < fib.object_count(); ++x) om[x] = fib_obj[G.object(a, x)];
        for (int u = 0; u < fib.morphism_count(); ++u) {
            const int x2 = fib.cod(u);
            mm[u] = fib_mor[G.morphism(C.identity(a), fib.compose(L.eta(a, x2), u), x2)];
        }
        rt.comparison.emplace_back(L.fibres[a], rt.recovered.fibres[a], std::move(om), std::move(mm));
        if (!is_isomorphism(rt.comparison.back())) {
            rt.report.add("ComparisonNotIso", "fibre comparison is not an isomorphism", {C.object(a)});
        }
    }
    const IndexedCat& R = rt.recovered;
    for (int f = 0; f < C.morphism_count(); ++f) {
        const int a = C.dom(f);
        const int b = C.cod(f);
        const auto& Pa = rt.comparison[a];
        const auto& Pb = rt.comparison[b];
        for (int y = 0; y < L.fibre(b).object_count(); ++y) {
            if (Pa.obj(L.apply(f, y)) != R.apply(f, Pb.obj(y))) {
                rt.report.add("ReindexMismatch", "reindexing does not commute on objects",
                              {C.morphism(f), L.fibre(b).object(y)});
            }
        }
        for (int v = 0; v < L.fibre(b).morphism_count(); ++v) {
            if (Pa.mor(L.apply_mor(f, v)) != R.apply_mor(f, Pb.mor(v))) {
                rt.report.add("ReindexMismatch", "reindexing does not commute on morphisms",
                              {C.morphism(f), L.fibre(b).morphism(v)});
                break;
            }
        }
        for (int g : C.out(b)) {
            const int c = C.cod(g);
            const auto& Pc = rt.comparison[c];
            for (int z = 0; z < L.fibre(c).object_count(); ++z) {
                if (Pa.mor(L.mu(f, g, z)) != R.mu(f, g, Pc.obj(z))) {
                    rt.report.add("CompositorMismatch", "compositors differ under the comparison",
                                  {C.morphism(f), C.morphism(g), L.fibre(c).object(z)});
                    break;
                }
            }
        }
    }
    for (int a = 0; a < C.object_count(); ++a) {
        for (int x = 0; x < L.fibre(a).object_count(); ++x) {
            if (rt.comparison[a].mor(L.eta(a, x)) != R.eta(a, rt.comparison[a].obj(x))) {
                rt.report.add("UnitorMismatch", "unitors differ under the comparison",
                              {C.object(a), L.fibre(a).object(x)});
            }
        }
    }
    rt.report.merge(validate_indexed(R), "recovered");
    return rt;
}

}  // namespace fibred
