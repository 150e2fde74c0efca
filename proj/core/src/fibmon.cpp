#include "fibred/fibmon.hpp"

#include <algorithm>
#include <set>

#include "fibred/fixtures.hpp"
#include "fibred/samples.hpp"
#include "fibred/search.hpp"

namespace fibred {

// ---------------------------------------------------------------- tabulation

int Tabulation::morphism(int a, int b, const Arrow& f) const {
    auto it = index.find({a, b, source->index_of(a, b, f)});
    if (it == index.end()) fail(ErrorCode::InvalidInput, "arrow outside the tabulation");
    return it->second;
}

Arrow Tabulation::arrow(int m) const {
    const FinCat& C = *category;
    return source->arrow_at(C.dom(m), C.cod(m), position[m]);
}

Tabulation tabulate(const ModelPtr& m, std::uint64_t bound) {
    const int n = m->object_count();
    if (n > 10) fail(ErrorCode::SizeExceeded, "tabulation keeps at most ten objects");
    std::uint64_t total = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            total += m->hom_size(a, b);
            if (total > bound)
                fail(ErrorCode::SizeExceeded, "tabulating " + m->name() + " exceeds " + std::to_string(bound) + " arrows");
        }
    std::vector<std::string> objs;
    for (int a = 0; a < n; ++a) objs.push_back(std::to_string(a));
    std::vector<GeneratedMorphism> gens;
    std::vector<std::tuple<int, int, std::uint64_t>> where;
    std::map<std::tuple<int, int, std::uint64_t>, int> pos;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (std::uint64_t i = 0; i < m->hom_size(a, b); ++i) {
                pos[{a, b, i}] = static_cast<int>(gens.size());
                gens.push_back({m->arrow_name(a, b, m->arrow_at(a, b, i)), a, b});
                where.emplace_back(a, b, i);
            }
    std::vector<int> mpos;
    FinCat c = FinCat::generate(
        objs, gens, [&](int a) { return pos.at({a, a, m->index_of(a, a, m->identity(a))}); },
        [&](int g, int f) {
            const auto [a, b, i] = where[f];
            const auto [b2, c2, j] = where[g];
            const Arrow h = m->compose(a, b, c2, m->arrow_at(b, c2, j), m->arrow_at(a, b, i));
            return pos.at({a, c2, m->index_of(a, c2, h)});
        },
        nullptr, &mpos);
    Tabulation t;
    t.category = share(std::move(c));
    t.source = m;
    t.model = tabulated_model(t.category);
    t.position.resize(gens.size());
    for (std::size_t p = 0; p < gens.size(); ++p) {
        t.index[where[p]] = mpos[p];
        t.position[mpos[p]] = std::get<2>(where[p]);
    }
    return t;
}

MonoidalData transfer_monoidal(const MonoidalData& m, const Tabulation& t) {
    auto tp = std::make_shared<const Tabulation>(t);
    auto src = std::make_shared<const MonoidalData>(m);
    auto enc = [tp](int a, int b, const Arrow& f) { return Arrow{tp->morphism(a, b, f)}; };
    auto dec = [tp](const Arrow& f) { return tp->arrow(f[0]); };
    MonoidalData out;
    out.name = m.name;
    out.carrier = t.model;
    out.unit = m.unit;
    out.tensor = m.tensor;
    out.tensor_arrow = [src, enc, dec](int a, int a2, int b, int b2, const Arrow& f, const Arrow& g) {
        return enc(src->tensor(a, b), src->tensor(a2, b2), src->tensor_arrow(a, a2, b, b2, dec(f), dec(g)));
    };
    out.associator = [src, enc](int a, int b, int c) {
        const auto& s = *src;
        return enc(s.tensor(s.tensor(a, b), c), s.tensor(a, s.tensor(b, c)), s.associator(a, b, c));
    };
    out.associator_inv = [src, enc](int a, int b, int c) {
        const auto& s = *src;
        return enc(s.tensor(a, s.tensor(b, c)), s.tensor(s.tensor(a, b), c), s.associator_inv(a, b, c));
    };
    out.left_unitor = [src, enc](int a) { return enc(src->tensor(src->unit, a), a, src->left_unitor(a)); };
    out.left_unitor_inv = [src, enc](int a) { return enc(a, src->tensor(src->unit, a), src->left_unitor_inv(a)); };
    out.right_unitor = [src, enc](int a) { return enc(src->tensor(a, src->unit), a, src->right_unitor(a)); };
    out.right_unitor_inv = [src, enc](int a) { return enc(a, src->tensor(a, src->unit), src->right_unitor_inv(a)); };
    if (m.cartesian()) {
        out.proj1 = [src, enc](int a, int b) { return enc(src->tensor(a, b), a, src->proj1(a, b)); };
        out.proj2 = [src, enc](int a, int b) { return enc(src->tensor(a, b), b, src->proj2(a, b)); };
        out.pair = [src, enc, dec](int x, int a, int b, const Arrow& f, const Arrow& g) {
            return enc(x, src->tensor(a, b), src->pair(x, a, b, dec(f), dec(g)));
        };
    }
    if (m.cocartesian()) {
        out.inj1 = [src, enc](int a, int b) { return enc(a, src->tensor(a, b), src->inj1(a, b)); };
        out.inj2 = [src, enc](int a, int b) { return enc(b, src->tensor(a, b), src->inj2(a, b)); };
        out.copair = [src, enc, dec](int a, int b, int x, const Arrow& f, const Arrow& g) {
            return enc(src->tensor(a, b), x, src->copair(a, b, x, dec(f), dec(g)));
        };
    }
    return out;
}

// ---------------------------------------------------------------- indexed monoidal

bool IndexedMonoidal::identity_witnesses() const {
    for (const auto& w : tensor_witness)
        if (!w.empty()) return false;
    for (int u : unit_witness)
        if (u >= 0) return false;
    return true;
}

namespace {

// Arrow helpers on a monoidal structure over a tabulated fibre.
struct Fib {
    const MonoidalData& m;
    const FinCat& c;
    int T(int x, int y) const {
        const int t = m.tensor(x, y);
        return t >= 0 && t < c.object_count() ? t : -1;
    }
    int ta(int a, int a2, int b, int b2, int f, int g) const { return m.tensor_arrow(a, a2, b, b2, {f}, {g})[0]; }
    int id(int x) const { return c.identity(x); }
};

int witness_at(const IndexedMonoidal& im, int f, int x, int y) {
    const FinCat& A = im.L.fibre(im.L.base->dom(f));
    const FinCat& B = im.L.fibre(im.L.base->cod(f));
    const auto& w = f < static_cast<int>(im.tensor_witness.size()) ? im.tensor_witness[f] : std::vector<int>{};
    if (w.empty()) {
        const int t = im.fibres[im.L.base->cod(f)].tensor(x, y);
        return A.identity(im.L.apply(f, t));
    }
    return w[x * B.object_count() + y];
}

int unit_witness_at(const IndexedMonoidal& im, int f) {
    const int a = im.L.base->dom(f), b = im.L.base->cod(f);
    if (f < static_cast<int>(im.unit_witness.size()) && im.unit_witness[f] >= 0) return im.unit_witness[f];
    return im.L.fibre(a).identity(im.L.apply(f, im.fibres[b].unit));
}

}  // namespace

ValidationReport validate_indexed_monoidal(const IndexedMonoidal& im, const MonoidalCheck& check) {
    ValidationReport rep = validate_indexed(im.L);
    const IndexedCat& L = im.L;
    const FinCat& base = *L.base;
    if (static_cast<int>(im.fibres.size()) != base.object_count()) {
        rep.add("FibreCount", "one monoidal structure per base object is required");
        return rep;
    }
    for (int a = 0; a < base.object_count(); ++a) {
        if (tabulated_source(*im.fibres[a].carrier) != L.fibres[a].get()) {
            rep.add("FibreCarrier", "monoidal structure is not on the fibre", {base.object(a)});
            continue;
        }
        rep.merge(validate_monoidal(im.fibres[a], check), "fibre over " + base.object(a));
    }
    if (!rep.ok()) return rep;
    if (!L.is_strict()) rep.note("reindexing is pseudo; compatibility with its unitors and compositors is not checked");
    int skipped = 0;
    for (int f = 0; f < base.morphism_count(); ++f) {
        const int a = base.dom(f), b = base.cod(f);
        const FinCat& A = L.fibre(a);
        const FinCat& B = L.fibre(b);
        const Fib FA{im.fibres[a], A}, FB{im.fibres[b], B};
        const FinFunctor& F = L.reindex[f];
        const std::vector<std::string> at = {base.morphism(f)};
        // unit
        const int uw = unit_witness_at(im, f);
        if (A.dom(uw) != F.obj(FB.m.unit) || A.cod(uw) != FA.m.unit || !is_iso(A, uw))
            rep.add("UnitWitness", "unit comparison is not an iso L(f)I -> I", at);
        // tensor comparison: endpoints, invertibility, naturality
        for (int x = 0; x < B.object_count(); ++x)
            for (int y = 0; y < B.object_count(); ++y) {
                const int t = FB.T(x, y);
                if (t < 0) continue;
                const int r = FA.T(F.obj(x), F.obj(y));
                if (r < 0) {
                    ++skipped;
                    continue;
                }
                const int w = witness_at(im, f, x, y);
                if (A.dom(w) != F.obj(t) || A.cod(w) != r || !is_iso(A, w)) {
                    rep.add("TensorWitness", "comparison is not an iso L(f)(X(x)Y) -> L(f)X(x)L(f)Y",
                            {base.morphism(f), B.object(x), B.object(y)});
                    continue;
                }
                for (int x2 = 0; x2 < B.object_count(); ++x2)
                    for (int y2 = 0; y2 < B.object_count(); ++y2) {
                        const int t2 = FB.T(x2, y2);
                        if (t2 < 0 || FA.T(F.obj(x2), F.obj(y2)) < 0) continue;
                        const int w2 = witness_at(im, f, x2, y2);
                        for (int u : B.hom(x, x2))
                            for (int v : B.hom(y, y2)) {
                                const int lhs = A.compose(w2, F.mor(FB.ta(x, x2, y, y2, u, v)));
                                const int rhs = A.compose(
                                    FA.ta(F.obj(x), F.obj(x2), F.obj(y), F.obj(y2), F.mor(u), F.mor(v)), w);
                                if (lhs != rhs)
                                    rep.add("WitnessNaturality", "comparison not natural",
                                            {base.morphism(f), B.morphism(u), B.morphism(v)});
                            }
                    }
            }
        if (!rep.ok()) continue;
        // associativity and unit coherence
        for (int x = 0; x < B.object_count(); ++x) {
            const int ix = FB.T(FB.m.unit, x);
            if (ix >= 0 && FA.T(F.obj(FB.m.unit), F.obj(x)) >= 0 && FA.T(FA.m.unit, F.obj(x)) >= 0) {
                const int fx = F.obj(x);
                int p = witness_at(im, f, FB.m.unit, x);
                p = A.compose(FA.ta(F.obj(FB.m.unit), FA.m.unit, fx, fx, uw, FA.id(fx)), p);
                p = A.compose(FA.m.left_unitor(fx)[0], p);
                if (p != F.mor(FB.m.left_unitor(x)[0]))
                    rep.add("UnitCoherence", "left unitor not preserved", {base.morphism(f), B.object(x)});
            }
            for (int y = 0; y < B.object_count(); ++y)
                for (int z = 0; z < B.object_count(); ++z) {
                    const int xy = FB.T(x, y), yz = FB.T(y, z);
                    if (xy < 0 || yz < 0 || FB.T(xy, z) < 0 || FB.T(x, yz) < 0) continue;
                    const int fx = F.obj(x), fy = F.obj(y), fz = F.obj(z);
                    const int fxy = FA.T(fx, fy), fyz = FA.T(fy, fz);
                    if (fxy < 0 || fyz < 0 || FA.T(fxy, fz) < 0 || FA.T(fx, fyz) < 0) continue;
                    if (FA.T(F.obj(xy), fz) < 0 || FA.T(fx, F.obj(yz)) < 0) continue;
                    int p1 = witness_at(im, f, xy, z);
                    p1 = A.compose(FA.ta(F.obj(xy), fxy, fz, fz, witness_at(im, f, x, y), FA.id(fz)), p1);
                    p1 = A.compose(FA.m.associator(fx, fy, fz)[0], p1);
                    int p2 = F.mor(FB.m.associator(x, y, z)[0]);
                    p2 = A.compose(witness_at(im, f, x, yz), p2);
                    p2 = A.compose(FA.ta(fx, fx, F.obj(yz), fyz, FA.id(fx), witness_at(im, f, y, z)), p2);
                    if (p1 != p2)
                        rep.add("AssociatorCoherence", "associator not preserved",
                                {base.morphism(f), B.object(x), B.object(y), B.object(z)});
                }
        }
    }
    if (skipped) rep.note(std::to_string(skipped) + " comparisons beyond the bound skipped");
    return rep;
}

IndexedMonoidal fam_monoidal_along(const FinFunctor& P, const CatPtr& d, bool cartesian) {
    IndexedMonoidal im;
    im.L = fam_indexed(P, d);
    std::map<const FinCat*, MonoidalData> cache;
    for (const auto& f : im.L.fibres) {
        auto it = cache.find(f.get());
        if (it == cache.end())
            it = cache.emplace(f.get(), cartesian ? tabulated_cartesian(f) : tabulated_cocartesian(f)).first;
        im.fibres.push_back(it->second);
    }
    im.tensor_witness.resize(im.L.base->morphism_count());
    im.unit_witness.assign(im.L.base->morphism_count(), -1);
    return im;
}

IndexedMonoidal fam_monoidal(int n, const CatPtr& d, bool cartesian) {
    return fam_monoidal_along(identity_functor(finset_skeleton(n)), d, cartesian);
}

FinFunctor chain_into_finset(int n) {
    CatPtr c = chain_category(n);
    CatPtr s = finset_skeleton(n - 1);
    std::vector<std::pair<std::string, std::string>> om, mm;
    for (int i = 0; i < n; ++i) om.emplace_back(std::to_string(i), std::to_string(i));
    for (int f = 0; f < c->morphism_count(); ++f) {
        const int i = c->dom(f), j = c->cod(f);
        std::vector<int> v(i);
        for (int k = 0; k < i; ++k) v[k] = k;
        mm.emplace_back(c->morphism(f), function_id(i, j, v));
    }
    return FinFunctor::from_ids(c, s, om, mm);
}

// ---------------------------------------------------------------- Dial_pf fibres

namespace {

std::uint64_t power(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (b == 0) return 0;
        if (r >= Model::kHomCap / b) return Model::kHomCap;
        r *= b;
    }
    return r;
}

class DialFibreModel : public Model {
public:
    DialFibreModel(int u, int n) : u_(u), n_(n) {}
    std::string name() const override { return "dial(" + std::to_string(u_) + "," + std::to_string(n_) + ")"; }
    int object_count() const override { return n_ + 1; }
    std::uint64_t hom_size(int a, int b) const override {
        return power(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(u_ * b));
    }
    Arrow arrow_at(int a, int b, std::uint64_t index) const override {
        Arrow f(static_cast<std::size_t>(u_ * b));
        for (auto& v : f) {
            v = static_cast<int>(index % static_cast<std::uint64_t>(a));
            index /= static_cast<std::uint64_t>(a);
        }
        return f;
    }
    std::uint64_t index_of(int a, int, const Arrow& f) const override {
        std::uint64_t i = 0;
        for (auto it = f.rbegin(); it != f.rend(); ++it) i = i * static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(*it);
        return i;
    }
    Arrow identity(int a) const override {
        Arrow f(static_cast<std::size_t>(u_ * a));
        for (int u = 0; u < u_; ++u)
            for (int x = 0; x < a; ++x) f[u * a + x] = x;
        return f;
    }
    bool valid(int a, int b, const Arrow& f) const override {
        if (static_cast<int>(f.size()) != u_ * b) return false;
        return std::all_of(f.begin(), f.end(), [a](int v) { return v >= 0 && v < a; });
    }
    // f : a -> b is U x b -> a; g : b -> c is U x c -> b
    Arrow compose(int, int b, int c, const Arrow& g, const Arrow& f) const override {
        Arrow h(static_cast<std::size_t>(u_ * c));
        for (int u = 0; u < u_; ++u)
            for (int z = 0; z < c; ++z) h[u * c + z] = f[u * b + g[u * c + z]];
        return h;
    }

private:
    int u_, n_;
};

}  // namespace

ModelPtr dial_fibre_model(int u, int n) { return std::make_shared<DialFibreModel>(u, n); }

MonoidalData dial_fibre_coproducts(int u, int n) {
    ProductData p;
    p.terminal = 1;
    p.product = [n](int a, int b) { return a * b <= n ? a * b : -1; };
    p.proj1 = [u](int a, int b) {
        Arrow f(static_cast<std::size_t>(u * a * b));
        for (int i = 0; i < u; ++i)
            for (int k = 0; k < a * b; ++k) f[i * a * b + k] = k / b;
        return f;
    };
    p.proj2 = [u](int a, int b) {
        Arrow f(static_cast<std::size_t>(u * a * b));
        for (int i = 0; i < u; ++i)
            for (int k = 0; k < a * b; ++k) f[i * a * b + k] = k % b;
        return f;
    };
    p.pair = [](int, int b, int, const Arrow& f, const Arrow& g) {
        Arrow h(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) h[i] = f[i] * b + g[i];
        return h;
    };
    return from_coproducts("dial fibre coproducts", dial_fibre_model(u, n), std::move(p));
}

IndexedMonoidal dial_pf_indexed(int base_n, int fibre_n) {
    CatPtr base = finset_skeleton(base_n);
    std::vector<Tabulation> tabs;
    std::vector<CatPtr> fibres;
    IndexedMonoidal im;
    for (int u = 0; u <= base_n; ++u) {
        tabs.push_back(tabulate(dial_fibre_model(u, fibre_n)));
        fibres.push_back(tabs.back().category);
        im.fibres.push_back(transfer_monoidal(dial_fibre_coproducts(u, fibre_n), tabs.back()));
    }
    std::vector<FinFunctor> reindex;
    for (int f = 0; f < base->morphism_count(); ++f) {
        const int a = base->dom(f), b = base->cod(f);
        const auto vals = function_values(base->morphism(f));
        const Tabulation& src = tabs[b];
        const Tabulation& tgt = tabs[a];
        std::vector<int> om(fibre_n + 1), mm(src.category->morphism_count());
        for (int x = 0; x <= fibre_n; ++x) om[x] = x;
        for (int m = 0; m < src.category->morphism_count(); ++m) {
            const int x = src.category->dom(m), y = src.category->cod(m);
            const Arrow g = src.arrow(m);
            Arrow h(static_cast<std::size_t>(a * y));
            for (int i = 0; i < a; ++i)
                for (int z = 0; z < y; ++z) h[i * y + z] = g[vals[i] * y + z];
            mm[m] = tgt.morphism(x, y, h);
        }
        reindex.emplace_back(src.category, tgt.category, std::move(om), std::move(mm));
    }
    im.L = make_strict(base, std::move(fibres), std::move(reindex));
    im.tensor_witness.resize(base->morphism_count());
    im.unit_witness.assign(base->morphism_count(), -1);
    return im;
}

// ---------------------------------------------------------------- total tensor

namespace {

struct TotalCtx {
    GrothCat G;
    MonoidalData base;
    std::vector<MonoidalData> fibres;
    ModelPtr carrier;

    const IndexedCat& L() const { return G.source; }
    int bp(int c, int d) const { return base.tensor(c, d); }
    int p1(int c, int d) const { return base.proj1(c, d)[0]; }
    int p2(int c, int d) const { return base.proj2(c, d)[0]; }

    int tensor(int e1, int e2) const {
        if (e1 < 0 || e2 < 0) return -1;
        const auto [c, x] = G.object_pair[e1];
        const auto [d, y] = G.object_pair[e2];
        const int p = bp(c, d);
        if (p < 0) return -1;
        const int z = fibres[p].tensor(L().apply(p1(c, d), x), L().apply(p2(c, d), y));
        if (z < 0 || z >= L().fibre(p).object_count()) return -1;
        return G.object(p, z);
    }
};

void require_equal(int got, int want, const char* what) {
    if (got != want)
        fail(ErrorCode::Unsupported, std::string("reindexing does not preserve the ") + what + " on the nose");
}

}  // namespace

GrothMonoidal groth_monoidal(const IndexedMonoidal& im) {
    if (!im.L.is_strict()) fail(ErrorCode::Unsupported, "total tensor needs strict reindexing");
    if (!im.identity_witnesses()) fail(ErrorCode::Unsupported, "total tensor needs identity comparison maps");
    auto ctx = std::make_shared<TotalCtx>();
    ctx->G = grothendieck(im.L);
    ctx->base = tabulated_cartesian(im.L.base);
    ctx->fibres = im.fibres;
    ctx->carrier = tabulated_model(ctx->G.total);
    std::shared_ptr<const TotalCtx> k = ctx;

    MonoidalData t;
    t.name = "total";
    t.carrier = ctx->carrier;
    const int one = ctx->base.unit;
    t.unit = ctx->G.object(one, im.fibres[one].unit);
    t.tensor = [k](int a, int b) { return k->tensor(a, b); };
    t.tensor_arrow = [k](int a, int a2, int b, int b2, const Arrow& m1, const Arrow& m2) {
        const IndexedCat& L = k->L();
        const auto [f, u] = k->G.morphism_pair[m1[0]];
        const auto [g, v] = k->G.morphism_pair[m2[0]];
        const int c = k->G.object_pair[a].first, c2 = k->G.object_pair[a2].first;
        const int d = k->G.object_pair[b].first, d2 = k->G.object_pair[b2].first;
        const int p = k->bp(c, d);
        const int tgt = k->tensor(a2, b2);
        if (p < 0 || tgt < 0) return Arrow{-1};
        const int fg = k->base.tensor_arrow(c, c2, d, d2, {f}, {g})[0];
        const FinCat& FP = L.fibre(p);
        const int x = L.apply_mor(k->p1(c, d), u);
        const int y = L.apply_mor(k->p2(c, d), v);
        const int w = k->fibres[p].tensor_arrow(FP.dom(x), FP.cod(x), FP.dom(y), FP.cod(y), {x}, {y})[0];
        const int zt = k->G.object_pair[tgt].second;
        require_equal(FP.cod(w), L.apply(fg, zt), "tensor");
        return Arrow{k->G.morphism(fg, w, zt)};
    };
    t.associator = [k](int e1, int e2, int e3) {
        const IndexedCat& L = k->L();
        const int s = k->tensor(k->tensor(e1, e2), e3);
        const int e23 = k->tensor(e2, e3);
        if (s < 0 || e23 < 0 || k->tensor(e1, e23) < 0) return Arrow{-1};
        const int tt = k->tensor(e1, e23);
        const auto [c, x] = k->G.object_pair[e1];
        const auto [c2, x2] = k->G.object_pair[e2];
        const auto [c3, x3] = k->G.object_pair[e3];
        const int cc = k->bp(c, c2);
        const auto [sb, zs] = k->G.object_pair[s];
        const auto [tb, zt] = k->G.object_pair[tt];
        const int a = k->base.associator(c, c2, c3)[0];
        const FinCat& B = *L.base;
        const int q = k->p1(cc, c3);
        const int lx = L.apply(B.compose(k->p1(c, c2), q), x);
        const int ly = L.apply(B.compose(k->p2(c, c2), q), x2);
        const int lz = L.apply(k->p2(cc, c3), x3);
        const int al = k->fibres[sb].associator(lx, ly, lz)[0];
        const FinCat& FS = L.fibre(sb);
        require_equal(FS.dom(al), zs, "tensor");
        require_equal(FS.cod(al), L.apply(a, zt), "tensor");
        return Arrow{k->G.morphism(a, al, zt)};
    };
    auto unitor = [k](bool left) {
        return [k, left](int e) {
            const IndexedCat& L = k->L();
            const int one = k->base.unit;
            const auto [c, x] = k->G.object_pair[e];
            const int p = left ? k->bp(one, c) : k->bp(c, one);
            if (p < 0) return Arrow{-1};
            const int l = left ? k->base.left_unitor(c)[0] : k->base.right_unitor(c)[0];
            const MonoidalData& FP = k->fibres[p];
            const int ione = L.apply(left ? k->p1(one, c) : k->p2(c, one), k->fibres[one].unit);
            require_equal(ione, FP.unit, "unit");
            const int lx = L.apply(l, x);
            const int lam = left ? FP.left_unitor(lx)[0] : FP.right_unitor(lx)[0];
            return Arrow{k->G.morphism(l, lam, x)};
        };
    };
    t.left_unitor = unitor(true);
    t.right_unitor = unitor(false);
    auto inv = [k](int a, int b, const Arrow& f) {
        if (f[0] < 0) return Arrow{-1};
        auto g = inverse_arrow(*k->carrier, a, b, f);
        return g ? *g : Arrow{-1};
    };
    auto tensor = t.tensor;
    auto assoc = t.associator;
    t.associator_inv = [tensor, assoc, inv](int a, int b, int c) {
        const int s = tensor(a, b) < 0 ? -1 : tensor(tensor(a, b), c);
        const int tt = tensor(b, c) < 0 ? -1 : tensor(a, tensor(b, c));
        if (s < 0 || tt < 0) return Arrow{-1};
        return inv(s, tt, assoc(a, b, c));
    };
    const int unit = t.unit;
    auto lu = t.left_unitor, ru = t.right_unitor;
    t.left_unitor_inv = [tensor, lu, inv, unit](int a) {
        const int s = tensor(unit, a);
        return s < 0 ? Arrow{-1} : inv(s, a, lu(a));
    };
    t.right_unitor_inv = [tensor, ru, inv, unit](int a) {
        const int s = tensor(a, unit);
        return s < 0 ? Arrow{-1} : inv(s, a, ru(a));
    };

    GrothMonoidal gm;
    gm.G = ctx->G;
    gm.base = ctx->base;
    gm.total = std::move(t);
    return gm;
}

int groth_tensor(const GrothMonoidal& gm, int e1, int e2) {
    const int t = gm.total.tensor(e1, e2);
    if (t < 0)
        fail(ErrorCode::SizeExceeded, "tensor of " + gm.G.total->object(e1) + " and " + gm.G.total->object(e2) +
                                          " lies beyond the base bound");
    return t;
}

int groth_unit(const GrothMonoidal& gm) { return gm.total.unit; }

// ---------------------------------------------------------------- recovering fibres

RecoveredFibres fibre_monoidal_from_groth(const GrothMonoidal& gm, const IndexedMonoidal& im) {
    RecoveredFibres out;
    const IndexedCat& L = gm.G.source;
    const FinCat& B = *L.base;
    const MonoidalData& bm = gm.base;
    const MonoidalData& T = gm.total;
    const FinCat& E = *gm.G.total;
    const int one = bm.unit;
    out.fibres.resize(B.object_count());
    for (int c = 0; c < B.object_count(); ++c) {
        const int cc = bm.tensor(c, c);
        const int ccc = cc < 0 ? -1 : bm.tensor(cc, c);
        if (cc < 0 || ccc < 0 || bm.tensor(one, c) < 0 || bm.tensor(c, one) < 0) {
            out.report.note("fibre over " + B.object(c) + " skipped: diagonal beyond the bound");
            continue;
        }
        const FinCat& F = L.fibre(c);
        const int idc = B.identity(c);
        const int delta = bm.pair(c, c, c, {idc}, {idc})[0];
        const int d3 = bm.pair(c, cc, c, {delta}, {idc})[0];
        const auto bang = unique_arrow(*tabulated_model(L.base), c, one);
        if (!bang) fail(ErrorCode::InvalidInput, "base unit is not terminal");
        const int lu = bm.pair(c, one, c, *bang, {idc})[0];
        const int ru = bm.pair(c, c, one, {idc}, *bang)[0];
        const int n = F.object_count();
        const int nm = F.morphism_count();
        auto tens = std::make_shared<std::vector<int>>(n * n, -1);
        auto tarr = std::make_shared<std::vector<int>>(nm * nm, -1);
        auto asc = std::make_shared<std::vector<int>>(n * n * n, -1);
        auto lun = std::make_shared<std::vector<int>>(n, -1);
        auto run = std::make_shared<std::vector<int>>(n, -1);
        auto lift = [&](int u) { return gm.G.morphism(idc, u, F.cod(u)); };
        auto fibre_part = [&](int m) { return gm.G.morphism_pair[m].second; };
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                const int t = T.tensor(gm.G.object(c, x), gm.G.object(c, y));
                if (t >= 0) (*tens)[x * n + y] = L.apply(delta, gm.G.object_pair[t].second);
            }
        for (int u = 0; u < nm; ++u)
            for (int v = 0; v < nm; ++v) {
                const int a = gm.G.object(c, F.dom(u)), a2 = gm.G.object(c, F.cod(u));
                const int b = gm.G.object(c, F.dom(v)), b2 = gm.G.object(c, F.cod(v));
                if (T.tensor(a, b) < 0 || T.tensor(a2, b2) < 0) continue;
                const int m = T.tensor_arrow(a, a2, b, b2, {lift(u)}, {lift(v)})[0];
                (*tarr)[u * nm + v] = L.apply_mor(delta, fibre_part(m));
            }
        for (int x = 0; x < n; ++x) {
            const int ex = gm.G.object(c, x);
            (*lun)[x] = L.apply_mor(lu, fibre_part(T.left_unitor(ex)[0]));
            (*run)[x] = L.apply_mor(ru, fibre_part(T.right_unitor(ex)[0]));
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                    const Arrow al = T.associator(ex, gm.G.object(c, y), gm.G.object(c, z));
                    if (al[0] >= 0) (*asc)[(x * n + y) * n + z] = L.apply_mor(d3, fibre_part(al[0]));
                }
        }
        MonoidalData r;
        r.name = "recovered over " + B.object(c);
        r.carrier = tabulated_model(L.fibres[c]);
        r.unit = L.apply((*bang)[0], im.fibres[one].unit);
        r.tensor = [tens, n](int x, int y) { return (*tens)[x * n + y]; };
        r.tensor_arrow = [tarr, nm](int, int, int, int, const Arrow& f, const Arrow& g) {
            return Arrow{(*tarr)[f[0] * nm + g[0]]};
        };
        r.associator = [asc, n](int x, int y, int z) { return Arrow{(*asc)[(x * n + y) * n + z]}; };
        r.left_unitor = [lun](int x) { return Arrow{(*lun)[x]}; };
        r.right_unitor = [run](int x) { return Arrow{(*run)[x]}; };
        auto car = r.carrier;
        auto inv = [car](int a, int b, const Arrow& f) {
            auto g = f[0] < 0 ? std::nullopt : inverse_arrow(*car, a, b, f);
            return g ? *g : Arrow{-1};
        };
        const int unit = r.unit;
        r.associator_inv = [tens, asc, n, inv](int x, int y, int z) {
            const int xy = (*tens)[x * n + y], yz = (*tens)[y * n + z];
            if (xy < 0 || yz < 0) return Arrow{-1};
            return inv((*tens)[xy * n + z], (*tens)[x * n + yz], Arrow{(*asc)[(x * n + y) * n + z]});
        };
        r.left_unitor_inv = [tens, lun, n, inv, unit](int x) { return inv((*tens)[unit * n + x], x, Arrow{(*lun)[x]}); };
        r.right_unitor_inv = [tens, run, n, inv, unit](int x) { return inv((*tens)[x * n + unit], x, Arrow{(*run)[x]}); };

        // compare with the structure we started from
        const MonoidalData& o = im.fibres[c];
        const std::string at = B.object(c);
        if (r.unit != o.unit) out.report.add("RecoveredUnit", "unit differs", {at});
        for (int x = 0; x < n; ++x) {
            if ((*lun)[x] != o.left_unitor(x)[0] || (*run)[x] != o.right_unitor(x)[0])
                out.report.add("RecoveredUnitor", "unitor differs", {at, F.object(x)});
            for (int y = 0; y < n; ++y) {
                const int ot = o.tensor(x, y);
                if ((*tens)[x * n + y] != (ot < n ? ot : -1))
                    out.report.add("RecoveredTensor", "tensor differs", {at, F.object(x), F.object(y)});
                for (int z = 0; z < n; ++z) {
                    const int got = (*asc)[(x * n + y) * n + z];
                    const int xy = o.tensor(x, y), yz = o.tensor(y, z);
                    if (got < 0 || xy < 0 || yz < 0 || o.tensor(xy, z) < 0 || o.tensor(x, yz) < 0) continue;
                    if (got != o.associator(x, y, z)[0])
                        out.report.add("RecoveredAssociator", "associator differs",
                                       {at, F.object(x), F.object(y), F.object(z)});
                }
            }
        }
        for (int u = 0; u < nm; ++u)
            for (int v = 0; v < nm; ++v) {
                const int got = (*tarr)[u * nm + v];
                if (got < 0) continue;
                if (got != o.tensor_arrow(F.dom(u), F.cod(u), F.dom(v), F.cod(v), {u}, {v})[0])
                    out.report.add("RecoveredTensor", "tensor of arrows differs", {at, F.morphism(u), F.morphism(v)});
            }
        out.report.merge(validate_monoidal(r, {n - 1, 4096}), "recovered over " + at);
        out.fibres[c] = std::move(r);
    }
    (void)E;
    return out;
}

// ---------------------------------------------------------------- closure

FibredClosure fibred_closure_data(const GrothMonoidal& gm, const IndexedMonoidal& im) {
    FibredClosure fc;
    fc.base = tabulated_closure(gm.base);
    std::map<const FinCat*, ClosedData> cache;
    for (std::size_t a = 0; a < im.fibres.size(); ++a) {
        const FinCat* key = im.L.fibres[a].get();
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, tabulated_closure(im.fibres[a])).first;
        fc.fibres.push_back(it->second);
    }
    return fc;
}

namespace {

const AdjunctionWitness& pushforward(const IndexedCat& L, FibredClosure& fc, int p) {
    auto it = fc.pushforward.find(p);
    if (it != fc.pushforward.end()) return it->second;
    try {
        return fc.pushforward.emplace(p, find_right_adjoint(L.reindex[p])).first->second;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotFound) throw;
        fail(ErrorCode::NoRightAdjoint, "reindexing along " + L.base->morphism(p) + " has no right adjoint: " + e.what());
    }
}

struct HomPieces {
    int e = -1, p = -1, p1 = -1, p2 = -1, ev = -1, x = -1, y = -1, h = -1;
};

HomPieces hom_pieces(const GrothMonoidal& gm, FibredClosure& fc, int e1, int e2) {
    const IndexedCat& L = gm.G.source;
    const auto [c, x] = gm.G.object_pair[e1];
    const auto [c2, y] = gm.G.object_pair[e2];
    HomPieces hp;
    hp.e = fc.base.hom(c, c2);
    if (hp.e < 0)
        fail(ErrorCode::SizeExceeded, "exponential " + L.base->object(c) + " => " + L.base->object(c2) + " beyond the bound");
    hp.p = gm.base.tensor(c, hp.e);
    hp.p1 = gm.base.proj1(c, hp.e)[0];
    hp.p2 = gm.base.proj2(c, hp.e)[0];
    hp.ev = fc.base.eval(c, c2)[0];
    hp.x = L.apply(hp.p1, x);
    hp.y = L.apply(hp.ev, y);
    hp.h = fc.fibres[hp.p].hom(hp.x, hp.y);
    if (hp.h < 0) fail(ErrorCode::SizeExceeded, "fibre hom over " + L.base->object(hp.p) + " beyond the bound");
    return hp;
}

}  // namespace

int fibred_hom(const GrothMonoidal& gm, const IndexedMonoidal&, FibredClosure& fc, int e1, int e2) {
    const HomPieces hp = hom_pieces(gm, fc, e1, e2);
    const auto& w = pushforward(gm.G.source, fc, hp.p2);
    return gm.G.object(hp.e, w.right.obj(hp.h));
}

int fibred_eval(const GrothMonoidal& gm, const IndexedMonoidal& im, FibredClosure& fc, int e1, int e2) {
    const IndexedCat& L = gm.G.source;
    const HomPieces hp = hom_pieces(gm, fc, e1, e2);
    const auto& w = pushforward(L, fc, hp.p2);
    const int k = w.right.obj(hp.h);
    const int eps = w.counit.components[hp.h];  // L(p2) R H -> H
    const FinCat& FP = L.fibre(hp.p);
    const MonoidalData& M = im.fibres[hp.p];
    const int lk = L.apply(hp.p2, k);
    const int step = M.tensor_arrow(hp.x, hp.x, lk, hp.h, {FP.identity(hp.x)}, {eps})[0];
    const int u = FP.compose(fc.fibres[hp.p].eval(hp.x, hp.y)[0], step);
    return gm.G.morphism(hp.ev, u, gm.G.object_pair[e2].second);
}

ValidationReport check_beck_chevalley(const GrothMonoidal& gm, const IndexedMonoidal&, FibredClosure& fc) {
    ValidationReport rep;
    const IndexedCat& L = gm.G.source;
    const FinCat& B = *L.base;
    const MonoidalData& bm = gm.base;
    int squares = 0;
    for (int c = 0; c < B.object_count(); ++c)
        for (int e = 0; e < B.object_count(); ++e) {
            const int p = bm.tensor(c, e);
            if (p < 0) continue;
            const AdjunctionWitness* R = nullptr;
            try {
                R = &pushforward(L, fc, bm.proj2(c, e)[0]);
            } catch (const Error& err) {
                if (err.code() != ErrorCode::NoRightAdjoint) throw;
                rep.add("NoRightAdjoint", err.what(), {B.object(c), B.object(e)});
                continue;
            }
            for (int e2 = 0; e2 < B.object_count(); ++e2) {
                const int p2 = bm.tensor(c, e2);
                if (p2 < 0) continue;
                const AdjunctionWitness* R2 = nullptr;
                try {
                    R2 = &pushforward(L, fc, bm.proj2(c, e2)[0]);
                } catch (const Error& err) {
                    if (err.code() != ErrorCode::NoRightAdjoint) throw;
                    continue;  // reported from its own square
                }
                for (int g : B.hom(e2, e)) {
                    ++squares;
                    const int h = bm.tensor_arrow(c, c, e2, e, {B.identity(c)}, {g})[0];
                    const FinCat& FE2 = L.fibre(e2);
                    for (int m = 0; m < L.fibre(p).object_count(); ++m) {
                        const int rm = R->right.obj(m);
                        const int eps = R->counit.components[m];
                        const int eta = R2->unit.components[L.apply(g, rm)];
                        const int beta = FE2.compose(R2->right.mor(L.apply_mor(h, eps)), eta);
                        if (!is_iso(FE2, beta))
                            rep.add("BeckChevalley", "mate is not invertible",
                                    {B.object(c), B.morphism(g), L.fibre(p).object(m)});
                    }
                }
            }
        }
    rep.note(std::to_string(squares) + " squares checked");
    return rep;
}

CurryReport verify_fibred_hom(const GrothMonoidal& gm, const IndexedMonoidal& im, FibredClosure& fc) {
    CurryReport out;
    const FinCat& E = *gm.G.total;
    const MonoidalData& T = gm.total;
    const int n = E.object_count();
    for (int a = 0; a < n; ++a)
        for (int cobj = 0; cobj < n; ++cobj) {
            int h = -1, ev = -1;
            try {
                h = fibred_hom(gm, im, fc, a, cobj);
                ev = fibred_eval(gm, im, fc, a, cobj);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::SizeExceeded) throw;
                out.skipped += n;
                continue;
            }
            if (T.tensor(a, h) < 0) {
                out.skipped += n;
                continue;
            }
            auto phi = [&](int b, int k) {
                return E.compose(ev, T.tensor_arrow(a, a, b, h, {E.identity(a)}, {k})[0]);
            };
            for (int b = 0; b < n; ++b) {
                const int ab = T.tensor(a, b);
                if (ab < 0) {
                    ++out.skipped;
                    continue;
                }
                const auto lhs = E.hom(ab, cobj);
                const auto rhs = E.hom(b, h);
                std::set<int> image;
                for (int k : rhs) image.insert(phi(b, k));
                out.counts.emplace_back(a, b, cobj, lhs.size(), rhs.size());
                const std::set<int> want(lhs.begin(), lhs.end());
                if (image != want || rhs.size() != lhs.size())
                    out.report.add("CurryNotBijective",
                                   std::to_string(lhs.size()) + " arrows A(x)B -> C against " +
                                       std::to_string(rhs.size()) + " arrows B -> A-oC",
                                   {E.object(a), E.object(b), E.object(cobj)});
                // naturality in B along every arrow into it
                for (int b0 = 0; b0 < n; ++b0) {
                    const int ab0 = T.tensor(a, b0);
                    if (ab0 < 0) continue;
                    for (int s : E.hom(b0, b))
                        for (int k : rhs) {
                            const int l = phi(b0, E.compose(k, s));
                            const int r = E.compose(phi(b, k), T.tensor_arrow(a, a, b0, b, {E.identity(a)}, {s})[0]);
                            if (l != r)
                                out.report.add("CurryNotNatural", "currying not natural in B",
                                               {E.object(a), E.morphism(s), E.object(cobj)});
                        }
                }
            }
        }
    if (out.skipped) out.report.note(std::to_string(out.skipped) + " triples beyond the bound skipped");
    return out;
}

PiAlongProjection pi_along_projection(const GrothMonoidal& gm, const ClosedData& total_closure, int c, int c2) {
    const IndexedCat& L = gm.G.source;
    const FinCat& B = *L.base;
    const MonoidalData& bm = gm.base;
    PiAlongProjection out;
    out.c = c;
    out.c2 = c2;
    out.product = bm.tensor(c, c2);
    if (out.product < 0) fail(ErrorCode::SizeExceeded, "product " + B.object(c) + " x " + B.object(c2) + " beyond the bound");
    out.projection = bm.proj2(c, c2)[0];
    const ClosedData bc = tabulated_closure(bm);
    const int ex = bc.hom(c, out.product);
    if (ex < 0) fail(ErrorCode::SizeExceeded, "exponential beyond the bound");
    const int lam = bc.curry(c, c2, out.product, {B.identity(out.product)})[0];
    const auto bang = unique_arrow(*tabulated_model(L.base), c, bm.unit);
    if (!bang) fail(ErrorCode::InvalidInput, "base unit is not terminal");
    const int unit_c = L.apply((*bang)[0], gm.G.object_pair[gm.total.unit].second);
    const int ic = gm.G.object(c, unit_c);
    const FinFunctor& G = L.reindex[out.projection];
    const FinCat& FP = L.fibre(out.product);
    std::vector<UniversalArrow> arrows;
    for (int m = 0; m < FP.object_count(); ++m) {
        const int h = total_closure.hom(ic, gm.G.object(out.product, m));
        if (h < 0) fail(ErrorCode::SizeExceeded, "total closure beyond the bound");
        const auto [eh, z] = gm.G.object_pair[h];
        if (eh != ex) fail(ErrorCode::Unsupported, "total closure picked a different base exponential");
        const int r = L.apply(lam, z);
        out.objects.push_back(r);
        std::string why;
        auto ua = universal_arrow_to(G, m, &why, r);
        if (!ua) {
            out.report.add("NotRightAdjoint", why, {FP.object(m), L.fibre(c2).object(r)});
            continue;
        }
        arrows.push_back(*ua);
    }
    if (!out.report.ok()) return out;
    out.adjunction = assemble_right_adjoint(G, arrows);
    out.report.merge(validate_adjunction(out.adjunction), "projection");
    return out;
}

}  // namespace fibred
