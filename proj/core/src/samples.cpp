#include "fibred/samples.hpp"

#include <algorithm>
#include <set>

#include "fibred/search.hpp"

namespace fibred {

CatPtr codiscrete_category(int n) {
    std::vector<std::string> objs;
    for (int i = 0; i < n; ++i) objs.push_back("x" + std::to_string(i));
    std::vector<GeneratedMorphism> gens;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gens.push_back({objs[i] + ">" + objs[j], i, j});
    return share(FinCat::generate(
        objs, gens, [n](int i) { return i * n + i; },
        [&gens, n](int g, int f) { return gens[f].dom * n + gens[g].cod; }));
}

Subcategory subcategory(const CatPtr& c, const std::vector<int>& objects, const std::vector<int>& morphisms) {
    const FinCat& C = *c;
    std::set<int> obs(objects.begin(), objects.end());
    std::set<int> mors(morphisms.begin(), morphisms.end());
    for (int f : morphisms) {
        obs.insert(C.dom(f));
        obs.insert(C.cod(f));
    }
    for (int a : obs) mors.insert(C.identity(a));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> cur(mors.begin(), mors.end());
        for (int f : cur)
            for (int g : cur)
                if (C.cod(f) == C.dom(g) && mors.insert(C.compose(g, f)).second) grew = true;
    }
    std::vector<int> ob(obs.begin(), obs.end()), mo(mors.begin(), mors.end());
    std::vector<int> opos(C.object_count(), -1), mpos(C.morphism_count(), -1);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < ob.size(); ++i) {
        opos[ob[i]] = static_cast<int>(i);
        ids.push_back(C.object(ob[i]));
    }
    std::vector<GeneratedMorphism> gens;
    for (std::size_t i = 0; i < mo.size(); ++i) {
        mpos[mo[i]] = static_cast<int>(i);
        gens.push_back({C.morphism(mo[i]), opos[C.dom(mo[i])], opos[C.cod(mo[i])]});
    }
    auto sub = share(FinCat::generate(
        ids, gens, [&](int p) { return mpos[C.identity(ob[p])]; },
        [&](int g, int f) { return mpos[C.compose(mo[g], mo[f])]; }));
    std::vector<int> om(sub->object_count()), mm(sub->morphism_count());
    for (int a = 0; a < sub->object_count(); ++a) om[a] = C.object_index(sub->object(a));
    for (int f = 0; f < sub->morphism_count(); ++f) mm[f] = C.morphism_index(sub->morphism(f));
    return {sub, FinFunctor(sub, c, std::move(om), std::move(mm))};
}

namespace {

// Object permutation of a category with exactly one morphism between any two objects.
FinFunctor permute_codiscrete(const CatPtr& c, const std::vector<int>& perm) {
    const FinCat& C = *c;
    std::vector<int> mm(C.morphism_count());
    for (int f = 0; f < C.morphism_count(); ++f) mm[f] = C.hom(perm[C.dom(f)], perm[C.cod(f)])[0];
    return FinFunctor(c, c, perm, std::move(mm));
}

// sigma_f o L(f) for each base morphism, with theta the unique connecting arrows.
IndexedCat twist(const IndexedCat& L, const std::vector<std::vector<int>>& perms) {
    const FinCat& C = *L.base;
    std::vector<FinFunctor> P;
    std::vector<std::vector<int>> theta(C.morphism_count());
    for (int f = 0; f < C.morphism_count(); ++f) {
        const auto& perm = perms[f];
        const CatPtr& fib = L.fibres[C.dom(f)];
        P.push_back(compose_functors(permute_codiscrete(fib, perm), L.reindex[f]));
        const FinCat& src = L.fibre(C.cod(f));
        for (int y = 0; y < src.object_count(); ++y) {
            const int ly = L.apply(f, y);
            theta[f].push_back(fib->hom(ly, perm[ly])[0]);
        }
    }
    return transport(L, P, theta);
}

}  // namespace

IndexedCat pseudo_swap_fixture() {
    CatPtr base = shape_walking_arrow().category;
    CatPtr fib = codiscrete_category(2);
    const FinCat& C = *base;
    std::vector<FinFunctor> reindex(C.morphism_count(), identity_functor(fib));
    IndexedCat L = make_strict(base, {fib, fib}, reindex);
    std::vector<std::vector<int>> perms(C.morphism_count(), {0, 1});
    perms[C.morphism_index("id_0")] = {1, 0};
    perms[C.morphism_index("a")] = {1, 0};
    return twist(L, perms);
}

IndexedCat fam_over_finset(int n, const CatPtr& d) {
    return fam_indexed(identity_functor(finset_skeleton(n)), d);
}

DiagramPair make_diagram(const IndexedCat&, const Shape& shape, const FinFunctor& J1, const SectionObj& J2) {
    return {shape, J1, J2};
}

DiagramPair parallel_pair_diagram(const IndexedCat& L, int f, int alpha, int g, int beta, int x, int y) {
    const FinCat& C = *L.base;
    if (C.dom(f) != C.dom(g) || C.cod(f) != C.cod(g)) fail(ErrorCode::InvalidInput, "base morphisms are not parallel");
    Shape s = shape_parallel_pair();
    const FinCat& P = *s.category;
    const int a = C.dom(f), b = C.cod(f);
    std::vector<int> om = {a, b};
    std::vector<int> mm(P.morphism_count());
    SectionObj J2;
    J2.x = {x, y};
    J2.xi.resize(P.morphism_count());
    for (int m = 0; m < P.morphism_count(); ++m) {
        const std::string& id = P.morphism(m);
        if (id == "u") {
            mm[m] = f;
            J2.xi[m] = alpha;
        } else if (id == "v") {
            mm[m] = g;
            J2.xi[m] = beta;
        } else {
            const int o = om[P.dom(m)];
            mm[m] = C.identity(o);
            J2.xi[m] = L.eta(o, J2.x[P.dom(m)]);
        }
    }
    return {s, FinFunctor(s.category, L.base, om, mm), J2};
}

namespace {

bool small(const FinCat& c) { return c.object_count() <= 4 && c.morphism_count() <= 8; }

Subcategory random_base(std::mt19937_64& rng, const std::vector<int>& sizes) {
    CatPtr S = finset_skeleton(2);
    std::bernoulli_distribution keep(0.35);
    for (;;) {
        std::vector<int> objs = sizes;
        std::vector<int> mors;
        for (int f = 0; f < S->morphism_count(); ++f) {
            const int d = std::stoi(S->object(S->dom(f))), c = std::stoi(S->object(S->cod(f)));
            const bool in = std::count(objs.begin(), objs.end(), d) && std::count(objs.begin(), objs.end(), c);
            if (in && !S->is_identity(f) && keep(rng)) mors.push_back(f);
        }
        std::vector<int> ob;
        for (int k : objs) ob.push_back(S->object_index(std::to_string(k)));
        auto sub = subcategory(S, ob, mors);
        if (small(*sub.category)) return sub;
    }
}

std::vector<int> random_sizes(std::mt19937_64& rng, int max_size) {
    std::vector<int> out;
    std::bernoulli_distribution coin(0.6);
    while (out.empty())
        for (int k = 0; k <= max_size; ++k)
            if (coin(rng)) out.push_back(k);
    return out;
}

}  // namespace

std::vector<RandomFixture> random_fixtures(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<RandomFixture> out;
    const CatPtr terminal = terminal_category();
    const CatPtr d2 = discrete_category(2);
    const CatPtr arrow = shape_walking_arrow().category;
    const CatPtr iso = codiscrete_category(2);
    while (static_cast<int>(out.size()) < count) {
        const int kind = static_cast<int>(out.size()) % 5;
        const std::string tag = "#" + std::to_string(out.size());
        if (kind <= 2) {
            // Fam with exponent sizes keeping d^k small
            const CatPtr& d = kind == 0 ? terminal : kind == 1 ? d2 : arrow;
            const int max_size = kind == 0 ? 2 : kind == 1 ? 2 : 1;
            auto sub = random_base(rng, random_sizes(rng, max_size));
            IndexedCat L = fam_indexed(sub.inclusion, d);
            if (!std::all_of(L.fibres.begin(), L.fibres.end(), [](const CatPtr& f) { return small(*f); })) continue;
            const char* dn = kind == 0 ? "terminal" : kind == 1 ? "discrete2" : "arrow";
            out.push_back({"fam-" + std::string(dn) + tag, std::move(L)});
        } else if (kind == 3) {
            auto sub = random_base(rng, random_sizes(rng, 2));
            const int c = std::uniform_int_distribution<int>(0, sub.category->object_count() - 1)(rng);
            IndexedCat L = representable_indexed(sub.category, c);
            if (!std::all_of(L.fibres.begin(), L.fibres.end(), [](const CatPtr& f) { return small(*f); })) continue;
            out.push_back({"representable" + tag, std::move(L)});
        } else {
            auto sub = random_base(rng, random_sizes(rng, 1));
            IndexedCat L = fam_indexed(sub.inclusion, iso);
            const FinCat& C = *L.base;
            std::vector<std::vector<int>> perms;
            std::bernoulli_distribution coin(0.5);
            for (int f = 0; f < C.morphism_count(); ++f) {
                const int n = L.fibre(C.dom(f)).object_count();
                std::vector<int> p(n);
                for (int i = 0; i < n; ++i) p[i] = i;
                if (n == 2 && coin(rng)) std::swap(p[0], p[1]);
                perms.push_back(std::move(p));
            }
            out.push_back({"pseudo" + tag, twist(L, perms)});
        }
    }
    return out;
}

bool random_diagram(const IndexedCat& L, const Shape& shape, std::mt19937_64& rng, DiagramPair& out) {
    auto functors = enumerate_functors(shape.category, L.base, 5000);
    if (functors.empty()) return false;
    const auto& J1 = functors[std::uniform_int_distribution<std::size_t>(0, functors.size() - 1)(rng)];
    try {
        auto S = sections_category(restrict(L, J1));
        if (S.objects.empty()) return false;
        const auto& J2 = S.objects[std::uniform_int_distribution<std::size_t>(0, S.objects.size() - 1)(rng)];
        out = {shape, J1, J2};
        return true;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace fibred
