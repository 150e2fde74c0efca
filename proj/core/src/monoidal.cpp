#include "fibred/monoidal.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "fibred/fixtures.hpp"
#include "fibred/search.hpp"

namespace fibred {

namespace {

std::uint64_t pow_sat(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base == 0) return 0;
        if (r > Model::kHomCap / base) return Model::kHomCap;
        r *= base;
    }
    return r;
}

std::string values_name(int a, int b, const Arrow& f) {
    if (b <= 10) return function_id(a, b, f);
    std::string s = std::to_string(a) + ">" + std::to_string(b) + ":";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) s += ',';
        s += f[i] < 0 ? std::string("-") : std::to_string(f[i]);
    }
    return s;
}

// Value tables a -> b; `partial` admits -1.
class SetModel : public Model {
public:
    SetModel(int n, bool partial) : n_(n), partial_(partial) {}
    std::string name() const override { return (partial_ ? "pset(" : "finset(") + std::to_string(n_) + ")"; }
    int object_count() const override { return n_ + 1; }
    std::uint64_t hom_size(int a, int b) const override { return pow_sat(static_cast<std::uint64_t>(b + partial_), a); }
    Arrow arrow_at(int a, int b, std::uint64_t index) const override {
        const std::uint64_t base = static_cast<std::uint64_t>(b + partial_);
        Arrow f(a);
        for (int i = 0; i < a; ++i) {
            f[i] = static_cast<int>(index % base) - partial_;
            index /= base;
        }
        return f;
    }
    std::uint64_t index_of(int a, int b, const Arrow& f) const override {
        const std::uint64_t base = static_cast<std::uint64_t>(b + partial_);
        std::uint64_t idx = 0;
        for (int i = a - 1; i >= 0; --i) idx = idx * base + static_cast<std::uint64_t>(f[i] + partial_);
        return idx;
    }
    Arrow identity(int a) const override {
        Arrow f(a);
        for (int i = 0; i < a; ++i) f[i] = i;
        return f;
    }
    bool valid(int a, int b, const Arrow& f) const override {
        if (static_cast<int>(f.size()) != a) return false;
        return std::all_of(f.begin(), f.end(), [&](int v) { return v >= -partial_ && v < b; });
    }
    Arrow compose(int, int, int, const Arrow& g, const Arrow& f) const override {
        Arrow h(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) h[i] = f[i] < 0 ? -1 : g[f[i]];
        return h;
    }
    std::string arrow_name(int a, int b, const Arrow& f) const override { return values_name(a, b, f); }
    bool set_like() const override { return true; }

private:
    int n_;
    int partial_;
};

// Linear maps F2^a -> F2^b as a column bitmasks.
class F2Model : public Model {
public:
    explicit F2Model(int n) : n_(n) {}
    std::string name() const override { return "f2vect(" + std::to_string(n_) + ")"; }
    int object_count() const override { return n_ + 1; }
    std::uint64_t hom_size(int a, int b) const override { return pow_sat(std::uint64_t{1} << b, a); }
    Arrow arrow_at(int a, int b, std::uint64_t index) const override {
        Arrow f(a);
        for (int j = 0; j < a; ++j) {
            f[j] = static_cast<int>(index & ((std::uint64_t{1} << b) - 1));
            index >>= b;
        }
        return f;
    }
    std::uint64_t index_of(int a, int b, const Arrow& f) const override {
        std::uint64_t idx = 0;
        for (int j = a - 1; j >= 0; --j) idx = (idx << b) | static_cast<std::uint64_t>(f[j]);
        return idx;
    }
    Arrow identity(int a) const override {
        Arrow f(a);
        for (int j = 0; j < a; ++j) f[j] = 1 << j;
        return f;
    }
    bool valid(int a, int b, const Arrow& f) const override {
        if (static_cast<int>(f.size()) != a) return false;
        return std::all_of(f.begin(), f.end(), [&](int v) { return v >= 0 && v < (1 << b); });
    }
    Arrow compose(int, int, int, const Arrow& g, const Arrow& f) const override {
        Arrow h(f.size(), 0);
        for (std::size_t j = 0; j < f.size(); ++j)
            for (std::size_t k = 0; k < g.size(); ++k)
                if (f[j] >> k & 1) h[j] ^= g[k];
        return h;
    }
    std::string arrow_name(int a, int b, const Arrow& f) const override {
        std::string s = std::to_string(a) + ">" + std::to_string(b) + ":";
        for (int j = 0; j < a; ++j) {
            if (j) s += '|';
            for (int k = 0; k < b; ++k) s += (f[j] >> k & 1) ? '1' : '0';
        }
        return s;
    }

private:
    int n_;
};

class OppositeModel : public Model {
public:
    explicit OppositeModel(ModelPtr m) : m_(std::move(m)) {}
    const ModelPtr& inner() const { return m_; }
    std::string name() const override { return "op(" + m_->name() + ")"; }
    int object_count() const override { return m_->object_count(); }
    std::string object_name(int a) const override { return m_->object_name(a); }
    std::uint64_t hom_size(int a, int b) const override { return m_->hom_size(b, a); }
    Arrow arrow_at(int a, int b, std::uint64_t index) const override { return m_->arrow_at(b, a, index); }
    std::uint64_t index_of(int a, int b, const Arrow& f) const override { return m_->index_of(b, a, f); }
    Arrow identity(int a) const override { return m_->identity(a); }
    bool valid(int a, int b, const Arrow& f) const override { return m_->valid(b, a, f); }
    Arrow compose(int a, int b, int c, const Arrow& g, const Arrow& f) const override {
        return m_->compose(c, b, a, f, g);
    }
    std::string arrow_name(int a, int b, const Arrow& f) const override { return "op " + m_->arrow_name(b, a, f); }

private:
    ModelPtr m_;
};

class TabulatedModel : public Model {
public:
    explicit TabulatedModel(CatPtr c) : c_(std::move(c)) {}
    const FinCat& cat() const { return *c_; }
    std::string name() const override { return "table"; }
    int object_count() const override { return c_->object_count(); }
    std::string object_name(int a) const override { return c_->object(a); }
    std::uint64_t hom_size(int a, int b) const override { return c_->hom(a, b).size(); }
    Arrow arrow_at(int a, int b, std::uint64_t index) const override {
        return {c_->hom(a, b)[static_cast<std::size_t>(index)]};
    }
    std::uint64_t index_of(int a, int b, const Arrow& f) const override {
        auto h = c_->hom(a, b);
        return static_cast<std::uint64_t>(std::find(h.begin(), h.end(), f[0]) - h.begin());
    }
    Arrow identity(int a) const override { return {c_->identity(a)}; }
    bool valid(int a, int b, const Arrow& f) const override {
        return f.size() == 1 && f[0] >= 0 && f[0] < c_->morphism_count() && c_->dom(f[0]) == a && c_->cod(f[0]) == b;
    }
    Arrow compose(int, int, int, const Arrow& g, const Arrow& f) const override { return {c_->compose(g[0], f[0])}; }
    std::string arrow_name(int, int, const Arrow& f) const override {
        return f.size() == 1 && f[0] >= 0 && f[0] < c_->morphism_count() ? c_->morphism(f[0]) : "?";
    }

private:
    CatPtr c_;
};

}  // namespace

std::string Model::arrow_name(int a, int b, const Arrow& f) const {
    std::string s = std::to_string(a) + ">" + std::to_string(b) + ":[";
    for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
    return s + "]";
}

std::vector<Arrow> Model::hom(int a, int b) const {
    const std::uint64_t n = hom_size(a, b);
    if (n >= kHomCap) fail(ErrorCode::SizeExceeded, "hom-set too large to enumerate: " + name());
    std::vector<Arrow> out;
    out.reserve(static_cast<std::size_t>(n));
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(arrow_at(a, b, i));
    return out;
}

ModelPtr finset_model(int n) { return std::make_shared<SetModel>(n, false); }
ModelPtr pset_model(int n) { return std::make_shared<SetModel>(n, true); }
ModelPtr f2vect_model(int n) { return std::make_shared<F2Model>(n); }

ModelPtr opposite_model(const ModelPtr& m) {
    if (auto* op = dynamic_cast<const OppositeModel*>(m.get())) return op->inner();
    return std::make_shared<OppositeModel>(m);
}

ModelPtr tabulated_model(const CatPtr& c) { return std::make_shared<TabulatedModel>(c); }

const FinCat* tabulated_source(const Model& m) {
    auto* t = dynamic_cast<const TabulatedModel*>(&m);
    return t ? &t->cat() : nullptr;
}

std::optional<Arrow> inverse_arrow(const Model& m, int a, int b, const Arrow& f) {
    const std::uint64_t n = m.hom_size(b, a);
    if (n > (std::uint64_t{1} << 20)) return std::nullopt;
    const Arrow ia = m.identity(a), ib = m.identity(b);
    for (std::uint64_t i = 0; i < n; ++i) {
        Arrow g = m.arrow_at(b, a, i);
        if (m.compose(a, b, a, g, f) == ia && m.compose(b, a, b, f, g) == ib) return g;
    }
    return std::nullopt;
}

std::optional<Arrow> unique_arrow(const Model& m, int a, int t) {
    if (m.hom_size(a, t) != 1) return std::nullopt;
    return m.arrow_at(a, t, 0);
}

// ---------------------------------------------------------------- structures

MonoidalData from_products(std::string name, ModelPtr carrier, ProductData p) {
    MonoidalData m;
    m.name = std::move(name);
    m.carrier = carrier;
    m.unit = p.terminal;
    m.tensor = p.product;
    m.proj1 = p.proj1;
    m.proj2 = p.proj2;
    m.pair = p.pair;
    ModelPtr M = carrier;
    auto P = std::make_shared<ProductData>(std::move(p));
    m.tensor_arrow = [M, P](int a, int a2, int b, int b2, const Arrow& f, const Arrow& g) {
        const int ab = P->product(a, b);
        return P->pair(ab, a2, b2, M->compose(ab, a, a2, f, P->proj1(a, b)), M->compose(ab, b, b2, g, P->proj2(a, b)));
    };
    m.associator = [M, P](int a, int b, int c) {
        const int ab = P->product(a, b), bc = P->product(b, c), s = P->product(ab, c);
        const Arrow p1 = P->proj1(ab, c);
        Arrow x = M->compose(s, ab, a, P->proj1(a, b), p1);
        Arrow y = M->compose(s, ab, b, P->proj2(a, b), p1);
        Arrow z = P->proj2(ab, c);
        return P->pair(s, a, bc, x, P->pair(s, b, c, y, z));
    };
    m.associator_inv = [M, P](int a, int b, int c) {
        const int ab = P->product(a, b), bc = P->product(b, c), s = P->product(a, bc);
        const Arrow q2 = P->proj2(a, bc);
        Arrow x = P->proj1(a, bc);
        Arrow y = M->compose(s, bc, b, P->proj1(b, c), q2);
        Arrow z = M->compose(s, bc, c, P->proj2(b, c), q2);
        return P->pair(s, ab, c, P->pair(s, a, b, x, y), z);
    };
    const int t = P->terminal;
    m.left_unitor = [P, t](int a) { return P->proj2(t, a); };
    m.right_unitor = [P, t](int a) { return P->proj1(a, t); };
    m.left_unitor_inv = [M, P, t](int a) { return P->pair(a, t, a, *unique_arrow(*M, a, t), M->identity(a)); };
    m.right_unitor_inv = [M, P, t](int a) { return P->pair(a, a, t, M->identity(a), *unique_arrow(*M, a, t)); };
    return m;
}

MonoidalData opposite_monoidal(const MonoidalData& m) {
    MonoidalData o;
    o.name = "op(" + m.name + ")";
    o.carrier = opposite_model(m.carrier);
    o.unit = m.unit;
    o.tensor = m.tensor;
    auto ta = m.tensor_arrow;
    o.tensor_arrow = [ta](int a, int a2, int b, int b2, const Arrow& f, const Arrow& g) { return ta(a2, a, b2, b, f, g); };
    o.associator = m.associator_inv;
    o.associator_inv = m.associator;
    o.left_unitor = m.left_unitor_inv;
    o.left_unitor_inv = m.left_unitor;
    o.right_unitor = m.right_unitor_inv;
    o.right_unitor_inv = m.right_unitor;
    o.proj1 = m.inj1;
    o.proj2 = m.inj2;
    if (m.copair) {
        auto cp = m.copair;
        o.pair = [cp](int x, int a, int b, const Arrow& f, const Arrow& g) { return cp(a, b, x, f, g); };
    }
    o.inj1 = m.proj1;
    o.inj2 = m.proj2;
    if (m.pair) {
        auto pr = m.pair;
        o.copair = [pr](int a, int b, int x, const Arrow& f, const Arrow& g) { return pr(x, a, b, f, g); };
    }
    return o;
}

MonoidalData from_coproducts(std::string name, ModelPtr carrier, ProductData p) {
    auto cp = p.pair;
    p.pair = [cp](int x, int a, int b, const Arrow& f, const Arrow& g) { return cp(a, b, x, f, g); };
    MonoidalData dual = from_products("op(" + name + ")", opposite_model(carrier), std::move(p));
    MonoidalData m = opposite_monoidal(dual);
    m.name = std::move(name);
    return m;
}

namespace {

ProductData set_coproducts(int n) {
    ProductData p;
    p.terminal = 0;
    p.product = [n](int a, int b) { return a + b <= n ? a + b : -1; };
    p.proj1 = [](int a, int) {
        Arrow f(a);
        for (int i = 0; i < a; ++i) f[i] = i;
        return f;
    };
    p.proj2 = [](int a, int b) {
        Arrow f(b);
        for (int j = 0; j < b; ++j) f[j] = a + j;
        return f;
    };
    p.pair = [](int, int, int, const Arrow& f, const Arrow& g) {
        Arrow h = f;
        h.insert(h.end(), g.begin(), g.end());
        return h;
    };
    return p;
}

}  // namespace

MonoidalData finset_cartesian(int n) {
    ProductData p;
    p.terminal = 1;
    p.product = [n](int a, int b) { return a * b <= n ? a * b : -1; };
    p.proj1 = [](int a, int b) {
        Arrow f(a * b);
        for (int i = 0; i < a * b; ++i) f[i] = i / b;
        return f;
    };
    p.proj2 = [](int a, int b) {
        Arrow f(a * b);
        for (int i = 0; i < a * b; ++i) f[i] = i % b;
        return f;
    };
    p.pair = [](int x, int, int b, const Arrow& f, const Arrow& g) {
        Arrow h(x);
        for (int i = 0; i < x; ++i) h[i] = f[i] * b + g[i];
        return h;
    };
    return from_products("finset-cartesian(" + std::to_string(n) + ")", finset_model(n), std::move(p));
}

MonoidalData finset_cocartesian(int n) {
    return from_coproducts("finset-cocartesian(" + std::to_string(n) + ")", finset_model(n), set_coproducts(n));
}

MonoidalData pset_cocartesian(int n) {
    return from_coproducts("pset-cocartesian(" + std::to_string(n) + ")", pset_model(n), set_coproducts(n));
}

MonoidalData f2vect_biproduct(int n) {
    ProductData p;
    p.terminal = 0;
    p.product = [n](int a, int b) { return a + b <= n ? a + b : -1; };
    p.proj1 = [](int a, int b) {
        Arrow f(a + b, 0);
        for (int j = 0; j < a; ++j) f[j] = 1 << j;
        return f;
    };
    p.proj2 = [](int a, int b) {
        Arrow f(a + b, 0);
        for (int j = 0; j < b; ++j) f[a + j] = 1 << j;
        return f;
    };
    p.pair = [](int x, int a, int, const Arrow& f, const Arrow& g) {
        Arrow h(x);
        for (int j = 0; j < x; ++j) h[j] = f[j] | (g[j] << a);
        return h;
    };
    MonoidalData m = from_products("f2vect-biproduct(" + std::to_string(n) + ")", f2vect_model(n), std::move(p));
    m.inj1 = [](int a, int) {
        Arrow f(a);
        for (int j = 0; j < a; ++j) f[j] = 1 << j;
        return f;
    };
    m.inj2 = [](int a, int b) {
        Arrow f(b);
        for (int j = 0; j < b; ++j) f[j] = 1 << (a + j);
        return f;
    };
    m.copair = [](int, int, int, const Arrow& f, const Arrow& g) {
        Arrow h = f;
        h.insert(h.end(), g.begin(), g.end());
        return h;
    };
    return m;
}

namespace {

struct ChosenCoproducts {
    std::vector<std::vector<int>> obj;
    std::vector<std::vector<int>> in1, in2;
};

// Chosen binary coproducts of a tabulated category by search.
std::shared_ptr<ChosenCoproducts> search_coproducts(const CatPtr& c) {
    auto out = std::make_shared<ChosenCoproducts>();
    const int n = c->object_count();
    out->obj.assign(n, std::vector<int>(n, -1));
    out->in1 = out->obj;
    out->in2 = out->obj;
    const CatPtr d2 = discrete_category(2);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            FinFunctor J(d2, c, {a, b}, {c->identity(a), c->identity(b)});
            try {
                Cone col = find_colimit(J);
                out->obj[a][b] = col.apex;
                out->in1[a][b] = col.legs[0];
                out->in2[a][b] = col.legs[1];
            } catch (const Error&) {
            }
        }
    return out;
}

MonoidalData tabulated_coproducts_on(const CatPtr& c, const ModelPtr& carrier, std::string name) {
    auto co = search_coproducts(c);
    const FinCat* C = c.get();
    ProductData p;
    p.terminal = find_initial(*c).object;
    p.product = [co](int a, int b) { return co->obj[a][b]; };
    p.proj1 = [co](int a, int b) { return Arrow{co->in1[a][b]}; };
    p.proj2 = [co](int a, int b) { return Arrow{co->in2[a][b]}; };
    p.pair = [co, C](int a, int b, int x, const Arrow& f, const Arrow& g) {
        for (int h : C->hom(co->obj[a][b], x))
            if (C->compose(h, co->in1[a][b]) == f[0] && C->compose(h, co->in2[a][b]) == g[0]) return Arrow{h};
        return Arrow{-1};
    };
    return from_coproducts(std::move(name), carrier, std::move(p));
}

}  // namespace

MonoidalData tabulated_cocartesian(const CatPtr& c) {
    return tabulated_coproducts_on(c, tabulated_model(c), "coproducts");
}

MonoidalData tabulated_cartesian(const CatPtr& c) {
    // products of c are coproducts of its opposite; search there
    const FinCat& C = *c;
    std::vector<std::string> objs = C.objects();
    std::vector<GeneratedMorphism> gens;
    for (int f = 0; f < C.morphism_count(); ++f) gens.push_back({C.morphism(f), C.cod(f), C.dom(f)});
    std::vector<int> opos, mpos;
    CatPtr op = share(FinCat::generate(
        objs, gens, [&](int a) { return C.identity(a); }, [&](int g, int f) { return C.compose(f, g); }, &opos, &mpos));
    // generation keeps id order, so indices agree with c
    MonoidalData m = tabulated_coproducts_on(op, tabulated_model(op), "products");
    MonoidalData out = opposite_monoidal(m);
    out.name = "products";
    out.carrier = tabulated_model(c);
    return out;
}

MonoidalData with_associator(const MonoidalData& m, int a, int b, int c, Arrow replacement) {
    MonoidalData out = m;
    auto base = m.associator;
    auto r = std::make_shared<Arrow>(std::move(replacement));
    out.associator = [base, a, b, c, r](int x, int y, int z) {
        if (x == a && y == b && z == c) return *r;
        return base(x, y, z);
    };
    return out;
}

// ---------------------------------------------------------------- validation

namespace {

class Checker {
public:
    Checker(const MonoidalData& m, const MonoidalCheck& check)
        : m_(m), M_(*m.carrier), k_(std::min(check.max_object, M_.object_count() - 1)), cap_(check.max_hom) {}

    int T(int a, int b) const {
        const int t = m_.tensor(a, b);
        return t >= 0 && t < M_.object_count() ? t : -1;
    }
    bool small(int a, int b) const { return M_.hom_size(a, b) <= cap_; }
    std::string nm(int a) const { return M_.object_name(a); }
    Arrow comp(int a, int b, int c, const Arrow& g, const Arrow& f) const { return M_.compose(a, b, c, g, f); }
    Arrow ta(int a, int a2, int b, int b2, const Arrow& f, const Arrow& g) const {
        return m_.tensor_arrow(a, a2, b, b2, f, g);
    }
    Arrow id(int a) const { return M_.identity(a); }

    const MonoidalData& m_;
    const Model& M_;
    int k_;
    std::uint64_t cap_;
};

}  // namespace

ValidationReport validate_monoidal(const MonoidalData& m, const MonoidalCheck& check) {
    ValidationReport rep;
    Checker c(m, check);
    const Model& M = c.M_;
    const int K = c.k_;
    const int I = m.unit;
    int skipped = 0;
    auto arrows = [&](int a, int b) { return M.hom(a, b); };

    for (int a = 0; a <= K; ++a)
        for (int b = 0; b <= K; ++b) {
            const int t = c.T(a, b);
            if (t < 0) {
                ++skipped;
                continue;
            }
            if (c.ta(a, a, b, b, c.id(a), c.id(b)) != c.id(t))
                rep.add("TensorIdentity", "id (x) id is not the identity", {c.nm(a), c.nm(b)});
        }

    // composition in each variable and interchange
    for (int a = 0; a <= K; ++a)
        for (int a2 = 0; a2 <= K; ++a2)
            for (int b = 0; b <= K; ++b)
                for (int b2 = 0; b2 <= K; ++b2) {
                    const int t1 = c.T(a, b), t2 = c.T(a2, b), t3 = c.T(a, b2), t4 = c.T(a2, b2);
                    if (t1 < 0 || t2 < 0 || t3 < 0 || t4 < 0 || !c.small(a, a2) || !c.small(b, b2)) continue;
                    for (const Arrow& f : arrows(a, a2))
                        for (const Arrow& g : arrows(b, b2)) {
                            const Arrow fg = c.ta(a, a2, b, b2, f, g);
                            const Arrow x = c.comp(t1, t2, t4, c.ta(a2, a2, b, b2, c.id(a2), g), c.ta(a, a2, b, b, f, c.id(b)));
                            const Arrow y = c.comp(t1, t3, t4, c.ta(a, a2, b2, b2, f, c.id(b2)), c.ta(a, a, b, b2, c.id(a), g));
                            if (fg != x || fg != y)
                                rep.add("TensorInterchange", "f (x) g differs from a composite of whiskerings",
                                        {c.nm(a), c.nm(a2), c.nm(b), c.nm(b2), M.arrow_name(a, a2, f), M.arrow_name(b, b2, g)});
                        }
                }
    for (int a = 0; a <= K; ++a)
        for (int a2 = 0; a2 <= K; ++a2)
            for (int a3 = 0; a3 <= K; ++a3)
                for (int b = 0; b <= K; ++b) {
                    if (!c.small(a, a2) || !c.small(a2, a3)) continue;
                    const int t1 = c.T(a, b), t2 = c.T(a2, b), t3 = c.T(a3, b);
                    const int s1 = c.T(b, a), s2 = c.T(b, a2), s3 = c.T(b, a3);
                    for (const Arrow& f : arrows(a, a2))
                        for (const Arrow& f2 : arrows(a2, a3)) {
                            const Arrow ff = c.comp(a, a2, a3, f2, f);
                            if (t1 >= 0 && t2 >= 0 && t3 >= 0 &&
                                c.ta(a, a3, b, b, ff, c.id(b)) !=
                                    c.comp(t1, t2, t3, c.ta(a2, a3, b, b, f2, c.id(b)), c.ta(a, a2, b, b, f, c.id(b))))
                                rep.add("TensorComposition", "(-) (x) b does not preserve composition",
                                        {c.nm(a), c.nm(a2), c.nm(a3), c.nm(b)});
                            if (s1 >= 0 && s2 >= 0 && s3 >= 0 &&
                                c.ta(b, b, a, a3, c.id(b), ff) !=
                                    c.comp(s1, s2, s3, c.ta(b, b, a2, a3, c.id(b), f2), c.ta(b, b, a, a2, c.id(b), f)))
                                rep.add("TensorComposition", "b (x) (-) does not preserve composition",
                                        {c.nm(b), c.nm(a), c.nm(a2), c.nm(a3)});
                        }
                }

    // structure isomorphisms
    for (int a = 0; a <= K; ++a)
        for (int b = 0; b <= K; ++b)
            for (int d = 0; d <= K; ++d) {
                const int ab = c.T(a, b), bd = c.T(b, d);
                if (ab < 0 || bd < 0) continue;
                const int l = c.T(ab, d), r = c.T(a, bd);
                if (l < 0 || r < 0) continue;
                const Arrow al = m.associator(a, b, d);
                const Arrow inv = m.associator_inv(a, b, d);
                if (!M.valid(l, r, al) || !M.valid(r, l, inv) || c.comp(l, r, l, inv, al) != c.id(l) ||
                    c.comp(r, l, r, al, inv) != c.id(r))
                    rep.add("AssociatorNotInvertible", "associator component is not an isomorphism",
                            {c.nm(a), c.nm(b), c.nm(d)});
            }
    for (int a = 0; a <= K; ++a) {
        const int la = c.T(I, a), ra = c.T(a, I);
        if (la >= 0) {
            const Arrow l = m.left_unitor(a), li = m.left_unitor_inv(a);
            if (!M.valid(la, a, l) || c.comp(la, a, la, li, l) != c.id(la) || c.comp(a, la, a, l, li) != c.id(a))
                rep.add("UnitorNotInvertible", "left unitor component is not an isomorphism", {c.nm(a)});
        }
        if (ra >= 0) {
            const Arrow r = m.right_unitor(a), ri = m.right_unitor_inv(a);
            if (!M.valid(ra, a, r) || c.comp(ra, a, ra, ri, r) != c.id(ra) || c.comp(a, ra, a, r, ri) != c.id(a))
                rep.add("UnitorNotInvertible", "right unitor component is not an isomorphism", {c.nm(a)});
        }
    }

    // naturality
    for (int a = 0; a <= K; ++a)
        for (int a2 = 0; a2 <= K; ++a2) {
            if (!c.small(a, a2)) continue;
            const auto fs = arrows(a, a2);
            for (int b = 0; b <= K; ++b)
                for (int d = 0; d <= K; ++d) {
                    // variable position 0, 1, 2 gets f
                    for (int pos = 0; pos < 3; ++pos) {
                        const int x = pos == 0 ? a : b, y = pos == 1 ? a : (pos == 0 ? b : d), z = pos == 2 ? a : d;
                        const int x2 = pos == 0 ? a2 : x, y2 = pos == 1 ? a2 : y, z2 = pos == 2 ? a2 : z;
                        const int xy = c.T(x, y), yz = c.T(y, z), x2y2 = c.T(x2, y2), y2z2 = c.T(y2, z2);
                        if (xy < 0 || yz < 0 || x2y2 < 0 || y2z2 < 0) continue;
                        const int L1 = c.T(xy, z), R1 = c.T(x, yz), L2 = c.T(x2y2, z2), R2 = c.T(x2, y2z2);
                        if (L1 < 0 || R1 < 0 || L2 < 0 || R2 < 0) continue;
                        for (const Arrow& f : fs) {
                            const Arrow fx = pos == 0 ? f : c.id(x), fy = pos == 1 ? f : c.id(y), fz = pos == 2 ? f : c.id(z);
                            const Arrow lhs = c.comp(L1, L2, R2, m.associator(x2, y2, z2),
                                                     c.ta(xy, x2y2, z, z2, c.ta(x, x2, y, y2, fx, fy), fz));
                            const Arrow rhs = c.comp(L1, R1, R2, c.ta(x, x2, yz, y2z2, fx, c.ta(y, y2, z, z2, fy, fz)),
                                                     m.associator(x, y, z));
                            if (lhs != rhs)
                                rep.add("AssociatorNaturality", "associator not natural in variable " + std::to_string(pos + 1),
                                        {c.nm(x), c.nm(y), c.nm(z), M.arrow_name(a, a2, f)});
                        }
                    }
                }
            const int la = c.T(I, a), la2 = c.T(I, a2), ra = c.T(a, I), ra2 = c.T(a2, I);
            for (const Arrow& f : fs) {
                if (la >= 0 && la2 >= 0 &&
                    c.comp(la, la2, a2, m.left_unitor(a2), c.ta(I, I, a, a2, c.id(I), f)) !=
                        c.comp(la, a, a2, f, m.left_unitor(a)))
                    rep.add("UnitorNaturality", "left unitor not natural", {c.nm(a), c.nm(a2), M.arrow_name(a, a2, f)});
                if (ra >= 0 && ra2 >= 0 &&
                    c.comp(ra, ra2, a2, m.right_unitor(a2), c.ta(a, a2, I, I, f, c.id(I))) !=
                        c.comp(ra, a, a2, f, m.right_unitor(a)))
                    rep.add("UnitorNaturality", "right unitor not natural", {c.nm(a), c.nm(a2), M.arrow_name(a, a2, f)});
            }
        }

    // pentagon and triangle
    for (int a = 0; a <= K; ++a)
        for (int b = 0; b <= K; ++b)
            for (int d = 0; d <= K; ++d)
                for (int e = 0; e <= K; ++e) {
                    const int ab = c.T(a, b), bd = c.T(b, d), de = c.T(d, e);
                    if (ab < 0 || bd < 0 || de < 0) continue;
                    const int ab_d = c.T(ab, d), a_bd = c.T(a, bd), bd_e = c.T(bd, e), b_de = c.T(b, de);
                    if (ab_d < 0 || a_bd < 0 || bd_e < 0 || b_de < 0) continue;
                    const int s0 = c.T(ab_d, e), s1 = c.T(ab, de), s2 = c.T(a_bd, e), s3 = c.T(a, bd_e), s4 = c.T(a, b_de);
                    if (s0 < 0 || s1 < 0 || s2 < 0 || s3 < 0 || s4 < 0) continue;
                    const Arrow p1 = c.comp(s0, s1, s4, m.associator(a, b, de), m.associator(ab, d, e));
                    const Arrow p2 = c.comp(
                        s0, s3, s4, c.ta(a, a, bd_e, b_de, c.id(a), m.associator(b, d, e)),
                        c.comp(s0, s2, s3, m.associator(a, bd, e), c.ta(ab_d, a_bd, e, e, m.associator(a, b, d), c.id(e))));
                    if (p1 != p2)
                        rep.add("Pentagon", "pentagon fails", {c.nm(a), c.nm(b), c.nm(d), c.nm(e)});
                }
    for (int a = 0; a <= K; ++a)
        for (int b = 0; b <= K; ++b) {
            const int aI = c.T(a, I), Ib = c.T(I, b), ab = c.T(a, b);
            if (aI < 0 || Ib < 0 || ab < 0) continue;
            const int s = c.T(aI, b), t = c.T(a, Ib);
            if (s < 0 || t < 0) continue;
            const Arrow lhs = c.ta(aI, a, b, b, m.right_unitor(a), c.id(b));
            const Arrow rhs = c.comp(s, t, ab, c.ta(a, a, Ib, b, c.id(a), m.left_unitor(b)), m.associator(a, I, b));
            if (lhs != rhs) rep.add("Triangle", "triangle fails", {c.nm(a), c.nm(b)});
        }
    if (skipped) rep.note(std::to_string(skipped) + " object pairs beyond the bound");
    return rep;
}

// ---------------------------------------------------------------- closure

ClosedData finset_closure(int n) {
    ClosedData cl;
    auto expo = [n](int b, int a) -> int {
        const std::uint64_t h = pow_sat(static_cast<std::uint64_t>(a), b);
        return h <= static_cast<std::uint64_t>(n) ? static_cast<int>(h) : -1;
    };
    cl.hom = expo;
    cl.eval = [expo](int b, int a) {
        const int h = expo(b, a);
        Arrow f(b * h);
        for (int i = 0; i < b; ++i)
            for (int phi = 0; phi < h; ++phi) {
                int v = phi;
                for (int k = 0; k < i; ++k) v /= a;
                f[i * h + phi] = v % a;
            }
        return f;
    };
    cl.curry = [](int b, int c, int a, const Arrow& k) {
        Arrow g(c);
        for (int z = 0; z < c; ++z) {
            int code = 0;
            for (int i = b - 1; i >= 0; --i) code = code * a + k[i * c + z];
            g[z] = code;
        }
        return g;
    };
    return cl;
}

ClosedData tabulated_closure(const MonoidalData& m) {
    const FinCat* C = tabulated_source(*m.carrier);
    if (!C) fail(ErrorCode::Unsupported, "tabulated_closure needs a tabulated carrier");
    struct Entry {
        int obj = -1;
        int eval = -1;
    };
    const int n = C->object_count();
    auto table = std::make_shared<std::vector<Entry>>(n * n);
    auto tensor = m.tensor;
    auto ta = m.tensor_arrow;
    // brute force: (z, e : b(x)z -> a) such that g |-> e o (b (x) g) is bijective for every c
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) {
            for (int z = 0; z < n && (*table)[b * n + a].obj < 0; ++z) {
                const int bz = tensor(b, z);
                if (bz < 0) continue;
                for (int e : C->hom(bz, a)) {
                    bool universal = true;
                    for (int c = 0; c < n && universal; ++c) {
                        const int bc = tensor(b, c);
                        if (bc < 0) continue;  // beyond the bound: nothing to test
                        std::vector<int> hit;
                        for (int g : C->hom(c, z))
                            hit.push_back(C->compose(e, ta(b, b, c, z, {C->identity(b)}, {g})[0]));
                        std::vector<int> sorted = hit;
                        std::sort(sorted.begin(), sorted.end());
                        std::vector<int> target(C->hom(bc, a).begin(), C->hom(bc, a).end());
                        std::sort(target.begin(), target.end());
                        universal = sorted == target;
                    }
                    if (universal) {
                        (*table)[b * n + a] = {z, e};
                        break;
                    }
                }
            }
        }
    ClosedData cl;
    cl.hom = [table, n](int b, int a) { return (*table)[b * n + a].obj; };
    cl.eval = [table, n](int b, int a) { return Arrow{(*table)[b * n + a].eval}; };
    cl.curry = [table, n, C, ta](int b, int c, int a, const Arrow& k) {
        const Entry& e = (*table)[b * n + a];
        for (int g : C->hom(c, e.obj))
            if (C->compose(e.eval, ta(b, b, c, e.obj, {C->identity(b)}, {g})[0]) == k[0]) return Arrow{g};
        return Arrow{-1};
    };
    return cl;
}

ValidationReport validate_closure(const MonoidalData& m, const ClosedData& cl, const MonoidalCheck& check) {
    ValidationReport rep;
    const Model& M = *m.carrier;
    const int K = std::min(check.max_object, M.object_count() - 1);
    for (int b = 0; b <= K; ++b)
        for (int c = 0; c <= K; ++c)
            for (int a = 0; a <= K; ++a) {
                const int bc = m.tensor(b, c), h = cl.hom(b, a);
                if (bc < 0 || h < 0) continue;
                const int bh = m.tensor(b, h);
                if (bh < 0) continue;
                const std::vector<std::string> cite = {M.object_name(b), M.object_name(c), M.object_name(a)};
                if (M.hom_size(bc, a) != M.hom_size(c, h)) {
                    rep.add("CurryCount", "hom-set sizes differ", cite);
                    continue;
                }
                if (M.hom_size(bc, a) > check.max_hom) continue;
                const Arrow ev = cl.eval(b, a);
                for (const Arrow& k : M.hom(bc, a)) {
                    const Arrow g = cl.curry(b, c, a, k);
                    if (!M.valid(c, h, g) ||
                        M.compose(bc, bh, a, ev, m.tensor_arrow(b, b, c, h, M.identity(b), g)) != k) {
                        rep.add("CurryNotInverse", "eval o (b (x) curry k) differs from k", cite);
                        break;
                    }
                }
            }
    return rep;
}

// ---------------------------------------------------------------- tractability

TractableReport validate_tractable(const TractableInstance& inst, const TractableCheck& check) {
    TractableReport out;
    ValidationReport& rep = out.report;
    const MonoidalData& m = inst.monoidal;
    const TractableData& t = inst.data;
    const Model& M = *m.carrier;
    const int N = M.object_count();
    const int K = std::min(check.max_object, N - 1);
    const int NK = std::min(check.naturality_max, K);
    auto inb = [N](int x) { return x >= 0 && x < N; };
    auto nm = [&M](int a) { return M.object_name(a); };
    auto ta = m.tensor_arrow;
    auto comp = [&M](int a, int b, int c, const Arrow& g, const Arrow& f) { return M.compose(a, b, c, g, f); };
    if (t.dbar_arrows_implementation_defined)
        rep.note("dbar on comma morphisms is implementation-defined and validated exhaustively");

    for (int a = 0; a <= K; ++a)
        for (int b = 0; b <= K; ++b)
            for (int c = 0; c <= K; ++c) {
                const int bc = m.tensor(b, c), tb = t.T(b);
                if (!inb(bc) || !inb(tb) || M.hom_size(a, bc) > check.max_hom || M.hom_size(a, tb) > check.max_hom) {
                    ++out.skipped;
                    continue;
                }
                const std::vector<std::string> cite = {nm(a), nm(b), nm(c)};
                const std::uint64_t lhs = M.hom_size(a, bc);
                std::uint64_t rhs = 0;
                bool typed = true;
                const auto fs = M.hom(a, tb);
                for (const Arrow& f : fs) {
                    const int d = t.dbar(a, b, f);
                    if (!inb(d)) {
                        typed = false;
                        break;
                    }
                    rhs += M.hom_size(d, c);
                }
                if (!typed) {
                    ++out.skipped;
                    continue;
                }
                out.counts.emplace_back(a, b, c, lhs, rhs);
                if (lhs != rhs) {
                    rep.add("TractableCount",
                            "|hom(A, B(x)C)| = " + std::to_string(lhs) + " but the decomposition has " + std::to_string(rhs),
                            cite);
                    continue;
                }
                const auto gs = M.hom(a, bc);
                bool bij = true;
                for (const Arrow& g : gs) {
                    auto [f, r] = t.phi(a, b, c, g);
                    const int d = M.valid(a, tb, f) ? t.dbar(a, b, f) : -1;
                    if (!inb(d) || !M.valid(d, c, r) || t.phi_inv(a, b, c, f, r) != g) {
                        rep.add("PhiNotBijective", "phi_inv o phi differs from the identity at " + M.arrow_name(a, bc, g),
                                cite);
                        bij = false;
                        break;
                    }
                }
                if (!bij || a > NK || b > NK || c > NK) continue;

                // naturality in A
                for (int a1 = 0; a1 <= NK; ++a1)
                    for (const Arrow& al : M.hom(a1, a))
                        for (const Arrow& g : gs) {
                            auto [f, r] = t.phi(a, b, c, g);
                            auto [f1, r1] = t.phi(a1, b, c, comp(a1, a, bc, g, al));
                            const Arrow fa = comp(a1, a, tb, f, al);
                            const int d = t.dbar(a, b, f), d1 = t.dbar(a1, b, fa);
                            if (!inb(d1)) continue;
                            const Arrow D = t.dbar_arrow(a1, a, b, b, f, al, M.identity(b));
                            if (f1 != fa || !inb(d1) || !M.valid(d1, d, D) || r1 != comp(d1, d, c, r, D)) {
                                rep.add("PhiNaturalityA", "phi not natural along " + M.arrow_name(a1, a, al), cite);
                                goto done_a;
                            }
                        }
            done_a:
                // naturality in B
                for (int b2 = 0; b2 <= NK; ++b2) {
                    const int b2c = m.tensor(b2, c), tb2 = t.T(b2);
                    if (!inb(b2c) || !inb(tb2)) continue;
                    for (const Arrow& be : M.hom(b, b2))
                        for (const Arrow& g : gs) {
                            auto [f, r] = t.phi(a, b, c, g);
                            auto [f2, r2] = t.phi(a, b2, c, comp(a, bc, b2c, ta(b, b2, c, c, be, M.identity(c)), g));
                            const Arrow tf = comp(a, tb, tb2, t.T_arrow(b, b2, be), f);
                            const int d = t.dbar(a, b, f), d2 = t.dbar(a, b2, tf);
                            if (!inb(d2)) continue;
                            const Arrow D = t.dbar_arrow(a, a, b, b2, f, M.identity(a), be);
                            if (f2 != tf || !inb(d2) || !M.valid(d2, d, D) || r2 != comp(d2, d, c, r, D)) {
                                rep.add("PhiNaturalityB", "phi not natural along " + M.arrow_name(b, b2, be), cite);
                                goto done_b;
                            }
                        }
                }
            done_b:
                // naturality in C
                for (int c2 = 0; c2 <= NK; ++c2) {
                    const int bc2 = m.tensor(b, c2);
                    if (!inb(bc2)) continue;
                    for (const Arrow& ga : M.hom(c, c2))
                        for (const Arrow& g : gs) {
                            auto [f, r] = t.phi(a, b, c, g);
                            auto [f2, r2] = t.phi(a, b, c2, comp(a, bc, bc2, ta(b, b, c, c2, M.identity(b), ga), g));
                            const int d = t.dbar(a, b, f);
                            if (f2 != f || r2 != comp(d, c, c2, ga, r)) {
                                rep.add("PhiNaturalityC", "phi not natural along " + M.arrow_name(c, c2, ga), cite);
                                goto done_c;
                            }
                        }
                }
            done_c:;
            }

    // functoriality of dbar on the comma category
    for (int a = 0; a <= NK; ++a)
        for (int b = 0; b <= NK; ++b) {
            const int tb = t.T(b);
            if (!inb(tb) || M.hom_size(a, tb) > check.max_hom) continue;
            for (const Arrow& f : M.hom(a, tb)) {
                const int d = t.dbar(a, b, f);
                if (!inb(d)) continue;
                const std::vector<std::string> cite = {nm(a), nm(b), M.arrow_name(a, tb, f)};
                if (t.dbar_arrow(a, a, b, b, f, M.identity(a), M.identity(b)) != M.identity(d))
                    rep.add("DbarIdentity", "dbar does not preserve identities", cite);
                for (int a1 = 0; a1 <= NK; ++a1)
                    for (const Arrow& al : M.hom(a1, a)) {
                        const Arrow fa = comp(a1, a, tb, f, al);
                        const int d1 = t.dbar(a1, b, fa);
                        if (!inb(d1)) continue;
                        const Arrow D1 = t.dbar_arrow(a1, a, b, b, f, al, M.identity(b));
                        for (int a2 = 0; a2 <= NK; ++a2)
                            for (const Arrow& al2 : M.hom(a2, a1)) {
                                const int d2 = t.dbar(a2, b, comp(a2, a1, tb, fa, al2));
                                if (!inb(d2)) continue;
                                const Arrow whole = t.dbar_arrow(a2, a, b, b, f, comp(a2, a1, a, al, al2), M.identity(b));
                                const Arrow parts =
                                    comp(d2, d1, d, D1, t.dbar_arrow(a2, a1, b, b, fa, al2, M.identity(b)));
                                if (whole != parts) rep.add("DbarComposition", "dbar not functorial in A", cite);
                            }
                        for (int b2 = 0; b2 <= NK; ++b2) {
                            const int tb2 = t.T(b2);
                            if (!inb(tb2)) continue;
                            for (const Arrow& be : M.hom(b, b2)) {
                                const Arrow tbe = t.T_arrow(b, b2, be);
                                const Arrow whole = t.dbar_arrow(a1, a, b, b2, f, al, be);
                                const int dd = t.dbar(a1, b2, comp(a1, tb, tb2, tbe, fa));
                                if (!inb(dd)) continue;
                                const Arrow parts = comp(dd, d1, d, D1, t.dbar_arrow(a1, a1, b, b2, fa, M.identity(a1), be));
                                if (whole != parts) rep.add("DbarInterchange", "dbar(alpha, beta) is not a composite", cite);
                            }
                        }
                    }
                for (int b2 = 0; b2 <= NK; ++b2)
                    for (int b3 = 0; b3 <= NK; ++b3) {
                        const int tb2 = t.T(b2), tb3 = t.T(b3);
                        if (!inb(tb2) || !inb(tb3)) continue;
                        for (const Arrow& be : M.hom(b, b2))
                            for (const Arrow& be2 : M.hom(b2, b3)) {
                                const Arrow f2 = comp(a, tb, tb2, t.T_arrow(b, b2, be), f);
                                const int dmid = t.dbar(a, b2, f2);
                                const int dend = t.dbar(a, b3, comp(a, tb2, tb3, t.T_arrow(b2, b3, be2), f2));
                                if (!inb(dmid) || !inb(dend)) continue;
                                const Arrow whole = t.dbar_arrow(a, a, b, b3, f, M.identity(a), comp(b, b2, b3, be2, be));
                                const Arrow parts = comp(dend, dmid, d, t.dbar_arrow(a, a, b, b2, f, M.identity(a), be),
                                                         t.dbar_arrow(a, a, b2, b3, f2, M.identity(a), be2));
                                if (whole != parts) rep.add("DbarComposition", "dbar not functorial in B", cite);
                            }
                    }
            }
        }
    if (out.skipped) rep.note(std::to_string(out.skipped) + " triples beyond the bound");
    return out;
}

TractableInstance tractable_cartesian(const MonoidalData& m) {
    if (!m.cartesian()) fail(ErrorCode::InvalidInput, "structure has no chosen projections: " + m.name);
    TractableInstance inst{m, {}, false};
    TractableData& t = inst.data;
    ModelPtr M = m.carrier;
    auto tensor = m.tensor;
    auto p1 = m.proj1, p2 = m.proj2;
    auto pair = m.pair;
    t.name = "cartesian(" + m.name + ")";
    t.T = [](int b) { return b; };
    t.T_arrow = [](int, int, const Arrow& be) { return be; };
    t.dbar = [](int a, int, const Arrow&) { return a; };
    t.dbar_arrow = [](int, int, int, int, const Arrow&, const Arrow& al, const Arrow&) { return al; };
    t.phi = [M, tensor, p1, p2](int a, int b, int c, const Arrow& g) {
        const int bc = tensor(b, c);
        return std::pair<Arrow, Arrow>{M->compose(a, bc, b, p1(b, c), g), M->compose(a, bc, c, p2(b, c), g)};
    };
    t.phi_inv = [pair](int a, int b, int c, const Arrow& f, const Arrow& r) { return pair(a, b, c, f, r); };
    return inst;
}

TractableInstance cotractable_cocartesian(const MonoidalData& m) {
    if (!m.cocartesian()) fail(ErrorCode::InvalidInput, "structure has no chosen coprojections: " + m.name);
    TractableInstance inst = tractable_cartesian(opposite_monoidal(m));
    inst.co = true;
    inst.data.name = "cocartesian(" + m.name + ")";
    return inst;
}

namespace {

// Positions x < a with f(x) in the marked region (undefined or >= bound).
std::vector<int> complement(const Arrow& f, int bound) {
    std::vector<int> out;
    for (std::size_t x = 0; x < f.size(); ++x)
        if (f[x] < 0 || f[x] >= bound) out.push_back(static_cast<int>(x));
    return out;
}

int position(const std::vector<int>& v, int x) {
    auto it = std::find(v.begin(), v.end(), x);
    return it == v.end() ? -1 : static_cast<int>(it - v.begin());
}

// Shared by pSet (marked = undefined) and the extensive case (marked = the extra point b).
TractableData complement_data(std::string name, const MonoidalData& m, bool partial) {
    TractableData t;
    t.name = std::move(name);
    auto tensor = m.tensor;
    auto ta = m.tensor_arrow;
    ModelPtr M = m.carrier;
    if (partial) {
        t.T = [](int b) { return b; };
        t.T_arrow = [](int, int, const Arrow& be) { return be; };
    } else {
        t.T = [tensor](int b) { return tensor(b, 1); };
        t.T_arrow = [ta, M](int b, int b2, const Arrow& be) { return ta(b, b2, 1, 1, be, M->identity(1)); };
    }
    t.dbar = [](int, int b, const Arrow& f) { return static_cast<int>(complement(f, b).size()); };
    t.dbar_arrow = [](int a1, int, int b, int b2, const Arrow& f, const Arrow& al, const Arrow& be) {
        // f' = T(beta) f alpha, computed pointwise on value tables
        Arrow fp(a1);
        for (int x = 0; x < a1; ++x) {
            const int y = al[x] < 0 ? -1 : f[al[x]];
            fp[x] = y < 0 ? -1 : (y >= b ? b2 : be[y]);
        }
        const auto dom = complement(fp, b2), cod = complement(f, b);
        Arrow out(dom.size());
        for (std::size_t k = 0; k < dom.size(); ++k) {
            const int ax = al[dom[k]];
            out[k] = ax < 0 ? -1 : position(cod, ax);
        }
        return out;
    };
    t.phi = [partial](int a, int b, int, const Arrow& g) {
        Arrow f(a);
        for (int x = 0; x < a; ++x) f[x] = (g[x] >= 0 && g[x] < b) ? g[x] : (partial ? -1 : b);
        const auto comp = complement(f, b);
        Arrow r(comp.size());
        for (std::size_t k = 0; k < comp.size(); ++k) {
            const int v = g[comp[k]];
            r[k] = v < 0 ? -1 : v - b;
        }
        return std::pair<Arrow, Arrow>{f, r};
    };
    t.phi_inv = [](int a, int b, int, const Arrow& f, const Arrow& r) {
        Arrow g(a);
        int k = 0;
        for (int x = 0; x < a; ++x) {
            if (f[x] >= 0 && f[x] < b) {
                g[x] = f[x];
            } else {
                const int v = k < static_cast<int>(r.size()) ? r[k] : -1;
                g[x] = v < 0 ? -1 : b + v;
                ++k;
            }
        }
        return g;
    };
    return t;
}

// Coprojections must be the standard a -> a+b, b -> a+b tables.
bool standard_coproducts(const MonoidalData& m, int K) {
    if (!m.cocartesian() || !m.carrier->set_like()) return false;
    for (int a = 0; a <= K; ++a)
        for (int b = 0; b <= K; ++b) {
            if (m.tensor(a, b) < 0) continue;
            if (m.tensor(a, b) != a + b) return false;
            const Arrow i1 = m.inj1(a, b), i2 = m.inj2(a, b);
            for (int x = 0; x < a; ++x)
                if (i1[x] != x) return false;
            for (int y = 0; y < b; ++y)
                if (i2[y] != a + y) return false;
        }
    return true;
}

}  // namespace

TractableInstance pset_coproducts_tractable(int n) {
    MonoidalData m = pset_cocartesian(n);
    TractableInstance inst{m, complement_data("pset-coproducts", m, true), false};
    inst.data.dbar_arrows_implementation_defined = true;
    return inst;
}

TractableInstance tractable_coproducts_extensive(const MonoidalData& m, int max_check) {
    const Model& M = *m.carrier;
    const int K = std::min(max_check, M.object_count() - 1);
    if (!standard_coproducts(m, K))
        fail(ErrorCode::NotExtensive, "coproducts of " + m.name + " are not disjoint unions of value tables");
    if (M.object_count() < 2 || M.hom_size(0, 1) != 1 || M.hom_size(1, 1) != 1)
        fail(ErrorCode::NotExtensive, "no terminal object 1 in " + M.name());
    // every arrow into a coproduct splits its domain into the two preimages
    for (int a = 0; a <= K; ++a)
        for (int b = 0; b <= K; ++b)
            for (int c = 0; c <= K; ++c) {
                const int bc = m.tensor(b, c);
                if (bc < 0) continue;
                for (const Arrow& g : M.hom(a, bc))
                    for (int x = 0; x < a; ++x)
                        if (g[x] < 0)
                            fail(ErrorCode::NotExtensive, "pullback along the coprojections misses point " +
                                                              std::to_string(x) + " of " + M.arrow_name(a, bc, g));
            }
    return {m, complement_data("extensive-coproducts", m, false), false};
}

TractableInstance cotractable_from_closed(const MonoidalData& m, const ClosedData& cl, int initial) {
    ModelPtr base = m.carrier;
    TractableInstance inst{opposite_monoidal(m), {}, true};
    TractableData& t = inst.data;
    t.name = "closed(" + m.name + ")";
    auto ta = m.tensor_arrow;
    auto tensor = m.tensor;
    t.T = [initial](int) { return initial; };
    t.T_arrow = [base, initial](int, int, const Arrow&) { return base->identity(initial); };
    // b (x) (b -o a) must exist too, or eval is out of reach
    t.dbar = [cl, tensor](int a, int b, const Arrow&) {
        const int h = cl.hom(b, a);
        return h >= 0 && tensor(b, h) >= 0 ? h : -1;
    };
    t.dbar_arrow = [base, cl, ta, tensor](int a1, int a, int b, int b2, const Arrow&, const Arrow& al, const Arrow& be) {
        // opposite arrows: al is a -> a1 and be is b2 -> b in the base
        const int h = cl.hom(b, a);
        const int b2h = tensor(b2, h), bh = tensor(b, h);
        const Arrow k = base->compose(b2h, a, a1, al,
                                      base->compose(b2h, bh, a, cl.eval(b, a), ta(b2, b, h, h, be, base->identity(h))));
        return cl.curry(b2, h, a1, k);
    };
    t.phi = [base, cl, initial](int a, int b, int c, const Arrow& g) {
        return std::pair<Arrow, Arrow>{*unique_arrow(*base, initial, a), cl.curry(b, c, a, g)};
    };
    t.phi_inv = [base, cl, ta, tensor](int a, int b, int c, const Arrow&, const Arrow& r) {
        const int h = cl.hom(b, a);
        return base->compose(tensor(b, c), tensor(b, h), a, cl.eval(b, a), ta(b, b, c, h, base->identity(b), r));
    };
    return inst;
}

// ---------------------------------------------------------------- lattices

bool is_thin(const FinCat& x) {
    for (int a = 0; a < x.object_count(); ++a)
        for (int b = 0; b < x.object_count(); ++b)
            if (x.hom(a, b).size() > 1) return false;
    return true;
}

namespace {

bool leq(const FinCat& x, int a, int b) { return !x.hom(a, b).empty(); }

}  // namespace

std::optional<int> lattice_join(const FinCat& x, int a, int b) {
    for (int u = 0; u < x.object_count(); ++u) {
        if (!leq(x, a, u) || !leq(x, b, u)) continue;
        bool least = true;
        for (int v = 0; v < x.object_count() && least; ++v)
            if (leq(x, a, v) && leq(x, b, v) && !leq(x, u, v)) least = false;
        if (least) return u;
    }
    return std::nullopt;
}

std::optional<int> lattice_meet(const FinCat& x, int a, int b) {
    for (int u = 0; u < x.object_count(); ++u) {
        if (!leq(x, u, a) || !leq(x, u, b)) continue;
        bool greatest = true;
        for (int v = 0; v < x.object_count() && greatest; ++v)
            if (leq(x, v, a) && leq(x, v, b) && !leq(x, v, u)) greatest = false;
        if (greatest) return u;
    }
    return std::nullopt;
}

namespace {

void require_lattice(const FinCat& x) {
    if (!is_thin(x)) fail(ErrorCode::NotALattice, "category is not thin");
    if (x.object_count() == 0) fail(ErrorCode::NotALattice, "empty poset");
    for (int a = 0; a < x.object_count(); ++a)
        for (int b = 0; b < x.object_count(); ++b) {
            if (a != b && leq(x, a, b) && leq(x, b, a))
                fail(ErrorCode::NotALattice, x.object(a) + " and " + x.object(b) + " are isomorphic");
            if (!lattice_join(x, a, b) || !lattice_meet(x, a, b))
                fail(ErrorCode::NotALattice, "no join or meet of " + x.object(a) + " and " + x.object(b));
        }
}

// Least z with x <= y v z, if it exists; otherwise the first minimal one.
std::pair<int, bool> co_implication(const FinCat& X, int x, int y) {
    std::vector<int> s;
    for (int z = 0; z < X.object_count(); ++z)
        if (leq(X, x, *lattice_join(X, y, z))) s.push_back(z);
    for (int z : s)
        if (std::all_of(s.begin(), s.end(), [&](int w) { return leq(X, z, w); })) return {z, true};
    for (int z : s)
        if (std::none_of(s.begin(), s.end(), [&](int w) { return w != z && leq(X, w, z); })) return {z, false};
    return {s.empty() ? -1 : s[0], false};
}

int top_of(const FinCat& X) {
    for (int t = 0; t < X.object_count(); ++t) {
        bool top = true;
        for (int a = 0; a < X.object_count() && top; ++a) top = leq(X, a, t);
        if (top) return t;
    }
    return -1;
}

}  // namespace

PosetVerdict poset_tractability(const CatPtr& lattice) {
    const FinCat& X = *lattice;
    require_lattice(X);
    PosetVerdict v;
    v.tractable = true;
    for (int x = 0; x < X.object_count() && v.tractable; ++x)
        for (int y = 0; y < X.object_count() && v.tractable; ++y)
            if (!co_implication(X, x, y).second) {
                v.tractable = false;
                v.failing_x = x;
                v.failing_y = y;
            }
    if (v.tractable) {
        auto table = std::make_shared<std::vector<int>>();
        const int n = X.object_count();
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) table->push_back(co_implication(X, x, y).first);
        v.implication.hom = [table, n](int b, int a) { return (*table)[a * n + b]; };
        return v;
    }
    const int n = X.object_count();
    for (int a = 0; a < n && v.witness.empty(); ++a)
        for (int b = 0; b < n && v.witness.empty(); ++b)
            for (int c = 0; c < n && v.witness.empty(); ++c) {
                const int lhs = *lattice_meet(X, a, *lattice_join(X, b, c));
                const int rhs = *lattice_join(X, *lattice_meet(X, a, b), *lattice_meet(X, a, c));
                if (lhs != rhs) {
                    const std::string A = X.object(a), B = X.object(b), C = X.object(c);
                    v.witness = A + "∧(" + B + "∨" + C + ") = " + X.object(lhs) + " ≠ " + X.object(rhs) + " = (" + A +
                                "∧" + B + ")∨(" + A + "∧" + C + ")";
                }
            }
    if (v.witness.empty())
        v.witness = "no least z with " + X.object(v.failing_x) + " <= " + X.object(v.failing_y) + " v z";
    return v;
}

TractableInstance poset_tractable_data(const CatPtr& lattice) {
    const FinCat* X = lattice.get();
    require_lattice(*X);
    MonoidalData m = tabulated_cocartesian(lattice);
    const int top = top_of(*X);
    TractableInstance inst{m, {}, false};
    TractableData& t = inst.data;
    t.name = "poset-joins";
    auto arrow = [X](int a, int b) { return X->hom(a, b).empty() ? Arrow{-1} : Arrow{X->hom(a, b)[0]}; };
    t.T = [top](int) { return top; };
    t.T_arrow = [X, top](int, int, const Arrow&) { return Arrow{X->identity(top)}; };
    t.dbar = [X](int a, int b, const Arrow&) { return co_implication(*X, a, b).first; };
    t.dbar_arrow = [X, arrow](int a1, int a, int b, int b2, const Arrow&, const Arrow&, const Arrow&) {
        return arrow(co_implication(*X, a1, b2).first, co_implication(*X, a, b).first);
    };
    auto tensor = m.tensor;
    t.phi = [X, arrow, top](int a, int b, int c, const Arrow&) {
        return std::pair<Arrow, Arrow>{arrow(a, top), arrow(co_implication(*X, a, b).first, c)};
    };
    t.phi_inv = [arrow, tensor](int a, int b, int c, const Arrow&, const Arrow&) { return arrow(a, tensor(b, c)); };
    return inst;
}

ForcesT tractability_forces_T(const TractableInstance& inst, int max_object) {
    ForcesT out;
    const MonoidalData& m = inst.monoidal;
    const TractableData& t = inst.data;
    const Model& M = *m.carrier;
    const int N = M.object_count();
    for (int c = 0; c < N && out.terminal < 0; ++c) {
        bool term = true;
        for (int a = 0; a < N && term; ++a) term = M.hom_size(a, c) == 1;
        if (term) out.terminal = c;
    }
    if (out.terminal < 0) {
        out.report.add("NoTerminal", "carrier has no terminal object");
        return out;
    }
    const int one = out.terminal;
    for (int b = 0; b <= std::min(max_object, N - 1); ++b) {
        const int b1 = m.tensor(b, one), tb = t.T(b);
        if (b1 < 0 || tb < 0 || b1 >= N || tb >= N) continue;
        const Arrow fwd = t.phi(b1, b, one, M.identity(b1)).first;
        const int d = t.dbar(tb, b, M.identity(tb));
        auto bang = d >= 0 && d < N ? unique_arrow(M, d, one) : std::nullopt;
        if (!bang) {
            out.report.add("ForcesT", "no arrow from dbar(Tb, b, id) to the terminal object", {M.object_name(b)});
            continue;
        }
        const Arrow back = t.phi_inv(tb, b, one, M.identity(tb), *bang);
        if (M.compose(b1, tb, b1, back, fwd) != M.identity(b1) || M.compose(tb, b1, tb, fwd, back) != M.identity(tb))
            out.report.add("ForcesT", "composites of the Yoneda maps are not identities", {M.object_name(b)});
        out.isos.emplace_back(fwd, back);
    }
    return out;
}

}  // namespace fibred
