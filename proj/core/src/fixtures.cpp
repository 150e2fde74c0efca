#include "fibred/fixtures.hpp"

#include <map>

namespace fibred {

namespace {

bool next_values(std::vector<int>& v, int lo, int hi) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (++v[i] <= hi) return true;
        v[i] = lo;
    }
    return false;
}

// Skeleton of finite sets with total (lo = 0) or partial (lo = -1) maps.
CatPtr skeleton(int n, int lo) {
    if (n < 0 || n > 9) fail(ErrorCode::SizeExceeded, "skeleton bound must lie in 0..9");
    std::vector<std::string> objs;
    for (int a = 0; a <= n; ++a) objs.push_back(std::to_string(a));
    std::vector<GeneratedMorphism> mors;
    std::vector<std::vector<int>> values;
    std::map<std::pair<int, std::vector<int>>, int> lookup;  // (cod, values) -> pos
    for (int a = 0; a <= n; ++a) {
        for (int b = 0; b <= n; ++b) {
            if (lo == 0 && a > 0 && b == 0) continue;
            std::vector<int> v(a, lo);
            do {
                lookup[{b, v}] = static_cast<int>(mors.size());
                mors.push_back({function_id(a, b, v), a, b});
                values.push_back(v);
            } while (next_values(v, lo, b - 1));
        }
    }
    FinCat c = FinCat::generate(
        std::move(objs), mors,
        [&](int a) {
            std::vector<int> v(a);
            for (int i = 0; i < a; ++i) v[i] = i;
            return lookup.at({a, v});
        },
        [&](int g, int f) {
            const auto& fv = values[f];
            const auto& gv = values[g];
            std::vector<int> h(fv.size());
            for (std::size_t i = 0; i < fv.size(); ++i) h[i] = fv[i] < 0 ? -1 : gv[fv[i]];
            return lookup.at({mors[g].cod, h});
        });
    return share(std::move(c));
}

}  // namespace

std::string function_id(int dom, int cod, const std::vector<int>& values) {
    std::string s = std::to_string(dom) + ">" + std::to_string(cod) + ":";
    for (int v : values) s += v < 0 ? '-' : static_cast<char>('0' + v);
    return s;
}

std::vector<int> function_values(const std::string& id) {
    std::vector<int> v;
    auto colon = id.find(':');
    if (colon == std::string::npos) fail(ErrorCode::InvalidInput, "not a function id: " + id);
    for (std::size_t i = colon + 1; i < id.size(); ++i) v.push_back(id[i] == '-' ? -1 : id[i] - '0');
    return v;
}

CatPtr finset_skeleton(int n) { return skeleton(n, 0); }
CatPtr pset_skeleton(int n) { return skeleton(n, -1); }

CatPtr poset_category(const std::vector<std::string>& elements, const std::vector<std::vector<bool>>& leq) {
    const int n = static_cast<int>(elements.size());
    std::vector<GeneratedMorphism> mors;
    std::vector<std::vector<int>> pos(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!leq[i][j]) continue;
            pos[i][j] = static_cast<int>(mors.size());
            mors.push_back({elements[i] + "<=" + elements[j], i, j});
        }
    }
    for (int i = 0; i < n; ++i) {
        if (pos[i][i] < 0) fail(ErrorCode::InvalidInput, "order is not reflexive at " + elements[i]);
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                if (leq[i][j] && leq[j][k] && !leq[i][k]) {
                    fail(ErrorCode::InvalidInput, "order is not transitive at " + elements[i]);
                }
            }
        }
    }
    FinCat c = FinCat::generate(
        elements, mors, [&](int a) { return pos[a][a]; },
        [&](int g, int f) { return pos[mors[f].dom][mors[g].cod]; });
    return share(std::move(c));
}

CatPtr chain_category(int n) {
    std::vector<std::string> names;
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) {
        names.push_back(std::to_string(i));
        for (int j = i; j < n; ++j) leq[i][j] = true;
    }
    return poset_category(names, leq);
}

CatPtr boolean_lattice(int atoms) {
    const int n = 1 << atoms;
    std::vector<std::string> names;
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int s = 0; s < n; ++s) {
        std::string name;
        for (int b = atoms - 1; b >= 0; --b) name += ((s >> b) & 1) ? '1' : '0';
        if (atoms == 0) name = "e";
        names.push_back(name);
        for (int t = 0; t < n; ++t) leq[s][t] = (s & t) == s;
    }
    return poset_category(names, leq);
}

CatPtr m3_lattice() {
    const std::vector<std::string> names = {"bot", "a", "b", "c", "top"};
    std::vector<std::vector<bool>> leq(5, std::vector<bool>(5, false));
    for (int i = 0; i < 5; ++i) {
        leq[i][i] = true;
        leq[0][i] = true;
        leq[i][4] = true;
    }
    return poset_category(names, leq);
}

CatPtr n5_lattice() {
    const std::vector<std::string> names = {"bot", "a", "b", "c", "top"};
    std::vector<std::vector<bool>> leq(5, std::vector<bool>(5, false));
    for (int i = 0; i < 5; ++i) {
        leq[i][i] = true;
        leq[0][i] = true;
        leq[i][4] = true;
    }
    leq[1][2] = true;
    return poset_category(names, leq);
}

ArrowCategory arrow_category(const CatPtr& c) {
    const int m = c->morphism_count();
    std::vector<std::string> objs;
    for (int f = 0; f < m; ++f) objs.push_back(c->morphism(f));
    struct Sq {
        int src, tgt, u, v;
    };
    std::vector<Sq> sqs;
    std::vector<GeneratedMorphism> mors;
    std::map<std::tuple<int, int, int, int>, int> lookup;
    for (int f = 0; f < m; ++f) {
        for (int g = 0; g < m; ++g) {
            for (int u : c->hom(c->dom(f), c->dom(g))) {
                for (int v : c->hom(c->cod(f), c->cod(g))) {
                    if (c->compose(v, f) != c->compose(g, u)) continue;
                    lookup[{f, g, u, v}] = static_cast<int>(sqs.size());
                    sqs.push_back({f, g, u, v});
                    mors.push_back({"[" + c->morphism(f) + "|" + c->morphism(u) + "," + c->morphism(v) + "|" +
                                        c->morphism(g) + "]",
                                    f, g});
                }
            }
        }
    }
    std::vector<int> mor_index;
    FinCat cat = FinCat::generate(
        objs, mors,
        [&](int f) { return lookup.at({f, f, c->identity(c->dom(f)), c->identity(c->cod(f))}); },
        [&](int gp, int fp) {
            const Sq& a = sqs[fp];
            const Sq& b = sqs[gp];
            return lookup.at({a.src, b.tgt, c->compose(b.u, a.u), c->compose(b.v, a.v)});
        },
        nullptr, &mor_index);
    ArrowCategory out;
    out.category = share(std::move(cat));
    std::vector<int> dom_o(m), cod_o(m), dom_m(sqs.size()), cod_m(sqs.size());
    for (int f = 0; f < m; ++f) {
        dom_o[f] = c->dom(f);
        cod_o[f] = c->cod(f);
    }
    for (std::size_t p = 0; p < sqs.size(); ++p) {
        dom_m[mor_index[p]] = sqs[p].u;
        cod_m[mor_index[p]] = sqs[p].v;
    }
    out.domain = FinFunctor(out.category, c, dom_o, std::move(dom_m));
    out.codomain = FinFunctor(out.category, c, cod_o, std::move(cod_m));
    return out;
}

}  // namespace fibred
