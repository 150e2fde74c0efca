#pragma once

// Naive checks used as independent references in tests. They only touch the
// public lookup API and loop over everything.

#include <fibred/fincat.hpp>

#include <vector>

namespace oracle {

inline bool axioms_hold(const fibred::FinCat& c) {
    const int m = c.morphism_count();
    for (int a = 0; a < c.object_count(); ++a) {
        const int i = c.identity(a);
        if (i < 0 || c.dom(i) != a || c.cod(i) != a) return false;
    }
    for (int f = 0; f < m; ++f) {
        if (c.compose(c.identity(c.cod(f)), f) != f) return false;
        if (c.compose(f, c.identity(c.dom(f))) != f) return false;
        for (int g = 0; g < m; ++g) {
            const int gf = c.compose(g, f);
            if ((c.cod(f) == c.dom(g)) != (gf >= 0)) return false;
            if (gf < 0) continue;
            if (c.dom(gf) != c.dom(f) || c.cod(gf) != c.cod(g)) return false;
            for (int h = 0; h < m; ++h) {
                if (c.dom(h) != c.cod(g)) continue;
                if (c.compose(h, gf) != c.compose(c.compose(h, g), f)) return false;
            }
        }
    }
    return true;
}

inline int hom_count(const fibred::FinCat& c, int a, int b) {
    int n = 0;
    for (int f = 0; f < c.morphism_count(); ++f) n += c.dom(f) == a && c.cod(f) == b;
    return n;
}

// Every leg tuple checked against every shape morphism, no pruning.
inline std::vector<std::vector<int>> all_cones(const fibred::FinFunctor& J, int apex) {
    const auto& E = J.source();
    const auto& C = J.target();
    std::vector<std::vector<int>> out;
    std::vector<std::vector<int>> choices(E.object_count());
    for (int e = 0; e < E.object_count(); ++e) {
        for (int f = 0; f < C.morphism_count(); ++f) {
            if (C.dom(f) == apex && C.cod(f) == J.obj(e)) choices[e].push_back(f);
        }
    }
    std::vector<int> pick(E.object_count(), 0);
    for (auto& ch : choices) {
        if (ch.empty()) return out;
    }
    while (true) {
        std::vector<int> legs(E.object_count());
        for (int e = 0; e < E.object_count(); ++e) legs[e] = choices[e][pick[e]];
        bool ok = true;
        for (int u = 0; u < E.morphism_count() && ok; ++u) {
            ok = C.compose(J.mor(u), legs[E.dom(u)]) == legs[E.cod(u)];
        }
        if (ok) out.push_back(legs);
        int e = 0;
        while (e < E.object_count() && ++pick[e] == static_cast<int>(choices[e].size())) pick[e++] = 0;
        if (e == E.object_count()) break;
    }
    return out;
}

}  // namespace oracle
