#pragma once

// Brute-force counts over indexed data, independent of the backtracking
// searches in the library. Only the accessors on IndexedCat are used.

#include <fibred/indexed.hpp>

#include <vector>

namespace oracle {

// Every choice of objects and every choice of components, filtered by the
// unit and composite equations.
inline long section_count(const fibred::IndexedCat& L) {
    const auto& C = *L.base;
    const int n = C.object_count();
    const int m = C.morphism_count();
    long total = 0;
    std::vector<int> x(n, 0);
    while (true) {
        bool live = true;
        for (int a = 0; a < n; ++a) live &= L.fibre(a).object_count() > 0;
        if (!live) return 0;
        std::vector<std::vector<int>> choices(m);
        for (int f = 0; f < m; ++f) {
            const auto& fib = L.fibre(C.dom(f));
            const int tgt = L.apply(f, x[C.cod(f)]);
            for (int u = 0; u < fib.morphism_count(); ++u)
                if (fib.dom(u) == x[C.dom(f)] && fib.cod(u) == tgt) choices[f].push_back(u);
        }
        bool empty = false;
        for (auto& ch : choices) empty |= ch.empty();
        if (!empty) {
            std::vector<int> pick(m, 0);
            while (true) {
                bool ok = true;
                for (int a = 0; a < n && ok; ++a) ok = choices[C.identity(a)][pick[C.identity(a)]] == L.eta(a, x[a]);
                for (int f = 0; f < m && ok; ++f) {
                    for (int g = 0; g < m && ok; ++g) {
                        if (C.cod(f) != C.dom(g)) continue;
                        const auto& fib = L.fibre(C.dom(f));
                        const int xf = choices[f][pick[f]];
                        const int xg = choices[g][pick[g]];
                        const int gf = C.compose(g, f);
                        const int rhs = fib.compose(L.mu(f, g, x[C.cod(g)]), fib.compose(L.apply_mor(f, xg), xf));
                        ok = choices[gf][pick[gf]] == rhs;
                    }
                }
                total += ok;
                int k = 0;
                while (k < m && ++pick[k] == static_cast<int>(choices[k].size())) pick[k++] = 0;
                if (k == m) break;
            }
        }
        int a = 0;
        while (a < n && ++x[a] == L.fibre(a).object_count()) x[a++] = 0;
        if (a == n) break;
    }
    return total;
}

// |Mor| of the total category: pairs (f, u : X -> L(f)Y) over all X, Y.
inline long total_morphism_count(const fibred::IndexedCat& L) {
    const auto& C = *L.base;
    long n = 0;
    for (int f = 0; f < C.morphism_count(); ++f) {
        const auto& fib = L.fibre(C.dom(f));
        const auto& top = L.fibre(C.cod(f));
        for (int y = 0; y < top.object_count(); ++y) {
            const int ly = L.apply(f, y);
            for (int u = 0; u < fib.morphism_count(); ++u) n += fib.cod(u) == ly;
        }
    }
    return n;
}

}  // namespace oracle
