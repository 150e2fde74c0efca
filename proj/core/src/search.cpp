#include "fibred/search.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace fibred {

namespace {

// Shared enumeration for cones (co = false) and cocones (co = true).
struct ConeSearch {
    const FinFunctor& J;
    bool co;
    std::vector<std::vector<int>> checks;  // per shape object, morphisms whose endpoints are then all assigned

    ConeSearch(const FinFunctor& j, bool cocone) : J(j), co(cocone) {
        const FinCat& E = J.source();
        checks.assign(E.object_count(), {});
        for (int u = 0; u < E.morphism_count(); ++u) {
            checks[std::max(E.dom(u), E.cod(u))].push_back(u);
        }
    }

    std::span<const int> candidates(int apex, int e) const {
        const FinCat& C = J.target();
        return co ? C.hom(J.obj(e), apex) : C.hom(apex, J.obj(e));
    }

    bool square(const std::vector<int>& legs, int u) const {
        const FinCat& E = J.source();
        const FinCat& C = J.target();
        if (co) return C.compose(legs[E.cod(u)], J.mor(u)) == legs[E.dom(u)];
        return C.compose(J.mor(u), legs[E.dom(u)]) == legs[E.cod(u)];
    }

    void run(int apex, int e, std::vector<int>& legs, std::vector<Cone>& out) const {
        const int n = J.source().object_count();
        if (e == n) {
            out.push_back({apex, legs});
            return;
        }
        for (int leg : candidates(apex, e)) {
            legs[e] = leg;
            bool ok = true;
            for (int u : checks[e]) {
                if (!square(legs, u)) {
                    ok = false;
                    break;
                }
            }
            if (ok) run(apex, e + 1, legs, out);
        }
        legs[e] = -1;
    }

    std::vector<Cone> at(int apex) const {
        std::vector<Cone> out;
        std::vector<int> legs(J.source().object_count(), -1);
        run(apex, 0, legs, out);
        return out;
    }

    std::vector<Cone> all() const {
        std::vector<Cone> out;
        for (int a = 0; a < J.target().object_count(); ++a) {
            auto part = at(a);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }

    bool valid(const Cone& c) const {
        const FinCat& C = J.target();
        const FinCat& E = J.source();
        if (c.apex < 0 || c.apex >= C.object_count()) return false;
        if (static_cast<int>(c.legs.size()) != E.object_count()) return false;
        for (int e = 0; e < E.object_count(); ++e) {
            const int l = c.legs[e];
            if (l < 0 || l >= C.morphism_count()) return false;
            if (co ? (C.dom(l) != J.obj(e) || C.cod(l) != c.apex) : (C.dom(l) != c.apex || C.cod(l) != J.obj(e))) {
                return false;
            }
        }
        for (int u = 0; u < E.morphism_count(); ++u) {
            if (!square(c.legs, u)) return false;
        }
        return true;
    }

    std::vector<int> mediators(const Cone& universal, const Cone& other, int stop_after = -1) const {
        const FinCat& C = J.target();
        std::vector<int> out;
        auto homs = co ? C.hom(universal.apex, other.apex) : C.hom(other.apex, universal.apex);
        for (int h : homs) {
            bool ok = true;
            for (std::size_t e = 0; e < other.legs.size() && ok; ++e) {
                ok = co ? C.compose(h, universal.legs[e]) == other.legs[e]
                        : C.compose(universal.legs[e], h) == other.legs[e];
            }
            if (ok) {
                out.push_back(h);
                if (stop_after > 0 && static_cast<int>(out.size()) >= stop_after) break;
            }
        }
        return out;
    }

    // Returns the first cone with a factorization count different from one.
    std::optional<std::pair<Cone, int>> universality_failure(const Cone& u, const std::vector<Cone>& cones) const {
        auto self = mediators(u, u, 2);
        if (self.size() != 1) return std::pair(u, static_cast<int>(self.size()));
        for (const auto& other : cones) {
            auto m = mediators(u, other, 2);
            if (m.size() != 1) return std::pair(other, static_cast<int>(m.size()));
        }
        return std::nullopt;
    }

    Cone find() const {
        const char* what = co ? "cocone" : "cone";
        const FinCat& C = J.target();
        auto cones = all();
        if (cones.empty()) {
            fail(ErrorCode::NotFound, std::string("no ") + what + " over the diagram exists");
        }
        // Cones with apex a correspond to hom(a, apex) for a limit, so apexes
        // with the wrong hom counts are skipped before the full check.
        std::vector<std::size_t> per_apex(C.object_count(), 0);
        for (const auto& c : cones) ++per_apex[c.apex];
        std::vector<char> plausible(C.object_count(), 1);
        for (int x = 0; x < C.object_count(); ++x) {
            for (int a = 0; a < C.object_count() && plausible[x]; ++a) {
                plausible[x] = (co ? C.hom(x, a).size() : C.hom(a, x).size()) == per_apex[a];
            }
        }
        std::optional<std::string> first_obstruction;
        for (const auto& cand : cones) {
            if (!plausible[cand.apex] && first_obstruction) continue;
            auto failure = universality_failure(cand, cones);
            if (!failure) return cand;
            if (!first_obstruction) {
                std::ostringstream msg;
                msg << "no universal " << what << "; smallest candidate " << describe_cone(J.target(), cand)
                    << " admits " << failure->second << " factorization(s) of "
                    << describe_cone(J.target(), failure->first);
                first_obstruction = msg.str();
            }
        }
        fail(ErrorCode::NotFound, *first_obstruction);
    }
};

}  // namespace

std::vector<Cone> enumerate_cones(const FinFunctor& J) { return ConeSearch(J, false).all(); }
std::vector<Cone> enumerate_cones_at(const FinFunctor& J, int apex) { return ConeSearch(J, false).at(apex); }
std::vector<Cone> enumerate_cocones(const FinFunctor& J) { return ConeSearch(J, true).all(); }

std::vector<int> factorizations(const FinFunctor& J, const Cone& limit, const Cone& other) {
    return ConeSearch(J, false).mediators(limit, other);
}

std::vector<int> cofactorizations(const FinFunctor& J, const Cone& colimit, const Cone& other) {
    return ConeSearch(J, true).mediators(colimit, other);
}

bool is_cone(const FinFunctor& J, const Cone& c) { return ConeSearch(J, false).valid(c); }
bool is_cocone(const FinFunctor& J, const Cone& c) { return ConeSearch(J, true).valid(c); }

namespace {

bool is_universal(const FinFunctor& J, const Cone& c, bool co, std::string* obstruction) {
    ConeSearch s(J, co);
    if (!s.valid(c)) {
        if (obstruction) *obstruction = std::string("not a ") + (co ? "cocone" : "cone");
        return false;
    }
    auto failure = s.universality_failure(c, s.all());
    if (!failure) return true;
    if (obstruction) {
        std::ostringstream msg;
        msg << describe_cone(J.target(), failure->first) << " has " << failure->second << " factorization(s)";
        *obstruction = msg.str();
    }
    return false;
}

}  // namespace

bool is_limit_cone(const FinFunctor& J, const Cone& c, std::string* obstruction) {
    return is_universal(J, c, false, obstruction);
}

bool is_colimit_cone(const FinFunctor& J, const Cone& c, std::string* obstruction) {
    return is_universal(J, c, true, obstruction);
}

Cone find_limit(const FinFunctor& J) { return ConeSearch(J, false).find(); }
Cone find_colimit(const FinFunctor& J) { return ConeSearch(J, true).find(); }

std::string describe_cone(const FinCat& c, const Cone& cone) {
    std::string s = "(" + c.object(cone.apex) + "; ";
    for (std::size_t i = 0; i < cone.legs.size(); ++i) {
        if (i) s += ", ";
        s += cone.legs[i] >= 0 ? c.morphism(cone.legs[i]) : "?";
    }
    return s + ")";
}

namespace {

UniversalObject universal_object(const FinCat& c, bool initial) {
    const int n = c.object_count();
    std::string obstruction;
    for (int a = 0; a < n; ++a) {
        UniversalObject u{a, std::vector<int>(n, -1)};
        bool ok = true;
        for (int b = 0; b < n && ok; ++b) {
            auto h = initial ? c.hom(a, b) : c.hom(b, a);
            if (h.size() != 1) {
                ok = false;
                if (obstruction.empty()) {
                    obstruction = "candidate " + c.object(a) + " has " + std::to_string(h.size()) +
                                  " morphism(s) " + (initial ? "to " : "from ") + c.object(b);
                }
            } else {
                u.arrows[b] = h[0];
            }
        }
        if (ok) return u;
    }
    if (n == 0) obstruction = "category has no objects";
    fail(ErrorCode::NotFound, std::string("no ") + (initial ? "initial" : "terminal") + " object: " + obstruction);
}

}  // namespace

UniversalObject find_initial(const FinCat& c) { return universal_object(c, true); }
UniversalObject find_terminal(const FinCat& c) { return universal_object(c, false); }

ValidationReport validate_adjunction(const AdjunctionWitness& w) {
    ValidationReport r;
    r.merge(validate_functor(w.left), "left adjoint");
    r.merge(validate_functor(w.right), "right adjoint");
    r.merge(validate_nat_trans(w.unit), "unit");
    r.merge(validate_nat_trans(w.counit), "counit");
    if (!r.ok()) return r;
    const FinFunctor& F = w.left;
    const FinFunctor& G = w.right;
    const FinCat& C = F.source();
    const FinCat& D = F.target();
    for (int c = 0; c < C.object_count(); ++c) {
        const int lhs = D.compose(w.counit.components[F.obj(c)], F.mor(w.unit.components[c]));
        if (lhs != D.identity(F.obj(c))) {
            r.add("TriangleLeft", "counit_F o F(unit) != id", {C.object(c)});
        }
    }
    for (int d = 0; d < D.object_count(); ++d) {
        const int lhs = C.compose(G.mor(w.counit.components[d]), w.unit.components[G.obj(d)]);
        if (lhs != C.identity(G.obj(d))) {
            r.add("TriangleRight", "G(counit) o unit_G != id", {D.object(d)});
        }
    }
    return r;
}

std::optional<UniversalArrow> universal_arrow_from(const FinFunctor& G, int c, std::string* obstruction,
                                                   int only_object) {
    const FinCat& D = G.source();
    const FinCat& C = G.target();
    std::vector<UniversalArrow> all;
    for (int d = 0; d < D.object_count(); ++d) {
        for (int a : C.hom(c, G.obj(d))) all.push_back({d, a});
    }
    std::string first;
    for (const auto& cand : all) {
        if (only_object >= 0 && cand.object != only_object) continue;
        bool ok = true;
        for (const auto& other : all) {
            int count = 0;
            for (int h : D.hom(cand.object, other.object)) {
                if (C.compose(G.mor(h), cand.arrow) == other.arrow && ++count > 1) break;
            }
            if (count != 1) {
                ok = false;
                if (first.empty()) {
                    first = "candidate (" + D.object(cand.object) + ", " + C.morphism(cand.arrow) + ") has " +
                            std::to_string(count) + " factorization(s) through (" + D.object(other.object) + ", " +
                            C.morphism(other.arrow) + ")";
                }
                break;
            }
        }
        if (ok) return cand;
    }
    if (obstruction) *obstruction = first.empty() ? "comma category is empty" : first;
    return std::nullopt;
}

std::optional<UniversalArrow> universal_arrow_to(const FinFunctor& G, int c, std::string* obstruction,
                                                 int only_object) {
    const FinCat& D = G.source();
    const FinCat& C = G.target();
    std::vector<UniversalArrow> all;
    for (int d = 0; d < D.object_count(); ++d) {
        for (int a : C.hom(G.obj(d), c)) all.push_back({d, a});
    }
    std::string first;
    for (const auto& cand : all) {
        if (only_object >= 0 && cand.object != only_object) continue;
        bool ok = true;
        for (const auto& other : all) {
            int count = 0;
            for (int h : D.hom(other.object, cand.object)) {
                if (C.compose(cand.arrow, G.mor(h)) == other.arrow && ++count > 1) break;
            }
            if (count != 1) {
                ok = false;
                if (first.empty()) {
                    first = "candidate (" + D.object(cand.object) + ", " + C.morphism(cand.arrow) + ") has " +
                            std::to_string(count) + " factorization(s) of (" + D.object(other.object) + ", " +
                            C.morphism(other.arrow) + ")";
                }
                break;
            }
        }
        if (ok) return cand;
    }
    if (obstruction) *obstruction = first.empty() ? "comma category is empty" : first;
    return std::nullopt;
}

namespace {

int unique_morphism(const FinCat& c, std::span<const int> homs, const std::function<bool(int)>& pred,
                    const std::string& what) {
    int found = -1;
    for (int h : homs) {
        if (!pred(h)) continue;
        if (found >= 0) fail(ErrorCode::InvalidInput, what + ": factorization is not unique");
        found = h;
    }
    if (found < 0) fail(ErrorCode::InvalidInput, what + ": no factorization");
    (void)c;
    return found;
}

}  // namespace

AdjunctionWitness assemble_left_adjoint(const FinFunctor& G, const std::vector<UniversalArrow>& arrows) {
    const FinCat& D = G.source();
    const FinCat& C = G.target();
    std::vector<int> fo(C.object_count()), fm(C.morphism_count()), eta(C.object_count());
    for (int c = 0; c < C.object_count(); ++c) {
        fo[c] = arrows[c].object;
        eta[c] = arrows[c].arrow;
    }
    for (int u = 0; u < C.morphism_count(); ++u) {
        const int a = C.dom(u);
        const int b = C.cod(u);
        const int target = C.compose(eta[b], u);
        fm[u] = unique_morphism(D, D.hom(fo[a], fo[b]),
                                [&](int h) { return C.compose(G.mor(h), eta[a]) == target; },
                                "left adjoint on " + C.morphism(u));
    }
    FinFunctor F(G.target_ptr(), G.source_ptr(), fo, fm);
    std::vector<int> eps(D.object_count());
    for (int d = 0; d < D.object_count(); ++d) {
        const int gd = G.obj(d);
        eps[d] = unique_morphism(D, D.hom(fo[gd], d),
                                 [&](int h) { return C.compose(G.mor(h), eta[gd]) == C.identity(gd); },
                                 "counit at " + D.object(d));
    }
    AdjunctionWitness w;
    w.left = F;
    w.right = G;
    w.unit = {identity_functor(G.target_ptr()), compose_functors(G, F), std::move(eta)};
    w.counit = {compose_functors(F, G), identity_functor(G.source_ptr()), std::move(eps)};
    return w;
}

AdjunctionWitness assemble_right_adjoint(const FinFunctor& G, const std::vector<UniversalArrow>& arrows) {
    const FinCat& D = G.source();
    const FinCat& C = G.target();
    std::vector<int> ro(C.object_count()), rm(C.morphism_count()), eps(C.object_count());
    for (int c = 0; c < C.object_count(); ++c) {
        ro[c] = arrows[c].object;
        eps[c] = arrows[c].arrow;
    }
    for (int u = 0; u < C.morphism_count(); ++u) {
        const int a = C.dom(u);
        const int b = C.cod(u);
        const int target = C.compose(u, eps[a]);
        rm[u] = unique_morphism(D, D.hom(ro[a], ro[b]),
                                [&](int h) { return C.compose(eps[b], G.mor(h)) == target; },
                                "right adjoint on " + C.morphism(u));
    }
    FinFunctor R(G.target_ptr(), G.source_ptr(), ro, rm);
    std::vector<int> eta(D.object_count());
    for (int d = 0; d < D.object_count(); ++d) {
        const int gd = G.obj(d);
        eta[d] = unique_morphism(D, D.hom(d, ro[gd]),
                                 [&](int h) { return C.compose(eps[gd], G.mor(h)) == C.identity(gd); },
                                 "unit at " + D.object(d));
    }
    AdjunctionWitness w;
    w.left = G;
    w.right = R;
    w.unit = {identity_functor(G.source_ptr()), compose_functors(R, G), std::move(eta)};
    w.counit = {compose_functors(G, R), identity_functor(G.target_ptr()), std::move(eps)};
    return w;
}

AdjunctionWitness find_left_adjoint(const FinFunctor& G) {
    const FinCat& C = G.target();
    std::vector<UniversalArrow> arrows;
    for (int c = 0; c < C.object_count(); ++c) {
        std::string why;
        auto ua = universal_arrow_from(G, c, &why);
        if (!ua) fail(ErrorCode::NotFound, "no initial object in (" + C.object(c) + " | G): " + why);
        arrows.push_back(*ua);
    }
    auto w = assemble_left_adjoint(G, arrows);
    auto report = validate_adjunction(w);
    if (!report.ok()) fail(ErrorCode::InvalidInput, "assembled left adjoint fails: " + report.summary());
    return w;
}

AdjunctionWitness find_right_adjoint(const FinFunctor& G) {
    const FinCat& C = G.target();
    std::vector<UniversalArrow> arrows;
    for (int c = 0; c < C.object_count(); ++c) {
        std::string why;
        auto ua = universal_arrow_to(G, c, &why);
        if (!ua) fail(ErrorCode::NotFound, "no terminal object in (G | " + C.object(c) + "): " + why);
        arrows.push_back(*ua);
    }
    auto w = assemble_right_adjoint(G, arrows);
    auto report = validate_adjunction(w);
    if (!report.ok()) fail(ErrorCode::InvalidInput, "assembled right adjoint fails: " + report.summary());
    return w;
}

ValidationReport check_bijection_natural(const NaturalFamily& family) {
    ValidationReport r;
    const std::size_t n = family.index.size();
    if (family.lhs_size.size() != n || family.rhs_size.size() != n || family.phi.size() != n) {
        r.add("FamilyShape", "family tables do not match the index set");
        return r;
    }
    std::vector<char> bijective(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& phi = family.phi[i];
        if (family.lhs_size[i] != family.rhs_size[i]) {
            r.add("SizeMismatch",
                  "|lhs| = " + std::to_string(family.lhs_size[i]) + " but |rhs| = " + std::to_string(family.rhs_size[i]),
                  {family.index[i]});
            continue;
        }
        if (static_cast<int>(phi.size()) != family.lhs_size[i]) {
            r.add("ComponentShape", "component is not defined on the whole left side", {family.index[i]});
            continue;
        }
        std::vector<char> hit(family.rhs_size[i], 0);
        bool ok = true;
        for (std::size_t x = 0; x < phi.size() && ok; ++x) {
            if (phi[x] < 0 || phi[x] >= family.rhs_size[i] || hit[phi[x]]) {
                ok = false;
                r.add("NotBijective", "component is not injective at element " + std::to_string(x), {family.index[i]});
            } else {
                hit[phi[x]] = 1;
            }
        }
        bijective[i] = ok;
    }
    for (const auto& act : family.actions) {
        const auto from = static_cast<std::size_t>(act.from);
        const auto to = static_cast<std::size_t>(act.to);
        if (from >= n || to >= n || !bijective[from] || !bijective[to]) continue;
        if (static_cast<int>(act.lhs.size()) != family.lhs_size[from] ||
            static_cast<int>(act.rhs.size()) != family.rhs_size[from]) {
            r.add("ActionShape", "action is not defined on the whole component", {act.label});
            continue;
        }
        for (int x = 0; x < family.lhs_size[from]; ++x) {
            if (family.phi[to][act.lhs[x]] != act.rhs[family.phi[from][x]]) {
                r.add("NotNatural", "naturality square fails at element " + std::to_string(x),
                      {act.label, family.index[from], family.index[to]});
                break;
            }
        }
    }
    return r;
}

}  // namespace fibred

namespace fibred {

std::vector<FinFunctor> enumerate_functors(const CatPtr& source, const CatPtr& target, std::size_t limit) {
    const FinCat& E = *source;
    const FinCat& C = *target;
    const int n = E.object_count();
    const int m = E.morphism_count();
    std::vector<FinFunctor> out;
    std::vector<int> om(n, -1), mm(m, -1);
    std::vector<int> order;  // non-identity morphisms
    for (int u = 0; u < m; ++u) {
        if (!E.is_identity(u)) order.push_back(u);
    }
    std::vector<int> pos(m, -1);
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    // Cells to check once the later of (g, f, g o f) is assigned.
    std::vector<std::vector<std::pair<int, int>>> checks(order.size() + 1);
    for (int f = 0; f < m; ++f) {
        for (int g : E.out(E.cod(f))) {
            const int gf = E.compose(g, f);
            int last = std::max({pos[f], pos[g], pos[gf]});
            checks[last < 0 ? order.size() : last].push_back({g, f});
        }
    }
    auto cell_ok = [&](int g, int f) { return C.compose(mm[g], mm[f]) == mm[E.compose(g, f)]; };
    std::function<void(std::size_t)> mor = [&](std::size_t k) {
        if (k == order.size()) {
            for (auto [g, f] : checks[order.size()]) {
                if (!cell_ok(g, f)) return;
            }
            if (out.size() >= limit) fail(ErrorCode::SizeExceeded, "more than " + std::to_string(limit) + " functors");
            out.emplace_back(source, target, om, mm);
            return;
        }
        const int u = order[k];
        for (int h : C.hom(om[E.dom(u)], om[E.cod(u)])) {
            mm[u] = h;
            bool ok = true;
            for (auto [g, f] : checks[k]) {
                if (!cell_ok(g, f)) {
                    ok = false;
                    break;
                }
            }
            if (ok) mor(k + 1);
        }
        mm[u] = -1;
    };
    std::function<void(int)> obj = [&](int a) {
        if (a == n) {
            for (int b = 0; b < n; ++b) mm[E.identity(b)] = C.identity(om[b]);
            mor(0);
            return;
        }
        for (int x = 0; x < C.object_count(); ++x) {
            om[a] = x;
            obj(a + 1);
        }
        om[a] = -1;
    };
    obj(0);
    return out;
}

}  // namespace fibred
