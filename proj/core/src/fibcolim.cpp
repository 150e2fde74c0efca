#include "fibred/fibcolim.hpp"

namespace fibred {

ValidationReport validate_diagram(const IndexedCat& L, const DiagramPair& D) {
    ValidationReport r;
    if (!(D.J1.source() == *D.shape.category)) {
        r.add("DiagramShape", "J1 is not defined on the shape");
        return r;
    }
    if (!(D.J1.target() == *L.base)) {
        r.add("DiagramBase", "J1 does not land in the base");
        return r;
    }
    r.merge(validate_functor(D.J1), "J1");
    if (!r.ok()) return r;
    r.merge(validate_section(restrict(L, D.J1), D.J2), "J2");
    return r;
}

FinFunctor total_diagram(const GrothCat& G, const DiagramPair& D) {
    const FinCat& E = D.J1.source();
    std::vector<int> om(E.object_count()), mm(E.morphism_count());
    for (int e = 0; e < E.object_count(); ++e) om[e] = G.object(D.J1.obj(e), D.J2.x[e]);
    for (int u = 0; u < E.morphism_count(); ++u) mm[u] = G.morphism(D.J1.mor(u), D.J2.xi[u], D.J2.x[E.cod(u)]);
    return FinFunctor(D.J1.source_ptr(), G.total, std::move(om), std::move(mm));
}

FibredResult fibred_limit(const GrothCat& G, const DiagramPair& D) {
    const IndexedCat& L = G.source;
    const FinCat& C = *L.base;
    FibredResult res;
    Cone base;
    try {
        base = find_limit(D.J1);
    } catch (const Error& e) {
        fail(ErrorCode::NoBaseLimit, std::string("base diagram has no limit: ") + e.what());
    }
    res.base_apex = base.apex;
    res.lambda = base.legs;
    const FinFunctor Y = reindex_section(L, D.J1, base.apex, base.legs, D.J2);
    try {
        res.fibre_cone = find_limit(Y);
    } catch (const Error& e) {
        fail(ErrorCode::NoFibreLimit, "reindexed diagram in the fibre over " + C.object(base.apex) +
                                          " has no limit: " + e.what());
    }
    res.fibre_object = res.fibre_cone.apex;
    for (int u : C.in(base.apex)) {
        const FinFunctor& F = L.reindex[u];
        Cone image{F.obj(res.fibre_cone.apex), {}};
        for (int leg : res.fibre_cone.legs) image.legs.push_back(F.mor(leg));
        std::string why;
        if (!is_limit_cone(compose_functors(F, Y), image, &why)) {
            fail(ErrorCode::NotPreserved,
                 "reindexing along " + C.morphism(u) + " does not preserve the fibre limit: " + why);
        }
    }
    res.total_object = G.object(base.apex, res.fibre_object);
    res.total_cone.apex = res.total_object;
    for (std::size_t e = 0; e < base.legs.size(); ++e) {
        res.total_cone.legs.push_back(G.morphism(base.legs[e], res.fibre_cone.legs[e], D.J2.x[e]));
    }
    return res;
}

Comparison comparison_functor(const IndexedCat& L, const FinFunctor& J1, int apex, const std::vector<int>& lambda) {
    const FinCat& E = J1.source();
    Comparison cmp;
    cmp.restricted = restrict(L, J1);
    cmp.sections = sections_category(cmp.restricted);
    const FinCat& fib = L.fibre(apex);
    std::vector<int> om(fib.object_count()), mm(fib.morphism_count());
    for (int x = 0; x < fib.object_count(); ++x) {
        SectionObj s{std::vector<int>(E.object_count()), std::vector<int>(E.morphism_count())};
        for (int e = 0; e < E.object_count(); ++e) s.x[e] = L.apply(lambda[e], x);
        for (int u = 0; u < E.morphism_count(); ++u) {
            const int e = E.dom(u);
            const int mu = L.mu(J1.mor(u), lambda[E.cod(u)], x);
            auto inv = inverse(L.fibre(J1.obj(e)), mu);
            if (!inv) fail(ErrorCode::InvalidInput, "compositor component is not invertible");
            s.xi[u] = *inv;
        }
        om[x] = cmp.sections.index_of(s);
        if (om[x] < 0) fail(ErrorCode::InvalidInput, "comparison image of " + fib.object(x) + " is not a section");
    }
    for (int w = 0; w < fib.morphism_count(); ++w) {
        std::vector<int> comps(E.object_count());
        for (int e = 0; e < E.object_count(); ++e) comps[e] = L.apply_mor(lambda[e], w);
        mm[w] = cmp.sections.morphism_of(om[fib.dom(w)], om[fib.cod(w)], comps);
        if (mm[w] < 0) fail(ErrorCode::InvalidInput, "comparison image of " + fib.morphism(w) + " is not a section map");
    }
    cmp.functor = FinFunctor(L.fibres[apex], cmp.sections.category, std::move(om), std::move(mm));
    return cmp;
}

FibredResult fibred_colimit(const GrothCat& G, const DiagramPair& D) {
    const IndexedCat& L = G.source;
    FibredResult res;
    Cone base;
    try {
        base = find_colimit(D.J1);
    } catch (const Error& e) {
        fail(ErrorCode::NoBaseColimit, std::string("base diagram has no colimit: ") + e.what());
    }
    res.base_apex = base.apex;
    res.lambda = base.legs;
    const Comparison cmp = comparison_functor(L, D.J1, base.apex, base.legs);
    const int s = cmp.sections.index_of(D.J2);
    if (s < 0) fail(ErrorCode::InvalidInput, "J2 is not a section of the restricted indexed category");
    std::string why;
    auto ua = universal_arrow_from(cmp.functor, s, &why);
    if (!ua) {
        fail(ErrorCode::NoLeftAdjoint, "no initial object under the section " + cmp.sections.category->object(s) +
                                           ": " + why);
    }
    res.route = "pointwise";
    try {
        find_left_adjoint(cmp.functor);
        res.route = "global adjoint";
    } catch (const Error&) {
    }
    res.fibre_object = ua->object;
    res.total_object = G.object(base.apex, ua->object);
    res.total_cone.apex = res.total_object;
    const auto& comps = cmp.sections.components[ua->arrow];
    for (std::size_t e = 0; e < base.legs.size(); ++e) {
        res.total_cone.legs.push_back(G.morphism(base.legs[e], comps[e], ua->object));
    }
    return res;
}

namespace {

OracleComparison compare(const GrothCat& G, const DiagramPair& D, bool co) {
    OracleComparison oc;
    const FinFunctor TD = total_diagram(G, D);
    try {
        oc.formula = co ? fibred_colimit(G, D) : fibred_limit(G, D);
        oc.formula_ok = true;
    } catch (const Error& e) {
        oc.formula_error = e.code_name();
        oc.formula_message = e.what();
    }
    try {
        oc.oracle = co ? find_colimit(TD) : find_limit(TD);
        oc.oracle_ok = true;
    } catch (const Error& e) {
        oc.oracle_message = e.what();
    }
    const FinCat& T = *G.total;
    if (oc.formula_ok && oc.oracle_ok) {
        auto med = co ? cofactorizations(TD, *oc.oracle, oc.formula->total_cone)
                      : factorizations(TD, *oc.oracle, oc.formula->total_cone);
        if (med.size() == 1 && is_iso(T, med[0])) {
            oc.iso = med[0];
            oc.consistent = true;
        } else {
            oc.oracle_message += "formula (co)cone is not isomorphic to the oracle's";
        }
    } else if (!oc.formula_ok && !oc.oracle_ok) {
        oc.consistent = true;
    } else if (!oc.formula_ok) {
        // A (co)limit that the projection does not preserve is not fibred.
        Cone projected{G.projection.obj(oc.oracle->apex), {}};
        for (int leg : oc.oracle->legs) projected.legs.push_back(G.projection.mor(leg));
        const bool preserved = co ? is_colimit_cone(D.J1, projected) : is_limit_cone(D.J1, projected);
        oc.consistent = !preserved;
        if (!preserved) oc.oracle_message = "oracle (co)limit exists but is not preserved by the projection";
    }
    return oc;
}

}  // namespace

OracleComparison compare_limit(const GrothCat& G, const DiagramPair& D) { return compare(G, D, false); }
OracleComparison compare_colimit(const GrothCat& G, const DiagramPair& D) { return compare(G, D, true); }

MateResult coequalizer_via_mates(const GrothCat& G, int f, int alpha, int g, int beta, int x, int y) {
    const IndexedCat& L = G.source;
    const FinCat& C = *L.base;
    const int A = C.dom(f);
    const int B = C.cod(f);
    if (C.dom(g) != A || C.cod(g) != B) fail(ErrorCode::InvalidInput, "f and g are not parallel");
    const FinCat& LA = L.fibre(A);
    auto check_leg = [&](int h, int k, const char* name) {
        if (h < 0 || h >= LA.morphism_count() || LA.dom(h) != x || LA.cod(h) != L.apply(k, y)) {
            fail(ErrorCode::InvalidInput, std::string(name) + " does not go X -> L(f)(Y)");
        }
    };
    check_leg(alpha, f, "alpha");
    check_leg(beta, g, "beta");

    auto pp = shape_parallel_pair().category;
    const int u = pp->morphism_index("u");
    const int v = pp->morphism_index("v");
    std::vector<int> mm(pp->morphism_count());
    mm[pp->morphism_index("id_0")] = C.identity(A);
    mm[pp->morphism_index("id_1")] = C.identity(B);
    mm[u] = f;
    mm[v] = g;
    FinFunctor J1(pp, L.base, {A, B}, mm);
    Cone base;
    try {
        base = find_colimit(J1);
    } catch (const Error& e) {
        fail(ErrorCode::NoBaseColimit, std::string("f, g have no coequalizer: ") + e.what());
    }
    MateResult res;
    res.coequalizer = base.apex;
    res.lambda0 = base.legs[0];
    res.q = base.legs[1];
    const int Q = base.apex;

    auto left_of = [&](int k) {
        try {
            return find_left_adjoint(L.reindex[k]);
        } catch (const Error& e) {
            fail(ErrorCode::NoLeftAdjoint, "reindexing along " + C.morphism(k) + " has no left adjoint: " + e.what());
        }
    };
    const AdjunctionWitness Wq = left_of(res.q);
    const AdjunctionWitness Wl = left_of(res.lambda0);
    const FinCat& LQ = L.fibre(Q);
    const int Fy = Wq.left.obj(y);

    // X -> L(f)Y -> L(f)L(q)L_!(q)Y -> L(qf)L_!(q)Y, then transpose along L_!(lambda0).
    auto mate = [&](int k, int h) {
        int t = LA.compose(L.apply_mor(k, Wq.unit.components[y]), h);
        t = LA.compose(L.mu(k, res.q, Fy), t);
        return LQ.compose(Wl.counit.components[Fy], Wl.left.mor(t));
    };
    res.alpha_hat = mate(f, alpha);
    res.beta_hat = mate(g, beta);

    std::vector<int> fm(pp->morphism_count());
    const int Fx = Wl.left.obj(x);
    fm[pp->morphism_index("id_0")] = LQ.identity(Fx);
    fm[pp->morphism_index("id_1")] = LQ.identity(Fy);
    fm[u] = res.alpha_hat;
    fm[v] = res.beta_hat;
    FinFunctor pair(pp, L.fibres[Q], {Fx, Fy}, fm);
    Cone coeq;
    try {
        coeq = find_colimit(pair);
    } catch (const Error& e) {
        fail(ErrorCode::NoFibreCoequalizer, std::string("mates have no coequalizer in the fibre: ") + e.what());
    }
    res.fibre_object = coeq.apex;
    res.total_object = G.object(Q, coeq.apex);

    const FinCat& LB = L.fibre(B);
    const int leg_y = LB.compose(L.apply_mor(res.q, coeq.legs[1]), Wq.unit.components[y]);
    const int leg1 = G.morphism(res.q, leg_y, coeq.apex);
    const int fa = G.morphism(f, alpha, y);
    const FinCat& T = *G.total;
    res.total_cocone.apex = res.total_object;
    res.total_cocone.legs = {T.compose(leg1, fa), leg1};
    return res;
}

const char* extensivity_name(Extensivity e) {
    switch (e) {
        case Extensivity::Extensive: return "Extensive";
        case Extensivity::LeftKan: return "LeftKan";
        case Extensivity::Neither: return "Neither";
    }
    return "Neither";
}

bool groupoid_check(const FinCat& c) {
    for (int f = 0; f < c.morphism_count(); ++f) {
        if (!is_iso(c, f)) return false;
    }
    return true;
}

bool is_equivalence(const FinFunctor& F, std::string* obstruction) {
    const FinCat& S = F.source();
    const FinCat& T = F.target();
    for (int a = 0; a < S.object_count(); ++a) {
        for (int b = 0; b < S.object_count(); ++b) {
            auto src = S.hom(a, b);
            auto tgt = T.hom(F.obj(a), F.obj(b));
            std::vector<char> hit(T.morphism_count(), 0);
            for (int h : src) {
                if (hit[F.mor(h)]++) {
                    if (obstruction) *obstruction = "not faithful on " + S.object(a) + " -> " + S.object(b);
                    return false;
                }
            }
            if (src.size() != tgt.size()) {
                if (obstruction) *obstruction = "not full on " + S.object(a) + " -> " + S.object(b);
                return false;
            }
        }
    }
    for (int t = 0; t < T.object_count(); ++t) {
        bool found = false;
        for (int a = 0; a < S.object_count() && !found; ++a) {
            for (int h : T.hom(F.obj(a), t)) {
                if (is_iso(T, h)) {
                    found = true;
                    break;
                }
            }
        }
        if (!found) {
            if (obstruction) *obstruction = "not essentially surjective at " + T.object(t);
            return false;
        }
    }
    return true;
}

ExtensivityReport check_extensive(const IndexedCat& L, const Shape& shape, const std::vector<FinFunctor>* generators) {
    std::vector<FinFunctor> all;
    if (!generators) {
        all = enumerate_functors(shape.category, L.base);
        generators = &all;
    }
    ExtensivityReport rep;
    for (const auto& J1 : *generators) {
        Cone base;
        try {
            base = find_colimit(J1);
        } catch (const Error&) {
            ++rep.diagrams_skipped;
            continue;
        }
        ++rep.diagrams_checked;
        const Comparison cmp = comparison_functor(L, J1, base.apex, base.legs);
        Extensivity v = Extensivity::Extensive;
        std::string why;
        if (!is_equivalence(cmp.functor, &why)) {
            v = Extensivity::LeftKan;
            try {
                find_left_adjoint(cmp.functor);
            } catch (const Error& e) {
                v = Extensivity::Neither;
                why += std::string("; ") + e.what();
            }
        }
        if (static_cast<int>(v) > static_cast<int>(rep.verdict)) {
            rep.verdict = v;
            rep.witness = J1;
            rep.detail = why;
        }
    }
    if (rep.diagrams_checked == 0) rep.detail = "no generator has a base colimit; verdict is vacuous";
    return rep;
}

}  // namespace fibred
