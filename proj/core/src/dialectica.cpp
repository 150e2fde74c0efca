#include "fibred/dialectica.hpp"

#include <set>

#include "fibred/fixtures.hpp"
#include "fibred/search.hpp"

namespace fibred {

std::string flavor_name(FamFlavor f) {
    switch (f) {
        case FamFlavor::Closed: return "closed";
        case FamFlavor::Biproduct: return "biproduct";
        case FamFlavor::Extensive: return "extensive";
        case FamFlavor::PartialMaps: return "partial-maps";
        case FamFlavor::DialPf: return "dial-pf";
        case FamFlavor::Custom: return "custom";
    }
    return "custom";
}

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > Model::kHomCap / b) return Model::kHomCap;
    return a * b;
}

std::uint64_t sat_pow(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) r = sat_mul(r, b);
    return r;
}

// Advances a mixed-radix counter, digit 0 fastest; false on wrap-around.
bool next_digits(std::vector<std::uint64_t>& d, const std::vector<std::uint64_t>& radix) {
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (++d[i] < radix[i]) return true;
        d[i] = 0;
    }
    return false;
}

bool isomorphic(const Model& m, int a, int b) {
    if (a == b) return true;
    if (m.hom_size(a, b) > 4096 || m.hom_size(b, a) > 4096) return false;
    for (std::uint64_t i = 0; i < m.hom_size(a, b); ++i)
        if (inverse_arrow(m, a, b, m.arrow_at(a, b, i))) return true;
    return false;
}

std::string show(const FamObj& a) {
    std::string s = "[";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s + "]";
}

[[noreturn]] void too_big(const std::string& what, std::uint64_t need, std::uint64_t bound) {
    fail(ErrorCode::SizeExceeded, what + " needs " + (need >= Model::kHomCap ? std::string("more than 2^40") : std::to_string(need)) +
                                      ", bound is " + std::to_string(bound));
}

}  // namespace

// ---------------------------------------------------------------- instances

FamInstance build_fam_instance(std::string name, FamFlavor flavor, TractableInstance t, MonoidalData sums,
                               const TractableCheck& check) {
    if (!sums.cocartesian()) fail(ErrorCode::InvalidInput, "sums must carry coprojections: " + sums.name);
    auto r = validate_tractable(t, check);
    if (!r.report.ok()) {
        const auto& v = r.report.violations()[0];
        fail(ErrorCode::NotTractable, t.data.name + " is not tractable: " + v.code + ": " + v.message);
    }
    FamInstance inst;
    inst.name = std::move(name);
    inst.flavor = flavor;
    inst.tractable = std::move(t);
    inst.sums = std::move(sums);
    return inst;
}

FamInstance closed_fam(const CatPtr& heyting) {
    auto m = tabulated_cartesian(heyting);
    auto cl = tabulated_closure(m);
    const int bottom = find_initial(*heyting).object;
    auto t = cotractable_from_closed(m, cl, bottom);
    MonoidalData sums = t.monoidal;
    const int k = heyting->object_count() - 1;
    return build_fam_instance("closed", FamFlavor::Closed, std::move(t), std::move(sums), {k, k, 1u << 14});
}

FamInstance biproduct_fam(int dim) {
    auto t = cotractable_cocartesian(f2vect_biproduct(dim));
    MonoidalData sums = t.monoidal;
    return build_fam_instance("biproduct", FamFlavor::Biproduct, std::move(t), std::move(sums),
                              {std::min(dim, 2), 1, 1u << 14});
}

FamInstance extensive_fam(int n) {
    auto t = tractable_coproducts_extensive(finset_cocartesian(n), std::min(n, 3));
    MonoidalData sums = t.monoidal;
    return build_fam_instance("extensive", FamFlavor::Extensive, std::move(t), std::move(sums),
                              {std::min(n, 2), 2, 1u << 14});
}

FamInstance partial_maps_fam(int n) {
    auto t = pset_coproducts_tractable(n);
    MonoidalData sums = t.monoidal;
    return build_fam_instance("partial maps", FamFlavor::PartialMaps, std::move(t), std::move(sums),
                              {std::min(n, 2), 2, 1u << 14});
}

FamInstance dial_pf_fam(int n) {
    auto inst = build_fam_instance("dial-pf", FamFlavor::DialPf, tractable_cartesian(finset_cartesian(n)),
                                   finset_cocartesian(n), {std::min(n, 2), 2, 1u << 14});
    inst.constant_families = true;
    return inst;
}

// ---------------------------------------------------------------- Fam(D)

std::uint64_t fam_hom_count(const FamInstance& inst, const FamObj& a, const FamObj& b) {
    const Model& N = inst.N();
    std::uint64_t total = 1;
    for (int x : a) {
        std::uint64_t s = 0;
        for (int y : b) s = std::min(Model::kHomCap, s + N.hom_size(y, x));
        total = sat_mul(total, s);
    }
    return total;
}

void for_each_fam_arrow(const FamInstance& inst, const FamObj& a, const FamObj& b,
                        const std::function<bool(const FamArrow&)>& f) {
    const Model& N = inst.N();
    FamArrow h;
    h.map.assign(a.size(), 0);
    h.comps.assign(a.size(), {});
    bool go = true;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (!go) return;
        if (i == a.size()) {
            go = f(h);
            return;
        }
        for (std::size_t j = 0; j < b.size() && go; ++j) {
            h.map[i] = static_cast<int>(j);
            const std::uint64_t n = N.hom_size(b[j], a[i]);
            for (std::uint64_t q = 0; q < n && go; ++q) {
                h.comps[i] = N.arrow_at(b[j], a[i], q);
                rec(i + 1);
            }
        }
    };
    rec(0);
}

bool valid_fam_arrow(const FamInstance& inst, const FamObj& a, const FamObj& b, const FamArrow& h) {
    if (h.map.size() != a.size() || h.comps.size() != a.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (h.map[i] < 0 || h.map[i] >= static_cast<int>(b.size())) return false;
        if (!inst.N().valid(b[h.map[i]], a[i], h.comps[i])) return false;
    }
    return true;
}

FamArrow fam_identity(const FamInstance& inst, const FamObj& a) {
    FamArrow h;
    for (std::size_t i = 0; i < a.size(); ++i) {
        h.map.push_back(static_cast<int>(i));
        h.comps.push_back(inst.N().identity(a[i]));
    }
    return h;
}

FamArrow fam_compose(const FamInstance& inst, const FamObj& a, const FamObj& b, const FamObj& c, const FamArrow& g,
                     const FamArrow& f) {
    FamArrow h;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int j = f.map[i];
        const int k = g.map[j];
        h.map.push_back(k);
        h.comps.push_back(inst.N().compose(c[k], b[j], a[i], f.comps[i], g.comps[j]));
    }
    return h;
}

FamObj fam_tensor(const FamInstance& inst, const FamObj& a, const FamObj& b) {
    FamObj out;
    for (int x : a)
        for (int y : b) {
            const int t = inst.tractable.monoidal.tensor(x, y);
            if (t < 0) fail(ErrorCode::SizeExceeded, "member tensor beyond the carrier bound");
            out.push_back(t);
        }
    return out;
}

FamArrow fam_tensor_arrow(const FamInstance& inst, const FamObj& a, const FamObj& a2, const FamObj& b,
                          const FamObj& b2, const FamArrow& f, const FamArrow& g) {
    const MonoidalData& M = inst.tractable.monoidal;
    FamArrow h;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            const int fi = f.map[i], gk = g.map[k];
            h.map.push_back(fi * static_cast<int>(b2.size()) + gk);
            h.comps.push_back(M.tensor_arrow(a2[fi], a[i], b2[gk], b[k], f.comps[i], g.comps[k]));
        }
    return h;
}

// ---------------------------------------------------------------- exponential

DialecticaHom dialectica_hom(const FamInstance& inst, const FamObj& a, const FamObj& b) {
    const Model& N = inst.N();
    const TractableData& t = inst.tractable.data;
    const MonoidalData& S = inst.sums;
    const std::size_t nx = a.size(), ny = b.size();
    // per coordinate i: the choices (j, f in N(y_j, T x_i))
    std::vector<std::uint64_t> per(nx, 0);
    for (std::size_t i = 0; i < nx; ++i) {
        const int tx = t.T(a[i]);
        for (std::size_t j = 0; j < ny; ++j) per[i] = std::min(Model::kHomCap, per[i] + N.hom_size(b[j], tx));
    }
    std::uint64_t count = 1;
    for (auto p : per) count = sat_mul(count, p);
    if (count > inst.index_bound) too_big("exponential index set", count, inst.index_bound);

    DialecticaHom out;
    DialecticaAssembly& as = out.assembly;
    as.pi_sigma_count = count;
    // Sigma_phi Pi_i form: phi in Y^X (digit 0 fastest), then f with digit 0 fastest
    std::vector<std::uint64_t> phi_digits(nx, 0), phi_radix(nx, ny);
    const std::uint64_t nphi = sat_pow(ny, nx);
    for (std::uint64_t p = 0; p < nphi; ++p) {
        std::vector<int> phi(nx);
        std::vector<std::uint64_t> radix(nx);
        bool empty = false;
        for (std::size_t i = 0; i < nx; ++i) {
            phi[i] = static_cast<int>(phi_digits[i]);
            radix[i] = N.hom_size(b[phi[i]], t.T(a[i]));
            empty = empty || radix[i] == 0;
        }
        if (!empty) {
            std::vector<std::uint64_t> d(nx, 0);
            do {
                ExpIndex e;
                e.map = phi;
                for (std::size_t i = 0; i < nx; ++i) e.f.push_back(N.arrow_at(b[phi[i]], t.T(a[i]), d[i]));
                as.lookup[{e.map, e.f}] = static_cast<int>(as.index.size());
                as.index.push_back(std::move(e));
            } while (next_digits(d, radix));
        }
        if (nx > 0) next_digits(phi_digits, phi_radix);
    }
    // Pi_i Sigma_j form and its iso onto the index
    {
        std::vector<std::vector<std::pair<int, Arrow>>> choice(nx);
        for (std::size_t i = 0; i < nx; ++i) {
            const int tx = t.T(a[i]);
            for (std::size_t j = 0; j < ny; ++j)
                for (std::uint64_t q = 0; q < N.hom_size(b[j], tx); ++q)
                    choice[i].emplace_back(static_cast<int>(j), N.arrow_at(b[j], tx, q));
        }
        if (count > 0) {
            std::vector<std::uint64_t> d(nx, 0);
            do {
                std::vector<int> phi(nx);
                std::vector<Arrow> f(nx);
                for (std::size_t i = 0; i < nx; ++i) {
                    phi[i] = choice[i][d[i]].first;
                    f[i] = choice[i][d[i]].second;
                }
                as.pi_sigma_to_index.push_back(as.lookup.at({phi, f}));
            } while (next_digits(d, per));
        }
    }
    // fibres: Pi_i dbar(y_phi(i), x_i, f_i), products of D are sums of N
    for (std::size_t e = 0; e < as.index.size(); ++e) {
        const ExpIndex& ix = as.index[e];
        std::vector<int> ds;
        for (std::size_t i = 0; i < nx; ++i) {
            const int d = t.dbar(b[ix.map[i]], a[i], ix.f[i]);
            if (d < 0 || d >= N.object_count()) fail(ErrorCode::SizeExceeded, "complement beyond the carrier bound");
            ds.push_back(d);
            as.zeta.push_back({static_cast<int>(e), static_cast<int>(i), ix.map[i], ix.f[i], d});
        }
        int o = S.unit;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            o = i == 0 ? ds[0] : S.tensor(o, ds[i]);
            if (o < 0 || o >= N.object_count()) fail(ErrorCode::SizeExceeded, "product of complements beyond the carrier bound");
        }
        as.dbar.push_back(std::move(ds));
        out.object.push_back(o);
    }
    return out;
}

FamArrow curry_fam(const FamInstance& inst, const FamObj& a, const FamObj& w, const FamObj& b,
                   const DialecticaHom& hom, const FamArrow& h) {
    const Model& N = inst.N();
    const TractableData& t = inst.tractable.data;
    const MonoidalData& S = inst.sums;
    const std::size_t nx = a.size(), nw = w.size();
    FamArrow out;
    for (std::size_t k = 0; k < nw; ++k) {
        std::vector<int> phi(nx);
        std::vector<Arrow> f(nx), r(nx);
        for (std::size_t i = 0; i < nx; ++i) {
            const std::size_t p = i * nw + k;
            phi[i] = h.map[p];
            auto [fi, ri] = t.phi(b[phi[i]], a[i], w[k], h.comps[p]);
            f[i] = std::move(fi);
            r[i] = std::move(ri);
        }
        auto it = hom.assembly.lookup.find({phi, f});
        if (it == hom.assembly.lookup.end()) {
            out.map.push_back(-1);
            out.comps.push_back({});
            continue;
        }
        const int e = it->second;
        const auto& ds = hom.assembly.dbar[e];
        Arrow acc;
        if (nx == 0) {
            auto u = unique_arrow(N, S.unit, w[k]);
            acc = u ? *u : Arrow{};
        } else {
            acc = r[0];
            int o = ds[0];
            for (std::size_t i = 1; i < nx; ++i) {
                acc = S.copair(o, ds[i], w[k], acc, r[i]);
                o = S.tensor(o, ds[i]);
            }
        }
        out.map.push_back(e);
        out.comps.push_back(std::move(acc));
    }
    return out;
}

// ---------------------------------------------------------------- closed forms

ClosedForm fam_exponential(const FamInstance& inst, const FamObj& a, const FamObj& b) {
    const Model& N = inst.N();
    const std::size_t nx = a.size(), ny = b.size();
    const std::uint64_t nphi = sat_pow(ny, nx);
    if (nphi > inst.index_bound) too_big("exponential index set", nphi, inst.index_bound);
    ClosedForm out;
    std::vector<std::uint64_t> pd(nx, 0), pr(nx, ny);
    // enumerates all value tables of length len with values in 0..hi (hi = -1 allows undefined)
    auto tables = [](int len, int lo, int hi) {
        std::vector<Arrow> all;
        Arrow v(static_cast<std::size_t>(len), lo);
        while (true) {
            all.push_back(v);
            std::size_t i = 0;
            for (; i < v.size(); ++i) {
                if (++v[i] <= hi) break;
                v[i] = lo;
            }
            if (i == v.size()) break;
        }
        return all;
    };
    for (std::uint64_t p = 0; p < nphi; ++p) {
        std::vector<int> phi(nx);
        for (std::size_t i = 0; i < nx; ++i) phi[i] = static_cast<int>(pd[i]);
        if (nx > 0) next_digits(pd, pr);
        switch (inst.flavor) {
            case FamFlavor::Closed: {
                // meet of the implications x_i => y_phi(i), found by search in the lattice
                const FinCat& L = *tabulated_source(*opposite_model(inst.tractable.monoidal.carrier));
                int m = find_terminal(L).object;
                for (std::size_t i = 0; i < nx; ++i) {
                    int imp = -1;
                    for (int z = 0; z < L.object_count(); ++z) {
                        auto zx = lattice_meet(L, z, a[i]);
                        if (zx && !L.hom(*zx, b[phi[i]]).empty() && (imp < 0 || !L.hom(imp, z).empty())) imp = z;
                    }
                    m = *lattice_meet(L, m, imp);
                }
                out.maps.push_back(phi);
                out.data.push_back({});
                out.object.push_back(m);
                break;
            }
            case FamFlavor::Biproduct:
            case FamFlavor::Extensive:
            case FamFlavor::PartialMaps:
            case FamFlavor::DialPf: {
                // per coordinate the admissible tables and the size each contributes
                std::vector<std::vector<Arrow>> opts(nx);
                std::vector<std::vector<int>> sizes(nx);
                for (std::size_t i = 0; i < nx; ++i) {
                    const int x = a[i], y = b[phi[i]];
                    if (inst.flavor == FamFlavor::Biproduct) {
                        // linear x -> y in D is y -> x in N: x columns of y bits; the fibre member is y
                        for (std::uint64_t q = 0; q < N.hom_size(y, x); ++q) opts[i].push_back(N.arrow_at(y, x, q));
                        sizes[i].assign(opts[i].size(), y);
                    } else if (inst.flavor == FamFlavor::Extensive) {
                        // y -> x + 1; the complement is the preimage of the new point
                        for (auto& v : tables(y, 0, x)) {
                            sizes[i].push_back(static_cast<int>(std::count(v.begin(), v.end(), x)));
                            opts[i].push_back(v);
                        }
                    } else if (inst.flavor == FamFlavor::PartialMaps) {
                        for (auto& v : tables(y, -1, x - 1)) {
                            sizes[i].push_back(static_cast<int>(std::count(v.begin(), v.end(), -1)));
                            opts[i].push_back(v);
                        }
                    } else {
                        for (auto& v : tables(y, 0, x - 1)) {
                            if (x == 0 && y > 0) continue;
                            sizes[i].push_back(y);
                            opts[i].push_back(v);
                        }
                    }
                }
                std::vector<std::uint64_t> d(nx, 0), radix(nx);
                bool empty = false;
                for (std::size_t i = 0; i < nx; ++i) {
                    radix[i] = opts[i].size();
                    empty = empty || radix[i] == 0;
                }
                if (empty) break;
                do {
                    std::vector<Arrow> f;
                    int total = 0;
                    for (std::size_t i = 0; i < nx; ++i) {
                        f.push_back(opts[i][d[i]]);
                        total += sizes[i][d[i]];
                    }
                    out.maps.push_back(phi);
                    out.data.push_back(std::move(f));
                    out.object.push_back(total);
                    if (out.maps.size() > inst.index_bound) too_big("exponential index set", out.maps.size(), inst.index_bound);
                } while (next_digits(d, radix));
                break;
            }
            case FamFlavor::Custom:
                fail(ErrorCode::Unsupported, "no closed form for a custom instance");
        }
    }
    return out;
}

ValidationReport compare_exponentials(const FamInstance& inst, const FamObj& a, const FamObj& b) {
    ValidationReport rep;
    const DialecticaHom h = dialectica_hom(inst, a, b);
    const ClosedForm c = fam_exponential(inst, a, b);
    if (c.maps.size() != h.assembly.index.size()) {
        rep.add("ExponentialCount", std::to_string(c.maps.size()) + " closed-form members against " +
                                        std::to_string(h.assembly.index.size()));
        return rep;
    }
    std::vector<char> hit(h.assembly.index.size(), 0);
    for (std::size_t m = 0; m < c.maps.size(); ++m) {
        int e = -1;
        if (c.data[m].empty() && !a.empty()) {
            // the closed flavor keeps no data: the unique f per phi
            for (std::size_t q = 0; q < h.assembly.index.size(); ++q)
                if (h.assembly.index[q].map == c.maps[m]) e = static_cast<int>(q);
        } else {
            auto it = h.assembly.lookup.find({c.maps[m], c.data[m]});
            if (it != h.assembly.lookup.end()) e = it->second;
        }
        if (e < 0 || hit[e]) {
            rep.add("ExponentialMember", "closed-form member has no partner", {std::to_string(m)});
            continue;
        }
        hit[e] = 1;
        if (c.object[m] < 0 || c.object[m] >= inst.N().object_count() || !isomorphic(inst.N(), c.object[m], h.object[e]))
            rep.add("ExponentialFibre", "fibres are not isomorphic",
                    {std::to_string(m), std::to_string(c.object[m]), std::to_string(h.object[e])});
    }
    return rep;
}

// ---------------------------------------------------------------- verification

ClosureReport verify_closure(const FamInstance& inst, const FamObj& a, const FamObj& w, const FamObj& b,
                             const std::vector<FamObj>& sources, const ClosureCheck& check) {
    ClosureReport out;
    const std::vector<std::string> at = {show(a), show(w), show(b)};
    DialecticaHom hom;
    FamObj aw;
    try {
        hom = dialectica_hom(inst, a, b);
        aw = fam_tensor(inst, a, w);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::SizeExceeded) throw;
        out.report.add("OutOfBound", e.what(), at);
        return out;
    }
    const FamObj& E = hom.object;
    out.lhs = fam_hom_count(inst, aw, b);
    out.rhs = fam_hom_count(inst, w, E);
    if (out.lhs > check.max_enumeration) {
        out.report.add("OutOfBound", std::to_string(out.lhs) + " arrows to enumerate", at);
        return out;
    }
    std::set<FamArrow> image;
    std::vector<std::pair<FamArrow, FamArrow>> kept;
    bool invalid = false;
    for_each_fam_arrow(inst, aw, b, [&](const FamArrow& h) {
        FamArrow g = curry_fam(inst, a, w, b, hom, h);
        if (!valid_fam_arrow(inst, w, E, g)) {
            if (!invalid) out.report.add("CurryInvalid", "curried arrow is not an arrow into the exponential", at);
            invalid = true;
            return true;
        }
        if (!image.insert(g).second) out.report.add("CurryNotInjective", "two arrows curry to the same one", at);
        if (kept.size() < check.max_naturality) kept.emplace_back(h, std::move(g));
        return true;
    });
    if (out.lhs != out.rhs || image.size() != out.rhs)
        out.report.add("CurryCount", std::to_string(out.lhs) + " arrows A(x)W -> B, " + std::to_string(out.rhs) +
                                         " arrows W -> A-oB, " + std::to_string(image.size()) + " hit", at);
    if (!out.report.ok()) return out;
    const FamArrow ida = fam_identity(inst, a);
    for (const FamObj& w0 : sources) {
        FamObj aw0;
        try {
            aw0 = fam_tensor(inst, a, w0);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SizeExceeded) throw;
            continue;
        }
        std::uint64_t budget = check.max_naturality;
        for_each_fam_arrow(inst, w0, w, [&](const FamArrow& s) {
            const FamArrow as = fam_tensor_arrow(inst, a, a, w0, w, ida, s);
            for (const auto& [h, g] : kept) {
                if (budget == 0) return false;
                --budget;
                ++out.naturality_checked;
                const FamArrow l = curry_fam(inst, a, w0, b, hom, fam_compose(inst, aw0, aw, b, h, as));
                const FamArrow r = fam_compose(inst, w0, w, E, g, s);
                if (!(l == r)) {
                    out.report.add("CurryNotNatural", "currying is not natural in W", at);
                    return false;
                }
            }
            return true;
        });
        if (budget == 0) out.report.note("naturality along W' capped at " + std::to_string(check.max_naturality) + " pairs");
    }
    return out;
}

Fibredness fibredness_check(const FamInstance& inst, const FamObj& a, const FamObj& b) {
    Fibredness out;
    const DialecticaHom h = dialectica_hom(inst, a, b);
    out.first = h.assembly.index.size();
    out.exponent = sat_pow(b.size(), a.size());
    std::set<std::vector<int>> maps;
    for (const auto& e : h.assembly.index) maps.insert(e.map);
    out.fibred = out.first == out.exponent && maps.size() == out.first;
    if (!out.fibred)
        out.report.note(std::to_string(out.first) + " members over " + std::to_string(out.exponent) + " maps X -> Y");
    return out;
}

DialPf build_dial_pf(int n) {
    DialPf d;
    d.n = n;
    d.indexed = dial_pf_indexed(n, n);
    d.groth = groth_monoidal(d.indexed);
    d.fam = dial_pf_fam(n * n);
    return d;
}

}  // namespace fibred
