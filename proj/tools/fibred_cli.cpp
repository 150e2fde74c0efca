// fibred: run the library's pipelines on document files.
// Exit status: 0 success, 1 domain failure, 2 input error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <fibred/catio.hpp>
#include <fibred/dialectica.hpp>
#include <fibred/fibcolim.hpp>
#include <fibred/samples.hpp>

using json = nlohmann::json;
using namespace fibred;

namespace {

struct Options {
    std::string out;
    int bound = -1;  // per command default
    bool oracle = false;
    bool no_oracle = false;
    std::uint64_t seed = 0;

    std::vector<std::string> files;
    std::string indexed, diagram, monoidal, tractable, instance, shape, lhs, rhs, emit;
    bool verify = false;
    int max_index = 2;
};

// Oracles run by default when the total category is at most this big.
constexpr int kOracleObjects = 64;

class Run {
public:
    Run(std::string command, const Options& o) : o_(o) {
        report_["command"] = std::move(command);
        report_["inputs"] = json::object();
        report_["witnesses"] = json::object();
        report_["work"] = json::object();
    }

    json& witnesses() { return report_["witnesses"]; }
    json& work() { return report_["work"]; }
    void input(const std::string& key, const json& v) { report_["inputs"][key] = v; }
    void verdict(const std::string& v) { report_["verdict"] = v; }
    std::ostream& say() { return text_; }

    int finish(int code) {
        if (!report_.contains("verdict")) report_["verdict"] = code == 0 ? "ok" : "failed";
        report_["exit"] = code;
        std::cout << text_.str();
        if (!o_.out.empty()) {
            std::ofstream f(o_.out, std::ios::binary);
            if (!f) {
                std::cerr << "cannot write " << o_.out << "\n";
                return 2;
            }
            f << report_.dump(2) << "\n";
        }
        return code;
    }

    int error(const Error& e, int code, const std::string& where = {}) {
        report_["error"] = {{"code", e.code_name()}, {"message", e.what()}};
        if (!where.empty()) report_["error"]["file"] = where;
        report_["verdict"] = code == 2 ? "input_error" : "failed";
        std::cerr << (where.empty() ? "" : where + ":") << e.code_name() << ": " << e.what() << "\n";
        return finish(code);
    }

private:
    const Options& o_;
    json report_;
    std::ostringstream text_;
};

bool input_code(ErrorCode c) {
    return c == ErrorCode::InvalidInput || c == ErrorCode::SyntaxError || c == ErrorCode::UnknownField ||
           c == ErrorCode::DanglingReference;
}

// Errors inside a named file keep the file name.
class FileError : public Error {
public:
    FileError(const Error& e, std::string file) : Error(e.code(), e.what()), file(std::move(file)) {}
    std::string file;
};

Document load(const std::string& path) {
    try {
        return read_document(path);
    } catch (const Error& e) {
        throw FileError(e, path);
    }
}

template <class T>
const T& body_as(const Document& d, DocKind kind, const std::string& path) {
    if (d.kind != kind)
        throw FileError(Error(ErrorCode::InvalidInput, std::string("expected a ") + doc_kind_name(kind) + " document, got " +
                                                           doc_kind_name(d.kind)),
                        path);
    return std::get<T>(d.body);
}

json violations_json(const ValidationReport& r, std::size_t cap = 20) {
    json a = json::array();
    for (std::size_t i = 0; i < r.violations().size() && i < cap; ++i) {
        const auto& v = r.violations()[i];
        a.push_back({{"code", v.code}, {"message", v.message}, {"cited", v.cited}});
    }
    return a;
}

json report_json(const ValidationReport& r) {
    return {{"ok", r.ok()}, {"violations", violations_json(r)}, {"total", r.total()}, {"notes", r.notes()}};
}

void say_report(std::ostream& os, const ValidationReport& r, const std::string& indent = "  ") {
    for (std::size_t i = 0; i < r.violations().size() && i < 10; ++i) {
        const auto& v = r.violations()[i];
        os << indent << v.code << ": " << v.message;
        if (!v.cited.empty()) {
            os << " {";
            for (std::size_t k = 0; k < v.cited.size(); ++k) os << (k ? ", " : "") << v.cited[k];
            os << "}";
        }
        os << "\n";
    }
    if (r.total() > 10) os << indent << "... " << r.total() - 10 << " more\n";
}

bool oracle_on(const Options& o, const GrothCat& G) {
    if (o.no_oracle) return false;
    return o.oracle || G.total->object_count() <= kOracleObjects;
}

Shape parse_shape(const std::string& s) {
    if (s == "parallel_pair") return shape_parallel_pair();
    if (s == "span") return shape_span();
    if (s == "cospan") return shape_cospan();
    if (s == "walking_arrow") return shape_walking_arrow();
    if (s.rfind("discrete:", 0) == 0) return shape_discrete(std::stoi(s.substr(9)));
    fail(ErrorCode::InvalidInput, "unknown shape '" + s + "'");
}

struct Loaded {
    IndexedCat L;
    GrothCat G;
};

Loaded load_indexed(Run& run, const Options& o) {
    if (o.indexed.empty()) fail(ErrorCode::InvalidInput, "--indexed is required");
    run.input("indexed", o.indexed);
    Document d = load(o.indexed);
    IndexedCat L = build_indexed(body_as<IndexedDoc>(d, DocKind::Indexed, o.indexed));
    ValidationReport r = validate_indexed(L);
    if (!r.ok()) {
        run.witnesses()["indexed"] = report_json(r);
        throw Error(ErrorCode::InvalidInput, "indexed category fails validation: " + r.summary());
    }
    GrothCat G = grothendieck(L);
    run.work()["total_objects"] = G.total->object_count();
    run.work()["total_morphisms"] = G.total->morphism_count();
    return {std::move(L), std::move(G)};
}

DiagramPair load_diagram(Run& run, const Options& o, const Loaded& x) {
    if (!o.diagram.empty()) {
        run.input("diagram", o.diagram);
        Document d = load(o.diagram);
        const auto& fd = body_as<FunctorDoc>(d, DocKind::Functor, o.diagram);
        if (fd.target) throw FileError(Error(ErrorCode::InvalidInput, "a diagram's target is 'total'"), o.diagram);
        FinFunctor J = build_functor(fd, &x.G);
        ValidationReport fr = validate_functor(J);
        if (!fr.ok()) throw FileError(Error(ErrorCode::InvalidInput, "diagram is not a functor: " + fr.summary()), o.diagram);
        return diagram_from_total(x.G, J);
    }
    if (o.shape.empty()) fail(ErrorCode::InvalidInput, "give --diagram, or --shape with --seed");
    run.input("shape", o.shape);
    run.input("seed", o.seed);
    std::mt19937_64 rng(o.seed);
    DiagramPair D;
    if (!random_diagram(x.L, parse_shape(o.shape), rng, D)) fail(ErrorCode::NotFound, "no diagram of this shape");
    return D;
}

json cone_json(const FinCat& c, const Cone& k) {
    json legs = json::array();
    for (int l : k.legs) legs.push_back(c.morphism(l));
    return {{"apex", c.object(k.apex)}, {"legs", legs}};
}

json diagram_json(const GrothCat& G, const DiagramPair& D) {
    FinFunctor J = total_diagram(G, D);
    json objs = json::array(), arrows = json::array();
    for (int e = 0; e < J.source().object_count(); ++e) objs.push_back(J.target().object(J.obj(e)));
    for (int u = 0; u < J.source().morphism_count(); ++u)
        if (!J.source().is_identity(u)) arrows.push_back(J.target().morphism(J.mor(u)));
    return {{"shape", D.shape.name()}, {"objects", objs}, {"arrows", arrows}};
}

// ---------------------------------------------------------------- commands

int cmd_validate(Run& run, const Options& o) {
    run.input("files", o.files);
    std::optional<Loaded> total;
    bool all = true;
    json results = json::array();
    for (const auto& path : o.files) {
        Document d = load(path);
        ValidationReport r;
        try {
            if (d.kind == DocKind::Functor && !std::get<FunctorDoc>(d.body).target) {
                if (!total) total = load_indexed(run, o);
                FinFunctor J = build_functor(std::get<FunctorDoc>(d.body), &total->G);
                r = validate_functor(J);
                if (r.ok()) r.merge(validate_diagram(total->L, diagram_from_total(total->G, J)), "diagram");
            } else {
                r = validate_document(d);
            }
        } catch (const Error& e) {
            if (e.code() == ErrorCode::NotTractable) {
                r.add("NotTractable", e.what());
            } else {
                throw FileError(e, path);
            }
        }
        all = all && r.ok();
        json item = report_json(r);
        item["file"] = path;
        item["kind"] = doc_kind_name(d.kind);
        results.push_back(item);
        run.say() << path << ": " << doc_kind_name(d.kind) << (r.ok() ? " valid" : " INVALID") << "\n";
        say_report(run.say(), r);
    }
    run.witnesses()["documents"] = results;
    run.work()["documents"] = o.files.size();
    run.verdict(all ? "valid" : "invalid");
    return all ? 0 : 1;
}

int cmd_groth(Run& run, const Options& o) {
    Loaded x = load_indexed(run, o);
    const FinCat& T = *x.G.total;
    FibrationResult fib = verify_fibration(x.G.projection);
    RoundTrip rt = round_trip(x.L);
    json w;
    w["objects"] = T.object_count() <= 64 ? json(T.objects()) : json(T.object_count());
    w["fibration"] = fib.ok;
    w["split"] = fib.ok && split_check(fib.cleavage);
    w["round_trip"] = report_json(rt.report);
    w["round_trip_split"] = rt.split;
    run.witnesses() = w;
    run.say() << "total category: " << T.object_count() << " objects, " << T.morphism_count() << " morphisms\n"
              << "projection is a fibration: " << (fib.ok ? "yes" : "no") << (fib.ok ? "" : " (" + fib.failure + ")") << "\n"
              << "round trip: " << (rt.report.ok() ? "fibrewise isomorphic" : "FAILED") << (rt.split ? ", split" : "") << "\n";
    if (!o.emit.empty()) {
        std::ofstream f(o.emit, std::ios::binary);
        if (!f) fail(ErrorCode::InvalidInput, "cannot write " + o.emit);
        f << print_document(category_document(T));
        run.input("emit", o.emit);
    }
    const bool ok = fib.ok && rt.report.ok();
    run.verdict(ok ? "ok" : "failed");
    return ok ? 0 : 1;
}

int cmd_sections(Run& run, const Options& o) {
    Loaded x = load_indexed(run, o);
    SectionsCategory S = sections_category(x.L);
    const FinCat& C = *S.category;
    json objs = json::array();
    for (std::size_t i = 0; i < S.objects.size() && i < 32; ++i) {
        json xs = json::array();
        for (int a = 0; a < x.L.base->object_count(); ++a) xs.push_back(x.L.fibre(a).object(S.objects[i].x[a]));
        objs.push_back(xs);
    }
    run.witnesses()["objects"] = objs;
    run.witnesses()["object_count"] = C.object_count();
    run.witnesses()["morphism_count"] = C.morphism_count();
    run.work()["sections"] = C.object_count();
    run.say() << "sections: " << C.object_count() << " objects, " << C.morphism_count() << " morphisms\n";
    run.verdict("ok");
    return 0;
}

int cmd_limit(Run& run, const Options& o, bool colimit) {
    Loaded x = load_indexed(run, o);
    DiagramPair D = load_diagram(run, o, x);
    ValidationReport dr = validate_diagram(x.L, D);
    if (!dr.ok()) fail(ErrorCode::InvalidInput, "diagram fails validation: " + dr.summary());
    const FinCat& T = *x.G.total;
    run.witnesses()["diagram"] = diagram_json(x.G, D);
    const bool oracle = oracle_on(o, x.G);
    run.input("oracle", oracle);
    const char* what = colimit ? "colimit" : "limit";
    if (!oracle) {
        try {
            FibredResult r = colimit ? fibred_colimit(x.G, D) : fibred_limit(x.G, D);
            run.witnesses()["formula"] = cone_json(T, r.total_cone);
            if (!r.route.empty()) run.witnesses()["route"] = r.route;
            run.say() << what << " (formula): " << T.object(r.total_object) << "\n";
            run.verdict("found");
            return 0;
        } catch (const Error& e) {
            if (input_code(e.code())) throw;
            run.witnesses()["formula_error"] = {{"code", e.code_name()}, {"message", e.what()}};
            run.say() << "no " << what << ": " << e.code_name() << ": " << e.what() << "\n";
            run.verdict("none");
            return 1;
        }
    }
    OracleComparison c = colimit ? compare_colimit(x.G, D) : compare_limit(x.G, D);
    json w;
    if (c.formula) {
        w["formula"] = cone_json(T, c.formula->total_cone);
        if (!c.formula->route.empty()) w["route"] = c.formula->route;
    } else {
        w["formula_error"] = {{"code", c.formula_error}, {"message", c.formula_message}};
    }
    if (c.oracle)
        w["oracle"] = cone_json(T, *c.oracle);
    else
        w["oracle_error"] = c.oracle_message;
    if (c.iso >= 0) w["iso"] = T.morphism(c.iso);
    w["consistent"] = c.consistent;
    w["diagram"] = run.witnesses()["diagram"];
    run.witnesses() = w;
    if (c.formula) run.say() << what << " (formula): " << T.object(c.formula->total_object) << "\n";
    else run.say() << "formula: " << c.formula_error << ": " << c.formula_message << "\n";
    if (c.oracle) run.say() << what << " (oracle): " << T.object(c.oracle->apex) << "\n";
    else run.say() << "oracle: none (" << c.oracle_message << ")\n";
    if (c.iso >= 0) run.say() << "iso: " << T.morphism(c.iso) << "\n";
    run.say() << (c.consistent ? "agree" : "DISAGREE") << "\n";
    if (!c.consistent) {
        run.verdict("inconsistent");
        return 1;
    }
    run.verdict(c.formula_ok ? "found" : "none");
    return c.formula_ok ? 0 : 1;
}

int cmd_coequalizer(Run& run, const Options& o) {
    Loaded x = load_indexed(run, o);
    DiagramPair D = load_diagram(run, o, x);
    if (D.shape.kind != ShapeKind::ParallelPair) fail(ErrorCode::InvalidInput, "coequalizer needs a parallel pair");
    ValidationReport dr = validate_diagram(x.L, D);
    if (!dr.ok()) fail(ErrorCode::InvalidInput, "diagram fails validation: " + dr.summary());
    const FinCat& S = *D.shape.category;
    std::vector<int> arrows;
    for (int u = 0; u < S.morphism_count(); ++u)
        if (!S.is_identity(u)) arrows.push_back(u);
    const int src = S.dom(arrows[0]), tgt = S.cod(arrows[0]);
    const int f = D.J1.mor(arrows[0]), g = D.J1.mor(arrows[1]);
    const int alpha = D.J2.xi[arrows[0]], beta = D.J2.xi[arrows[1]];
    const FinCat& T = *x.G.total;
    run.witnesses()["diagram"] = diagram_json(x.G, D);
    MateResult m;
    try {
        m = coequalizer_via_mates(x.G, f, alpha, g, beta, D.J2.x[src], D.J2.x[tgt]);
    } catch (const Error& e) {
        if (input_code(e.code())) throw;
        run.witnesses()["mates_error"] = {{"code", e.code_name()}, {"message", e.what()}};
        run.say() << "no coequalizer by mates: " << e.code_name() << ": " << e.what() << "\n";
        run.verdict("none");
        return 1;
    }
    run.witnesses()["mates"] = cone_json(T, m.total_cocone);
    run.say() << "coequalizer (mates): " << T.object(m.total_object) << "\n";
    FibredResult r = fibred_colimit(x.G, D);
    run.witnesses()["colimit"] = cone_json(T, r.total_cone);
    FinFunctor J = total_diagram(x.G, D);
    std::vector<int> h = cofactorizations(J, r.total_cone, m.total_cocone);
    const bool iso = h.size() == 1 && is_iso(T, h[0]);
    if (h.size() == 1) run.witnesses()["iso"] = T.morphism(h[0]);
    run.witnesses()["isomorphic"] = iso;
    run.say() << "colimit (formula): " << T.object(r.total_object) << "\n"
              << (iso ? "iso: " + T.morphism(h[0]) : std::string("NOT isomorphic")) << "\n";
    run.verdict(iso ? "found" : "inconsistent");
    return iso ? 0 : 1;
}

int object_by_name(const Model& m, const std::string& s) {
    for (int a = 0; a < m.object_count(); ++a)
        if (m.object_name(a) == s) return a;
    fail(ErrorCode::InvalidInput, "no object '" + s + "' in " + m.name());
}

int cmd_tensor(Run& run, const Options& o) {
    if (o.lhs.empty() || o.rhs.empty()) fail(ErrorCode::InvalidInput, "--lhs and --rhs are required");
    run.input("lhs", o.lhs);
    run.input("rhs", o.rhs);
    if (!o.monoidal.empty()) {
        run.input("monoidal", o.monoidal);
        Document d = load(o.monoidal);
        MonoidalData m = build_monoidal(body_as<MonoidalDoc>(d, DocKind::Monoidal, o.monoidal));
        const int a = object_by_name(*m.carrier, o.lhs), b = object_by_name(*m.carrier, o.rhs);
        const int t = m.tensor(a, b);
        if (t < 0) fail(ErrorCode::SizeExceeded, "tensor beyond the carrier");
        run.witnesses()["tensor"] = m.carrier->object_name(t);
        run.say() << o.lhs << " (x) " << o.rhs << " = " << m.carrier->object_name(t) << "\n";
    } else {
        if (o.instance.empty()) fail(ErrorCode::InvalidInput, "--monoidal or --instance is required");
        run.input("instance", o.instance);
        Document d = load(o.instance);
        FamInstance f = build_instance(body_as<InstanceDoc>(d, DocKind::Instance, o.instance));
        FamObj t = fam_tensor(f, parse_fam_object(o.lhs), parse_fam_object(o.rhs));
        run.witnesses()["tensor"] = show_fam_object(t);
        run.say() << o.lhs << " (x) " << o.rhs << " = " << show_fam_object(t) << "\n";
    }
    run.verdict("ok");
    return 0;
}

FamInstance load_instance(Run& run, const Options& o, InstanceDoc* doc = nullptr) {
    if (o.instance.empty()) fail(ErrorCode::InvalidInput, "--instance is required");
    run.input("instance", o.instance);
    Document d = load(o.instance);
    const auto& b = body_as<InstanceDoc>(d, DocKind::Instance, o.instance);
    if (doc) *doc = b;
    try {
        return build_instance(b);
    } catch (const Error& e) {
        throw FileError(e, o.instance);
    }
}

json closure_json(const FamObj& a, const FamObj& w, const FamObj& b, const ClosureReport& r) {
    return {{"a", show_fam_object(a)}, {"w", show_fam_object(w)}, {"b", show_fam_object(b)}, {"lhs", r.lhs},
            {"rhs", r.rhs}, {"naturality", r.naturality_checked}, {"report", report_json(r.report)}};
}

int cmd_hom(Run& run, const Options& o) {
    if (o.lhs.empty() || o.rhs.empty()) fail(ErrorCode::InvalidInput, "--lhs and --rhs are required");
    FamInstance f = load_instance(run, o);
    run.input("lhs", o.lhs);
    run.input("rhs", o.rhs);
    run.input("verify", o.verify);
    const FamObj a = parse_fam_object(o.lhs), b = parse_fam_object(o.rhs);
    DialecticaHom h = dialectica_hom(f, a, b);
    json w;
    w["object"] = show_fam_object(h.object);
    w["members"] = h.object.size();
    w["pi_sigma_count"] = h.assembly.pi_sigma_count;
    w["zeta_entries"] = h.assembly.zeta.size();
    run.work()["members"] = h.object.size();
    run.say() << o.lhs << " -o " << o.rhs << ": " << h.object.size() << " members";
    if (h.object.size() <= 16) run.say() << " " << show_fam_object(h.object);
    run.say() << "\n";
    bool ok = true;
    if (o.verify) {
        ValidationReport cmp = compare_exponentials(f, a, b);
        w["closed_form"] = report_json(cmp);
        Fibredness fb = fibredness_check(f, a, b);
        w["fibred"] = {{"fibred", fb.fibred}, {"first", fb.first}, {"exponent", fb.exponent}};
        json closures = json::array();
        std::uint64_t naturality = 0;
        for (const FamObj& wobj : std::vector<FamObj>{{0}, {1}, {1, 1}}) {
            ClosureReport r = verify_closure(f, a, wobj, b, {FamObj{1}}, {1u << 20, 256});
            if (r.report.has("OutOfBound")) continue;
            naturality += r.naturality_checked;
            ok = ok && r.report.ok();
            closures.push_back(closure_json(a, wobj, b, r));
        }
        w["closure"] = closures;
        run.work()["naturality_checks"] = naturality;
        ok = ok && cmp.ok();
        run.say() << "closed form: " << (cmp.ok() ? "matches" : "DIFFERS") << "\n"
                  << "first component vs |Y|^|X|: " << fb.first << " vs " << fb.exponent
                  << (fb.fibred ? " (fibred)" : " (not fibred)") << "\n"
                  << "currying: " << closures.size() << " checks " << (ok ? "pass" : "FAIL") << "\n";
        say_report(run.say(), cmp);
    }
    run.witnesses() = w;
    run.verdict(ok ? "ok" : "failed");
    return ok ? 0 : 1;
}

int cmd_check_tractable(Run& run, const Options& o) {
    if (o.tractable.empty()) fail(ErrorCode::InvalidInput, "--tractable is required");
    run.input("tractable", o.tractable);
    Document d = load(o.tractable);
    const auto& td = body_as<TractableDoc>(d, DocKind::Tractable, o.tractable);
    TractableInstance t = build_tractable(td);
    // Tabulated carriers are checked on every object.
    TractableCheck check;
    check.max_object = td.carrier ? t.monoidal.carrier->object_count() - 1 : (o.bound < 0 ? 3 : o.bound);
    run.input("max_object", check.max_object);
    TractableReport r = validate_tractable(t, check);
    json w;
    w["triples"] = r.counts.size();
    w["skipped"] = r.skipped;
    json counts = json::array();
    for (const auto& [a, b, c, lhs, rhs] : r.counts)
        if (counts.size() < 64) counts.push_back({a, b, c, lhs, rhs});
    w["counts"] = counts;
    run.work()["triples"] = r.counts.size();
    if (td.structure == "poset") {
        PosetVerdict v = poset_tractability(build_category(*td.carrier));
        if (!v.tractable) r.report.add("NotTractable", v.witness);
        w["poset"] = {{"tractable", v.tractable}, {"witness", v.witness}};
        run.say() << "lattice: " << (v.tractable ? "tractable" : "not tractable");
        if (!v.witness.empty()) run.say() << " (" << v.witness << ")";
        run.say() << "\n";
    }
    w["report"] = report_json(r.report);
    if (r.report.ok()) {
        try {
            ForcesT ft = tractability_forces_T(t);
            w["forces_T"] = report_json(ft.report);
            run.say() << "T = (-)(x)1: " << (ft.report.ok() ? "constructed" : "FAILED") << "\n";
        } catch (const Error& e) {
            if (input_code(e.code())) throw;
            w["forces_T"] = {{"skipped", e.code_name()}};
        }
    }
    run.say() << "tractable data on " << t.monoidal.name << ": " << (r.report.ok() ? "valid" : "INVALID") << " ("
              << r.counts.size() << " triples)\n";
    say_report(run.say(), r.report);
    run.witnesses() = w;
    run.verdict(r.report.ok() ? "tractable" : "not_tractable");
    return r.report.ok() ? 0 : 1;
}

int cmd_check_extensive(Run& run, const Options& o) {
    Loaded x = load_indexed(run, o);
    if (o.shape.empty()) fail(ErrorCode::InvalidInput, "--shape is required");
    run.input("shape", o.shape);
    Shape shape = parse_shape(o.shape);
    ExtensivityReport r = check_extensive(x.L, shape);
    bool groupoids = true;
    for (int a = 0; a < x.L.base->object_count(); ++a) groupoids = groupoids && groupoid_check(x.L.fibre(a));
    json w;
    w["verdict"] = extensivity_name(r.verdict);
    w["checked"] = r.diagrams_checked;
    w["skipped"] = r.diagrams_skipped;
    w["detail"] = r.detail;
    w["fibres_are_groupoids"] = groupoids;
    if (r.witness) {
        json objs = json::array();
        for (int e = 0; e < r.witness->source().object_count(); ++e) objs.push_back(x.L.base->object(r.witness->obj(e)));
        w["witness"] = objs;
    }
    run.witnesses() = w;
    run.work()["diagrams"] = r.diagrams_checked;
    run.say() << shape.name() << ": " << extensivity_name(r.verdict) << " (" << r.diagrams_checked << " diagrams)\n";
    if (!r.detail.empty()) run.say() << "  " << r.detail << "\n";
    run.verdict(extensivity_name(r.verdict));
    return r.verdict == Extensivity::Extensive ? 0 : 1;
}

int cmd_verify_closure(Run& run, const Options& o) {
    InstanceDoc doc;
    FamInstance f = load_instance(run, o, &doc);
    const int bound = o.bound < 0 ? 2 : o.bound;
    run.input("bound", bound);
    run.input("max_index", o.max_index);
    std::vector<FamObj> objs;
    if (doc.flavor == "dial_pf") {
        for (int u = 1; u <= o.max_index; ++u)
            for (int x = 0; x <= bound; ++x) objs.push_back(FamObj(static_cast<std::size_t>(u), x));
    } else {
        const int top = std::min(bound, f.N().object_count() - 1);
        std::vector<FamObj> layer{{}};
        for (int k = 1; k <= o.max_index; ++k) {
            std::vector<FamObj> next;
            for (const auto& p : layer)
                for (int v = 0; v <= top; ++v) {
                    FamObj q = p;
                    q.push_back(v);
                    next.push_back(q);
                }
            objs.insert(objs.end(), next.begin(), next.end());
            layer = std::move(next);
        }
    }
    std::vector<FamObj> sources;
    for (const auto& x : objs)
        if (x.size() == 1 && sources.size() < 2) sources.push_back(x);
    std::uint64_t checked = 0, skipped = 0, naturality = 0, natural_triples = 0;
    json failures = json::array();
    for (const auto& a : objs)
        for (const auto& w : objs)
            for (const auto& b : objs) {
                ClosureReport r = verify_closure(f, a, w, b, sources, {1u << 14, 64});
                if (r.report.has("OutOfBound")) {
                    ++skipped;
                    continue;
                }
                ++checked;
                naturality += r.naturality_checked;
                if (r.naturality_checked > 0) ++natural_triples;
                if (!r.report.ok() && failures.size() < 10) failures.push_back(closure_json(a, w, b, r));
                if (!r.report.ok() && failures.size() <= 3) {
                    run.say() << "FAIL " << show_fam_object(a) << " " << show_fam_object(w) << " " << show_fam_object(b) << "\n";
                    say_report(run.say(), r.report, "    ");
                }
            }
    const bool ok = failures.empty();
    run.witnesses()["triples"] = checked;
    run.witnesses()["skipped"] = skipped;
    run.witnesses()["natural_triples"] = natural_triples;
    run.witnesses()["failures"] = failures;
    run.work()["triples"] = checked;
    run.work()["naturality_checks"] = naturality;
    run.say() << f.name << ": " << checked << " triples, " << natural_triples << " with naturality, " << skipped
              << " beyond the bound: " << (ok ? "pass" : "FAIL") << "\n";
    run.verdict(ok ? "ok" : "failed");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite fibred categories: validation, total categories, fibred (co)limits, Dialectica homs"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* c) {
        c->add_option("--out", o.out, "write the machine report (JSON) here");
        c->add_option("--bound", o.bound, "size bound for enumerations")->check(CLI::Range(0, 16));
        c->add_flag("--oracle", o.oracle, "cross-check against brute force");
        c->add_flag("--no-oracle", o.no_oracle, "skip the brute force cross-check");
        c->add_option("--seed", o.seed, "seed for generated diagrams");
    };

    struct Sub {
        const char* name;
        const char* help;
    };
    std::map<std::string, CLI::App*> subs;
    for (const Sub& s : std::initializer_list<Sub>{
             {"validate", "check documents against their axioms"},
             {"groth", "build the total category and check the round trip"},
             {"sections", "count the sections category"},
             {"limit", "fibred limit of a diagram in the total category"},
             {"colimit", "fibred colimit of a diagram in the total category"},
             {"coequalizer", "coequalizer of a parallel pair through mates"},
             {"tensor", "tensor of two objects"},
             {"hom", "Dialectica internal hom of two families"},
             {"check-tractable", "validate tractable data"},
             {"check-extensive", "extensivity verdict for a shape"},
             {"verify-closure", "currying bijections over every triple of small families"},
         }) {
        CLI::App* c = app.add_subcommand(s.name, s.help);
        common(c);
        subs[s.name] = c;
    }
    subs["validate"]->add_option("files", o.files, "documents")->required();
    subs["validate"]->add_option("--indexed", o.indexed, "indexed category for diagrams into its total category");
    for (const char* n : {"groth", "sections", "limit", "colimit", "coequalizer", "check-extensive"})
        subs[n]->add_option("--indexed", o.indexed, "indexed category document")->required();
    for (const char* n : {"limit", "colimit", "coequalizer"}) {
        subs[n]->add_option("--diagram", o.diagram, "functor from a shape into the total category");
        subs[n]->add_option("--shape", o.shape, "shape for a generated diagram");
    }
    subs["groth"]->add_option("--emit", o.emit, "write the total category as a document");
    subs["check-extensive"]->add_option("--shape", o.shape, "discrete:N, parallel_pair, span, cospan")->required();
    subs["tensor"]->add_option("--monoidal", o.monoidal, "monoidal document");
    for (const char* n : {"tensor", "hom", "verify-closure"})
        subs[n]->add_option("--instance", o.instance, "instance document");
    subs["hom"]->get_option("--instance")->required();
    subs["verify-closure"]->get_option("--instance")->required();
    for (const char* n : {"tensor", "hom"}) {
        subs[n]->add_option("--lhs", o.lhs, "left object")->required();
        subs[n]->add_option("--rhs", o.rhs, "right object")->required();
    }
    subs["hom"]->add_flag("--verify", o.verify, "check the closed form, fibredness and currying");
    subs["verify-closure"]->add_option("--max-index", o.max_index, "largest index set")->check(CLI::Range(1, 4));
    subs["check-tractable"]->add_option("--tractable", o.tractable, "tractable document")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    std::string name;
    for (const auto& [n, c] : subs)
        if (c->parsed()) name = n;
    Run run(name, o);
    if (o.oracle && o.no_oracle) return run.error(Error(ErrorCode::InvalidInput, "--oracle and --no-oracle conflict"), 2);
    try {
        if (name == "validate") return run.finish(cmd_validate(run, o));
        if (name == "groth") return run.finish(cmd_groth(run, o));
        if (name == "sections") return run.finish(cmd_sections(run, o));
        if (name == "limit") return run.finish(cmd_limit(run, o, false));
        if (name == "colimit") return run.finish(cmd_limit(run, o, true));
        if (name == "coequalizer") return run.finish(cmd_coequalizer(run, o));
        if (name == "tensor") return run.finish(cmd_tensor(run, o));
        if (name == "hom") return run.finish(cmd_hom(run, o));
        if (name == "check-tractable") return run.finish(cmd_check_tractable(run, o));
        if (name == "check-extensive") return run.finish(cmd_check_extensive(run, o));
        return run.finish(cmd_verify_closure(run, o));
    } catch (const FileError& e) {
        return run.error(e, input_code(e.code()) ? 2 : 1, e.file);
    } catch (const Error& e) {
        return run.error(e, input_code(e.code()) ? 2 : 1);
    } catch (const std::exception& e) {
        return run.error(Error(ErrorCode::InvalidInput, e.what()), 2);
    }
}
