// One line per criterion; exit status 1 when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <fibred/catio.hpp>
#include <fibred/dialectica.hpp>
#include <fibred/fibcolim.hpp>
#include <fibred/fixtures.hpp>
#include <fibred/monoidal.hpp>
#include <fibred/samples.hpp>

#include "oracles.hpp"

using namespace fibred;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = FIBRED_FIXTURES_DIR;
const fs::path kCli = FIBRED_CLI_PATH;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failures; the first few are printed under the verdict line.
struct Outcome {
    std::vector<std::string> failures;
    std::string summary;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    bool pass() const { return failures.empty(); }
};

std::string first(const ValidationReport& r) {
    return r.ok() ? "" : r.violations()[0].code + ": " + r.violations()[0].message;
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// |Dial((U,X),(V,Y))| = V^U * X^(U*Y)
std::uint64_t dial_hom(std::uint64_t u, std::uint64_t x, std::uint64_t v, std::uint64_t y) {
    return ipow(v, u) * ipow(x, u * y);
}

std::vector<fs::path> fib_files(const std::string& dir) {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(kFixtures / dir))
        if (e.path().extension() == ".fib") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<RandomFixture> indexed_pool(std::uint64_t seed) {
    std::vector<RandomFixture> pool = {{"fam(discrete 2)", fam_over_finset(2, discrete_category(2))},
                                       {"fam(chain 2)", fam_over_finset(2, chain_category(2))},
                                       {"fam(arrow)", fam_over_finset(1, shape_walking_arrow().category)},
                                       {"representable", representable_indexed(finset_skeleton(2), 2)},
                                       {"pseudo_swap", pseudo_swap_fixture()}};
    for (const auto& p : fib_files("indexed"))
        pool.push_back({p.stem().string(), build_indexed(std::get<IndexedDoc>(read_document(p).body))});
    for (auto& fx : random_fixtures(seed, 20)) pool.push_back(std::move(fx));
    return pool;
}

// 1. fibred (co)limits against search on the total category
Outcome oracle_equivalence() {
    Outcome out;
    const auto t0 = Clock::now();
    const std::vector<Shape> shapes = {shape_discrete(0), shape_discrete(1), shape_discrete(2), shape_parallel_pair()};
    std::mt19937_64 rng(2024);
    const auto fixtures = random_fixtures(7, 24);
    int diagrams = 0, agreed = 0, obstructed = 0;
    for (const auto& fx : fixtures) {
        out.expect(fx.L.base->object_count() <= 4 && fx.L.base->morphism_count() <= 8, fx.name + ": base too large");
        for (const auto& f : fx.L.fibres)
            out.expect(f->object_count() <= 4 && f->morphism_count() <= 8, fx.name + ": fibre too large");
        GrothCat G = grothendieck(fx.L);
        for (const auto& s : shapes) {
            for (int k = 0; k < 2; ++k) {
                DiagramPair D;
                if (!random_diagram(fx.L, s, rng, D)) continue;
                ++diagrams;
                const FinFunctor J = total_diagram(G, D);
                for (bool colimit : {false, true}) {
                    OracleComparison c = colimit ? compare_colimit(G, D) : compare_limit(G, D);
                    const std::string tag = fx.name + " " + s.name() + (colimit ? " colimit" : " limit");
                    out.expect(c.consistent, tag + ": " + c.formula_message + " / " + c.oracle_message);
                    if (c.formula_ok && c.oracle_ok) {
                        ++agreed;
                        out.expect(c.iso >= 0 && is_iso(*G.total, c.iso), tag + ": no iso between apexes");
                        out.expect(colimit ? is_colimit_cone(J, c.formula->total_cone)
                                           : is_limit_cone(J, c.formula->total_cone),
                                   tag + ": formula cone not universal");
                    } else if (!c.formula_ok) {
                        ++obstructed;
                    }
                }
            }
        }
    }
    const double secs = seconds_since(t0);
    out.expect(fixtures.size() >= 20, "fewer than 20 fixtures");
    out.expect(agreed > 0, "no case where both succeed");
    out.expect(secs < 60.0, "over 60 s");
    std::ostringstream s;
    s << fixtures.size() << " fixtures, " << diagrams << " diagrams, " << agreed << " agreements, " << obstructed
      << " obstructions named, " << std::fixed << std::setprecision(2) << secs << " s";
    out.summary = s.str();
    return out;
}

// 2. indexed category -> fibration -> indexed category
Outcome round_trips() {
    Outcome out;
    const auto pool = indexed_pool(11);
    int strict = 0;
    for (const auto& [name, L] : pool) {
        RoundTrip rt = round_trip(L);
        out.expect(rt.report.ok(), name + ": " + first(rt.report));
        out.expect(rt.comparison.size() == static_cast<std::size_t>(L.base->object_count()), name + ": comparisons");
        for (const auto& F : rt.comparison) {
            std::string why;
            out.expect(validate_functor(F).ok() && is_equivalence(F, &why), name + ": comparison " + why);
            out.expect(F.source_ptr()->object_count() == F.target_ptr()->object_count() &&
                           F.source_ptr()->morphism_count() == F.target_ptr()->morphism_count(),
                       name + ": comparison is not an isomorphism");
        }
        if (L.is_strict()) {
            ++strict;
            out.expect(rt.split, name + ": strict input, cleavage not split");
            out.expect(rt.recovered.is_strict(), name + ": strict input, output not strict");
        }
    }
    out.summary = std::to_string(pool.size()) + " indexed categories, " + std::to_string(strict) + " strict";
    return out;
}

// 3. coequalizers through mates against the direct fibred colimit
Outcome coequalizer_mates() {
    Outcome out;
    const auto pool = indexed_pool(29);
    int bifibrations = 0, pairs = 0;
    for (const auto& [name, L] : pool) {
        if (!bifibration_check(L).report.ok()) continue;
        ++bifibrations;
        GrothCat G = grothendieck(L);
        const FinCat& T = *G.total;
        for (int m1 = 0; m1 < T.morphism_count(); ++m1)
            for (int m2 = 0; m2 < T.morphism_count(); ++m2) {
                if (T.dom(m1) != T.dom(m2) || T.cod(m1) != T.cod(m2)) continue;
                const auto [f, alpha] = G.morphism_pair[m1];
                const auto [g, beta] = G.morphism_pair[m2];
                const int x = G.object_pair[T.dom(m1)].second, y = G.object_pair[T.cod(m1)].second;
                DiagramPair D = parallel_pair_diagram(L, f, alpha, g, beta, x, y);
                std::optional<MateResult> mate;
                std::optional<FibredResult> direct;
                std::string mate_error, direct_error;
                try {
                    mate = coequalizer_via_mates(G, f, alpha, g, beta, x, y);
                } catch (const Error& e) {
                    mate_error = e.code_name();
                }
                try {
                    direct = fibred_colimit(G, D);
                } catch (const Error& e) {
                    direct_error = e.code_name();
                }
                const std::string tag = name + " " + T.morphism(m1) + " " + T.morphism(m2);
                out.expect(mate.has_value() == direct.has_value(), tag + ": " + mate_error + " vs " + direct_error);
                if (!mate || !direct) continue;
                ++pairs;
                const FinFunctor J = total_diagram(G, D);
                out.expect(is_colimit_cone(J, mate->total_cocone), tag + ": mate cocone not universal");
                out.expect(cofactorizations(J, mate->total_cocone, direct->total_cone).size() == 1 &&
                               cofactorizations(J, direct->total_cone, mate->total_cocone).size() == 1,
                           tag + ": no comparison iso");
            }
    }
    out.expect(bifibrations > 0 && pairs > 0, "nothing compared");
    out.summary = std::to_string(bifibrations) + " bifibrations, " + std::to_string(pairs) + " parallel pairs";
    return out;
}

// 4. tractable instances
Outcome tractability() {
    Outcome out;
    int triples = 0;
    auto run = [&](const TractableInstance& t, const TractableCheck& c) {
        TractableReport r = validate_tractable(t, c);
        out.expect(r.report.ok(), t.data.name + ": " + first(r.report));
        out.expect(!r.counts.empty(), t.data.name + ": nothing checked");
        triples += static_cast<int>(r.counts.size());
        return r;
    };

    // (a) cocartesian structures, T = id and dbar = A on the opposite
    for (const auto& m : {finset_cocartesian(4), pset_cocartesian(4), f2vect_biproduct(3),
                          tabulated_cocartesian(boolean_lattice(2)), tabulated_cocartesian(chain_category(3))})
        run(cotractable_cocartesian(m), {2, 2, 1u << 14});
    for (const auto& p : fib_files("tractable")) {
        TractableInstance t = build_tractable(std::get<TractableDoc>(read_document(p).body));
        if (t.co) run(t, {2, 2, 1u << 14});
    }

    // (b) partial maps: every (|A|,|B|,|C|) up to 3 against (|B|+|C|+1)^|A|
    {
        TractableReport r = run(pset_coproducts_tractable(6), {3, 2, 1u << 16});
        std::set<std::tuple<int, int, int>> seen;
        bool nine = false;
        for (const auto& [a, b, c, lhs, rhs] : r.counts) {
            seen.insert({a, b, c});
            const std::uint64_t expected = ipow(b + c + 1, a);
            out.expect(lhs == expected && rhs == expected, "pset counts at " + std::to_string(a) + std::to_string(b) +
                                                               std::to_string(c));
            if (a == 2 && b == 1 && c == 1) nine = lhs == 9 && rhs == 9;
        }
        out.expect(seen.size() == 64, "pset: " + std::to_string(seen.size()) + " of 64 triples checked");
        out.expect(nine, "pset: 9 = 9 at (2,1,1) missing");
    }

    // (c) extensive FinSet: total maps into B+C
    {
        TractableReport r = run(tractable_coproducts_extensive(finset_cocartesian(7), 3), {3, 2, 1u << 16});
        std::set<std::tuple<int, int, int>> seen;
        for (const auto& [a, b, c, lhs, rhs] : r.counts) {
            seen.insert({a, b, c});
            out.expect(lhs == ipow(b + c, a) && rhs == lhs, "extensive counts");
        }
        out.expect(seen.size() == 64, "extensive: " + std::to_string(seen.size()) + " of 64 triples checked");
    }

    // M3 is not distributive
    PosetVerdict m3 = poset_tractability(m3_lattice());
    out.expect(!m3.tractable, "M3 accepted");
    out.expect(m3.witness.find("a∧(b∨c)") != std::string::npos &&
                   m3.witness.find("(a∧b)∨(a∧c)") != std::string::npos && m3.witness.find("≠") != std::string::npos,
               "M3 witness: " + m3.witness);
    out.expect(!validate_tractable(poset_tractable_data(m3_lattice()), {4, 2, 1u << 12}).report.ok(),
               "M3 candidate data validated");

    // T is (-) (x) 1 wherever there is a terminal object
    int forced = 0;
    for (const auto& t : {tractable_coproducts_extensive(finset_cocartesian(7), 3), pset_coproducts_tractable(6),
                          cotractable_cocartesian(finset_cocartesian(6)), tractable_cartesian(finset_cartesian(6)),
                          cotractable_cocartesian(f2vect_biproduct(3))}) {
        ForcesT f = tractability_forces_T(t, 3);
        out.expect(f.report.ok() && f.terminal >= 0 && !f.isos.empty(), t.data.name + ": T " + first(f.report));
        forced += static_cast<int>(f.isos.size());
    }
    out.summary = std::to_string(triples) + " triples, M3 witness \"" + m3.witness + "\", " + std::to_string(forced) +
                  " T-isos";
    return out;
}

std::vector<FamObj> families(int max_value, int max_length) {
    std::vector<FamObj> out;
    for (int len = 0; len <= max_length; ++len) {
        FamObj x(len, 0);
        while (true) {
            out.push_back(x);
            int i = len - 1;
            while (i >= 0 && x[i] == max_value) x[i--] = 0;
            if (i < 0) break;
            ++x[i];
        }
    }
    return out;
}

// 5. currying bijections for the Dialectica hom
Outcome dialectica_closure() {
    Outcome out;
    const auto t0 = Clock::now();
    std::ostringstream s;

    DialPf d = build_dial_pf(2);
    std::vector<FamObj> objs;
    for (int u = 0; u <= 2; ++u)
        for (int x = 0; x <= 2; ++x) objs.push_back(d.object(u, x));
    int checked = 0, skipped = 0;
    for (const auto& a : objs)
        for (const auto& w : objs)
            for (const auto& b : objs) {
                ClosureReport r = verify_closure(d.fam, a, w, b, {d.object(1, 1), d.object(1, 2)}, {1u << 22, 64});
                if (r.report.has("OutOfBound")) {
                    ++skipped;
                    continue;
                }
                ++checked;
                const std::string tag = show_fam_object(a) + " " + show_fam_object(w) + " " + show_fam_object(b);
                out.expect(r.report.ok(), "dial_pf " + tag + ": " + first(r.report));
                auto sz = [](const FamObj& o) -> std::uint64_t { return o.empty() ? 0 : o[0]; };
                const std::uint64_t ua = a.size(), xa = sz(a), uw = w.size(), xw = sz(w), ub = b.size(), xb = sz(b);
                const std::uint64_t lhs = dial_hom(ua * uw, xa * xw, ub, xb);
                const std::uint64_t rhs = dial_hom(uw, xw, dial_hom(ua, xa, ub, xb), ua * xb);
                out.expect(r.lhs == lhs && r.rhs == rhs && lhs == rhs, "dial_pf counts " + tag);
            }
    out.expect(skipped == 0, "Dial_pf triples beyond the enumeration bound");
    s << "Dial_pf " << checked << " triples (" << skipped << " beyond the bound)";

    DialecticaHom h = dialectica_hom(d.fam, d.object(2, 2), d.object(2, 2));
    const std::uint64_t direct = d.groth.G.total->hom(d.groth.G.object(2, 2), d.groth.G.object(2, 2)).size();
    out.expect(h.object.size() == 64 && direct == 64 && dial_hom(2, 2, 2, 2) == 64,
               "hom count " + std::to_string(h.object.size()) + " vs " + std::to_string(direct));
    s << ", " << h.object.size() << " = " << direct;

    struct Flavor {
        FamInstance inst;
        int max_value;
    };
    for (auto& [inst, max_value] : std::vector<Flavor>{{biproduct_fam(2), 1}, {extensive_fam(4), 2}}) {
        const auto fams = families(max_value, 2);
        int n = 0;
        for (const auto& a : fams)
            for (const auto& w : fams)
                for (const auto& b : fams) {
                    ClosureReport r = verify_closure(inst, a, w, b, {fams[1], fams[2]}, {1u << 22, 64});
                    out.expect(r.report.ok() && r.lhs == r.rhs, inst.name + " " + show_fam_object(a) + " " +
                                                                    show_fam_object(w) + " " + show_fam_object(b) +
                                                                    ": " + first(r.report));
                    ++n;
                }
        s << ", " << inst.name << " " << n;
    }
    const double secs = seconds_since(t0);
    out.expect(secs < 120.0, "over 120 s");
    s << ", " << std::fixed << std::setprecision(2) << secs << " s";
    out.summary = s.str();
    return out;
}

// 6. A -o B is fibred only for the closed flavour
Outcome fibredness() {
    Outcome out;
    std::ostringstream s;
    FamInstance closed = closed_fam(chain_category(2));
    for (const auto& [a, b] : std::vector<std::pair<FamObj, FamObj>>{{{1}, {0}}, {{0, 1}, {1, 0}}, {{1, 1}, {0}}}) {
        Fibredness f = fibredness_check(closed, a, b);
        out.expect(f.fibred, "closed " + show_fam_object(a) + " " + show_fam_object(b));
    }
    for (auto [inst, a, b] : std::vector<std::tuple<FamInstance, FamObj, FamObj>>{
             {biproduct_fam(2), {1}, {1}}, {extensive_fam(4), {1}, {1}}, {extensive_fam(4), {2}, {1, 2}}}) {
        Fibredness f = fibredness_check(inst, a, b);
        out.expect(!f.fibred && f.first != f.exponent, inst.name + " reported fibred");
        s << inst.name << " " << f.first << " vs " << f.exponent << "; ";
    }
    out.summary = "closed fibred; " + s.str();
    out.summary.resize(out.summary.size() - 2);
    return out;
}

// 7. extensivity verdicts, and groupoid fibres when coequalizer-extensive
Outcome extensivity() {
    Outcome out;
    auto fam = fam_over_finset(2, discrete_category(2));
    for (int n = 0; n <= 2; ++n) {
        auto r = check_extensive(fam, shape_discrete(n));
        out.expect(r.verdict == Extensivity::Extensive && r.diagrams_checked > 0,
                   "Fam discrete " + std::to_string(n) + ": " + r.detail);
    }
    auto C = finset_skeleton(2);
    auto rep = check_extensive(representable_indexed(C, C->object_index("2")), shape_parallel_pair());
    out.expect(rep.verdict == Extensivity::Extensive, "representable: " + rep.detail);
    auto kan = check_extensive(fam_over_finset(2, shape_walking_arrow().category), shape_parallel_pair());
    out.expect(kan.verdict == Extensivity::LeftKan && kan.witness.has_value(), "Fam parallel pair: " + kan.detail);

    const auto pool = indexed_pool(41);
    int extensive = 0;
    for (const auto& [name, L] : pool) {
        auto r = check_extensive(L, shape_parallel_pair());
        if (r.verdict != Extensivity::Extensive || r.diagrams_checked == 0) continue;
        ++extensive;
        for (const auto& f : L.fibres) out.expect(groupoid_check(*f), name + ": extensive with a non-groupoid fibre");
    }
    out.expect(extensive > 0, "no coequalizer-extensive fixture");
    out.summary = std::string("representable ") + extensivity_name(rep.verdict) + ", Fam pair " +
                  extensivity_name(kan.verdict) + ", " + std::to_string(extensive) + " extensive with groupoid fibres";
    return out;
}

// 8. mutated documents rejected with the intended violation
Outcome negative_controls() {
    Outcome out;
    std::istringstream in(slurp(kFixtures / "mutants/EXPECTED"));
    std::string line;
    int rejected = 0, listed = 0;
    std::set<std::string> files;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string file, code;
        ls >> file >> code;
        ++listed;
        files.insert(file);
        ValidationReport r = validate_document(read_document(kFixtures / "mutants" / file));
        const bool cited = !r.ok() && !r.violations()[0].cited.empty();
        out.expect(!r.ok(), file + " accepted");
        out.expect(r.has(code), file + ": expected " + code + ", got " + r.summary());
        out.expect(cited, file + ": no tuple cited");
        rejected += !r.ok() && r.has(code) && cited;
    }
    for (const auto& p : fib_files("mutants"))
        out.expect(files.count(p.filename().string()) == 1, p.filename().string() + " not in EXPECTED");
    out.expect(listed >= 15, "fewer than 15 mutants");
    int valid = 0;
    for (const char* dir : {"categories", "functors", "indexed", "monoidal", "tractable", "instances"})
        for (const auto& p : fib_files(dir)) {
            ValidationReport r = validate_document(read_document(p));
            out.expect(r.ok(), p.filename().string() + " rejected: " + first(r));
            ++valid;
        }
    out.summary = std::to_string(rejected) + "/" + std::to_string(listed) + " mutants rejected, " +
                  std::to_string(valid) + " unmutated fixtures accepted";
    return out;
}

std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

std::vector<std::string> cli_corpus() {
    std::vector<std::string> cmds;
    for (const char* dir : {"categories", "functors", "indexed", "monoidal", "tractable", "instances", "mutants",
                            "invalid"})
        for (const auto& p : fib_files(dir)) cmds.push_back("validate " + quote(p));
    const fs::path fam = kFixtures / "indexed/fam_chain2.fib";
    for (const auto& p : fib_files("diagrams")) {
        cmds.push_back("validate --indexed " + quote(fam) + " " + quote(p));
        for (const char* c : {"limit", "colimit", "coequalizer"})
            cmds.push_back(std::string(c) + " --indexed " + quote(fam) + " --diagram " + quote(p));
    }
    for (const auto& p : fib_files("indexed")) {
        cmds.push_back("groth --indexed " + quote(p));
        cmds.push_back("sections --indexed " + quote(p));
        for (const char* shape : {"discrete:2", "parallel_pair"})
            cmds.push_back(std::string("check-extensive --shape ") + shape + " --indexed " + quote(p));
        for (const char* c : {"limit", "colimit"})
            cmds.push_back(std::string(c) + " --indexed " + quote(p) + " --shape parallel_pair --seed 5");
    }
    for (const auto& p : fib_files("tractable")) cmds.push_back("check-tractable --tractable " + quote(p));
    for (const auto& p : fib_files("mutants"))
        if (p.filename().string().rfind("tractable_", 0) == 0)
            cmds.push_back("check-tractable --tractable " + quote(p));
    for (const auto& p : fib_files("monoidal")) {
        MonoidalData m = build_monoidal(std::get<MonoidalDoc>(read_document(p).body));
        const int last = m.carrier->object_count() - 1;
        cmds.push_back("tensor --monoidal " + quote(p) + " --lhs '" + m.carrier->object_name(std::min(1, last)) +
                       "' --rhs '" + m.carrier->object_name(last) + "'");
    }
    for (const auto& p : fib_files("instances")) {
        cmds.push_back("tensor --instance " + quote(p) + " --lhs [1] --rhs [1,1]");
        cmds.push_back("hom --verify --instance " + quote(p) + " --lhs [1] --rhs [1]");
        cmds.push_back("verify-closure --bound 1 --max-index 2 --instance " + quote(p));
    }
    return cmds;
}

// 9. byte-identical reports across repeated runs
Outcome determinism() {
    Outcome out;
    const auto cmds = cli_corpus();
    const fs::path root = fs::temp_directory_path() / ("fibred_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(root);
    std::map<int, int> exits;
    std::vector<std::vector<std::string>> reports(3);
    for (int run = 0; run < 3; ++run) {
        for (std::size_t i = 0; i < cmds.size(); ++i) {
            const fs::path json = root / (std::to_string(run) + "_" + std::to_string(i) + ".json");
            const fs::path text = root / (std::to_string(run) + "_" + std::to_string(i) + ".txt");
            const std::string line =
                quote(kCli) + " " + cmds[i] + " --out " + quote(json) + " >" + quote(text) + " 2>&1";
            const int status = std::system(line.c_str());
            if (run == 0) ++exits[WIFEXITED(status) ? WEXITSTATUS(status) : -1];
            out.expect(fs::exists(json), "no report: " + cmds[i]);
            reports[run].push_back(slurp(json) + "\n--\n" + slurp(text));
        }
    }
    for (std::size_t i = 0; i < cmds.size(); ++i)
        out.expect(reports[0][i] == reports[1][i] && reports[0][i] == reports[2][i], "differs: " + cmds[i]);
    out.expect(exits.count(-1) == 0 && exits.count(2) > 0 && exits.count(0) > 0, "unexpected exit statuses");
    fs::remove_all(root);
    std::ostringstream s;
    s << cmds.size() << " invocations x 3, exits";
    for (const auto& [code, n] : exits) s << " " << code << ":" << n;
    out.summary = s.str();
    return out;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"fibred (co)limits match the brute-force oracle", oracle_equivalence},
        {"round trip through the total category", round_trips},
        {"coequalizers via mates match fibred colimits", coequalizer_mates},
        {"tractable instances and the M3 refusal", tractability},
        {"Dialectica currying bijections", dialectica_closure},
        {"fibredness dichotomy", fibredness},
        {"extensivity verdicts", extensivity},
        {"mutants rejected with cited tuples", negative_controls},
        {"CLI reports are deterministic", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.failures.push_back(std::string("threw: ") + e.what());
        }
        failed += !o.pass();
        std::cout << "criterion " << i + 1 << ": " << (o.pass() ? "PASS" : "FAIL") << "  " << criteria[i].first;
        if (!o.summary.empty()) std::cout << " (" << o.summary << ")";
        std::cout << "\n";
        for (std::size_t k = 0; k < std::min<std::size_t>(o.failures.size(), 5); ++k)
            std::cout << "    " << o.failures[k] << "\n";
        if (o.failures.size() > 5) std::cout << "    ... " << o.failures.size() - 5 << " more\n";
        std::cout.flush();
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria pass")) << "\n";
    return failed ? 1 : 0;
}
