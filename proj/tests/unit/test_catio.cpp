#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <fibred/catio.hpp>
#include <fibred/fixtures.hpp>
#include <fibred/samples.hpp>

using namespace fibred;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = FIBRED_FIXTURES_DIR;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<fs::path> fixtures_in(const std::string& dir) {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(kFixtures / dir))
        if (e.path().extension() == ".fib") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

struct Expectation {
    std::string file, code, where;
};

std::vector<Expectation> manifest(const std::string& dir) {
    std::vector<Expectation> out;
    std::istringstream in(slurp(kFixtures / dir / "EXPECTED"));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        Expectation e;
        ls >> e.file >> e.code >> e.where;
        out.push_back(e);
    }
    return out;
}

DocumentError parse_error(const std::string& text) {
    try {
        parse_document(text);
    } catch (const DocumentError& e) {
        return e;
    }
    ADD_FAILURE() << "no error for:\n" << text;
    return DocumentError(ErrorCode::InvalidInput, {}, "");
}

std::string first(const ValidationReport& r) { return r.ok() ? "" : r.violations()[0].code + ": " + r.violations()[0].message; }

}  // namespace

TEST(RoundTrip, WalkingArrowReprintsBitIdentically) {
    const std::string text = slurp(kFixtures / "categories/walking_arrow.fib");
    Document d = parse_document(text);
    EXPECT_EQ(print_document(d), text);
    EXPECT_EQ(*build_category(std::get<CategoryDoc>(d.body)), *shape_walking_arrow().category);
}

TEST(RoundTrip, EveryFixtureIsStableUnderPrinting) {
    int seen = 0;
    for (const auto& dir : fs::directory_iterator(kFixtures)) {
        if (!dir.is_directory() || dir.path().filename() == "invalid") continue;
        for (const auto& p : fixtures_in(dir.path().filename().string())) {
            const std::string once = print_document(read_document(p));
            EXPECT_EQ(print_document(parse_document(once)), once) << p;
            ++seen;
        }
    }
    EXPECT_GT(seen, 40);
}

TEST(RoundTrip, TablesSurviveThroughText) {
    IndexedCat L = fam_over_finset(2, chain_category(2));
    GrothCat G = grothendieck(L);
    const std::string text = print_document(category_document(*G.total));
    Document d = parse_document(text);
    EXPECT_EQ(print_document(d), text);
    EXPECT_EQ(*build_category(std::get<CategoryDoc>(d.body)), *G.total);
}

TEST(RoundTrip, AwkwardIdsAreQuoted) {
    FinCat c({"a b", "#x", "q\"r"}, {{"id a", "a b", "a b"}, {"id #", "#x", "#x"}, {"id q", "q\"r", "q\"r"}},
             {{"a b", "id a"}, {"#x", "id #"}, {"q\"r", "id q"}},
             {{"id a", "id a", "id a"}, {"id #", "id #", "id #"}, {"id q", "id q", "id q"}});
    const std::string text = print_document(category_document(c));
    EXPECT_NE(text.find("\"q\\\"r\""), std::string::npos);
    EXPECT_EQ(*build_category(std::get<CategoryDoc>(parse_document(text).body)), c);
}

TEST(RoundTrip, CanonicalOrderIgnoresInputOrder) {
    const std::string shuffled =
        "fibred 1 category\nidentity 1 id_1\narrow id_1 : 1 -> 1\narrow a : 0 -> 1\n"
        "objects 1 0\nidentity 0 id_0\narrow id_0 : 0 -> 0\ncompose id_1 a = a\n";
    EXPECT_EQ(print_document(parse_document(shuffled)), slurp(kFixtures / "categories/walking_arrow.fib"));
}

TEST(Diagnostics, DanglingReferenceHasLocation) {
    auto e = parse_error("fibred 1 category\nobjects 0\narrow f : 0 -> 1\n");
    EXPECT_EQ(e.code(), ErrorCode::DanglingReference);
    EXPECT_EQ(e.where().line, 3);
    EXPECT_EQ(e.where().column, 16);
}

TEST(Diagnostics, InvalidCorpus) {
    for (const auto& x : manifest("invalid")) {
        try {
            read_document(kFixtures / "invalid" / x.file);
            ADD_FAILURE() << x.file << " parsed";
        } catch (const DocumentError& e) {
            EXPECT_STREQ(e.code_name(), x.code.c_str()) << x.file;
            EXPECT_EQ(std::to_string(e.where().line) + ":" + std::to_string(e.where().column), x.where) << x.file;
        }
    }
}

TEST(Diagnostics, Codes) {
    struct Case {
        const char* text;
        ErrorCode code;
        int line;
    };
    const Case cases[] = {
        {"fibred 2 category\nobjects 0\n", ErrorCode::SyntaxError, 1},
        {"fibred 1 sheaf\n", ErrorCode::UnknownField, 1},
        {"objects 0\n", ErrorCode::SyntaxError, 1},
        {"fibred 1 category\nobjects \"0\n", ErrorCode::SyntaxError, 2},
        {"fibred 1 category\nobjects \"\\q\"\n", ErrorCode::SyntaxError, 2},
        {"fibred 1 category\nobjects 0 }\n", ErrorCode::SyntaxError, 2},
        {"fibred 1 category\n}\n", ErrorCode::SyntaxError, 2},
        {"fibred 1 category\nbuiltin chain 2\nobjects 0\n", ErrorCode::SyntaxError, 2},
        {"fibred 1 category\nbuiltin torus 2\n", ErrorCode::UnknownField, 2},
        {"fibred 1 category\nbuiltin chain x\n", ErrorCode::SyntaxError, 2},
        {"fibred 1 category\nobjects 0 0\n", ErrorCode::InvalidInput, 2},
        {"fibred 1 category\nobjects 0\narrow f 0 -> 0\n", ErrorCode::SyntaxError, 3},
        {"fibred 1 category\nobjects 0\nidentity 0 e\n", ErrorCode::DanglingReference, 3},
        {"fibred 1 functor\nsource {\n  builtin chain 2\n}\ntarget total\nobject 7 -> x\n", ErrorCode::DanglingReference, 6},
        {"fibred 1 indexed\nbuiltin representable 9\nbase {\n  builtin chain 2\n}\n", ErrorCode::DanglingReference, 2},
        {"fibred 1 instance\nflavor closed\nsize 2\n", ErrorCode::InvalidInput, 2},
        {"fibred 1 instance\nflavor dial_pf\nsize 2\nperturb associator 0 0 0 0\n", ErrorCode::UnknownField, 4},
        {"fibred 1 monoidal\ncarrier {\n  builtin chain 2\n}\nstructure cartesian\nperturb associator 0 0 5 0<=0\n",
         ErrorCode::DanglingReference, 6},
    };
    for (const auto& c : cases) {
        auto e = parse_error(c.text);
        EXPECT_EQ(e.code(), c.code) << c.text << "\n" << e.what();
        EXPECT_EQ(e.where().line, c.line) << c.text;
    }
}

TEST(Corpus, EveryFixtureParsesAndValidates) {
    int n = 0;
    for (const char* dir : {"categories", "functors", "indexed", "monoidal", "tractable", "instances"}) {
        for (const auto& p : fixtures_in(dir)) {
            ValidationReport r = validate_document(read_document(p));
            EXPECT_TRUE(r.ok()) << p << ": " << first(r);
            ++n;
        }
    }
    EXPECT_GE(n, 30);
}

TEST(Corpus, DiagramsAreFunctorsIntoTheTotalCategory) {
    Document ld = read_document(kFixtures / "indexed/fam_chain2.fib");
    IndexedCat L = build_indexed(std::get<IndexedDoc>(ld.body));
    GrothCat G = grothendieck(L);
    for (const auto& p : fixtures_in("diagrams")) {
        FinFunctor J = build_functor(std::get<FunctorDoc>(read_document(p).body), &G);
        EXPECT_TRUE(validate_functor(J).ok()) << p;
        DiagramPair D = diagram_from_total(G, J);
        EXPECT_TRUE(validate_diagram(L, D).ok()) << p;
        EXPECT_EQ(D.shape.kind, ShapeKind::ParallelPair);
        EXPECT_EQ(*total_diagram(G, D).target_ptr(), *G.total);
    }
}

TEST(Corpus, EveryMutantIsRejectedWithItsCode) {
    auto expected = manifest("mutants");
    EXPECT_GE(expected.size(), 15u);
    std::set<std::string> listed;
    for (const auto& x : expected) {
        listed.insert(x.file);
        ValidationReport r = validate_document(read_document(kFixtures / "mutants" / x.file));
        EXPECT_FALSE(r.ok()) << x.file;
        EXPECT_TRUE(r.has(x.code)) << x.file << ": " << r.summary();
        ASSERT_FALSE(r.violations().empty());
        EXPECT_FALSE(r.violations()[0].cited.empty()) << x.file;
    }
    for (const auto& p : fixtures_in("mutants")) EXPECT_TRUE(listed.count(p.filename().string())) << p;
}

TEST(Families, ParseAndShow) {
    EXPECT_EQ(parse_fam_object("(2,3)"), (FamObj{3, 3}));
    EXPECT_EQ(parse_fam_object("[1, 0,2]"), (FamObj{1, 0, 2}));
    EXPECT_EQ(parse_fam_object("[]"), FamObj{});
    EXPECT_EQ(show_fam_object({1, 0, 2}), "[1,0,2]");
    for (const char* bad : {"(1)", "[1,", "[a]", "1,2", "[-1]"}) {
        try {
            parse_fam_object(bad);
            ADD_FAILURE() << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
        }
    }
}

TEST(Build, TablesFillIdentityComposites) {
    Document d = read_document(kFixtures / "indexed/arrow_over_arrow.fib");
    IndexedCat L = build_indexed(std::get<IndexedDoc>(d.body));
    EXPECT_TRUE(validate_indexed(L).ok());
    EXPECT_TRUE(L.is_strict());
    EXPECT_EQ(L.fibre(0).object(L.apply(L.base->morphism_index("a"), 0)), "y");
}

TEST(Build, PerturbedDbarOnlyMovesItsCell) {
    Document d = read_document(kFixtures / "mutants/tractable_dbar.fib");
    TractableInstance t = build_tractable(std::get<TractableDoc>(d.body));
    TractableInstance base = tractable_cartesian(finset_cartesian(3));
    const Arrow f = t.monoidal.carrier->arrow_at(1, t.data.T(1), 0);
    EXPECT_EQ(t.data.dbar(1, 1, f), 0);
    EXPECT_EQ(base.data.dbar(1, 1, f), 1);
    const Arrow g = t.monoidal.carrier->arrow_at(2, t.data.T(1), 0);
    EXPECT_EQ(t.data.dbar(2, 1, g), base.data.dbar(2, 1, g));
}
