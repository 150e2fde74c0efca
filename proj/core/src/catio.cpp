#include "fibred/catio.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fibred/fibmon.hpp"
#include "fibred/fixtures.hpp"
#include "fibred/samples.hpp"

namespace fibred {

namespace {

std::string at_text(SourceLoc at) { return std::to_string(at.line) + ":" + std::to_string(at.column); }

[[noreturn]] void bad(ErrorCode code, SourceLoc at, const std::string& msg) { throw DocumentError(code, at, msg); }

// ---------------------------------------------------------------- lexing

struct Tok {
    enum Kind { Word, Str, Open, Close, Newline, End } kind;
    std::string text;
    SourceLoc at;
};

bool breaks_word(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '"' || c == '{' || c == '}' || c == '#';
}

std::vector<Tok> lex(std::string_view s) {
    std::vector<Tok> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto step = [&] {
        if (s[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    };
    while (i < s.size()) {
        const char c = s[i];
        const SourceLoc at{line, col};
        if (c == '\n') {
            out.push_back({Tok::Newline, "", at});
            step();
        } else if (c == ' ' || c == '\t' || c == '\r') {
            step();
        } else if (c == '#') {
            while (i < s.size() && s[i] != '\n') step();
        } else if (c == '{' || c == '}') {
            out.push_back({c == '{' ? Tok::Open : Tok::Close, std::string(1, c), at});
            step();
        } else if (c == '"') {
            step();
            std::string t;
            bool closed = false;
            while (i < s.size() && s[i] != '\n') {
                if (s[i] == '"') {
                    step();
                    closed = true;
                    break;
                }
                if (s[i] == '\\') {
                    const SourceLoc esc{line, col};
                    step();
                    if (i >= s.size() || (s[i] != '"' && s[i] != '\\')) bad(ErrorCode::SyntaxError, esc, "unknown escape");
                }
                t += s[i];
                step();
            }
            if (!closed) bad(ErrorCode::SyntaxError, at, "unterminated string");
            out.push_back({Tok::Str, std::move(t), at});
        } else if (static_cast<unsigned char>(c) < 0x20) {
            bad(ErrorCode::SyntaxError, at, "control character");
        } else {
            std::string t;
            while (i < s.size() && !breaks_word(s[i])) {
                t += s[i];
                step();
            }
            out.push_back({Tok::Word, std::move(t), at});
        }
    }
    out.push_back({Tok::End, "", {line, col}});
    return out;
}

// ---------------------------------------------------------------- statements

struct Stmt {
    std::string key;
    SourceLoc at;
    std::vector<Tok> args;
    bool has_block = false;
    std::vector<Stmt> body;
};

class Parser {
public:
    explicit Parser(std::vector<Tok> t) : t_(std::move(t)) {}

    std::vector<Stmt> statements(bool nested, SourceLoc open_at) {
        std::vector<Stmt> out;
        for (;;) {
            const Tok& k = t_[p_];
            if (k.kind == Tok::Newline) {
                ++p_;
                continue;
            }
            if (k.kind == Tok::End) {
                if (nested) bad(ErrorCode::SyntaxError, open_at, "unclosed '{'");
                return out;
            }
            if (k.kind == Tok::Close) {
                if (!nested) bad(ErrorCode::SyntaxError, k.at, "unmatched '}'");
                ++p_;
                end_of_line();
                return out;
            }
            if (k.kind != Tok::Word) bad(ErrorCode::SyntaxError, k.at, "expected a field name");
            Stmt s{k.text, k.at, {}, false, {}};
            ++p_;
            while (t_[p_].kind == Tok::Word || t_[p_].kind == Tok::Str) s.args.push_back(t_[p_++]);
            if (t_[p_].kind == Tok::Open) {
                const SourceLoc at = t_[p_].at;
                ++p_;
                if (t_[p_].kind != Tok::Newline && t_[p_].kind != Tok::Close)
                    bad(ErrorCode::SyntaxError, t_[p_].at, "'{' must end its line");
                s.has_block = true;
                s.body = statements(true, at);
            } else {
                end_of_line();
            }
            out.push_back(std::move(s));
        }
    }

private:
    void end_of_line() {
        if (t_[p_].kind == Tok::Newline) {
            ++p_;
        } else if (t_[p_].kind != Tok::End && t_[p_].kind != Tok::Close) {
            bad(ErrorCode::SyntaxError, t_[p_].at, "unexpected '" + t_[p_].text + "'");
        } else if (t_[p_].kind == Tok::Close) {
            bad(ErrorCode::SyntaxError, t_[p_].at, "'}' must stand on its own line");
        }
    }

    std::vector<Tok> t_;
    std::size_t p_ = 0;
};

// ---------------------------------------------------------------- field helpers

void no_block(const Stmt& s) {
    if (s.has_block) bad(ErrorCode::SyntaxError, s.at, "'" + s.key + "' takes no block");
}

void need_block(const Stmt& s) {
    if (!s.has_block) bad(ErrorCode::SyntaxError, s.at, "'" + s.key + "' needs a block");
}

void arity(const Stmt& s, std::size_t n) {
    if (s.args.size() != n)
        bad(ErrorCode::SyntaxError, s.at,
            "'" + s.key + "' takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s") + ", got " +
                std::to_string(s.args.size()));
}

// Arguments at the given positions must be these literal words.
void literal(const Stmt& s, std::size_t i, std::string_view w) {
    if (s.args[i].kind != Tok::Word || s.args[i].text != w)
        bad(ErrorCode::SyntaxError, s.args[i].at, "expected '" + std::string(w) + "'");
}

int to_int(const Tok& t) {
    int v = 0;
    const char* b = t.text.data();
    const char* e = b + t.text.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || ptr != e || t.text.empty()) bad(ErrorCode::SyntaxError, t.at, "expected an integer, got '" + t.text + "'");
    return v;
}

void once(std::optional<SourceLoc>& seen, const Stmt& s) {
    if (seen) bad(ErrorCode::SyntaxError, s.at, "'" + s.key + "' repeated (first at " + at_text(*seen) + ")");
    seen = s.at;
}

[[noreturn]] void unknown(const Stmt& s, std::string_view where) {
    bad(ErrorCode::UnknownField, s.at, "unknown field '" + s.key + "' in " + std::string(where));
}

// ---------------------------------------------------------------- builtins

int arg_int(const Builtin& b, std::size_t i) { return std::stoi(b.args.at(i)); }

CatPtr builtin_category(const Builtin& b) {
    const std::string& n = b.name;
    if (n == "finset_skeleton") return finset_skeleton(arg_int(b, 0));
    if (n == "pset_skeleton") return pset_skeleton(arg_int(b, 0));
    if (n == "chain") return chain_category(arg_int(b, 0));
    if (n == "boolean_lattice") return boolean_lattice(arg_int(b, 0));
    if (n == "discrete") return discrete_category(arg_int(b, 0));
    if (n == "codiscrete") return codiscrete_category(arg_int(b, 0));
    if (n == "m3") return m3_lattice();
    if (n == "n5") return n5_lattice();
    if (n == "terminal") return terminal_category();
    if (n == "parallel_pair") return shape_parallel_pair().category;
    if (n == "span") return shape_span().category;
    if (n == "cospan") return shape_cospan().category;
    if (n == "walking_arrow") return shape_walking_arrow().category;
    fail(ErrorCode::UnknownField, "unknown category builtin '" + n + "'");
}

struct Arity {
    const char* name;
    std::size_t args;
};

constexpr Arity kCategoryBuiltins[] = {
    {"finset_skeleton", 1}, {"pset_skeleton", 1}, {"chain", 1}, {"boolean_lattice", 1}, {"discrete", 1},
    {"codiscrete", 1},      {"m3", 0},            {"n5", 0},    {"terminal", 0},        {"parallel_pair", 0},
    {"span", 0},            {"cospan", 0},        {"walking_arrow", 0},
};
constexpr Arity kIndexedBuiltins[] = {{"fam", 1}, {"representable", 1}, {"pseudo_swap", 0}, {"dial_pf", 2}};
constexpr Arity kMonoidalBuiltins[] = {
    {"finset_cartesian", 1}, {"finset_cocartesian", 1}, {"pset_cocartesian", 1}, {"f2_biproduct", 1}};
constexpr Arity kTractableBuiltins[] = {{"finset_cartesian", 1}, {"pset", 1}, {"extensive", 1}, {"f2_biproduct", 1}};

// Integer-valued builtin arguments are all sizes; `representable` takes an object id.
template <std::size_t N>
Builtin read_builtin(const Stmt& s, const Arity (&table)[N], std::string_view where) {
    no_block(s);
    if (s.args.empty()) bad(ErrorCode::SyntaxError, s.at, "'builtin' needs a name");
    Builtin b{s.args[0].text, {}};
    for (const auto& a : table) {
        if (b.name != a.name) continue;
        if (s.args.size() != a.args + 1)
            bad(ErrorCode::SyntaxError, s.at,
                "builtin '" + b.name + "' takes " + std::to_string(a.args) + " argument" + (a.args == 1 ? "" : "s"));
        for (std::size_t i = 1; i < s.args.size(); ++i) {
            if (b.name != "representable") {
                const int v = to_int(s.args[i]);
                if (v < 0 || v > 64) bad(ErrorCode::InvalidInput, s.args[i].at, "size out of range");
            }
            b.args.push_back(s.args[i].text);
        }
        return b;
    }
    bad(ErrorCode::UnknownField, s.args[0].at, "unknown builtin '" + b.name + "' for " + std::string(where));
}

// ---------------------------------------------------------------- categories

struct CatInfo {
    std::set<std::string> objects;
    std::map<std::string, std::pair<std::string, std::string>> arrows;  // id -> (dom, cod)
    std::map<std::string, std::string> identity;                        // object -> arrow
    CatPtr built;                                                       // for builtins
};

CatInfo info_of(const FinCat& c) {
    CatInfo info;
    for (const auto& o : c.objects()) info.objects.insert(o);
    for (int f = 0; f < c.morphism_count(); ++f) info.arrows[c.morphism(f)] = {c.object(c.dom(f)), c.object(c.cod(f))};
    for (int a = 0; a < c.object_count(); ++a)
        if (c.identity(a) >= 0) info.identity[c.object(a)] = c.morphism(c.identity(a));
    return info;
}

bool default_cell(const std::map<std::string, std::string>& identity,
                  const std::map<std::string, std::pair<std::string, std::string>>& arrows, const CompositionEntry& e) {
    auto is_id_of = [&](const std::string& m, const std::string& obj) {
        auto it = identity.find(obj);
        return it != identity.end() && it->second == m;
    };
    auto f = arrows.find(e.f);
    auto g = arrows.find(e.g);
    if (f == arrows.end() || g == arrows.end()) return false;
    if (e.h == e.f && is_id_of(e.g, f->second.second)) return true;
    if (e.h == e.g && is_id_of(e.f, g->second.first)) return true;
    return false;
}

void normalize(CategoryDoc& d) {
    std::sort(d.objects.begin(), d.objects.end());
    std::sort(d.arrows.begin(), d.arrows.end(), [](const auto& x, const auto& y) { return x.id < y.id; });
    std::sort(d.identities.begin(), d.identities.end());
    std::map<std::string, std::string> identity(d.identities.begin(), d.identities.end());
    std::map<std::string, std::pair<std::string, std::string>> arrows;
    for (const auto& m : d.arrows) arrows[m.id] = {m.dom, m.cod};
    std::erase_if(d.compose, [&](const CompositionEntry& e) { return default_cell(identity, arrows, e); });
    std::sort(d.compose.begin(), d.compose.end(),
              [](const auto& x, const auto& y) { return std::tie(x.g, x.f) < std::tie(y.g, y.f); });
}

CategoryDoc decode_category(const std::vector<Stmt>& body, SourceLoc at, CatInfo* info_out) {
    CategoryDoc d;
    CatInfo info;
    std::optional<SourceLoc> builtin_at;
    std::map<std::string, SourceLoc> object_at, arrow_at;
    struct Pending {
        std::string id;
        SourceLoc at;
    };
    std::vector<std::pair<MorphismRecord, std::pair<SourceLoc, SourceLoc>>> arrows;
    std::vector<std::pair<std::pair<Tok, Tok>, SourceLoc>> identities;
    std::vector<std::pair<std::vector<Tok>, SourceLoc>> cells;
    bool tables = false;
    for (const Stmt& s : body) {
        if (s.key == "builtin") {
            once(builtin_at, s);
            d.builtin = read_builtin(s, kCategoryBuiltins, "a category");
        } else if (s.key == "objects") {
            no_block(s);
            tables = true;
            for (const Tok& t : s.args) {
                auto [it, fresh] = object_at.emplace(t.text, t.at);
                if (!fresh) bad(ErrorCode::InvalidInput, t.at, "object '" + t.text + "' declared twice");
                d.objects.push_back(t.text);
            }
        } else if (s.key == "arrow") {
            no_block(s);
            tables = true;
            arity(s, 5);
            literal(s, 1, ":");
            literal(s, 3, "->");
            auto [it, fresh] = arrow_at.emplace(s.args[0].text, s.args[0].at);
            if (!fresh) bad(ErrorCode::InvalidInput, s.args[0].at, "arrow '" + s.args[0].text + "' declared twice");
            arrows.push_back({{s.args[0].text, s.args[2].text, s.args[4].text}, {s.args[2].at, s.args[4].at}});
        } else if (s.key == "identity") {
            no_block(s);
            tables = true;
            arity(s, 2);
            identities.push_back({{s.args[0], s.args[1]}, s.at});
        } else if (s.key == "compose") {
            no_block(s);
            tables = true;
            arity(s, 4);
            literal(s, 2, "=");
            cells.push_back({s.args, s.at});
        } else {
            unknown(s, "a category");
        }
    }
    if (d.builtin) {
        if (tables) bad(ErrorCode::SyntaxError, *builtin_at, "'builtin' excludes object and arrow tables");
        try {
            info.built = builtin_category(*d.builtin);
        } catch (const Error& e) {
            bad(e.code(), *builtin_at, e.what());
        }
        info = [&] {
            CatInfo i = info_of(*info.built);
            i.built = info.built;
            return i;
        }();
        if (info_out) *info_out = std::move(info);
        return d;
    }
    if (!tables) bad(ErrorCode::InvalidInput, at, "empty category");
    info.objects.insert(d.objects.begin(), d.objects.end());
    auto need_object = [&](const std::string& id, SourceLoc where) {
        if (!info.objects.count(id)) bad(ErrorCode::DanglingReference, where, "no object '" + id + "'");
    };
    for (auto& [m, locs] : arrows) {
        need_object(m.dom, locs.first);
        need_object(m.cod, locs.second);
        info.arrows[m.id] = {m.dom, m.cod};
        d.arrows.push_back(m);
    }
    auto need_arrow = [&](const Tok& t) {
        if (!info.arrows.count(t.text)) bad(ErrorCode::DanglingReference, t.at, "no arrow '" + t.text + "'");
    };
    for (auto& [toks, where] : identities) {
        need_object(toks.first.text, toks.first.at);
        need_arrow(toks.second);
        if (!info.identity.emplace(toks.first.text, toks.second.text).second)
            bad(ErrorCode::InvalidInput, where, "second identity for '" + toks.first.text + "'");
        d.identities.emplace_back(toks.first.text, toks.second.text);
    }
    std::set<std::pair<std::string, std::string>> seen;
    for (auto& [toks, where] : cells) {
        need_arrow(toks[0]);
        need_arrow(toks[1]);
        need_arrow(toks[3]);
        if (!seen.emplace(toks[0].text, toks[1].text).second)
            bad(ErrorCode::InvalidInput, where, "composite " + toks[0].text + " " + toks[1].text + " given twice");
        d.compose.push_back({toks[0].text, toks[1].text, toks[3].text});
    }
    normalize(d);
    if (info_out) *info_out = std::move(info);
    return d;
}

// ---------------------------------------------------------------- functors

struct FunctorInfo {
    CatInfo source;
    std::optional<CatInfo> target;
};

void normalize_map(IdMap& m) { std::sort(m.begin(), m.end()); }

// Identity images that a functor would get anyway are dropped.
void strip_identity_images(IdMap& arrows, const IdMap& objects, const CatInfo& s, const CatInfo* t) {
    if (!t) return;
    std::map<std::string, std::string> obj(objects.begin(), objects.end());
    std::erase_if(arrows, [&](const auto& e) {
        for (const auto& [o, id] : s.identity) {
            if (id != e.first) continue;
            auto image = obj.find(o);
            if (image == obj.end()) return false;
            auto tid = t->identity.find(image->second);
            return tid != t->identity.end() && tid->second == e.second;
        }
        return false;
    });
}

void read_pairs(const Stmt& s, const std::set<std::string>* left, const std::set<std::string>* right,
                 IdMap& out, std::set<std::string>& seen) {
    no_block(s);
    arity(s, 3);
    literal(s, 1, "->");
    if (left && !left->count(s.args[0].text)) bad(ErrorCode::DanglingReference, s.args[0].at, "no '" + s.args[0].text + "' in the source");
    if (right && !right->count(s.args[2].text)) bad(ErrorCode::DanglingReference, s.args[2].at, "no '" + s.args[2].text + "' in the target");
    if (!seen.insert(s.args[0].text).second) bad(ErrorCode::InvalidInput, s.args[0].at, "'" + s.args[0].text + "' mapped twice");
    out.emplace_back(s.args[0].text, s.args[2].text);
}

std::set<std::string> arrow_ids(const CatInfo& c) {
    std::set<std::string> s;
    for (const auto& [id, ends] : c.arrows) s.insert(id);
    return s;
}

FunctorDoc decode_functor(const std::vector<Stmt>& body, SourceLoc at, FunctorInfo* info_out) {
    FunctorDoc d;
    FunctorInfo info;
    std::optional<SourceLoc> source_at, target_at;
    std::vector<const Stmt*> maps;
    for (const Stmt& s : body) {
        if (s.key == "source") {
            once(source_at, s);
            need_block(s);
            arity(s, 0);
            d.source = decode_category(s.body, s.at, &info.source);
        } else if (s.key == "target") {
            once(target_at, s);
            if (s.has_block) {
                arity(s, 0);
                CatInfo t;
                d.target = decode_category(s.body, s.at, &t);
                info.target = std::move(t);
            } else {
                arity(s, 1);
                literal(s, 0, "total");
            }
        } else if (s.key == "object" || s.key == "arrow") {
            maps.push_back(&s);
        } else {
            unknown(s, "a functor");
        }
    }
    if (!source_at) bad(ErrorCode::InvalidInput, at, "functor without a source");
    if (!target_at) bad(ErrorCode::InvalidInput, at, "functor without a target");
    std::set<std::string> seen_obj, seen_arrow;
    const std::set<std::string> src_arrows = arrow_ids(info.source);
    std::set<std::string> tgt_arrows;
    if (info.target) tgt_arrows = arrow_ids(*info.target);
    for (const Stmt* s : maps) {
        if (s->key == "object")
            read_pairs(*s, &info.source.objects, info.target ? &info.target->objects : nullptr, d.objects, seen_obj);
        else
            read_pairs(*s, &src_arrows, info.target ? &tgt_arrows : nullptr, d.arrows, seen_arrow);
    }
    normalize_map(d.objects);
    normalize_map(d.arrows);
    strip_identity_images(d.arrows, d.objects, info.source, info.target ? &*info.target : nullptr);
    if (info_out) *info_out = std::move(info);
    return d;
}

NatTransDoc decode_nat_trans(const std::vector<Stmt>& body, SourceLoc at) {
    NatTransDoc d;
    FunctorInfo fs, ft;
    std::optional<SourceLoc> source_at, target_at;
    std::vector<const Stmt*> comps;
    for (const Stmt& s : body) {
        if (s.key == "source" || s.key == "target") {
            once(s.key == "source" ? source_at : target_at, s);
            need_block(s);
            arity(s, 0);
            (s.key == "source" ? d.source : d.target) = decode_functor(s.body, s.at, s.key == "source" ? &fs : &ft);
        } else if (s.key == "component") {
            comps.push_back(&s);
        } else {
            unknown(s, "a natural transformation");
        }
    }
    if (!source_at || !target_at) bad(ErrorCode::InvalidInput, at, "natural transformation needs source and target");
    if (!fs.target) bad(ErrorCode::InvalidInput, *source_at, "functor target must be a category");
    const std::set<std::string> tgt_arrows = arrow_ids(*fs.target);
    std::set<std::string> seen;
    for (const Stmt* s : comps) read_pairs(*s, &fs.source.objects, &tgt_arrows, d.components, seen);
    normalize_map(d.components);
    return d;
}

// ---------------------------------------------------------------- indexed

IndexedDoc decode_indexed(const std::vector<Stmt>& body, SourceLoc at) {
    IndexedDoc d;
    std::optional<SourceLoc> builtin_at, base_at, values_at;
    CatInfo base;
    std::map<std::string, CatInfo> fibres;
    std::vector<const Stmt*> later;
    for (const Stmt& s : body) {
        if (s.key == "builtin") {
            once(builtin_at, s);
            d.builtin = read_builtin(s, kIndexedBuiltins, "an indexed category");
        } else if (s.key == "base") {
            once(base_at, s);
            need_block(s);
            arity(s, 0);
            d.base = decode_category(s.body, s.at, &base);
        } else if (s.key == "values") {
            once(values_at, s);
            need_block(s);
            arity(s, 0);
            d.values = decode_category(s.body, s.at, nullptr);
        } else if (s.key == "fibre" || s.key == "reindex" || s.key == "unitor" || s.key == "compositor") {
            later.push_back(&s);
        } else {
            unknown(s, "an indexed category");
        }
    }
    if (d.builtin) {
        const std::string& n = d.builtin->name;
        if (!later.empty()) bad(ErrorCode::SyntaxError, later.front()->at, "'builtin' excludes fibre tables");
        if (n == "fam" && !d.values) bad(ErrorCode::InvalidInput, *builtin_at, "'fam' needs a values block");
        if (n != "fam" && d.values) bad(ErrorCode::SyntaxError, *values_at, "'values' only goes with 'fam'");
        if (n == "representable") {
            if (!d.base) bad(ErrorCode::InvalidInput, *builtin_at, "'representable' needs a base block");
            if (!base.objects.count(d.builtin->args[0]))
                bad(ErrorCode::DanglingReference, *builtin_at, "no base object '" + d.builtin->args[0] + "'");
        } else if (d.base) {
            bad(ErrorCode::SyntaxError, *base_at, "'base' does not go with builtin '" + n + "'");
        }
        return d;
    }
    if (!d.base) bad(ErrorCode::InvalidInput, at, "indexed category without a base");
    if (d.values) bad(ErrorCode::SyntaxError, *values_at, "'values' only goes with 'fam'");
    for (const Stmt* s : later) {
        if (s->key != "fibre") continue;
        need_block(*s);
        arity(*s, 1);
        const Tok& a = s->args[0];
        if (!base.objects.count(a.text)) bad(ErrorCode::DanglingReference, a.at, "no base object '" + a.text + "'");
        if (fibres.count(a.text)) bad(ErrorCode::InvalidInput, a.at, "second fibre over '" + a.text + "'");
        CatInfo fi;
        d.fibres.emplace_back(a.text, decode_category(s->body, s->at, &fi));
        fibres[a.text] = std::move(fi);
    }
    auto fibre_of = [&](const std::string& obj) -> const CatInfo* {
        auto it = fibres.find(obj);
        return it == fibres.end() ? nullptr : &it->second;
    };
    auto need_base_arrow = [&](const Tok& t) -> const std::pair<std::string, std::string>& {
        auto it = base.arrows.find(t.text);
        if (it == base.arrows.end()) bad(ErrorCode::DanglingReference, t.at, "no base arrow '" + t.text + "'");
        return it->second;
    };
    std::set<std::string> seen_reindex, seen_unitor;
    std::set<std::pair<std::string, std::string>> seen_comp;
    for (const Stmt* s : later) {
        if (s->key == "fibre") continue;
        need_block(*s);
        if (s->key == "reindex") {
            arity(*s, 1);
            const auto& [dom, cod] = need_base_arrow(s->args[0]);
            if (!seen_reindex.insert(s->args[0].text).second)
                bad(ErrorCode::InvalidInput, s->at, "second reindexing along '" + s->args[0].text + "'");
            const CatInfo* from = fibre_of(cod);
            const CatInfo* to = fibre_of(dom);
            std::set<std::string> from_arrows, to_arrows;
            if (from) from_arrows = arrow_ids(*from);
            if (to) to_arrows = arrow_ids(*to);
            ReindexDoc r{s->args[0].text, {}, {}};
            std::set<std::string> so, sa;
            for (const Stmt& m : s->body) {
                if (m.key == "object")
                    read_pairs(m, from ? &from->objects : nullptr, to ? &to->objects : nullptr, r.objects, so);
                else if (m.key == "arrow")
                    read_pairs(m, from ? &from_arrows : nullptr, to ? &to_arrows : nullptr, r.arrows, sa);
                else
                    unknown(m, "a reindexing");
            }
            normalize_map(r.objects);
            normalize_map(r.arrows);
            if (from && to) strip_identity_images(r.arrows, r.objects, *from, to);
            d.reindex.push_back(std::move(r));
        } else {
            ComponentsDoc c;
            const CatInfo* indexing = nullptr;  // components are indexed by its objects
            const CatInfo* home = nullptr;      // and live in it
            if (s->key == "unitor") {
                arity(*s, 1);
                const Tok& a = s->args[0];
                if (!base.objects.count(a.text)) bad(ErrorCode::DanglingReference, a.at, "no base object '" + a.text + "'");
                if (!seen_unitor.insert(a.text).second) bad(ErrorCode::InvalidInput, s->at, "second unitor at '" + a.text + "'");
                c.at = {a.text};
                indexing = home = fibre_of(a.text);
            } else {
                arity(*s, 2);
                const auto& f = need_base_arrow(s->args[0]);
                const auto& g = need_base_arrow(s->args[1]);
                if (f.second != g.first)
                    bad(ErrorCode::InvalidInput, s->at, "'" + s->args[0].text + "' and '" + s->args[1].text + "' do not compose");
                if (!seen_comp.emplace(s->args[0].text, s->args[1].text).second)
                    bad(ErrorCode::InvalidInput, s->at, "second compositor for this pair");
                c.at = {s->args[0].text, s->args[1].text};
                indexing = fibre_of(g.second);
                home = fibre_of(f.first);
            }
            std::set<std::string> home_arrows;
            if (home) home_arrows = arrow_ids(*home);
            std::set<std::string> seen;
            for (const Stmt& m : s->body) {
                if (m.key != "component") unknown(m, "a component list");
                read_pairs(m, indexing ? &indexing->objects : nullptr, home ? &home_arrows : nullptr, c.components, seen);
            }
            normalize_map(c.components);
            (s->key == "unitor" ? d.unitors : d.compositors).push_back(std::move(c));
        }
    }
    std::sort(d.fibres.begin(), d.fibres.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::sort(d.reindex.begin(), d.reindex.end(), [](const auto& x, const auto& y) { return x.arrow < y.arrow; });
    auto by_at = [](const ComponentsDoc& x, const ComponentsDoc& y) { return x.at < y.at; };
    std::sort(d.unitors.begin(), d.unitors.end(), by_at);
    std::sort(d.compositors.begin(), d.compositors.end(), by_at);
    return d;
}

// ---------------------------------------------------------------- structures

Perturbation read_perturbation(const Stmt& s, const std::set<std::string>& allowed) {
    no_block(s);
    if (s.args.empty()) bad(ErrorCode::SyntaxError, s.at, "'perturb' needs a target");
    Perturbation p{s.args[0].text, {}};
    if (!allowed.count(p.what)) bad(ErrorCode::UnknownField, s.args[0].at, "cannot perturb '" + p.what + "' here");
    if (p.what == "dbar") {
        arity(s, 5);
        for (std::size_t i = 1; i < 5; ++i) {
            if (i == 3 && s.args[i].text == "*") {
                p.args.push_back("*");
                continue;
            }
            if (to_int(s.args[i]) < 0) bad(ErrorCode::InvalidInput, s.args[i].at, "negative index");
            p.args.push_back(s.args[i].text);
        }
    } else {  // associator A B C M, ids of the carrier
        arity(s, 5);
        for (std::size_t i = 1; i < 5; ++i) p.args.push_back(s.args[i].text);
    }
    return p;
}

template <class Doc, std::size_t N>
Doc decode_structure(const std::vector<Stmt>& body, SourceLoc at, const Arity (&builtins)[N], std::string_view where,
                     const std::set<std::string>& structures, const std::set<std::string>& perturbable) {
    Doc d;
    std::optional<SourceLoc> builtin_at, carrier_at, structure_at;
    CatInfo carrier;
    for (const Stmt& s : body) {
        if (s.key == "builtin") {
            once(builtin_at, s);
            d.builtin = read_builtin(s, builtins, where);
        } else if (s.key == "carrier") {
            once(carrier_at, s);
            need_block(s);
            arity(s, 0);
            d.carrier = decode_category(s.body, s.at, &carrier);
        } else if (s.key == "structure") {
            once(structure_at, s);
            no_block(s);
            arity(s, 1);
            if (!structures.count(s.args[0].text))
                bad(ErrorCode::UnknownField, s.args[0].at, "unknown structure '" + s.args[0].text + "'");
            d.structure = s.args[0].text;
        } else if (s.key == "perturb") {
            d.perturb.push_back(read_perturbation(s, perturbable));
            const Perturbation& p = d.perturb.back();
            if (p.what == "associator") {
                if (!carrier_at) bad(ErrorCode::InvalidInput, s.at, "associator perturbations need a carrier given first");
                for (std::size_t i = 0; i < 3; ++i)
                    if (!carrier.objects.count(p.args[i]))
                        bad(ErrorCode::DanglingReference, s.args[i + 1].at, "no object '" + p.args[i] + "'");
                if (!carrier.arrows.count(p.args[3]))
                    bad(ErrorCode::DanglingReference, s.args[4].at, "no arrow '" + p.args[3] + "'");
            }
        } else {
            unknown(s, where);
        }
    }
    if (d.builtin && (carrier_at || structure_at))
        bad(ErrorCode::SyntaxError, *builtin_at, "'builtin' excludes carrier and structure");
    if (!d.builtin && !(carrier_at && structure_at)) bad(ErrorCode::InvalidInput, at, "need a builtin, or a carrier with a structure");
    std::sort(d.perturb.begin(), d.perturb.end(), [](const auto& x, const auto& y) {
        return std::tie(x.what, x.args) < std::tie(y.what, y.args);
    });
    return d;
}

InstanceDoc decode_instance(const std::vector<Stmt>& body, SourceLoc at) {
    static const std::set<std::string> flavors{"closed", "biproduct", "extensive", "partial_maps", "dial_pf"};
    InstanceDoc d;
    std::optional<SourceLoc> flavor_at, size_at, lattice_at;
    for (const Stmt& s : body) {
        if (s.key == "flavor") {
            once(flavor_at, s);
            no_block(s);
            arity(s, 1);
            if (!flavors.count(s.args[0].text)) bad(ErrorCode::UnknownField, s.args[0].at, "unknown flavor '" + s.args[0].text + "'");
            d.flavor = s.args[0].text;
        } else if (s.key == "size") {
            once(size_at, s);
            no_block(s);
            arity(s, 1);
            d.size = to_int(s.args[0]);
            if (d.size < 0 || d.size > 8) bad(ErrorCode::InvalidInput, s.args[0].at, "size out of range");
        } else if (s.key == "lattice") {
            once(lattice_at, s);
            need_block(s);
            arity(s, 0);
            d.lattice = decode_category(s.body, s.at, nullptr);
        } else if (s.key == "perturb") {
            d.perturb.push_back(read_perturbation(s, {"dbar"}));
        } else {
            unknown(s, "an instance");
        }
    }
    if (!flavor_at) bad(ErrorCode::InvalidInput, at, "instance without a flavor");
    if (d.flavor == "closed") {
        if (!lattice_at) bad(ErrorCode::InvalidInput, *flavor_at, "the closed flavor needs a lattice");
        if (size_at) bad(ErrorCode::SyntaxError, *size_at, "the closed flavor takes no size");
    } else {
        if (lattice_at) bad(ErrorCode::SyntaxError, *lattice_at, "'lattice' only goes with the closed flavor");
        if (!size_at) bad(ErrorCode::InvalidInput, *flavor_at, "instance without a size");
    }
    std::sort(d.perturb.begin(), d.perturb.end(), [](const auto& x, const auto& y) { return x.args < y.args; });
    return d;
}

// ---------------------------------------------------------------- printing

bool bare(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (breaks_word(c) || c == '\\' || static_cast<unsigned char>(c) < 0x20) return false;
    return true;
}

std::string quote(const std::string& s) {
    if (bare(s)) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + '"';
}

class Printer {
public:
    void line(const std::vector<std::string>& words, bool open = false) {
        out_.append(2 * depth_, ' ');
        for (std::size_t i = 0; i < words.size(); ++i) {
            if (i) out_ += ' ';
            out_ += i == 0 ? words[i] : quote(words[i]);
        }
        if (open) {
            out_ += " {\n";
            ++depth_;
        } else {
            out_ += '\n';
        }
    }
    void close() {
        --depth_;
        out_.append(2 * depth_, ' ');
        out_ += "}\n";
    }
    std::string text() && { return std::move(out_); }

private:
    std::string out_;
    int depth_ = 0;
};

void print_builtin(Printer& p, const Builtin& b) {
    std::vector<std::string> w{"builtin", b.name};
    w.insert(w.end(), b.args.begin(), b.args.end());
    p.line(w);
}

void print_category(Printer& p, const CategoryDoc& d) {
    if (d.builtin) {
        print_builtin(p, *d.builtin);
        return;
    }
    std::vector<std::string> w{"objects"};
    w.insert(w.end(), d.objects.begin(), d.objects.end());
    p.line(w);
    for (const auto& m : d.arrows) p.line({"arrow", m.id, ":", m.dom, "->", m.cod});
    for (const auto& [o, m] : d.identities) p.line({"identity", o, m});
    for (const auto& c : d.compose) p.line({"compose", c.g, c.f, "=", c.h});
}

void print_block(Printer& p, const std::string& key, const CategoryDoc& d) {
    p.line({key}, true);
    print_category(p, d);
    p.close();
}

void print_map(Printer& p, const std::string& key, const IdMap& m) {
    for (const auto& [a, b] : m) p.line({key, a, "->", b});
}

void print_functor(Printer& p, const FunctorDoc& d) {
    print_block(p, "source", d.source);
    if (d.target)
        print_block(p, "target", *d.target);
    else
        p.line({"target", "total"});
    print_map(p, "object", d.objects);
    print_map(p, "arrow", d.arrows);
}

void print_perturbations(Printer& p, const std::vector<Perturbation>& ps) {
    for (const auto& x : ps) {
        std::vector<std::string> w{"perturb", x.what};
        w.insert(w.end(), x.args.begin(), x.args.end());
        p.line(w);
    }
}

template <class Doc>
void print_structure(Printer& p, const Doc& d) {
    if (d.builtin) {
        print_builtin(p, *d.builtin);
    } else {
        print_block(p, "carrier", *d.carrier);
        p.line({"structure", d.structure});
    }
    print_perturbations(p, d.perturb);
}

// ---------------------------------------------------------------- building

CatPtr fill_and_build(const CategoryDoc& d) {
    std::map<std::string, std::string> identity(d.identities.begin(), d.identities.end());
    std::set<std::pair<std::string, std::string>> given;
    for (const auto& c : d.compose) given.emplace(c.g, c.f);
    std::vector<CompositionEntry> cells = d.compose;
    for (const auto& m : d.arrows) {
        auto ic = identity.find(m.cod);
        if (ic != identity.end() && !given.count({ic->second, m.id})) {
            cells.push_back({ic->second, m.id, m.id});
            given.emplace(ic->second, m.id);
        }
        auto id = identity.find(m.dom);
        if (id != identity.end() && !given.count({m.id, id->second})) {
            cells.push_back({m.id, id->second, m.id});
            given.emplace(m.id, id->second);
        }
    }
    return share(FinCat(d.objects, d.arrows, d.identities, std::move(cells)));
}

// Identity images a functor doc left out.
IdMap with_identity_images(const FinCat& s, const FinCat& t, const IdMap& objects, IdMap arrows) {
    std::map<std::string, std::string> obj(objects.begin(), objects.end());
    std::set<std::string> given;
    for (const auto& [f, g] : arrows) given.insert(f);
    for (int a = 0; a < s.object_count(); ++a) {
        const int id = s.identity(a);
        if (id < 0 || given.count(s.morphism(id))) continue;
        auto image = obj.find(s.object(a));
        if (image == obj.end()) continue;
        auto b = t.find_object(image->second);
        if (!b || t.identity(*b) < 0) continue;
        arrows.emplace_back(s.morphism(id), t.morphism(t.identity(*b)));
    }
    return arrows;
}

FinFunctor functor_between(const CatPtr& s, const CatPtr& t, const IdMap& objects, const IdMap& arrows) {
    return FinFunctor::from_ids(s, t, objects, with_identity_images(*s, *t, objects, arrows));
}

std::vector<int> components_by_object(const FinCat& indexing, const FinCat& home, const IdMap& comps,
                                      const std::string& what) {
    if (comps.empty()) return {};
    std::vector<int> out(indexing.object_count(), -1);
    for (const auto& [x, m] : comps) out[indexing.object_index(x)] = home.morphism_index(m);
    for (int x = 0; x < indexing.object_count(); ++x)
        if (out[x] < 0) fail(ErrorCode::InvalidInput, what + " has no component at '" + indexing.object(x) + "'");
    return out;
}

void perturb_dbar(TractableInstance& t, const Perturbation& p) {
    const int a = std::stoi(p.args[0]);
    const int b = std::stoi(p.args[1]);
    const bool every = p.args[2] == "*";
    const std::uint64_t k = every ? 0 : std::stoull(p.args[2]);
    const int x = std::stoi(p.args[3]);
    const ModelPtr n = t.monoidal.carrier;
    if (a >= n->object_count() || b >= n->object_count() || x >= n->object_count())
        fail(ErrorCode::InvalidInput, "dbar perturbation cites an object beyond the carrier");
    auto base = t.data.dbar;
    auto T = t.data.T;
    t.data.dbar = [=](int a1, int b1, const Arrow& f) {
        const int r = base(a1, b1, f);
        if (a1 != a || b1 != b) return r;
        if (!every && n->index_of(a1, T(b1), f) != k) return r;
        return x;
    };
}

}  // namespace

// ---------------------------------------------------------------- public

DocumentError::DocumentError(ErrorCode code, SourceLoc at, const std::string& message)
    : Error(code, at_text(at) + ": " + message), at_(at) {}

const char* doc_kind_name(DocKind k) {
    switch (k) {
        case DocKind::Category: return "category";
        case DocKind::Functor: return "functor";
        case DocKind::NatTrans: return "nat_trans";
        case DocKind::Indexed: return "indexed";
        case DocKind::Monoidal: return "monoidal";
        case DocKind::Tractable: return "tractable";
        case DocKind::Instance: return "instance";
    }
    return "?";
}

Document parse_document(std::string_view text) {
    Parser parser(lex(text));
    std::vector<Stmt> top = parser.statements(false, {1, 1});
    if (top.empty()) bad(ErrorCode::SyntaxError, {1, 1}, "empty document");
    const Stmt& head = top.front();
    if (head.key != "fibred" || head.args.size() != 2 || head.has_block)
        bad(ErrorCode::SyntaxError, head.at, "a document starts with 'fibred <version> <kind>'");
    Document doc;
    doc.format_version = to_int(head.args[0]);
    if (doc.format_version != 1) bad(ErrorCode::SyntaxError, head.args[0].at, "unsupported format version");
    const std::string& kind = head.args[1].text;
    const std::vector<Stmt> body(top.begin() + 1, top.end());
    const SourceLoc at = head.at;
    if (kind == "category") {
        doc.kind = DocKind::Category;
        doc.body = decode_category(body, at, nullptr);
    } else if (kind == "functor") {
        doc.kind = DocKind::Functor;
        doc.body = decode_functor(body, at, nullptr);
    } else if (kind == "nat_trans") {
        doc.kind = DocKind::NatTrans;
        doc.body = decode_nat_trans(body, at);
    } else if (kind == "indexed") {
        doc.kind = DocKind::Indexed;
        doc.body = decode_indexed(body, at);
    } else if (kind == "monoidal") {
        doc.kind = DocKind::Monoidal;
        doc.body = decode_structure<MonoidalDoc>(body, at, kMonoidalBuiltins, "a monoidal structure",
                                                 {"cartesian", "cocartesian"}, {"associator"});
    } else if (kind == "tractable") {
        doc.kind = DocKind::Tractable;
        doc.body = decode_structure<TractableDoc>(body, at, kTractableBuiltins, "tractable data",
                                                  {"cartesian", "cocartesian", "poset"}, {"dbar"});
    } else if (kind == "instance") {
        doc.kind = DocKind::Instance;
        doc.body = decode_instance(body, at);
    } else {
        bad(ErrorCode::UnknownField, head.args[1].at, "unknown document kind '" + kind + "'");
    }
    return doc;
}

std::string print_document(const Document& doc) {
    Printer p;
    p.line({"fibred", std::to_string(doc.format_version), doc_kind_name(doc.kind)});
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, CategoryDoc>) {
                print_category(p, d);
            } else if constexpr (std::is_same_v<T, FunctorDoc>) {
                print_functor(p, d);
            } else if constexpr (std::is_same_v<T, NatTransDoc>) {
                p.line({"source"}, true);
                print_functor(p, d.source);
                p.close();
                p.line({"target"}, true);
                print_functor(p, d.target);
                p.close();
                print_map(p, "component", d.components);
            } else if constexpr (std::is_same_v<T, IndexedDoc>) {
                if (d.builtin) print_builtin(p, *d.builtin);
                if (d.base) print_block(p, "base", *d.base);
                if (d.values) print_block(p, "values", *d.values);
                for (const auto& [a, f] : d.fibres) {
                    p.line({"fibre", a}, true);
                    print_category(p, f);
                    p.close();
                }
                for (const auto& r : d.reindex) {
                    p.line({"reindex", r.arrow}, true);
                    print_map(p, "object", r.objects);
                    print_map(p, "arrow", r.arrows);
                    p.close();
                }
                for (const auto& u : d.unitors) {
                    p.line({"unitor", u.at[0]}, true);
                    print_map(p, "component", u.components);
                    p.close();
                }
                for (const auto& c : d.compositors) {
                    p.line({"compositor", c.at[0], c.at[1]}, true);
                    print_map(p, "component", c.components);
                    p.close();
                }
            } else if constexpr (std::is_same_v<T, MonoidalDoc> || std::is_same_v<T, TractableDoc>) {
                print_structure(p, d);
            } else {
                p.line({"flavor", d.flavor});
                if (d.lattice)
                    print_block(p, "lattice", *d.lattice);
                else
                    p.line({"size", std::to_string(d.size)});
                print_perturbations(p, d.perturb);
            }
        },
        doc.body);
    return std::move(p).text();
}

Document read_document(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::InvalidInput, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

CatPtr build_category(const CategoryDoc& d) { return d.builtin ? builtin_category(*d.builtin) : fill_and_build(d); }

FinFunctor build_functor(const FunctorDoc& d, const GrothCat* total) {
    CatPtr s = build_category(d.source);
    CatPtr t;
    if (d.target) {
        t = build_category(*d.target);
    } else {
        if (!total) fail(ErrorCode::InvalidInput, "functor into the total category needs an indexed category");
        t = total->total;
    }
    return functor_between(s, t, d.objects, d.arrows);
}

FinNatTrans build_nat_trans(const NatTransDoc& d) {
    FinFunctor F = build_functor(d.source);
    FinFunctor G = build_functor(d.target);
    const FinCat& s = F.source();
    std::vector<int> comps(s.object_count(), -1);
    for (const auto& [x, m] : d.components) comps[s.object_index(x)] = F.target().morphism_index(m);
    for (int x = 0; x < s.object_count(); ++x)
        if (comps[x] < 0) fail(ErrorCode::InvalidInput, "no component at '" + s.object(x) + "'");
    return FinNatTrans{std::move(F), std::move(G), std::move(comps)};
}

IndexedCat build_indexed(const IndexedDoc& d) {
    if (d.builtin) {
        const Builtin& b = *d.builtin;
        if (b.name == "fam") return fam_over_finset(std::stoi(b.args[0]), build_category(*d.values));
        if (b.name == "pseudo_swap") return pseudo_swap_fixture();
        if (b.name == "dial_pf") return dial_pf_indexed(std::stoi(b.args[0]), std::stoi(b.args[1])).L;
        CatPtr base = build_category(*d.base);
        return representable_indexed(base, base->object_index(b.args[0]));
    }
    IndexedCat L;
    L.base = build_category(*d.base);
    const FinCat& B = *L.base;
    L.fibres.assign(B.object_count(), nullptr);
    for (const auto& [a, f] : d.fibres) L.fibres[B.object_index(a)] = build_category(f);
    for (int a = 0; a < B.object_count(); ++a)
        if (!L.fibres[a]) fail(ErrorCode::InvalidInput, "no fibre over '" + B.object(a) + "'");
    std::map<std::string, const ReindexDoc*> by_arrow;
    for (const auto& r : d.reindex) by_arrow[r.arrow] = &r;
    for (int f = 0; f < B.morphism_count(); ++f) {
        const CatPtr& from = L.fibres[B.cod(f)];
        const CatPtr& to = L.fibres[B.dom(f)];
        auto it = by_arrow.find(B.morphism(f));
        if (it != by_arrow.end()) {
            L.reindex.push_back(functor_between(from, to, it->second->objects, it->second->arrows));
        } else if (B.is_identity(f)) {
            L.reindex.push_back(identity_functor(from));
        } else {
            fail(ErrorCode::InvalidInput, "no reindexing along '" + B.morphism(f) + "'");
        }
    }
    L.unitor.assign(B.object_count(), {});
    for (const auto& u : d.unitors) {
        const int a = B.object_index(u.at[0]);
        L.unitor[a] = components_by_object(*L.fibres[a], *L.fibres[a], u.components, "unitor at '" + u.at[0] + "'");
    }
    for (const auto& c : d.compositors) {
        const int f = B.morphism_index(c.at[0]);
        const int g = B.morphism_index(c.at[1]);
        L.compositor[{f, g}] = components_by_object(*L.fibres[B.cod(g)], *L.fibres[B.dom(f)], c.components,
                                                    "compositor " + c.at[0] + " " + c.at[1]);
    }
    return L;
}

MonoidalData build_monoidal(const MonoidalDoc& d) {
    MonoidalData m;
    CatPtr carrier;
    if (d.builtin) {
        const int n = std::stoi(d.builtin->args[0]);
        const std::string& b = d.builtin->name;
        m = b == "finset_cartesian"     ? finset_cartesian(n)
            : b == "finset_cocartesian" ? finset_cocartesian(n)
            : b == "pset_cocartesian"   ? pset_cocartesian(n)
                                        : f2vect_biproduct(n);
    } else {
        carrier = build_category(*d.carrier);
        m = d.structure == "cartesian" ? tabulated_cartesian(carrier) : tabulated_cocartesian(carrier);
    }
    for (const auto& p : d.perturb) {
        m = with_associator(m, carrier->object_index(p.args[0]), carrier->object_index(p.args[1]),
                            carrier->object_index(p.args[2]), Arrow{carrier->morphism_index(p.args[3])});
    }
    return m;
}

TractableInstance build_tractable(const TractableDoc& d) {
    TractableInstance t;
    if (d.builtin) {
        const int n = std::stoi(d.builtin->args[0]);
        const std::string& b = d.builtin->name;
        if (b == "finset_cartesian")
            t = tractable_cartesian(finset_cartesian(n));
        else if (b == "pset")
            t = pset_coproducts_tractable(n);
        else if (b == "extensive")
            t = tractable_coproducts_extensive(finset_cocartesian(n));
        else
            t = cotractable_cocartesian(f2vect_biproduct(n));
    } else {
        CatPtr c = build_category(*d.carrier);
        if (d.structure == "cartesian")
            t = tractable_cartesian(tabulated_cartesian(c));
        else if (d.structure == "cocartesian")
            t = cotractable_cocartesian(tabulated_cocartesian(c));
        else
            t = poset_tractable_data(c);
    }
    for (const auto& p : d.perturb) perturb_dbar(t, p);
    return t;
}

FamInstance build_instance(const InstanceDoc& d) {
    FamInstance f;
    if (d.flavor == "closed")
        f = closed_fam(build_category(*d.lattice));
    else if (d.flavor == "biproduct")
        f = biproduct_fam(d.size);
    else if (d.flavor == "extensive")
        f = extensive_fam(d.size);
    else if (d.flavor == "partial_maps")
        f = partial_maps_fam(d.size);
    else
        f = dial_pf_fam(d.size * d.size);
    if (d.flavor == "dial_pf") f.name = "dial_pf(" + std::to_string(d.size) + ")";
    for (const auto& p : d.perturb) perturb_dbar(f.tractable, p);
    return f;
}

CategoryDoc describe_category(const FinCat& c) {
    CategoryDoc d;
    d.objects = c.objects();
    for (int f = 0; f < c.morphism_count(); ++f) d.arrows.push_back({c.morphism(f), c.object(c.dom(f)), c.object(c.cod(f))});
    for (int a = 0; a < c.object_count(); ++a)
        if (c.identity(a) >= 0) d.identities.emplace_back(c.object(a), c.morphism(c.identity(a)));
    for (const auto& cell : c.cells()) d.compose.push_back({c.morphism(cell.g), c.morphism(cell.f), c.morphism(cell.h)});
    normalize(d);
    return d;
}

Document category_document(const FinCat& c) { return Document{1, DocKind::Category, describe_category(c)}; }

ValidationReport validate_document(const Document& doc) {
    return std::visit(
        [](const auto& d) -> ValidationReport {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, CategoryDoc>) {
                return validate_category(*build_category(d));
            } else if constexpr (std::is_same_v<T, FunctorDoc>) {
                ValidationReport r;
                FinFunctor F = build_functor(d);
                r.merge(validate_category(F.source()), "source");
                r.merge(validate_category(F.target()), "target");
                r.merge(validate_functor(F));
                return r;
            } else if constexpr (std::is_same_v<T, NatTransDoc>) {
                return validate_nat_trans(build_nat_trans(d));
            } else if constexpr (std::is_same_v<T, IndexedDoc>) {
                return validate_indexed(build_indexed(d));
            } else if constexpr (std::is_same_v<T, MonoidalDoc>) {
                return validate_monoidal(build_monoidal(d));
            } else if constexpr (std::is_same_v<T, TractableDoc>) {
                TractableInstance t = build_tractable(d);
                TractableCheck check;
                check.max_object = d.carrier ? t.monoidal.carrier->object_count() - 1 : 3;
                ValidationReport r = validate_tractable(t, check).report;
                if (d.structure == "poset") {
                    PosetVerdict v = poset_tractability(build_category(*d.carrier));
                    if (!v.tractable) r.add("NotTractable", v.witness);
                }
                return r;
            } else {
                FamInstance f = build_instance(d);
                return validate_tractable(f.tractable, {2, 2, 1u << 14}).report;
            }
        },
        doc.body);
}

DiagramPair diagram_from_total(const GrothCat& G, const FinFunctor& J) {
    const FinCat& s = J.source();
    int arrows = 0;
    for (int u = 0; u < s.morphism_count(); ++u) arrows += s.is_identity(u) ? 0 : 1;
    Shape shape = shape_custom(J.source_ptr());
    if (arrows == 0) {
        shape.kind = ShapeKind::Discrete;
    } else if (s.object_count() == 2 && arrows == 2) {
        bool parallel = true;
        std::optional<std::pair<int, int>> ends;
        for (int u = 0; u < s.morphism_count(); ++u) {
            if (s.is_identity(u)) continue;
            if (ends && *ends != std::pair{s.dom(u), s.cod(u)}) parallel = false;
            ends = std::pair{s.dom(u), s.cod(u)};
        }
        if (parallel && ends->first != ends->second) shape.kind = ShapeKind::ParallelPair;
    }
    DiagramPair D{shape, compose_functors(G.projection, J), {}};
    for (int e = 0; e < s.object_count(); ++e) D.J2.x.push_back(G.object_pair[J.obj(e)].second);
    for (int u = 0; u < s.morphism_count(); ++u) D.J2.xi.push_back(G.morphism_pair[J.mor(u)].second);
    return D;
}

FamObj parse_fam_object(std::string_view s) {
    auto number = [&](std::string_view t) {
        while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
        while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
        int v = 0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty() || v < 0)
            fail(ErrorCode::InvalidInput, "bad family '" + std::string(s) + "'");
        return v;
    };
    auto parts = [&](std::string_view inner) {
        std::vector<int> out;
        if (inner.find_first_not_of(' ') == std::string_view::npos) return out;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = inner.find(',', start);
            out.push_back(number(inner.substr(start, comma - start)));
            if (comma == std::string_view::npos) return out;
            start = comma + 1;
        }
    };
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
        auto v = parts(s.substr(1, s.size() - 2));
        if (v.size() != 2) fail(ErrorCode::InvalidInput, "a constant family is written (U,X)");
        return FamObj(static_cast<std::size_t>(v[0]), v[1]);
    }
    if (s.size() >= 2 && s.front() == '[' && s.back() == ']') return parts(s.substr(1, s.size() - 2));
    fail(ErrorCode::InvalidInput, "bad family '" + std::string(s) + "'");
}

std::string show_fam_object(const FamObj& x) {
    std::string s = "[";
    for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
    return s + "]";
}

}  // namespace fibred
