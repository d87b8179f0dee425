#include "cqa/genquery.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cqa/fo.hpp"
#include "cqa/solve.hpp"

namespace cqa {

namespace {

constexpr const char* kReservedPrefix = "__ext_";

bool has_reserved_name(const GeneralizedPathQuery& q) {
    for (const auto& r : q.relations()) {
        if (r.rfind(kReservedPrefix, 0) == 0) return true;
    }
    for (const auto& j : q.junctions()) {
        if (!j.is_var && j.constant.rfind(kReservedPrefix, 0) == 0) return true;
    }
    return false;
}

}  // namespace

GeneralizedPathQuery::GeneralizedPathQuery(std::vector<std::string> relations,
                                           std::vector<Junction> junctions)
    : relations_(std::move(relations)), junctions_(std::move(junctions)) {
    if (junctions_.size() != relations_.size() + 1)
        throw std::invalid_argument("junction count must be atom count plus one");
    std::set<std::string> seen;
    for (const auto& j : junctions_) {
        if (j.is_var) continue;
        if (!seen.insert(j.constant).second)
            throw std::invalid_argument("constant '" + j.constant + "' occurs at two junctions");
    }
}

GeneralizedPathQuery GeneralizedPathQuery::parse(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    if (tokens.empty()) throw ParseError("empty query", 0);
    if (tokens.size() == 1 && tokens[0][0] != '_' && tokens[0][0] != ':')
        return from_word(Word::parse(tokens[0]));
    if (tokens.size() % 2 == 0) throw ParseError("expected alternating junction/relation tokens", 0);
    std::vector<std::string> relations;
    std::vector<Junction> junctions;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& t = tokens[i];
        if (i % 2 == 0) {
            if (t == "_") junctions.push_back(Junction{true, ""});
            else if (t.size() > 1 && t[0] == ':') junctions.push_back(Junction{false, t.substr(1)});
            else throw ParseError("expected junction '_' or ':name', got '" + t + "'", 0);
        } else {
            if (t.empty() || t[0] == '_' || t[0] == ':')
                throw ParseError("expected relation name, got '" + t + "'", 0);
            relations.push_back(t);
        }
    }
    return GeneralizedPathQuery(std::move(relations), std::move(junctions));
}

GeneralizedPathQuery GeneralizedPathQuery::from_word(const Word& q) {
    if (q.empty()) throw std::invalid_argument("empty word");
    return GeneralizedPathQuery(q.symbols(),
                                std::vector<Junction>(q.size() + 1, Junction{true, ""}));
}

bool GeneralizedPathQuery::constant_free() const {
    return std::all_of(junctions_.begin(), junctions_.end(),
                       [](const Junction& j) { return j.is_var; });
}

Bcq GeneralizedPathQuery::to_bcq() const {
    Bcq out;
    auto term = [&](std::size_t i) {
        return junctions_[i].is_var ? Term::var("x" + std::to_string(i + 1))
                                    : Term::constant(junctions_[i].constant);
    };
    for (std::size_t i = 0; i < relations_.size(); ++i) {
        out.atoms.push_back(BcqAtom{relations_[i], term(i), term(i + 1)});
    }
    return out;
}

std::string GeneralizedPathQuery::str() const {
    std::string out;
    for (std::size_t i = 0; i < junctions_.size(); ++i) {
        if (i > 0) out += " ";
        out += junctions_[i].is_var ? "_" : ":" + junctions_[i].constant;
        if (i < relations_.size()) out += " " + relations_[i];
    }
    return out;
}

GeneralizedPathQuery characteristic_prefix(const GeneralizedPathQuery& q) {
    std::size_t ell = 0;
    while (ell < q.atom_count() && q.junctions()[ell].is_var) ++ell;
    std::vector<std::string> rels(q.relations().begin(), q.relations().begin() + static_cast<std::ptrdiff_t>(ell));
    std::vector<GeneralizedPathQuery::Junction> juncs(
        q.junctions().begin(), q.junctions().begin() + static_cast<std::ptrdiff_t>(ell + 1));
    return GeneralizedPathQuery(std::move(rels), std::move(juncs));
}

namespace {

// (word, end marker) view of a characteristic prefix; ell = 0 yields an
// empty word with the first junction's constant as marker.
std::pair<Word, EndMarker> chr_view(const GeneralizedPathQuery& q) {
    std::size_t ell = 0;
    while (ell < q.atom_count() && q.junctions()[ell].is_var) ++ell;
    std::vector<std::string> rels(q.relations().begin(), q.relations().begin() + static_cast<std::ptrdiff_t>(ell));
    EndMarker marker;
    if (ell < q.junctions().size() && !q.junctions()[ell].is_var)
        marker.constant = q.junctions()[ell].constant;
    return {Word(std::move(rels)), marker};
}

}  // namespace

Word extend(const GeneralizedPathQuery& q) {
    if (has_reserved_name(q))
        throw std::invalid_argument("query uses the reserved __ext_ namespace");
    if (q.constant_free()) return q.word();
    auto [w, marker] = chr_view(q);
    if (marker.is_top()) return w;
    std::vector<std::string> syms = w.symbols();
    syms.push_back(std::string(kReservedPrefix) + "N");
    return Word(std::move(syms));
}

bool homomorphism_exists(const GeneralizedPathQuery& a, const GeneralizedPathQuery& b,
                         bool prefix_only) {
    if (a.atom_count() > b.atom_count()) return false;
    for (std::size_t o = 0; o + a.atom_count() <= b.atom_count(); ++o) {
        if (prefix_only && o > 0) break;
        bool ok = true;
        for (std::size_t i = 0; i < a.atom_count() && ok; ++i) {
            ok = (a.relations()[i] == b.relations()[o + i]);
        }
        for (std::size_t i = 0; i < a.junctions().size() && ok; ++i) {
            const auto& ja = a.junctions()[i];
            if (ja.is_var) continue;
            const auto& jb = b.junctions()[o + i];
            ok = (!jb.is_var && jb.constant == ja.constant);
        }
        if (ok) return true;
    }
    return false;
}

namespace {

// The generalized query (p)^gamma: the word p with fresh variable junctions
// and the marker at the end.
GeneralizedPathQuery with_marker(const Word& p, const EndMarker& gamma) {
    std::vector<GeneralizedPathQuery::Junction> juncs(p.size() + 1,
                                                      GeneralizedPathQuery::Junction{true, ""});
    if (!gamma.is_top()) juncs.back() = GeneralizedPathQuery::Junction{false, *gamma.constant};
    return GeneralizedPathQuery(p.symbols(), std::move(juncs));
}

struct DFlags {
    bool d1, d2, d3;
};

DFlags d_conditions(const Word& p, const EndMarker& gamma) {
    DFlags f{true, true, true};
    if (p.empty()) return f;
    GeneralizedPathQuery chr_q = with_marker(p, gamma);
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            if (p.at(i) != p.at(j)) continue;
            Word rewound = p.prefix(j) + p.sub(i, j - i) + p.suffix_from(j);
            GeneralizedPathQuery target = with_marker(rewound, gamma);
            if (!homomorphism_exists(chr_q, target, /*prefix_only=*/true)) f.d1 = false;
            if (!homomorphism_exists(chr_q, target, /*prefix_only=*/false)) {
                f.d2 = false;
                f.d3 = false;
            }
        }
    }
    if (f.d3) {
        // consecutive-occurrence clause of the middle condition
        for (const auto& sym : p.alphabet()) {
            std::vector<std::size_t> pos;
            for (std::size_t i = 0; i < p.size(); ++i) {
                if (p.at(i) == sym) pos.push_back(i);
            }
            for (std::size_t t = 0; t + 2 < pos.size() && f.d2; ++t) {
                Word v1 = p.sub(pos[t] + 1, pos[t + 1] - pos[t] - 1);
                Word v2 = p.sub(pos[t + 1] + 1, pos[t + 2] - pos[t + 1] - 1);
                Word rw = p.suffix_from(pos[t + 2]);
                Word rv1 = p.sub(pos[t], pos[t + 1] - pos[t]);
                if (v1 == v2) continue;
                if (homomorphism_exists(with_marker(rw, gamma), with_marker(rv1, gamma), true))
                    continue;
                f.d2 = false;
            }
        }
    } else {
        f.d2 = false;
    }
    return f;
}

}  // namespace

Classification classify_generalized(const GeneralizedPathQuery& q) {
    auto [p, gamma] = chr_view(q);
    DFlags f = d_conditions(p, gamma);
    Classification c;
    c.c1 = f.d1;
    c.c2 = f.d1 || f.d2;
    c.c3 = c.c2 || f.d3;
    if (c.c1) c.tier = Tier::FO;
    else if (c.c2) c.tier = Tier::NL_COMPLETE;
    else if (c.c3) c.tier = Tier::PTIME_COMPLETE;
    else c.tier = Tier::CONP_COMPLETE;
    return c;
}

namespace {

// Answer a constant-headed chain, optionally ending in a constant, via the
// fixed-head rewriting; a constant end is absorbed by one fresh atom.
bool solve_constant_headed(const Instance& db, const std::string& head, const Word& w,
                           const std::optional<std::string>& end_constant,
                           std::size_t fresh_idx) {
    Instance base = db;
    Word query = w;
    if (end_constant) {
        std::string rel = std::string(kReservedPrefix) + "N" + std::to_string(fresh_idx);
        std::string dummy = std::string(kReservedPrefix) + "d" + std::to_string(fresh_idx);
        base = db.with_fact(Fact{rel, *end_constant, dummy});
        std::vector<std::string> syms = w.symbols();
        syms.push_back(rel);
        query = Word(std::move(syms));
    }
    FoRewriting rew = build_fo_rewriting(query);
    return eval_fo_with(rew.open, base, rew.head_var, head);
}

}  // namespace

bool solve_generalized(const Instance& db, const GeneralizedPathQuery& q, std::uint64_t cap) {
    if (has_reserved_name(q))
        throw std::invalid_argument("query uses the reserved __ext_ namespace");
    for (const auto& c : db.adom()) {
        if (c.rfind(kReservedPrefix, 0) == 0)
            throw std::invalid_argument("instance uses the reserved __ext_ namespace");
    }
    for (const auto& f : db.facts()) {
        if (f.relation.rfind(kReservedPrefix, 0) == 0)
            throw std::invalid_argument("instance uses the reserved __ext_ namespace");
    }

    auto [p, gamma] = chr_view(q);
    std::size_t fresh_idx = 0;
    bool answer = true;

    // characteristic prefix
    if (!p.empty()) {
        if (gamma.is_top()) {
            answer = solve(db, p, Method::Auto, cap).answer;
        } else {
            std::string rel = std::string(kReservedPrefix) + "N" + std::to_string(fresh_idx);
            std::string dummy = std::string(kReservedPrefix) + "d" + std::to_string(fresh_idx);
            ++fresh_idx;
            Instance augmented = db.with_fact(Fact{rel, *gamma.constant, dummy});
            std::vector<std::string> syms = p.symbols();
            syms.push_back(rel);
            answer = solve(augmented, Word(std::move(syms)), Method::Auto, cap).answer;
        }
    }
    if (!answer) return false;

    // remaining atoms: segments starting at constant key junctions
    std::size_t ell = p.size();
    std::size_t i = ell;
    while (i < q.atom_count()) {
        // junction i is a constant (the segment head)
        const auto& head_j = q.junctions()[i];
        if (head_j.is_var) throw std::logic_error("segment head expected to be a constant");
        std::size_t jend = i + 1;
        while (jend < q.atom_count() && q.junctions()[jend].is_var) ++jend;
        std::vector<std::string> rels(q.relations().begin() + static_cast<std::ptrdiff_t>(i),
                                      q.relations().begin() + static_cast<std::ptrdiff_t>(jend));
        std::optional<std::string> end_constant;
        if (!q.junctions()[jend].is_var) end_constant = q.junctions()[jend].constant;
        if (!solve_constant_headed(db, head_j.constant, Word(std::move(rels)), end_constant,
                                   ++fresh_idx)) {
            return false;
        }
        i = jend;
    }
    return answer;
}

}  // namespace cqa
