#include "cqa/bcq.hpp"

#include <cctype>
#include <map>

namespace cqa {

namespace {

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

}  // namespace

Bcq Bcq::parse(const std::string& text) {
    Bcq q;
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto term = [&]() -> Term {
        skip_ws();
        if (i < text.size() && text[i] == '"') {
            std::size_t start = ++i;
            while (i < text.size() && text[i] != '"') ++i;
            if (i >= text.size()) throw ParseError("unterminated quote", start - 1);
            std::string n = text.substr(start, i - start);
            ++i;
            if (n.empty()) throw ParseError("empty constant", start);
            return Term::constant(n);
        }
        std::size_t start = i;
        while (i < text.size() && is_name_char(text[i])) ++i;
        std::string n = text.substr(start, i - start);
        if (n.empty()) throw ParseError("expected term", start);
        if (std::islower(static_cast<unsigned char>(n[0]))) return Term::var(n);
        return Term::constant(n);
    };
    while (true) {
        skip_ws();
        std::size_t start = i;
        while (i < text.size() && is_name_char(text[i])) ++i;
        std::string rel = text.substr(start, i - start);
        if (rel.empty()) throw ParseError("expected relation name", start);
        skip_ws();
        if (i >= text.size() || text[i] != '(') throw ParseError("expected '('", i);
        ++i;
        Term k = term();
        skip_ws();
        if (i >= text.size() || text[i] != ',') throw ParseError("expected ','", i);
        ++i;
        Term v = term();
        skip_ws();
        if (i >= text.size() || text[i] != ')') throw ParseError("expected ')'", i);
        ++i;
        q.atoms.push_back(BcqAtom{rel, k, v});
        skip_ws();
        if (i >= text.size()) break;
        if (text[i] != ',') throw ParseError("expected ',' between atoms", i);
        ++i;
    }
    return q;
}

Bcq Bcq::from_word(const Word& q) {
    Bcq out;
    for (std::size_t i = 0; i < q.size(); ++i) {
        out.atoms.push_back(BcqAtom{q.at(i), Term::var("x" + std::to_string(i + 1)),
                                    Term::var("x" + std::to_string(i + 2))});
    }
    return out;
}

std::string Bcq::str() const {
    std::string out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i > 0) out += ",";
        const auto& a = atoms[i];
        auto t = [](const Term& t) { return t.is_var ? t.name : "\"" + t.name + "\""; };
        out += a.relation + "(" + t(a.key) + "," + t(a.value) + ")";
    }
    return out;
}

Bcq fixed_head(const Word& q, const std::string& c) {
    Bcq out = Bcq::from_word(q);
    if (!out.atoms.empty()) out.atoms[0].key = Term::constant(c);
    return out;
}

namespace {

struct Matcher {
    std::map<std::string, std::vector<const Fact*>> by_relation;
    const Bcq& q;
    std::map<std::string, std::string> env;

    bool solve(std::size_t i) {
        if (i == q.atoms.size()) return true;
        const auto& a = q.atoms[i];
        auto it = by_relation.find(a.relation);
        if (it == by_relation.end()) return false;
        for (const Fact* f : it->second) {
            std::vector<std::string> bound;
            if (!unify(a.key, f->key, bound) || !unify(a.value, f->value, bound)) {
                for (const auto& v : bound) env.erase(v);
                continue;
            }
            if (solve(i + 1)) return true;
            for (const auto& v : bound) env.erase(v);
        }
        return false;
    }

    bool unify(const Term& t, const std::string& c, std::vector<std::string>& bound) {
        if (!t.is_var) return t.name == c;
        auto it = env.find(t.name);
        if (it != env.end()) return it->second == c;
        env[t.name] = c;
        bound.push_back(t.name);
        return true;
    }
};

}  // namespace

bool satisfies_bcq(const Instance& r, const Bcq& q) {
    Matcher m{{}, q, {}};
    for (const auto& f : r.facts()) m.by_relation[f.relation].push_back(&f);
    return m.solve(0);
}

}  // namespace cqa
