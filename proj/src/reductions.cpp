#include "cqa/reductions.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace cqa {

Digraph Digraph::parse(const std::string& text) {
    Digraph g;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        std::vector<std::string> toks;
        while (ls >> tok) toks.push_back(tok);
        if (toks.empty() || toks[0][0] == '#') continue;
        if (!header_seen) {
            if (toks.size() != 2 || toks[0].rfind("s=", 0) != 0 || toks[1].rfind("t=", 0) != 0)
                throw ParseError("expected header 's=<v> t=<v>'", 0);
            g.s = toks[0].substr(2);
            g.t = toks[1].substr(2);
            if (g.s.empty() || g.t.empty()) throw ParseError("empty vertex in header", 0);
            g.vertices.insert(g.s);
            g.vertices.insert(g.t);
            header_seen = true;
            continue;
        }
        if (toks.size() != 2) throw ParseError("expected edge 'a b'", 0);
        g.vertices.insert(toks[0]);
        g.vertices.insert(toks[1]);
        g.edges.insert({toks[0], toks[1]});
    }
    if (!header_seen) throw ParseError("missing header", 0);
    return g;
}

bool Digraph::acyclic() const {
    std::map<std::string, int> state;  // 0 new, 1 open, 2 done
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& [a, b] : edges) adj[a].push_back(b);
    auto dfs = [&](auto&& self, const std::string& v) -> bool {
        state[v] = 1;
        for (const auto& w : adj[v]) {
            if (state[w] == 1) return false;
            if (state[w] == 0 && !self(self, w)) return false;
        }
        state[v] = 2;
        return true;
    };
    for (const auto& v : vertices) {
        if (state[v] == 0 && !dfs(dfs, v)) return false;
    }
    return true;
}

Cnf Cnf::parse_dimacs(const std::string& text) {
    Cnf f;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    std::vector<int> current;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "c") continue;
        if (first == "p") {
            std::string kind;
            int nv = 0, nc = 0;
            if (!(ls >> kind >> nv >> nc) || kind != "cnf")
                throw ParseError("bad DIMACS header", 0);
            f.num_vars = nv;
            header_seen = true;
            continue;
        }
        if (!header_seen) throw ParseError("clause before DIMACS header", 0);
        int lit = std::stoi(first);
        while (true) {
            if (lit == 0) {
                if (current.empty()) throw ParseError("empty clause", 0);
                f.clauses.push_back(current);
                current.clear();
            } else {
                if (lit > f.num_vars || -lit > f.num_vars)
                    throw ParseError("literal out of range", 0);
                current.push_back(lit);
            }
            if (!(ls >> lit)) break;
        }
    }
    if (!current.empty()) {
        f.clauses.push_back(current);
    }
    return f;
}

MonotoneCircuit MonotoneCircuit::parse(const std::string& text) {
    MonotoneCircuit c;
    std::istringstream in(text);
    std::string line;
    std::set<std::string> known;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string tok;
        while (ls >> tok) toks.push_back(tok);
        if (toks.empty() || toks[0][0] == '#') continue;
        if (toks[0] == "OUTPUT") {
            if (toks.size() != 2 || !known.count(toks[1])) throw ParseError("bad OUTPUT line", 0);
            c.output = toks[1];
            continue;
        }
        if (toks.size() < 3) throw ParseError("bad circuit line", 0);
        Node n;
        n.name = toks[0];
        if (known.count(n.name)) throw ParseError("duplicate node " + n.name, 0);
        if (toks[1] == "INPUT") {
            if (toks.size() != 3 || (toks[2] != "0" && toks[2] != "1"))
                throw ParseError("bad INPUT line", 0);
            n.kind = Node::Kind::Input;
            n.input_value = toks[2] == "1";
        } else if (toks[1] == "AND" || toks[1] == "OR") {
            if (toks.size() != 4) throw ParseError("bad gate line", 0);
            n.kind = toks[1] == "AND" ? Node::Kind::And : Node::Kind::Or;
            n.a = toks[2];
            n.b = toks[3];
            if (!known.count(n.a) || !known.count(n.b))
                throw ParseError("gate uses unknown operand", 0);
        } else {
            throw ParseError("unknown node kind " + toks[1], 0);
        }
        known.insert(n.name);
        c.nodes.push_back(n);
    }
    if (c.output.empty()) throw ParseError("missing OUTPUT line", 0);
    return c;
}

std::vector<Fact> gadget(const Word& q, const std::optional<std::string>& a,
                         const std::optional<std::string>& b, FreshNames& fresh) {
    if (q.empty()) {
        if (!a && !b) throw std::invalid_argument("empty gadget with no endpoints");
        return {};
    }
    std::vector<std::string> nodes;
    nodes.push_back(a ? *a : fresh.next());
    for (std::size_t i = 1; i < q.size(); ++i) nodes.push_back(fresh.next());
    nodes.push_back(b ? *b : fresh.next());
    std::vector<Fact> out;
    for (std::size_t i = 0; i < q.size(); ++i) {
        out.push_back(Fact{q.at(i), nodes[i], nodes[i + 1]});
    }
    return out;
}

namespace {

void append(std::vector<Fact>& into, std::vector<Fact>&& facts) {
    for (auto& f : facts) into.push_back(std::move(f));
}

// first factorization q = u . Rv . Rw failing the given test
struct Split {
    Word u, rv, rw;
};

std::optional<Split> find_split(const Word& q, bool factor_test) {
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = i + 1; j < q.size(); ++j) {
            if (q.at(i) != q.at(j)) continue;
            Word rewound = q.prefix(j) + q.sub(i, j - i) + q.suffix_from(j);
            bool pass = factor_test ? q.is_factor_of(rewound) : q.is_prefix_of(rewound);
            if (!pass) return Split{q.prefix(i), q.sub(i, j - i), q.suffix_from(j)};
        }
    }
    return std::nullopt;
}

}  // namespace

Instance reduce_reachability(const Digraph& g, const Word& q, FreshNames& fresh) {
    if (satisfies_c1(q)) throw std::invalid_argument("query must violate the prefix condition");
    if (!g.acyclic()) throw std::invalid_argument("graph must be acyclic");
    if (!g.vertices.count(g.s) || !g.vertices.count(g.t))
        throw std::invalid_argument("s and t must be vertices");
    auto split = find_split(q, /*factor_test=*/false);
    const Word& u = split->u;
    const Word& rv = split->rv;
    const Word& rw = split->rw;

    std::string s_prime = fresh.next();
    std::string t_prime = fresh.next();
    std::vector<Fact> facts;
    for (const auto& x : g.vertices) append(facts, gadget(u, std::nullopt, x, fresh));
    append(facts, gadget(u, std::nullopt, s_prime, fresh));
    for (const auto& [x, y] : g.edges) append(facts, gadget(rv, x, y, fresh));
    append(facts, gadget(rv, s_prime, g.s, fresh));
    append(facts, gadget(rv, g.t, t_prime, fresh));
    for (const auto& x : g.vertices) append(facts, gadget(rw, x, std::nullopt, fresh));
    return Instance(std::move(facts));
}

Instance reduce_sat(const Cnf& f, const Word& q, FreshNames& fresh) {
    if (satisfies_c3(q)) throw std::invalid_argument("query must violate the factor condition");
    auto split = find_split(q, /*factor_test=*/true);
    const Word& u = split->u;
    const Word& rv = split->rv;
    const Word& rw = split->rw;
    if (u.empty()) throw std::logic_error("factor-condition split always has a nonempty head");

    auto var_name = [](int v) { return "x" + std::to_string(v); };
    std::vector<Fact> facts;
    for (int v = 1; v <= f.num_vars; ++v) {
        append(facts, gadget(rw, var_name(v), std::nullopt, fresh));
        append(facts, gadget(rv + rw, var_name(v), std::nullopt, fresh));
    }
    for (std::size_t ci = 0; ci < f.clauses.size(); ++ci) {
        std::string cname = "c" + std::to_string(ci + 1);
        for (int lit : f.clauses[ci]) {
            if (lit > 0) append(facts, gadget(u, cname, var_name(lit), fresh));
            else append(facts, gadget(u + rv, cname, var_name(-lit), fresh));
        }
    }
    return Instance(std::move(facts));
}

Instance reduce_mcvp(const MonotoneCircuit& c, const Word& q, FreshNames& fresh) {
    if (!satisfies_c3(q) || satisfies_c2(q))
        throw std::invalid_argument("query must sit on the PTIME tier");
    // first triple of consecutive equal symbols with v1 != v2, Rw not a
    // prefix of Rv1, and v1 not a proper prefix of v2: the OR gadget needs
    // a real edge toward its first operand
    std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> triple;
    for (std::size_t p1 = 0; p1 < q.size() && !triple; ++p1) {
        for (std::size_t p2 = p1 + 1; p2 < q.size() && !triple; ++p2) {
            if (q.at(p2) != q.at(p1)) continue;
            bool clear12 = true;
            for (std::size_t x = p1 + 1; x < p2; ++x) {
                if (q.at(x) == q.at(p1)) clear12 = false;
            }
            if (!clear12) continue;
            for (std::size_t p3 = p2 + 1; p3 < q.size() && !triple; ++p3) {
                if (q.at(p3) != q.at(p1)) continue;
                bool clear23 = true;
                for (std::size_t x = p2 + 1; x < p3; ++x) {
                    if (q.at(x) == q.at(p1)) clear23 = false;
                }
                if (!clear23) break;
                Word v1 = q.sub(p1 + 1, p2 - p1 - 1);
                Word v2 = q.sub(p2 + 1, p3 - p2 - 1);
                Word w = q.suffix_from(p3 + 1);
                if (v1 != v2 && !w.is_prefix_of(v1) && !v1.is_prefix_of(v2)) triple = {p1, p2, p3};
            }
        }
    }
    if (!triple)
        throw std::invalid_argument(
            "query admits no gate witness whose first branch carries a relation");
    auto [p1, p2, p3] = *triple;
    Word u = q.prefix(p1);
    Word rv1 = q.sub(p1, p2 - p1);
    Word rv2 = q.sub(p2, p3 - p2);
    Word rw = q.suffix_from(p3);
    Word v1 = q.sub(p1 + 1, p2 - p1 - 1);
    Word v2 = q.sub(p2 + 1, p3 - p2 - 1);
    std::size_t common = 0;
    while (common < v1.size() && common < v2.size() && v1.at(common) == v2.at(common)) ++common;
    Word v = v1.prefix(common);
    Word v1_plus = v1.suffix_from(common);
    Word v2_plus = v2.suffix_from(common);
    Word rv = q.sub(p1, 1 + common);  // R . v

    std::vector<Fact> facts;
    append(facts, gadget(u + rv1, std::nullopt, c.output, fresh));
    for (const auto& n : c.nodes) {
        if (n.kind == MonotoneCircuit::Node::Kind::Input) {
            if (n.input_value) append(facts, gadget(rv2 + rw, n.name, std::nullopt, fresh));
            continue;
        }
        append(facts, gadget(u, std::nullopt, n.name, fresh));
        append(facts, gadget(rv2 + rw, n.name, std::nullopt, fresh));
        if (n.kind == MonotoneCircuit::Node::Kind::And) {
            append(facts, gadget(rv1, n.name, n.a, fresh));
            append(facts, gadget(rv1, n.name, n.b, fresh));
        } else {
            // with an empty v2-branch the two gate constants coincide
            std::string c1 = fresh.next();
            std::string c2 = v2_plus.empty() ? c1 : fresh.next();
            append(facts, gadget(rv, n.name, c1, fresh));
            append(facts, gadget(v1_plus, c1, n.a, fresh));
            if (!v2_plus.empty()) append(facts, gadget(v2_plus, c1, c2, fresh));
            append(facts, gadget(u, std::nullopt, c2, fresh));
            append(facts, gadget(rv1, c2, n.b, fresh));
            append(facts, gadget(rw, c2, std::nullopt, fresh));
        }
    }
    return Instance(std::move(facts));
}

}  // namespace cqa
