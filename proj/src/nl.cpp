#include "cqa/nl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <vector>

#include "cqa/fo.hpp"
#include "cqa/nfa.hpp"

namespace cqa {

namespace {

constexpr std::size_t kClosureCap = 100000;

// Bounded check that the minimal accepted traces equal head loop* tail.
bool validate_min_language(const Word& q, const Word& head, const Word& loop, const Word& tail) {
    const std::size_t bound = q.size() + 2 * loop.size() + 2;
    std::set<Word> closure{q};
    std::vector<Word> work{q};
    while (!work.empty()) {
        Word w = work.back();
        work.pop_back();
        for (const Word& p : rewind_all(w)) {
            if (p.size() > bound) continue;
            if (closure.insert(p).second) work.push_back(p);
        }
        if (closure.size() > kClosureCap) return true;  // too big to check; trust the construction
    }
    std::set<Word> minimal;
    for (const Word& p : closure) {
        bool has_accepted_proper_prefix = false;
        for (std::size_t len = 1; len < p.size() && !has_accepted_proper_prefix; ++len) {
            if (closure.count(p.prefix(len))) has_accepted_proper_prefix = true;
        }
        if (!has_accepted_proper_prefix) minimal.insert(p);
    }
    std::set<Word> expected;
    for (std::size_t m = 0;; ++m) {
        Word w = head + loop.repeated(m) + tail;
        if (w.size() > bound) break;
        expected.insert(w);
        if (loop.empty()) break;
    }
    return minimal == expected;
}

void push_candidate(std::vector<NlWitness>& out, Word head, Word loop, Word tail,
                    const BWitness& src) {
    if (loop.empty() || tail.empty()) return;
    if (!tail.self_join_free()) return;
    for (const auto& c : out) {
        if (c.head == head && c.loop == loop && c.tail == tail) return;
    }
    out.push_back(NlWitness{std::move(head), std::move(loop), std::move(tail), src});
}

std::vector<NlWitness> candidates_for(const Word& q, bool only_b2b = false) {
    std::vector<NlWitness> out;
    for (const BWitness& wit : decompose(q)) {
        if (wit.form == BForm::B2B) {
            Word uv = wit.u + wit.v;
            Word wv = wit.w + wit.v;
            if (uv.empty() || wv.empty()) continue;
            std::size_t pattern_len = wit.k * uv.size() + wv.size();
            if (wit.offset + q.size() != pattern_len) continue;  // suffix embeddings only
            if (q.size() < wv.size()) continue;
            Word head = q.prefix(q.size() - wv.size());
            Word tail = q.suffix(wv.size());
            if (tail != wv) continue;
            push_candidate(out, head, uv, tail, wit);
        } else if (wit.form == BForm::B2A && !only_b2b) {
            if (wit.u.empty()) continue;
            const std::size_t ulen = wit.u.size();
            const std::size_t uend = wit.j * ulen;
            const std::size_t o = wit.offset;
            if (o >= uend) continue;               // no u-part under the query
            if (o + q.size() <= uend) continue;    // query inside the u-region
            std::size_t phi = o % ulen;
            std::size_t s_len = phi == 0 ? 0 : ulen - phi;
            if (o + s_len > uend) continue;
            std::size_t full_copies = (uend - o - s_len) / ulen;
            // a pump needs some u-symbol to occur twice inside the query
            if (!(full_copies >= 2 || (full_copies >= 1 && s_len > 0))) continue;
            std::size_t head_len = s_len + full_copies * ulen;
            if (head_len >= q.size()) continue;
            Word head = q.prefix(head_len);
            Word tail = q.suffix_from(head_len);
            push_candidate(out, head, wit.u, tail, wit);
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const NlWitness& a, const NlWitness& b) {
        if (a.head.size() != b.head.size()) return a.head.size() < b.head.size();
        if (a.loop.size() != b.loop.size()) return a.loop.size() < b.loop.size();
        if (a.head != b.head) return a.head < b.head;
        if (a.loop != b.loop) return a.loop < b.loop;
        return a.tail < b.tail;
    });
    return out;
}

}  // namespace

std::optional<NlWitness> select_nl_witness(const Word& q) {
    for (NlWitness& cand : candidates_for(q)) {
        if (validate_min_language(q, cand.head, cand.loop, cand.tail)) return cand;
    }
    return std::nullopt;
}

namespace {

// c is terminal for p when some repair has no p-trace path from c; exact
// through the fixed-head rewriting. Terminal for the empty word is false.
struct TerminalTest {
    std::optional<FoRewriting> rew;

    explicit TerminalTest(const Word& p) {
        if (!p.empty()) rew = build_fo_rewriting(p);
    }
    bool operator()(const Instance& db, const std::string& c) const {
        if (!rew) return false;
        return !eval_fo_with(rew->open, db, rew->head_var, c);
    }
};

// Endpoints of arbitrary (not necessarily consistent) paths with the given
// trace, starting at `from`.
std::set<std::string> plain_endpoints(const std::map<std::string, std::map<std::string, std::set<std::string>>>& adj,
                                      const std::string& from, const Word& trace) {
    std::set<std::string> cur{from};
    for (std::size_t i = 0; i < trace.size(); ++i) {
        std::set<std::string> nxt;
        for (const auto& c : cur) {
            auto it = adj.find(c);
            if (it == adj.end()) continue;
            auto jt = it->second.find(trace.at(i));
            if (jt == it->second.end()) continue;
            nxt.insert(jt->second.begin(), jt->second.end());
        }
        cur = std::move(nxt);
        if (cur.empty()) break;
    }
    return cur;
}

// Endpoints of consistent paths (no two distinct key-equal facts) with the
// given trace.
void consistent_endpoints_rec(const std::map<std::string, std::map<std::string, std::set<std::string>>>& adj,
                              const std::string& cur, const Word& trace, std::size_t i,
                              std::map<std::pair<std::string, std::string>, std::string>& chosen,
                              std::set<std::string>& out) {
    if (i == trace.size()) {
        out.insert(cur);
        return;
    }
    auto it = adj.find(cur);
    if (it == adj.end()) return;
    auto jt = it->second.find(trace.at(i));
    if (jt == it->second.end()) return;
    for (const auto& dst : jt->second) {
        auto key = std::make_pair(trace.at(i), cur);
        auto found = chosen.find(key);
        if (found != chosen.end()) {
            if (found->second != dst) continue;  // conflicting key-equal fact
            consistent_endpoints_rec(adj, dst, trace, i + 1, chosen, out);
        } else {
            chosen.emplace(key, dst);
            consistent_endpoints_rec(adj, dst, trace, i + 1, chosen, out);
            chosen.erase(key);
        }
    }
}

std::set<std::string> consistent_endpoints(const std::map<std::string, std::map<std::string, std::set<std::string>>>& adj,
                                           const std::string& from, const Word& trace) {
    std::set<std::string> out;
    std::map<std::pair<std::string, std::string>, std::string> chosen;
    consistent_endpoints_rec(adj, from, trace, 0, chosen, out);
    return out;
}

}  // namespace

namespace detail {

NlRun nl_run(const Instance& db, const Word& q) {
    if (!satisfies_c2(q)) throw std::invalid_argument("query is outside the NL tier");

    std::vector<std::string> adom = db.adom_sorted();

    if (satisfies_c1(q)) {
        // some constant certainly heads the query
        FoRewriting rew = build_fo_rewriting(q);
        for (const auto& c : adom) {
            if (eval_fo_with(rew.open, db, rew.head_var, c)) return NlRun{true, c};
        }
        return NlRun{false, std::nullopt};
    }

    std::optional<NlWitness> wit = select_nl_witness(q);
    if (!wit) throw NlFallback();

    std::map<std::string, std::map<std::string, std::set<std::string>>> adj;
    for (const auto& f : db.facts()) adj[f.key][f.relation].insert(f.value);

    TerminalTest term_head(wit->head);
    TerminalTest term_loop(wit->loop);
    TerminalTest term_tail(wit->tail);

    // W: constants that are terminal for the tail word
    std::vector<std::string> w_nodes;
    std::map<std::string, std::size_t> w_index;
    for (const auto& c : adom) {
        if (term_tail(db, c)) {
            w_index[c] = w_nodes.size();
            w_nodes.push_back(c);
        }
    }

    // loop-step graph restricted to W, plus its reflexive-free transitive closure
    const std::size_t nw = w_nodes.size();
    std::vector<std::vector<bool>> closure(nw, std::vector<bool>(nw, false));
    for (std::size_t a = 0; a < nw; ++a) {
        for (const auto& e : plain_endpoints(adj, w_nodes[a], wit->loop)) {
            auto it = w_index.find(e);
            if (it != w_index.end()) closure[a][it->second] = true;
        }
    }
    for (std::size_t k = 0; k < nw; ++k) {
        for (std::size_t i = 0; i < nw; ++i) {
            if (!closure[i][k]) continue;
            for (std::size_t j = 0; j < nw; ++j) {
                if (closure[k][j]) closure[i][j] = true;
            }
        }
    }

    // P: from the node, some loop walk inside W reaches a loop-terminal
    // node or revisits one
    std::vector<bool> p_holds(nw, false);
    std::vector<bool> base(nw, false);
    for (std::size_t i = 0; i < nw; ++i) {
        if (term_loop(db, w_nodes[i])) base[i] = true;
        if (closure[i][i]) base[i] = true;  // lies on a loop-step cycle
    }
    for (std::size_t i = 0; i < nw; ++i) {
        if (base[i]) {
            p_holds[i] = true;
            continue;
        }
        for (std::size_t j = 0; j < nw && !p_holds[i]; ++j) {
            if (closure[i][j] && base[j]) p_holds[i] = true;
        }
    }

    // O(c): the head gets stuck from c, or a consistent head path reaches P
    for (const auto& c : adom) {
        bool o = term_head(db, c);
        if (!o) {
            for (const auto& d : consistent_endpoints(adj, c, wit->head)) {
                auto it = w_index.find(d);
                if (it != w_index.end() && p_holds[it->second]) {
                    o = true;
                    break;
                }
            }
        }
        if (!o) return NlRun{true, c};
    }
    return NlRun{false, std::nullopt};
}

}  // namespace detail

bool nl_solve(const Instance& db, const Word& q) { return detail::nl_run(db, q).answer; }

namespace {

std::string lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// `X` / `X,Y` for chains of at most one atom, `X1..Xn` otherwise; mirrors
// the listing's conventions.
std::vector<std::string> chain_vars(std::size_t atoms, bool numbered) {
    std::vector<std::string> vars;
    if (!numbered && atoms == 0) {
        vars.push_back("X");
    } else if (!numbered && atoms == 1) {
        vars.push_back("X");
        vars.push_back("Y");
    } else {
        for (std::size_t i = 0; i <= atoms; ++i) vars.push_back("X" + std::to_string(i + 1));
    }
    return vars;
}

std::string chain_atoms(const Word& w, const std::vector<std::string>& vars, std::size_t first = 0) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!out.empty()) out += ", ";
        out += lower(w.at(i)) + "(" + vars[first + i] + "," + vars[first + i + 1] + ")";
    }
    return out;
}

// stuck-position rules for a self-join-free word
std::vector<std::string> terminal_rules(const std::string& pred, const Word& w) {
    std::vector<std::string> rules;
    for (std::size_t t = 0; t < w.size(); ++t) {
        auto vars = chain_vars(t, false);
        std::string body;
        if (t == 0) {
            body = "c(X), not " + lower(w.at(0)) + "key(X)";
        } else {
            body = chain_atoms(w.prefix(t), vars) + ", not " + lower(w.at(t)) + "key(" + vars[t] + ")";
        }
        rules.push_back(pred + "(" + vars[0] + ") :- " + body + ".");
    }
    return rules;
}

}  // namespace

std::string emit_datalog(const Word& q) {
    if (!satisfies_c2(q)) throw std::invalid_argument("query is outside the NL tier");
    std::optional<NlWitness> chosen;
    for (NlWitness& cand : candidates_for(q, /*only_b2b=*/true)) {
        if (validate_min_language(q, cand.head, cand.loop, cand.tail)) {
            chosen = cand;
            break;
        }
    }
    if (!chosen) throw std::invalid_argument("B2B witness required");
    const Word& uv = chosen->loop;
    const Word& wv = chosen->tail;
    const Word& head = chosen->head;

    std::string out;
    auto emit = [&](const std::vector<std::string>& rules) {
        for (const auto& r : rules) out += r + "\n";
        out += "\n";
    };

    emit([&] {
        auto rules = terminal_rules("uvterminal", uv);
        auto more = terminal_rules("wvterminal", wv);
        rules.insert(rules.end(), more.begin(), more.end());
        return rules;
    }());

    // head-terminal: stuck inside one of the head's loop copies (the head
    // is a power of the loop whenever the suffix s is empty; a nonempty s
    // contributes its own stuck positions first)
    {
        std::vector<std::string> rules;
        std::size_t s_len = head.size() % uv.size();
        Word s = head.prefix(s_len);
        std::size_t copies = (head.size() - s_len) / uv.size();
        for (std::size_t t = 0; t < s.size(); ++t) {
            auto vars = chain_vars(t, false);
            std::string body;
            if (t == 0) {
                body = "c(X), not " + lower(s.at(0)) + "key(X)";
            } else {
                body = chain_atoms(s.prefix(t), vars) + ", not " + lower(s.at(t)) + "key(" + vars[t] + ")";
            }
            rules.push_back("uv2terminal(" + vars[0] + ") :- " + body + ".");
        }
        for (std::size_t i = 0; i < copies; ++i) {
            Word pre = s + uv.repeated(i);
            if (pre.empty()) {
                rules.push_back("uv2terminal(X) :- uvterminal(X).");
            } else {
                auto vars = chain_vars(pre.size(), true);
                rules.push_back("uv2terminal(" + vars[0] + ") :- " + chain_atoms(pre, vars) +
                                ", uvterminal(" + vars[pre.size()] + ").");
            }
        }
        emit(rules);
    }

    {
        std::vector<std::string> rules;
        auto vars = chain_vars(uv.size(), true);
        std::string guards;
        for (std::size_t i = 0; i <= uv.size(); ++i) guards += ", wvterminal(" + vars[i] + ")";
        rules.push_back("uvpath(" + vars[0] + "," + vars[uv.size()] + ") :- " + chain_atoms(uv, vars) +
                        guards + ".");
        auto rvars = chain_vars(uv.size() + 1, true);
        std::string rbody = "uvpath(" + rvars[0] + "," + rvars[1] + "), " +
                            chain_atoms(uv, rvars, 1);
        for (std::size_t i = 2; i <= uv.size() + 1; ++i) rbody += ", wvterminal(" + rvars[i] + ")";
        rules.push_back("uvpath(" + rvars[0] + "," + rvars[uv.size() + 1] + ") :- " + rbody + ".");
        emit(rules);
    }

    emit({"p(X) :- uvterminal(X), wvterminal(X).", "p(X) :- uvpath(X,Y), uvterminal(Y).",
          "p(X) :- uvpath(X,Y), uvpath(Y,Y)."});

    {
        std::vector<std::string> rules;
        rules.push_back("o(X) :- uv2terminal(X).");
        if (head.empty()) {
            rules.push_back("o(X) :- p(X).");
        } else {
            auto vars = chain_vars(head.size(), true);
            std::string body = chain_atoms(head, vars);
            for (std::size_t a = 0; a < head.size(); ++a) {
                for (std::size_t b = a + 1; b < head.size(); ++b) {
                    if (head.at(a) != head.at(b)) continue;
                    body += ", consistent(" + vars[a] + "," + vars[a + 1] + "," + vars[b] + "," +
                            vars[b + 1] + ")";
                }
            }
            body += ", p(" + vars[head.size()] + ")";
            rules.push_back("o(" + vars[0] + ") :- " + body + ".");
        }
        for (const auto& r : rules) out += r + "\n";
    }
    return out;
}

}  // namespace cqa
