#include "cqa/nfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace cqa {

std::size_t QueryNfa::backward_edge_count() const {
    std::size_t n = 0;
    for (const auto& v : eps_from) n += v.size();
    return n;
}

std::string QueryNfa::dump() const {
    auto state_name = [&](std::size_t i) {
        return i == 0 ? std::string("-") : query.prefix(i).str();
    };
    std::string out;
    for (std::size_t i = 0; i < query.size(); ++i) {
        out += state_name(i) + " " + query.at(i) + " " + state_name(i + 1) + "\n";
    }
    for (std::size_t j = 0; j < eps_from.size(); ++j) {
        for (std::size_t i : eps_from[j]) {
            out += state_name(j) + " eps " + state_name(i) + "\n";
        }
    }
    return out;
}

QueryNfa build_nfa(const Word& q, const Word& start) {
    if (!start.is_prefix_of(q)) throw std::invalid_argument("start is not a prefix of the query");
    QueryNfa nfa;
    nfa.query = q;
    nfa.initial = start.size();
    nfa.eps_from.assign(q.size() + 1, {});
    for (std::size_t j = 1; j <= q.size(); ++j) {
        for (std::size_t i = 1; i < j; ++i) {
            if (q.at(i - 1) == q.at(j - 1)) nfa.eps_from[j].push_back(i);
        }
    }
    return nfa;
}

namespace {

void eps_close(const QueryNfa& nfa, std::set<std::size_t>& states) {
    std::deque<std::size_t> work(states.begin(), states.end());
    while (!work.empty()) {
        std::size_t s = work.front();
        work.pop_front();
        for (std::size_t t : nfa.eps_from[s]) {
            if (states.insert(t).second) work.push_back(t);
        }
    }
}

}  // namespace

bool accepts(const QueryNfa& nfa, const Word& trace) {
    std::set<std::size_t> cur{nfa.initial};
    eps_close(nfa, cur);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        std::set<std::size_t> nxt;
        for (std::size_t s : cur) {
            if (s < nfa.query.size() && nfa.query.at(s) == trace.at(i)) nxt.insert(s + 1);
        }
        eps_close(nfa, nxt);
        cur = std::move(nxt);
        if (cur.empty()) return false;
    }
    return cur.count(nfa.accepting()) > 0;
}

std::set<Word> closure_upto(const Word& q, std::size_t max_len) {
    if (max_len < q.size()) throw std::invalid_argument("max_len smaller than the query");
    std::set<Word> seen{q};
    std::deque<Word> work{q};
    while (!work.empty()) {
        Word w = work.front();
        work.pop_front();
        for (const Word& p : rewind_all(w)) {
            if (p.size() > max_len) continue;
            if (seen.insert(p).second) work.push_back(p);
        }
    }
    return seen;
}

namespace detail {

std::size_t GoodTable::index_of(const std::string& c) const {
    auto it = std::lower_bound(adom.begin(), adom.end(), c);
    if (it == adom.end() || *it != c) throw std::invalid_argument("constant not in adom: " + c);
    return static_cast<std::size_t>(it - adom.begin());
}

GoodTable good_table(const QueryNfa& nfa, const Instance& r) {
    const std::size_t n = nfa.query.size();
    GoodTable t;
    t.adom = r.adom_sorted();
    t.states = n + 1;
    const std::size_t m = t.adom.size();
    t.cells.assign(m * t.states, 0);
    std::vector<std::vector<std::size_t>> eps_into(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        for (std::size_t i : nfa.eps_from[j]) eps_into[i].push_back(j);
    }
    // reversed forward edges, per value index: (key index, state)
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> into(m);
    for (const auto& f : r.facts()) {
        std::size_t ki = t.index_of(f.key);
        std::size_t vi = t.index_of(f.value);
        for (std::size_t s = 0; s < n; ++s) {
            if (nfa.query.at(s) == f.relation) into[vi].push_back({ki, s});
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> work;
    auto add = [&](std::size_t ci, std::size_t s) {
        char& cell = t.cells[ci * t.states + s];
        if (!cell) {
            cell = 1;
            work.push_back({ci, s});
        }
    };
    for (std::size_t ci = 0; ci < m; ++ci) add(ci, n);
    while (!work.empty()) {
        auto [ci, s] = work.back();
        work.pop_back();
        for (std::size_t j : eps_into[s]) add(ci, j);
        if (s == 0) continue;
        for (const auto& [ki, from_state] : into[ci]) {
            if (from_state + 1 == s) add(ki, from_state);
        }
    }
    return t;
}

}  // namespace detail

namespace {

// Per-constant outgoing facts of a consistent instance, keyed by relation.
std::map<std::string, std::map<std::string, std::string>> out_edges(const Instance& r) {
    std::map<std::string, std::map<std::string, std::string>> out;
    for (const auto& f : r.facts()) out[f.key][f.relation] = f.value;
    return out;
}

}  // namespace

std::set<std::string> start_set(const QueryNfa& nfa, const Instance& r, bool use_min) {
    if (!is_consistent(r)) throw std::invalid_argument("instance is not consistent");
    std::set<std::string> out;
    if (!use_min) {
        detail::GoodTable t = detail::good_table(nfa, r);
        for (std::size_t ci = 0; ci < t.adom.size(); ++ci) {
            if (t.at(ci, nfa.initial)) out.insert(t.adom[ci]);
        }
        return out;
    }
    if (nfa.query.size() + 1 > 63) throw std::invalid_argument("query too long for the min automaton");
    auto edges = out_edges(r);
    auto close_mask = [&](std::uint64_t mask) {
        std::deque<std::size_t> work;
        for (std::size_t s = 0; s <= nfa.query.size(); ++s) {
            if (mask & (std::uint64_t{1} << s)) work.push_back(s);
        }
        while (!work.empty()) {
            std::size_t s = work.front();
            work.pop_front();
            for (std::size_t t : nfa.eps_from[s]) {
                if (!(mask & (std::uint64_t{1} << t))) {
                    mask |= std::uint64_t{1} << t;
                    work.push_back(t);
                }
            }
        }
        return mask;
    };
    const std::uint64_t accept_bit = std::uint64_t{1} << nfa.accepting();
    for (const auto& c : r.adom()) {
        std::uint64_t start_mask = close_mask(std::uint64_t{1} << nfa.initial);
        std::set<std::pair<std::string, std::uint64_t>> seen;
        std::deque<std::pair<std::string, std::uint64_t>> work{{c, start_mask}};
        seen.insert({c, start_mask});
        bool found = false;
        while (!work.empty() && !found) {
            auto [cur, mask] = work.front();
            work.pop_front();
            if (mask & accept_bit) {
                // the first accepted prefix ends the search for this trace
                found = true;
                break;
            }
            auto it = edges.find(cur);
            if (it == edges.end()) continue;
            for (const auto& [rel, dst] : it->second) {
                std::uint64_t moved = 0;
                for (std::size_t s = 0; s < nfa.query.size(); ++s) {
                    if ((mask & (std::uint64_t{1} << s)) && nfa.query.at(s) == rel)
                        moved |= std::uint64_t{1} << (s + 1);
                }
                if (moved == 0) continue;
                moved = close_mask(moved);
                if (seen.insert({dst, moved}).second) work.push_back({dst, moved});
            }
        }
        if (found) out.insert(c);
    }
    return out;
}

std::set<std::string> start_set(const Word& q, const Instance& r, bool use_min) {
    return start_set(build_nfa(q), r, use_min);
}

}  // namespace cqa
