#include "cqa/fixpoint.hpp"

#include <deque>
#include <map>
#include <stdexcept>
#include <vector>

#include "cqa/nfa.hpp"

namespace cqa {

std::set<std::pair<std::string, Word>> FixpointTable::entries_as_words() const {
    std::set<std::pair<std::string, Word>> out;
    for (const auto& [c, len] : entries) out.insert({c, query.prefix(len)});
    return out;
}

std::set<std::pair<std::string, Word>> FixpointTable::derived_as_words() const {
    std::set<std::pair<std::string, Word>> out;
    for (const auto& [c, len] : entries) {
        if (len != query.size()) out.insert({c, query.prefix(len)});
    }
    return out;
}

FixpointTable fixpoint_run(const Instance& db, const Word& q) {
    if (q.empty()) throw std::invalid_argument("empty word");
    const std::size_t n = q.size();
    QueryNfa nfa = build_nfa(q);
    // eps_into[i]: states j with an epsilon edge j -> i
    std::vector<std::vector<std::size_t>> eps_into(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        for (std::size_t i : nfa.eps_from[j]) eps_into[i].push_back(j);
    }

    std::vector<Block> blks = blocks(db);
    // per (block, prefix state i with q[i] == block relation): number of
    // member values still missing (value, i+1)
    std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>> value_watch;
    // remaining[b][t] parallel to the watch layout below
    std::vector<std::vector<std::size_t>> remaining(blks.size());
    std::vector<std::vector<std::size_t>> rule_state(blks.size());
    for (std::size_t b = 0; b < blks.size(); ++b) {
        for (std::size_t i = 0; i < n; ++i) {
            if (q.at(i) != blks[b].relation) continue;
            rule_state[b].push_back(i);
            remaining[b].push_back(blks[b].members.size());
        }
        for (std::size_t t = 0; t < rule_state[b].size(); ++t) {
            for (const auto& f : blks[b].members) {
                value_watch[f.value].push_back({b, t});
            }
        }
    }

    FixpointTable table{q, {}};
    std::deque<std::pair<std::string, std::size_t>> work;
    auto add = [&](const std::string& c, std::size_t s) {
        if (table.entries.insert({c, s}).second) work.push_back({c, s});
    };
    for (const auto& c : db.adom()) add(c, n);

    while (!work.empty()) {
        auto [y, s] = work.front();
        work.pop_front();
        if (s == 0) continue;
        auto it = value_watch.find(y);
        if (it == value_watch.end()) continue;
        for (const auto& [b, t] : it->second) {
            if (rule_state[b][t] + 1 != s) continue;
            if (remaining[b][t] == 0) continue;
            if (--remaining[b][t] == 0) {
                std::size_t i = rule_state[b][t];
                add(blks[b].key, i);
                for (std::size_t w : eps_into[i]) add(blks[b].key, w);
            }
        }
    }
    return table;
}

bool fixpoint_solve(const Instance& db, const Word& q) {
    if (!satisfies_c3(q)) throw std::invalid_argument("query does not stay a factor under rewinding");
    FixpointTable t = fixpoint_run(db, q);
    for (const auto& c : db.adom()) {
        if (t.contains(c, 0)) return true;
    }
    return false;
}

}  // namespace cqa
