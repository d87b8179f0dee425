#include "cqa/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "cqa/nfa.hpp"

namespace cqa {

CertainResult certain_bruteforce(const Instance& db, const Bcq& q, std::uint64_t cap) {
    RepairEnumerator en(db, cap);
    Instance r;
    while (en.next(r)) {
        if (!satisfies_bcq(r, q)) return CertainResult{false, r, en.count()};
    }
    return CertainResult{true, std::nullopt, en.count()};
}

std::set<Word> StatesSet::state_words(const Word& q) const {
    std::set<Word> out;
    for (std::size_t len : state_lengths) out.insert(q.prefix(len));
    return out;
}

StatesSet states_set(const Fact& f, const Instance& r, const Word& q) {
    if (!is_consistent(r)) throw std::invalid_argument("instance is not consistent");
    if (!r.contains(f)) throw std::invalid_argument("fact is not in the instance");
    QueryNfa nfa = build_nfa(q);
    detail::GoodTable good = detail::good_table(nfa, r);
    std::size_t value_idx = good.index_of(f.value);
    StatesSet out{f, {}};
    for (std::size_t p = 1; p <= q.size(); ++p) {
        if (q.at(p - 1) != f.relation) continue;
        // epsilon closure of the state p-1, then consume f
        std::set<std::size_t> cl{p - 1};
        std::vector<std::size_t> work{p - 1};
        while (!work.empty()) {
            std::size_t s = work.back();
            work.pop_back();
            for (std::size_t t : nfa.eps_from[s]) {
                if (cl.insert(t).second) work.push_back(t);
            }
        }
        bool accepted = false;
        for (std::size_t s : cl) {
            if (s < q.size() && q.at(s) == f.relation && good.at(value_idx, s + 1)) {
                accepted = true;
                break;
            }
        }
        if (accepted) out.state_lengths.insert(p);
    }
    return out;
}

namespace {

// Enumerates the repairs of db that contain f by pinning f's block.
Instance pin_fact(const Instance& db, const Fact& f) {
    std::vector<Fact> facts;
    for (const auto& g : db.facts()) {
        if (g.relation == f.relation && g.key == f.key && !(g == f)) continue;
        facts.push_back(g);
    }
    return Instance(std::move(facts));
}

}  // namespace

StatesSet min_states_set(const Fact& f, const Instance& db, const Word& q, std::uint64_t cap) {
    if (!db.contains(f)) throw std::invalid_argument("fact is not in the instance");
    Instance pinned = pin_fact(db, f);
    RepairEnumerator en(pinned, cap);
    StatesSet out{f, {}};
    bool first = true;
    Instance r;
    while (en.next(r)) {
        StatesSet ss = states_set(f, r, q);
        if (first) {
            out.state_lengths = ss.state_lengths;
            first = false;
        } else {
            std::set<std::size_t> inter;
            std::set_intersection(out.state_lengths.begin(), out.state_lengths.end(),
                                  ss.state_lengths.begin(), ss.state_lengths.end(),
                                  std::inserter(inter, inter.begin()));
            out.state_lengths = std::move(inter);
        }
        if (out.state_lengths.empty()) break;
    }
    return out;
}

Instance build_minimal_repair(const Instance& db, const Word& q, std::uint64_t cap) {
    std::vector<Fact> chosen;
    for (const auto& b : blocks(db)) {
        std::vector<std::set<std::size_t>> sets;
        sets.reserve(b.members.size());
        std::set<std::size_t> inter;
        for (std::size_t i = 0; i < b.members.size(); ++i) {
            sets.push_back(min_states_set(b.members[i], db, q, cap).state_lengths);
            if (i == 0) {
                inter = sets[0];
            } else {
                std::set<std::size_t> tmp;
                std::set_intersection(inter.begin(), inter.end(), sets[i].begin(), sets[i].end(),
                                      std::inserter(tmp, tmp.begin()));
                inter = std::move(tmp);
            }
        }
        bool placed = false;
        for (std::size_t i = 0; i < b.members.size() && !placed; ++i) {
            if (sets[i] == inter) {
                chosen.push_back(b.members[i]);
                placed = true;
            }
        }
        if (!placed) throw std::logic_error("no block member attains the minimal states set");
    }
    return Instance(std::move(chosen));
}

}  // namespace cqa
