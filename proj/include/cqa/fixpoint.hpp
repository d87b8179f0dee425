#pragma once

#include <set>
#include <string>
#include <utility>

#include "cqa/instance.hpp"
#include "cqa/word.hpp"

namespace cqa {

// Least fixpoint of the iterative block rule. A pair (c, u) says: every
// repair has a path from c accepted by the prefix automaton started at u.
// Prefixes are stored by length.
struct FixpointTable {
    Word query;
    std::set<std::pair<std::string, std::size_t>> entries;

    bool contains(const std::string& c, std::size_t prefix_len) const {
        return entries.count({c, prefix_len}) > 0;
    }
    std::set<std::pair<std::string, Word>> entries_as_words() const;
    // entries beyond the initialization pairs (c, q)
    std::set<std::pair<std::string, Word>> derived_as_words() const;
};

FixpointTable fixpoint_run(const Instance& db, const Word& q);

// Certain answer on the PTIME tier: some constant carries the empty prefix
// in the fixpoint table. Requires a query that keeps itself as a factor
// under rewinding.
bool fixpoint_solve(const Instance& db, const Word& q);

}  // namespace cqa
