#pragma once

#include <cstdint>
#include <optional>
#include <set>

#include "cqa/bcq.hpp"
#include "cqa/instance.hpp"
#include "cqa/word.hpp"

namespace cqa {

struct CertainResult {
    bool certain;
    std::optional<Instance> counterexample;  // a repair falsifying q
    std::uint64_t repair_count;
};

// Ground truth by repair enumeration. Stops at the first falsifying repair.
CertainResult certain_bruteforce(const Instance& db, const Bcq& q,
                                 std::uint64_t cap = kDefaultRepairCap);

// The states of the prefix automaton that can read a path starting with
// fact f in the consistent instance r. All states end with f's relation,
// and the set is upward closed among those.
struct StatesSet {
    Fact fact;
    std::set<std::size_t> state_lengths;

    std::set<Word> state_words(const Word& q) const;
};

StatesSet states_set(const Fact& f, const Instance& r, const Word& q);

// Intersection of states_set(f, r, q) over all repairs r containing f.
StatesSet min_states_set(const Fact& f, const Instance& db, const Word& q,
                         std::uint64_t cap = kDefaultRepairCap);

// A repair whose start set is contained in every other repair's start set,
// built per block from facts with blockwise-minimal intersected states sets.
Instance build_minimal_repair(const Instance& db, const Word& q,
                              std::uint64_t cap = kDefaultRepairCap);

}  // namespace cqa
