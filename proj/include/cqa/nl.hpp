#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "cqa/instance.hpp"
#include "cqa/word.hpp"

namespace cqa {

// Raised when no supported decomposition covers the query; the dispatcher
// answers such queries with the fixpoint solver instead.
class NlFallback : public std::runtime_error {
public:
    NlFallback() : std::runtime_error("no direct NL decomposition for this query") {}
};

// A decomposition q = head . tail such that the minimal accepted traces of
// the query's automaton are exactly head . loop* . tail. loop and tail are
// self-join-free; the head may repeat symbols.
struct NlWitness {
    Word head;
    Word loop;
    Word tail;
    BWitness source;
};

// Searches the B2B witnesses that embed q as a suffix of (uv)^k wv and the
// B2A witnesses whose footprint leaves a self-join-free tail, validates the
// resulting loop language against the rewind closure, and returns the one
// with the shortest head. nullopt when nothing qualifies.
std::optional<NlWitness> select_nl_witness(const Word& q);

// Certain answer on the NL tier. Requires the consecutive-occurrence
// condition; throws NlFallback when no supported witness exists.
bool nl_solve(const Instance& db, const Word& q);

namespace detail {
struct NlRun {
    bool answer;
    std::optional<std::string> witness;  // constant certifying a yes answer
};
NlRun nl_run(const Instance& db, const Word& q);
}  // namespace detail

// A linear, stratified Datalog program whose `o` predicate captures the
// per-constant failure condition; requires a suffix-embedding B2B witness.
std::string emit_datalog(const Word& q);

}  // namespace cqa
