#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "cqa/instance.hpp"
#include "cqa/word.hpp"

namespace cqa {

// The prefix-state NFA of a path query. States are the prefixes of the
// query, identified by length. State i steps to i+1 on query[i]; an
// epsilon transition runs from each longer prefix to each shorter one that
// ends in the same symbol. The accepting state is the full query.
struct QueryNfa {
    Word query;
    std::size_t initial = 0;
    // eps_from[j] lists the targets i < j of the epsilon edges leaving j
    std::vector<std::vector<std::size_t>> eps_from;

    std::size_t state_count() const { return query.size() + 1; }
    std::size_t accepting() const { return query.size(); }
    std::size_t forward_edge_count() const { return query.size(); }
    std::size_t backward_edge_count() const;

    // One transition per line: `<state> <label> <state>`, the empty prefix
    // printed as "-" and epsilon labels as "eps". Debug aid.
    std::string dump() const;
};

// `start` must be a prefix of q; the empty word gives the plain automaton.
QueryNfa build_nfa(const Word& q, const Word& start = Word{});

bool accepts(const QueryNfa& nfa, const Word& trace);

// The closure of {q} under rewinding, restricted to words of length at
// most max_len. Requires max_len >= |q|.
std::set<Word> closure_upto(const Word& q, std::size_t max_len);

// Constants of the consistent instance r from which some path's trace is
// accepted. With use_min, a trace only counts if no proper prefix of it is
// accepted as well.
std::set<std::string> start_set(const QueryNfa& nfa, const Instance& r, bool use_min = false);
std::set<std::string> start_set(const Word& q, const Instance& r, bool use_min = false);

namespace detail {

// good(c, s): from constant c in state s, some path's trace reaches the
// accepting state of the automaton inside the consistent instance.
struct GoodTable {
    std::vector<std::string> adom;  // sorted
    std::size_t states = 0;
    std::vector<char> cells;  // [index(c) * states + s]

    std::size_t index_of(const std::string& c) const;
    bool at(std::size_t ci, std::size_t s) const { return cells[ci * states + s] != 0; }
};

GoodTable good_table(const QueryNfa& nfa, const Instance& r);

}  // namespace detail

}  // namespace cqa
