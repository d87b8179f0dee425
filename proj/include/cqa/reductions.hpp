#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cqa/instance.hpp"
#include "cqa/word.hpp"

namespace cqa {

struct Digraph {
    std::set<std::string> vertices;
    std::set<std::pair<std::string, std::string>> edges;
    std::string s;
    std::string t;

    // header `s=<v> t=<v>` followed by one `a b` edge per line
    static Digraph parse(const std::string& text);
    bool acyclic() const;
};

struct Cnf {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;  // DIMACS literals

    static Cnf parse_dimacs(const std::string& text);
};

struct MonotoneCircuit {
    struct Node {
        enum class Kind { Input, And, Or } kind;
        std::string name;
        bool input_value = false;
        std::string a;
        std::string b;
    };
    std::vector<Node> nodes;  // topologically ordered
    std::string output;

    // `<name> INPUT <0|1>` / `<name> AND <a> <b>` / `<name> OR <a> <b>`,
    // final line `OUTPUT <name>`
    static MonotoneCircuit parse(const std::string& text);
};

// Deterministic source of fresh constants `__g<counter>`.
class FreshNames {
public:
    explicit FreshNames(std::uint64_t seed = 0) : counter_(seed) {}
    std::string next() { return "__g" + std::to_string(counter_++); }

private:
    std::uint64_t counter_;
};

// The canonical path of q between the given endpoints; an absent endpoint
// gets a fresh constant, as do all interior positions. An empty word with
// at most one named endpoint contributes no facts.
std::vector<Fact> gadget(const Word& q, const std::optional<std::string>& a,
                         const std::optional<std::string>& b, FreshNames& fresh);

// Reachability instance: s reaches t iff the certain answer is false.
// Requires an acyclic graph and a query violating the prefix condition.
Instance reduce_reachability(const Digraph& g, const Word& q, FreshNames& fresh);

// Satisfiability instance: the formula is satisfiable iff the certain
// answer is false. Requires a query violating the factor condition.
Instance reduce_sat(const Cnf& f, const Word& q, FreshNames& fresh);

// Circuit-value instance: the output is 1 iff the certain answer is true.
// Requires a PTIME-tier query (factor condition holds, middle one fails).
Instance reduce_mcvp(const MonotoneCircuit& c, const Word& q, FreshNames& fresh);

}  // namespace cqa
