#pragma once

#include <string>
#include <vector>

#include "cqa/instance.hpp"
#include "cqa/word.hpp"

namespace cqa {

struct Term {
    bool is_var;
    std::string name;

    static Term var(std::string n) { return Term{true, std::move(n)}; }
    static Term constant(std::string n) { return Term{false, std::move(n)}; }
    auto operator<=>(const Term&) const = default;
};

struct BcqAtom {
    std::string relation;
    Term key;
    Term value;
    auto operator<=>(const BcqAtom&) const = default;
};

// A Boolean conjunctive query over binary relations.
struct Bcq {
    std::vector<BcqAtom> atoms;

    // `R(x,y),S(y,x)` — lowercase tokens are variables, quoted tokens are
    // constants; bare tokens not starting with a lowercase letter are also
    // read as constants (so numbers can be written unquoted).
    static Bcq parse(const std::string& text);

    // The path query as a chain R1(x1,x2), ..., Rk(xk,xk+1).
    static Bcq from_word(const Word& q);

    std::string str() const;
};

// The word's chain with its first key replaced by the constant c.
Bcq fixed_head(const Word& q, const std::string& c);

// Satisfaction of q on a single instance: some valuation maps q into r.
bool satisfies_bcq(const Instance& r, const Bcq& q);

}  // namespace cqa
