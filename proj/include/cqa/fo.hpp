#pragma once

#include <memory>
#include <string>

#include "cqa/bcq.hpp"
#include "cqa/instance.hpp"
#include "cqa/word.hpp"

namespace cqa {

// First-order formulas over binary atoms, with quantifiers ranging over the
// active domain. Immutable tree; cheap to copy.
class FoFormula {
public:
    static FoFormula atom(std::string relation, Term key, Term value);
    static FoFormula conj(FoFormula l, FoFormula r);
    static FoFormula implies(FoFormula l, FoFormula r);
    static FoFormula exists(std::string var, FoFormula body);
    static FoFormula forall(std::string var, FoFormula body);
    static FoFormula eq(std::string var, std::string constant);

    // `E x.(...)`, `A x.(...)`, `&`, `->`, `Rel(t1,t2)`, `x = "c"`.
    std::string render() const;

    struct Node;  // implementation detail, defined in fo.cpp

    friend bool eval_fo(const FoFormula& f, const Instance& db);
    friend bool eval_fo_with(const FoFormula& f, const Instance& db, const std::string& var,
                             const std::string& value);

private:
    std::shared_ptr<const Node> node_;
};

// The consistent rewriting of a path query: open formula psi(x1) plus the
// closed sentence E x1.(psi). The closed form decides certainty exactly on
// the FO tier; the fixed-head form E x1.(psi & x1 = c) is exact for every
// path query.
struct FoRewriting {
    FoFormula open;
    std::string head_var;
    FoFormula closed;
};

FoRewriting build_fo_rewriting(const Word& q);

// Active-domain evaluation of a closed formula. Throws on unbound variables.
bool eval_fo(const FoFormula& f, const Instance& db);

// Evaluation with one pre-bound variable (the open rewriting's head).
bool eval_fo_with(const FoFormula& f, const Instance& db, const std::string& var,
                  const std::string& value);

}  // namespace cqa
