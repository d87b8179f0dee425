#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cqa/bcq.hpp"
#include "cqa/instance.hpp"
#include "cqa/word.hpp"

namespace cqa {

// A path query whose junctions may pin constants. Every constant sits at
// exactly one junction (covering the value position of one atom and the key
// position of the next); variable junctions are anonymous and distinct.
class GeneralizedPathQuery {
public:
    struct Junction {
        bool is_var;
        std::string constant;  // meaningful when !is_var
        auto operator<=>(const Junction&) const = default;
    };

    GeneralizedPathQuery(std::vector<std::string> relations, std::vector<Junction> junctions);

    // Tokens alternate junction, relation, junction, ...; `_` is a fresh
    // variable and `:name` a constant. A plain word is sugar for a query
    // with variable junctions only.
    static GeneralizedPathQuery parse(const std::string& text);
    static GeneralizedPathQuery from_word(const Word& q);

    std::size_t atom_count() const { return relations_.size(); }
    const std::vector<std::string>& relations() const { return relations_; }
    const std::vector<Junction>& junctions() const { return junctions_; }

    bool constant_free() const;
    Word word() const { return Word(relations_); }
    Bcq to_bcq() const;
    std::string str() const;

private:
    std::vector<std::string> relations_;
    std::vector<Junction> junctions_;
};

// Either a constant or the top marker for a constant-free end.
struct EndMarker {
    std::optional<std::string> constant;
    bool is_top() const { return !constant.has_value(); }
};

// Longest prefix whose key junctions are all variables; its final junction
// may carry a constant.
GeneralizedPathQuery characteristic_prefix(const GeneralizedPathQuery& q);

// The characteristic prefix's word, with a trailing constant replaced by a
// fresh relation atom named in the reserved `__ext_` namespace.
Word extend(const GeneralizedPathQuery& q);

// Offset embeddings: relation names must match positionally and constants
// map to themselves. Since all junction variables are distinct, this is
// exactly query homomorphism; prefix_only pins offset zero.
bool homomorphism_exists(const GeneralizedPathQuery& a, const GeneralizedPathQuery& b,
                         bool prefix_only);

// Tier of the generalized query. The flags of the result hold the three
// generalized conditions; with at least one constant the PTIME tier cannot
// occur.
Classification classify_generalized(const GeneralizedPathQuery& q);

// Certain answer: split at constant junctions, answer constant-headed
// segments with the fixed-head rewriting, reduce a constant-ended
// characteristic prefix to its extended word on an augmented instance, and
// conjoin.
bool solve_generalized(const Instance& db, const GeneralizedPathQuery& q,
                       std::uint64_t cap = kDefaultRepairCap);

}  // namespace cqa
