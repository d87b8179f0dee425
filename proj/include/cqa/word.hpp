#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace cqa {

// Error carrying a character offset into the offending input text.
class ParseError : public std::exception {
public:
    ParseError(std::string message, std::size_t offset);
    const char* what() const noexcept override { return full_.c_str(); }
    std::size_t offset() const { return offset_; }

private:
    std::string full_;
    std::size_t offset_;
};

// A path query seen as a word over the alphabet of relation names.
//
// Text form: either a run of single-uppercase-letter names ("RXRY"), or
// names joined by '-' ("Emp-Mgr-Emp"). Names match [A-Za-z][A-Za-z0-9_]*.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<std::string> symbols);

    static Word parse(const std::string& text);

    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    const std::string& at(std::size_t i) const { return symbols_.at(i); }
    const std::vector<std::string>& symbols() const { return symbols_; }

    Word sub(std::size_t pos, std::size_t len) const;
    Word prefix(std::size_t len) const { return sub(0, len); }
    Word suffix_from(std::size_t pos) const { return sub(pos, size() - pos); }
    Word suffix(std::size_t len) const { return sub(size() - len, len); }

    Word operator+(const Word& rhs) const;
    Word repeated(std::size_t k) const;

    bool is_prefix_of(const Word& other) const;
    bool is_suffix_of(const Word& other) const;
    bool is_factor_of(const Word& other) const;

    bool self_join_free() const;
    std::set<std::string> alphabet() const;

    std::string str() const;

    auto operator<=>(const Word&) const = default;

private:
    std::vector<std::string> symbols_;
};

// Complexity tier of CQA for a path query.
enum class Tier { FO, NL_COMPLETE, PTIME_COMPLETE, CONP_COMPLETE };

std::string tier_name(Tier t);

struct Classification {
    Tier tier;
    bool c1;
    bool c2;
    bool c3;
};

// One application of rewinding: every word uRvRvRw with q = uRvRw.
std::set<Word> rewind_all(const Word& q);

// q is a prefix of every word it rewinds to.
bool satisfies_c1(const Word& q);
// Every rewind keeps q as a factor, and for any three consecutive
// occurrences of a symbol R in q = u Rv1 Rv2 Rw, either v1 = v2 or Rw is a
// prefix of Rv1.
bool satisfies_c2(const Word& q);
// q is a factor of every word it rewinds to.
bool satisfies_c3(const Word& q);

Classification classify(const Word& q);

enum class BForm { B1, B2A, B2B, B3 };

std::string bform_name(BForm f);

// A verified placement of q inside one of the four pattern shapes:
//   B1:  w v^k        (q a prefix; vw self-join-free)
//   B2A: u^j w v^k    (q a factor; uvw self-join-free)
//   B2B: (uv)^k w v   (q a factor; uvw self-join-free)
//   B3:  u w (uv)^k   (q a factor; uvw self-join-free)
struct BWitness {
    BForm form;
    Word u;
    Word v;
    Word w;
    std::size_t j = 0;  // B2A only
    std::size_t k = 0;
    std::size_t offset = 0;  // position of q inside the pattern

    Word pattern() const;

    auto operator<=>(const BWitness&) const = default;
};

// Exhaustive bounded enumeration over self-join-free u,v,w drawn from the
// alphabet of q, with j,k <= |q|. Every returned witness has been checked
// against its expansion. Test-support oracle; classify() does not use it.
std::set<BWitness> decompose(const Word& q);

// A factor R u R of q whose interior omits R, with the repetition flags of
// the surrounding prefix/suffix.
struct Episode {
    std::size_t offset;
    Word episode;
    bool left_repeating;
    bool right_repeating;

    auto operator<=>(const Episode&) const = default;
};

std::vector<Episode> find_episodes(const Word& q);

}  // namespace cqa
