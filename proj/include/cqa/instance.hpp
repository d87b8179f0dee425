#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cqa {

constexpr std::uint64_t kDefaultRepairCap = std::uint64_t{1} << 20;

class CapExceededError : public std::runtime_error {
public:
    explicit CapExceededError(std::uint64_t cap)
        : std::runtime_error("instance too large for enumeration (more than " +
                             std::to_string(cap) + " repairs)") {}
};

// A binary fact R(key, value); the first position is the primary key.
struct Fact {
    std::string relation;
    std::string key;
    std::string value;

    std::string str() const { return relation + "(" + key + "," + value + ")"; }
    auto operator<=>(const Fact&) const = default;
};

// A finite set of facts. Facts are kept sorted and deduplicated.
class Instance {
public:
    Instance() = default;
    explicit Instance(std::vector<Fact> facts);

    // One fact per line, `Rel(key,value)`. '#' starts a comment, blank
    // lines are ignored. Duplicate lines collapse to one fact.
    static Instance parse(const std::string& text);

    const std::vector<Fact>& facts() const { return facts_; }
    bool contains(const Fact& f) const;
    std::size_t size() const { return facts_.size(); }
    bool empty() const { return facts_.empty(); }

    std::set<std::string> adom() const;
    std::vector<std::string> adom_sorted() const;

    Instance with_fact(const Fact& f) const;

    std::string serialize() const;

    auto operator<=>(const Instance&) const = default;

private:
    std::vector<Fact> facts_;
};

struct Block {
    std::string relation;
    std::string key;
    std::vector<Fact> members;
};

// Partition of the facts by (relation, key), ordered lexicographically.
std::vector<Block> blocks(const Instance& db);

bool is_consistent(const Instance& db);

std::uint64_t repair_count(const Instance& db);

// Enumerates every repair in mixed-radix order over the ordered blocks.
// Construction throws CapExceededError when the repair count exceeds cap.
class RepairEnumerator {
public:
    explicit RepairEnumerator(const Instance& db, std::uint64_t cap = kDefaultRepairCap);

    std::uint64_t count() const { return count_; }
    bool next(Instance& out);
    void reset();

private:
    std::vector<Block> blocks_;
    std::vector<std::size_t> cursor_;
    std::uint64_t count_;
    bool done_;
};

}  // namespace cqa
