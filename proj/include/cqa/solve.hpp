#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cqa/instance.hpp"
#include "cqa/word.hpp"

namespace cqa {

enum class Method { Auto, Fo, Nl, Fixpoint, BruteForce };

Method method_from_name(const std::string& name);
std::string method_name(Method m);

struct SolveReport {
    Classification classification;
    Method requested;
    Method used;
    bool nl_fell_back = false;
    bool answer = false;
    std::optional<std::string> witness;        // certifying constant, yes answers
    std::optional<Instance> counterexample;    // falsifying repair, brute-force path
    double millis = 0.0;
};

// Certain-answer dispatcher. Auto picks the strongest applicable solver:
// FO rewriting on the FO tier, the NL procedure (fixpoint on fallback) on
// the NL tier, the fixpoint on the PTIME tier, and a repair search with
// singleton blocks fixed first on the coNP tier.
SolveReport solve(const Instance& db, const Word& q, Method method = Method::Auto,
                  std::uint64_t cap = kDefaultRepairCap);

}  // namespace cqa
