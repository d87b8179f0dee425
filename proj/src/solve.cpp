#include "cqa/solve.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "cqa/bcq.hpp"
#include "cqa/fixpoint.hpp"
#include "cqa/fo.hpp"
#include "cqa/nl.hpp"
#include "cqa/oracle.hpp"

namespace cqa {

Method method_from_name(const std::string& name) {
    if (name == "auto") return Method::Auto;
    if (name == "fo") return Method::Fo;
    if (name == "nl") return Method::Nl;
    if (name == "fixpoint") return Method::Fixpoint;
    if (name == "bruteforce") return Method::BruteForce;
    throw std::invalid_argument("unknown method: " + name);
}

std::string method_name(Method m) {
    switch (m) {
        case Method::Auto: return "auto";
        case Method::Fo: return "fo";
        case Method::Nl: return "nl";
        case Method::Fixpoint: return "fixpoint";
        case Method::BruteForce: return "bruteforce";
    }
    return "?";
}

namespace {

// Depth-first repair search for a falsifying repair. Singleton blocks are
// fixed up front; a partial choice that already satisfies q cannot be
// completed into a counterexample, so the branch is cut.
std::optional<Instance> falsifying_repair(const Instance& db, const Bcq& q, std::uint64_t cap) {
    std::vector<Block> all = blocks(db);
    std::vector<Fact> fixed;
    std::vector<Block> open;
    for (auto& b : all) {
        if (b.members.size() == 1) fixed.push_back(b.members[0]);
        else open.push_back(b);
    }
    std::uint64_t budget = 1;
    for (const auto& b : open) {
        if (budget > cap / b.members.size()) throw CapExceededError(cap);
        budget *= b.members.size();
    }
    std::vector<Fact> chosen = fixed;
    std::optional<Instance> found;
    auto rec = [&](auto&& self, std::size_t i) -> bool {
        if (satisfies_bcq(Instance(chosen), q)) return false;
        if (i == open.size()) {
            found = Instance(chosen);
            return true;
        }
        for (const Fact& f : open[i].members) {
            chosen.push_back(f);
            if (self(self, i + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    rec(rec, 0);
    return found;
}

}  // namespace

SolveReport solve(const Instance& db, const Word& q, Method method, std::uint64_t cap) {
    auto t0 = std::chrono::steady_clock::now();
    SolveReport rep;
    rep.classification = classify(q);
    rep.requested = method;

    Method m = method;
    if (m == Method::Auto) {
        switch (rep.classification.tier) {
            case Tier::FO: m = Method::Fo; break;
            case Tier::NL_COMPLETE: m = Method::Nl; break;
            case Tier::PTIME_COMPLETE: m = Method::Fixpoint; break;
            case Tier::CONP_COMPLETE: m = Method::BruteForce; break;
        }
    }
    if (m == Method::Fo && !rep.classification.c1)
        throw std::invalid_argument("method fo requires an FO-tier query");
    if (m == Method::Nl && !rep.classification.c2)
        throw std::invalid_argument("method nl requires an NL-tier (or easier) query");
    if (m == Method::Fixpoint && !rep.classification.c3)
        throw std::invalid_argument("method fixpoint requires a PTIME-tier (or easier) query");

    rep.used = m;
    switch (m) {
        case Method::Fo: {
            FoRewriting rew = build_fo_rewriting(q);
            rep.answer = false;
            for (const auto& c : db.adom_sorted()) {
                if (eval_fo_with(rew.open, db, rew.head_var, c)) {
                    rep.answer = true;
                    rep.witness = c;
                    break;
                }
            }
            break;
        }
        case Method::Nl: {
            try {
                detail::NlRun run = detail::nl_run(db, q);
                rep.answer = run.answer;
                rep.witness = run.witness;
            } catch (const NlFallback&) {
                rep.nl_fell_back = true;
                rep.used = Method::Fixpoint;
                FixpointTable t = fixpoint_run(db, q);
                rep.answer = false;
                for (const auto& c : db.adom_sorted()) {
                    if (t.contains(c, 0)) {
                        rep.answer = true;
                        rep.witness = c;
                        break;
                    }
                }
            }
            break;
        }
        case Method::Fixpoint: {
            FixpointTable t = fixpoint_run(db, q);
            rep.answer = false;
            for (const auto& c : db.adom_sorted()) {
                if (t.contains(c, 0)) {
                    rep.answer = true;
                    rep.witness = c;
                    break;
                }
            }
            break;
        }
        case Method::BruteForce: {
            auto cex = falsifying_repair(db, Bcq::from_word(q), cap);
            rep.answer = !cex.has_value();
            rep.counterexample = std::move(cex);
            break;
        }
        case Method::Auto:
            throw std::logic_error("unresolved method");
    }
    auto t1 = std::chrono::steady_clock::now();
    rep.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rep;
}

}  // namespace cqa
