// cqapath: classify path queries and compute certain answers over
// inconsistent instances with primary keys.
//
// Exit codes: 0 certain true (or plain success), 1 certain false,
// 2 usage/parse error, 3 resource cap exceeded.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cqa/bcq.hpp"
#include "cqa/fixpoint.hpp"
#include "cqa/fo.hpp"
#include "cqa/genquery.hpp"
#include "cqa/instance.hpp"
#include "cqa/nl.hpp"
#include "cqa/oracle.hpp"
#include "cqa/reductions.hpp"
#include "cqa/solve.hpp"

namespace {

using namespace cqa;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool looks_generalized(const std::string& text) {
    return text.find_first_of(" \t:") != std::string::npos || text == "_";
}

std::string counterexample_line(const Instance& r) {
    std::string out;
    for (const auto& f : r.facts()) {
        if (!out.empty()) out += ";";
        out += f.str();
    }
    return out;
}

int cmd_classify(const std::string& query) {
    if (looks_generalized(query)) {
        GeneralizedPathQuery q = GeneralizedPathQuery::parse(query);
        Classification c = classify_generalized(q);
        std::cout << "classification=" << tier_name(c.tier) << "\n"
                  << "d1=" << (c.c1 ? "true" : "false") << "\n"
                  << "d2=" << (c.c2 ? "true" : "false") << "\n"
                  << "d3=" << (c.c3 ? "true" : "false") << "\n";
        return 0;
    }
    Classification c = classify(Word::parse(query));
    std::cout << "classification=" << tier_name(c.tier) << "\n"
              << "c1=" << (c.c1 ? "true" : "false") << "\n"
              << "c2=" << (c.c2 ? "true" : "false") << "\n"
              << "c3=" << (c.c3 ? "true" : "false") << "\n";
    return 0;
}

int cmd_solve(const std::string& query, const std::string& db_file, const std::string& method,
              std::uint64_t max_repairs) {
    Instance db = Instance::parse(slurp(db_file));
    if (looks_generalized(query)) {
        GeneralizedPathQuery q = GeneralizedPathQuery::parse(query);
        Classification c = classify_generalized(q);
        auto t0 = std::chrono::steady_clock::now();
        bool answer = solve_generalized(db, q, max_repairs);
        auto t1 = std::chrono::steady_clock::now();
        std::cout << "classification=" << tier_name(c.tier) << "\n"
                  << "method=generalized\n"
                  << "answer=" << (answer ? "true" : "false") << "\n"
                  << "time_ms=" << std::chrono::duration<double, std::milli>(t1 - t0).count()
                  << "\n";
        return answer ? 0 : 1;
    }
    Word q = Word::parse(query);
    SolveReport rep = solve(db, q, method_from_name(method), max_repairs);
    std::cout << "classification=" << tier_name(rep.classification.tier) << "\n"
              << "method=" << method_name(rep.used)
              << (rep.nl_fell_back ? " (nl fell back)" : "") << "\n"
              << "answer=" << (rep.answer ? "true" : "false") << "\n";
    if (rep.witness) std::cout << "witness=" << *rep.witness << "\n";
    if (rep.counterexample)
        std::cout << "counterexample=" << counterexample_line(*rep.counterexample) << "\n";
    std::cout << "time_ms=" << rep.millis << "\n";
    return rep.answer ? 0 : 1;
}

int cmd_rewrite(const std::string& query) {
    FoRewriting rew = build_fo_rewriting(Word::parse(query));
    std::cout << rew.closed.render() << "\n";
    return 0;
}

int cmd_datalog(const std::string& query) {
    std::cout << emit_datalog(Word::parse(query));
    return 0;
}

int cmd_gen(const std::string& kind, const std::string& input_file, const std::string& query,
            std::uint64_t seed, const std::string& out_file) {
    Word q = Word::parse(query);
    FreshNames fresh(seed);
    Instance db;
    if (kind == "reach") db = reduce_reachability(Digraph::parse(slurp(input_file)), q, fresh);
    else if (kind == "sat") db = reduce_sat(Cnf::parse_dimacs(slurp(input_file)), q, fresh);
    else if (kind == "mcvp") db = reduce_mcvp(MonotoneCircuit::parse(slurp(input_file)), q, fresh);
    else throw std::invalid_argument("unknown generator kind: " + kind);
    std::string text = db.serialize();
    if (!out_file.empty()) {
        std::ofstream out(out_file, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + out_file);
        out << text;
    } else {
        std::cout << text;
    }
    return 0;
}

int cmd_oracle(const std::string& query, const std::string& db_file, std::uint64_t max_repairs) {
    Instance db = Instance::parse(slurp(db_file));
    Bcq q = query.find('(') != std::string::npos ? Bcq::parse(query)
                                                 : Bcq::from_word(Word::parse(query));
    CertainResult res = certain_bruteforce(db, q, max_repairs);
    std::cout << "answer=" << (res.certain ? "true" : "false") << "\n"
              << "repairs=" << res.repair_count << "\n";
    if (res.counterexample)
        std::cout << "counterexample=" << counterexample_line(*res.counterexample) << "\n";
    return res.certain ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"consistent query answering for path queries over keyed binary relations"};
    app.require_subcommand(1);

    std::string query, db_file, input_file, out_file;
    std::string method = "auto";
    std::string gen_kind;
    std::uint64_t max_repairs = cqa::kDefaultRepairCap;
    std::uint64_t seed = 0;

    auto* c_classify = app.add_subcommand("classify", "complexity tier of a query");
    c_classify->add_option("query", query)->required();

    auto* c_solve = app.add_subcommand("solve", "certain answer on an instance");
    c_solve->add_option("query", query)->required();
    c_solve->add_option("db", db_file)->required();
    c_solve->add_option("--method", method)->check(CLI::IsMember({"auto", "fo", "nl", "fixpoint", "bruteforce"}));
    c_solve->add_option("--max-repairs", max_repairs);

    auto* c_rewrite = app.add_subcommand("rewrite", "consistent first-order rewriting");
    c_rewrite->add_option("query", query)->required();

    auto* c_datalog = app.add_subcommand("datalog", "linear Datalog program for the NL tier");
    c_datalog->add_option("query", query)->required();

    auto* c_gen = app.add_subcommand("gen", "instance generators (reach, sat, mcvp)");
    c_gen->add_option("kind", gen_kind)->required()->check(CLI::IsMember({"reach", "sat", "mcvp"}));
    c_gen->add_option("input", input_file)->required();
    c_gen->add_option("query", query)->required();
    c_gen->add_option("--seed", seed);
    c_gen->add_option("--out", out_file);

    auto* c_oracle = app.add_subcommand("oracle", "brute-force certain answer");
    c_oracle->add_option("query", query)->required();
    c_oracle->add_option("db", db_file)->required();
    c_oracle->add_option("--max-repairs", max_repairs);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (c_classify->parsed()) return cmd_classify(query);
        if (c_solve->parsed()) return cmd_solve(query, db_file, method, max_repairs);
        if (c_rewrite->parsed()) return cmd_rewrite(query);
        if (c_datalog->parsed()) return cmd_datalog(query);
        if (c_gen->parsed()) return cmd_gen(gen_kind, input_file, query, seed, out_file);
        if (c_oracle->parsed()) return cmd_oracle(query, db_file, max_repairs);
    } catch (const cqa::CapExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const cqa::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
