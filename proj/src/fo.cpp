#include "cqa/fo.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace cqa {

struct FoFormula::Node {
    enum class Kind { Atom, And, Implies, Exists, Forall, Eq } kind;
    // Atom
    std::string relation;
    Term key{true, ""};
    Term value{true, ""};
    // And / Implies
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
    // Exists / Forall / Eq
    std::string var;
    std::shared_ptr<const Node> body;
    std::string constant;
};

namespace {

using Node = FoFormula::Node;

}  // namespace

FoFormula FoFormula::atom(std::string relation, Term key, Term value) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Atom;
    n->relation = std::move(relation);
    n->key = std::move(key);
    n->value = std::move(value);
    FoFormula f;
    f.node_ = n;
    return f;
}

FoFormula FoFormula::conj(FoFormula l, FoFormula r) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::And;
    n->left = l.node_;
    n->right = r.node_;
    FoFormula f;
    f.node_ = n;
    return f;
}

FoFormula FoFormula::implies(FoFormula l, FoFormula r) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Implies;
    n->left = l.node_;
    n->right = r.node_;
    FoFormula f;
    f.node_ = n;
    return f;
}

FoFormula FoFormula::exists(std::string var, FoFormula body) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Exists;
    n->var = std::move(var);
    n->body = body.node_;
    FoFormula f;
    f.node_ = n;
    return f;
}

FoFormula FoFormula::forall(std::string var, FoFormula body) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Forall;
    n->var = std::move(var);
    n->body = body.node_;
    FoFormula f;
    f.node_ = n;
    return f;
}

FoFormula FoFormula::eq(std::string var, std::string constant) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Eq;
    n->var = std::move(var);
    n->constant = std::move(constant);
    FoFormula f;
    f.node_ = n;
    return f;
}

namespace {

std::string render_node(const Node& n) {
    auto term = [](const Term& t) { return t.is_var ? t.name : "\"" + t.name + "\""; };
    switch (n.kind) {
        case Node::Kind::Atom:
            return n.relation + "(" + term(n.key) + "," + term(n.value) + ")";
        case Node::Kind::And:
            return "(" + render_node(*n.left) + " & " + render_node(*n.right) + ")";
        case Node::Kind::Implies:
            return "(" + render_node(*n.left) + " -> " + render_node(*n.right) + ")";
        case Node::Kind::Exists:
            return "E " + n.var + ".(" + render_node(*n.body) + ")";
        case Node::Kind::Forall:
            return "A " + n.var + ".(" + render_node(*n.body) + ")";
        case Node::Kind::Eq:
            return n.var + " = \"" + n.constant + "\"";
    }
    throw std::logic_error("bad node");
}

struct Evaluator {
    const std::set<Fact>& facts;
    const std::vector<std::string>& adom;
    std::map<std::string, std::string> env;

    std::string resolve(const Term& t) {
        if (!t.is_var) return t.name;
        auto it = env.find(t.name);
        if (it == env.end()) throw std::invalid_argument("unbound variable: " + t.name);
        return it->second;
    }

    bool eval(const Node& n) {
        switch (n.kind) {
            case Node::Kind::Atom:
                return facts.count(Fact{n.relation, resolve(n.key), resolve(n.value)}) > 0;
            case Node::Kind::And:
                return eval(*n.left) && eval(*n.right);
            case Node::Kind::Implies:
                return !eval(*n.left) || eval(*n.right);
            case Node::Kind::Exists: {
                auto saved = env.find(n.var) != env.end() ? std::optional(env[n.var]) : std::nullopt;
                for (const auto& c : adom) {
                    env[n.var] = c;
                    if (eval(*n.body)) {
                        restore(n.var, saved);
                        return true;
                    }
                }
                restore(n.var, saved);
                return false;
            }
            case Node::Kind::Forall: {
                auto saved = env.find(n.var) != env.end() ? std::optional(env[n.var]) : std::nullopt;
                for (const auto& c : adom) {
                    env[n.var] = c;
                    if (!eval(*n.body)) {
                        restore(n.var, saved);
                        return false;
                    }
                }
                restore(n.var, saved);
                return true;
            }
            case Node::Kind::Eq:
                return resolve(Term::var(n.var)) == n.constant;
        }
        throw std::logic_error("bad node");
    }

    void restore(const std::string& var, const std::optional<std::string>& saved) {
        if (saved) env[var] = *saved;
        else env.erase(var);
    }
};

bool eval_impl(const Instance& db, std::map<std::string, std::string> env,
               const std::shared_ptr<const Node>& node) {
    std::set<Fact> facts(db.facts().begin(), db.facts().end());
    std::vector<std::string> adom = db.adom_sorted();
    Evaluator ev{facts, adom, std::move(env)};
    return ev.eval(*node);
}

}  // namespace

std::string FoFormula::render() const { return render_node(*node_); }

FoRewriting build_fo_rewriting(const Word& q) {
    if (q.empty()) throw std::invalid_argument("empty word");
    auto var = [](std::size_t i) { return "x" + std::to_string(i); };
    // psi_k = E x_{k+1}. R_k(x_k, x_{k+1}); each earlier step guards every
    // continuation of the block chosen at its position.
    FoFormula psi = FoFormula::exists(
        var(q.size() + 1),
        FoFormula::atom(q.at(q.size() - 1), Term::var(var(q.size())), Term::var(var(q.size() + 1))));
    for (std::size_t i = q.size() - 1; i-- > 0;) {
        FoFormula step_atom = FoFormula::atom(q.at(i), Term::var(var(i + 1)), Term::var(var(i + 2)));
        psi = FoFormula::conj(FoFormula::exists(var(i + 2), step_atom),
                              FoFormula::forall(var(i + 2), FoFormula::implies(step_atom, psi)));
    }
    FoRewriting out{psi, var(1), FoFormula::exists(var(1), psi)};
    return out;
}

bool eval_fo(const FoFormula& f, const Instance& db) {
    return eval_impl(db, {}, f.node_);
}

bool eval_fo_with(const FoFormula& f, const Instance& db, const std::string& var,
                  const std::string& value) {
    std::map<std::string, std::string> env;
    env[var] = value;
    return eval_impl(db, std::move(env), f.node_);
}

}  // namespace cqa
