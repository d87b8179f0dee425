#include "cqa/instance.hpp"

#include <algorithm>
#include <cctype>

#include "cqa/word.hpp"

namespace cqa {

namespace {

void sort_unique(std::vector<Fact>& facts) {
    std::sort(facts.begin(), facts.end());
    facts.erase(std::unique(facts.begin(), facts.end()), facts.end());
}

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

}  // namespace

Instance::Instance(std::vector<Fact> facts) : facts_(std::move(facts)) {
    sort_unique(facts_);
}

Instance Instance::parse(const std::string& text) {
    std::vector<Fact> facts;
    std::size_t pos = 0;
    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        std::size_t eol = text.find('\n', line_start);
        std::string line = text.substr(line_start, eol == std::string::npos ? eol : eol - line_start);
        pos = line_start;
        std::size_t i = 0;
        auto skip_ws = [&] { while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i; };
        auto name = [&](bool key_start_ok) -> std::string {
            std::size_t start = i;
            while (i < line.size() && is_name_char(line[i])) ++i;
            std::string n = line.substr(start, i - start);
            if (n.empty()) throw ParseError("expected name", pos + start);
            // relation names may not start with a digit; key/value constants may
            if (!key_start_ok && std::isdigit(static_cast<unsigned char>(n[0])))
                throw ParseError("relation name may not start with a digit", pos + start);
            return n;
        };
        skip_ws();
        if (i < line.size() && line[i] != '#') {
            std::string rel = name(false);
            skip_ws();
            if (i >= line.size() || line[i] != '(') throw ParseError("expected '('", pos + i);
            ++i;
            skip_ws();
            std::string key = name(true);
            skip_ws();
            if (i >= line.size() || line[i] != ',') throw ParseError("expected ','", pos + i);
            ++i;
            skip_ws();
            std::string value = name(true);
            skip_ws();
            if (i >= line.size() || line[i] != ')') throw ParseError("expected ')'", pos + i);
            ++i;
            skip_ws();
            if (i < line.size() && line[i] != '#') throw ParseError("trailing characters", pos + i);
            facts.push_back(Fact{rel, key, value});
        }
        if (eol == std::string::npos) break;
        line_start = eol + 1;
    }
    return Instance(std::move(facts));
}

bool Instance::contains(const Fact& f) const {
    return std::binary_search(facts_.begin(), facts_.end(), f);
}

std::set<std::string> Instance::adom() const {
    std::set<std::string> out;
    for (const auto& f : facts_) {
        out.insert(f.key);
        out.insert(f.value);
    }
    return out;
}

std::vector<std::string> Instance::adom_sorted() const {
    auto s = adom();
    return std::vector<std::string>(s.begin(), s.end());
}

Instance Instance::with_fact(const Fact& f) const {
    std::vector<Fact> facts = facts_;
    facts.push_back(f);
    return Instance(std::move(facts));
}

std::string Instance::serialize() const {
    std::string out;
    for (const auto& f : facts_) {
        out += f.str();
        out += '\n';
    }
    return out;
}

std::vector<Block> blocks(const Instance& db) {
    std::vector<Block> out;
    for (const auto& f : db.facts()) {
        if (!out.empty() && out.back().relation == f.relation && out.back().key == f.key) {
            out.back().members.push_back(f);
        } else {
            out.push_back(Block{f.relation, f.key, {f}});
        }
    }
    return out;
}

bool is_consistent(const Instance& db) {
    for (const auto& b : blocks(db)) {
        if (b.members.size() > 1) return false;
    }
    return true;
}

std::uint64_t repair_count(const Instance& db) {
    std::uint64_t n = 1;
    for (const auto& b : blocks(db)) {
        if (n > (std::uint64_t{1} << 62) / b.members.size()) return std::uint64_t{1} << 63;
        n *= b.members.size();
    }
    return n;
}

RepairEnumerator::RepairEnumerator(const Instance& db, std::uint64_t cap)
    : blocks_(blocks(db)), cursor_(blocks_.size(), 0), done_(false) {
    count_ = 1;
    for (const auto& b : blocks_) {
        if (count_ > cap / b.members.size()) throw CapExceededError(cap);
        count_ *= b.members.size();
    }
}

void RepairEnumerator::reset() {
    std::fill(cursor_.begin(), cursor_.end(), 0);
    done_ = false;
}

bool RepairEnumerator::next(Instance& out) {
    if (done_) return false;
    std::vector<Fact> facts;
    facts.reserve(blocks_.size());
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        facts.push_back(blocks_[i].members[cursor_[i]]);
    }
    out = Instance(std::move(facts));
    // advance, last block fastest
    done_ = true;
    for (std::size_t i = blocks_.size(); i-- > 0;) {
        if (++cursor_[i] < blocks_[i].members.size()) {
            done_ = false;
            break;
        }
        cursor_[i] = 0;
    }
    if (blocks_.empty()) done_ = true;
    return true;
}

}  // namespace cqa
