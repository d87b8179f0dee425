#include "cqa/word.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace cqa {

ParseError::ParseError(std::string message, std::size_t offset)
    : full_(std::move(message)), offset_(offset) {
    full_ += " (offset " + std::to_string(offset) + ")";
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool is_ident(const std::string& s) {
    if (s.empty() || !is_ident_start(s[0])) return false;
    return std::all_of(s.begin(), s.end(), is_ident_char);
}

// constructed words also admit names from the reserved '_' namespace
bool is_name(const std::string& s) {
    if (s.empty() || (!is_ident_start(s[0]) && s[0] != '_')) return false;
    return std::all_of(s.begin(), s.end(), is_ident_char);
}

}  // namespace

Word::Word(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    for (const auto& s : symbols_) {
        if (!is_name(s)) throw std::invalid_argument("invalid relation name: '" + s + "'");
    }
}

Word Word::parse(const std::string& text) {
    if (text.empty()) throw ParseError("empty word", 0);
    std::vector<std::string> out;
    if (text.find('-') != std::string::npos) {
        std::size_t start = 0;
        while (true) {
            std::size_t dash = text.find('-', start);
            std::string part = text.substr(start, dash == std::string::npos ? dash : dash - start);
            if (part.empty()) throw ParseError("empty relation name", start);
            if (!is_ident(part)) throw ParseError("invalid relation name '" + part + "'", start);
            out.push_back(part);
            if (dash == std::string::npos) break;
            start = dash + 1;
        }
        return Word(std::move(out));
    }
    bool all_upper = std::all_of(text.begin(), text.end(), [](char c) {
        return std::isupper(static_cast<unsigned char>(c)) != 0;
    });
    if (all_upper) {
        for (char c : text) out.emplace_back(1, c);
        return Word(std::move(out));
    }
    if (is_ident(text)) {
        out.push_back(text);
        return Word(std::move(out));
    }
    std::size_t bad = 0;
    while (bad < text.size() && is_ident_char(text[bad])) ++bad;
    throw ParseError("invalid character in word", bad);
}

Word Word::sub(std::size_t pos, std::size_t len) const {
    if (pos > size() || pos + len > size()) throw std::out_of_range("Word::sub");
    return Word(std::vector<std::string>(symbols_.begin() + static_cast<std::ptrdiff_t>(pos),
                                         symbols_.begin() + static_cast<std::ptrdiff_t>(pos + len)));
}

Word Word::operator+(const Word& rhs) const {
    std::vector<std::string> s = symbols_;
    s.insert(s.end(), rhs.symbols_.begin(), rhs.symbols_.end());
    return Word(std::move(s));
}

Word Word::repeated(std::size_t k) const {
    std::vector<std::string> s;
    s.reserve(size() * k);
    for (std::size_t i = 0; i < k; ++i) s.insert(s.end(), symbols_.begin(), symbols_.end());
    return Word(std::move(s));
}

bool Word::is_prefix_of(const Word& other) const {
    if (size() > other.size()) return false;
    return std::equal(symbols_.begin(), symbols_.end(), other.symbols_.begin());
}

bool Word::is_suffix_of(const Word& other) const {
    if (size() > other.size()) return false;
    return std::equal(symbols_.rbegin(), symbols_.rend(), other.symbols_.rbegin());
}

bool Word::is_factor_of(const Word& other) const {
    if (size() > other.size()) return false;
    for (std::size_t o = 0; o + size() <= other.size(); ++o) {
        if (std::equal(symbols_.begin(), symbols_.end(), other.symbols_.begin() + static_cast<std::ptrdiff_t>(o)))
            return true;
    }
    return false;
}

bool Word::self_join_free() const {
    std::set<std::string> seen;
    for (const auto& s : symbols_) {
        if (!seen.insert(s).second) return false;
    }
    return true;
}

std::set<std::string> Word::alphabet() const {
    return std::set<std::string>(symbols_.begin(), symbols_.end());
}

std::string Word::str() const {
    if (empty()) return "";
    bool compact = std::all_of(symbols_.begin(), symbols_.end(), [](const std::string& s) {
        return s.size() == 1 && std::isupper(static_cast<unsigned char>(s[0]));
    });
    std::string out;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (!compact && i > 0) out += '-';
        out += symbols_[i];
    }
    return out;
}

std::string tier_name(Tier t) {
    switch (t) {
        case Tier::FO: return "FO";
        case Tier::NL_COMPLETE: return "NL_COMPLETE";
        case Tier::PTIME_COMPLETE: return "PTIME_COMPLETE";
        case Tier::CONP_COMPLETE: return "CONP_COMPLETE";
    }
    return "?";
}

std::string bform_name(BForm f) {
    switch (f) {
        case BForm::B1: return "B1";
        case BForm::B2A: return "B2A";
        case BForm::B2B: return "B2B";
        case BForm::B3: return "B3";
    }
    return "?";
}

namespace {

// The word obtained by rewinding q at the equal-symbol pair (i, j), i < j.
Word rewind_at(const Word& q, std::size_t i, std::size_t j) {
    return q.prefix(j) + q.sub(i, j - i) + q.suffix_from(j);
}

void require_nonempty(const Word& q) {
    if (q.empty()) throw std::invalid_argument("empty word");
}

}  // namespace

std::set<Word> rewind_all(const Word& q) {
    std::set<Word> out;
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = i + 1; j < q.size(); ++j) {
            if (q.at(i) == q.at(j)) out.insert(rewind_at(q, i, j));
        }
    }
    return out;
}

bool satisfies_c1(const Word& q) {
    require_nonempty(q);
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = i + 1; j < q.size(); ++j) {
            if (q.at(i) != q.at(j)) continue;
            if (!q.is_prefix_of(rewind_at(q, i, j))) return false;
        }
    }
    return true;
}

bool satisfies_c3(const Word& q) {
    require_nonempty(q);
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = i + 1; j < q.size(); ++j) {
            if (q.at(i) != q.at(j)) continue;
            if (!q.is_factor_of(rewind_at(q, i, j))) return false;
        }
    }
    return true;
}

bool satisfies_c2(const Word& q) {
    require_nonempty(q);
    if (!satisfies_c3(q)) return false;
    // Three consecutive occurrences of the same symbol: positions p1<p2<p3
    // with no occurrence strictly inside (p1,p2) or (p2,p3).
    for (const auto& sym : q.alphabet()) {
        std::vector<std::size_t> pos;
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (q.at(i) == sym) pos.push_back(i);
        }
        for (std::size_t t = 0; t + 2 < pos.size(); ++t) {
            std::size_t p1 = pos[t], p2 = pos[t + 1], p3 = pos[t + 2];
            Word v1 = q.sub(p1 + 1, p2 - p1 - 1);
            Word v2 = q.sub(p2 + 1, p3 - p2 - 1);
            Word w = q.suffix_from(p3 + 1);
            if (v1 == v2) continue;
            if (w.is_prefix_of(v1)) continue;  // Rw prefix of Rv1
            return false;
        }
    }
    return true;
}

Classification classify(const Word& q) {
    require_nonempty(q);
    Classification c;
    c.c1 = satisfies_c1(q);
    c.c2 = c.c1 || satisfies_c2(q);
    c.c3 = c.c2 || satisfies_c3(q);
    if (c.c1) c.tier = Tier::FO;
    else if (c.c2) c.tier = Tier::NL_COMPLETE;
    else if (c.c3) c.tier = Tier::PTIME_COMPLETE;
    else c.tier = Tier::CONP_COMPLETE;
    return c;
}

Word BWitness::pattern() const {
    switch (form) {
        case BForm::B1: return w + v.repeated(k);
        case BForm::B2A: return u.repeated(j) + w + v.repeated(k);
        case BForm::B2B: return (u + v).repeated(k) + w + v;
        case BForm::B3: return u + w + (u + v).repeated(k);
    }
    throw std::logic_error("bad form");
}

namespace {

// All self-join-free sequences over `alpha`: permutations of each subset.
std::vector<std::vector<std::string>> sjf_sequences(const std::set<std::string>& alpha) {
    std::vector<std::string> syms(alpha.begin(), alpha.end());
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> cur;
    std::vector<bool> used(syms.size(), false);
    auto rec = [&](auto&& self) -> void {
        out.push_back(cur);
        for (std::size_t i = 0; i < syms.size(); ++i) {
            if (used[i]) continue;
            used[i] = true;
            cur.push_back(syms[i]);
            self(self);
            cur.pop_back();
            used[i] = false;
        }
    };
    rec(rec);
    return out;
}

void scan_offsets(const Word& q, const BWitness& base, std::set<BWitness>& out) {
    Word pat = base.pattern();
    if (pat.size() < q.size()) return;
    for (std::size_t o = 0; o + q.size() <= pat.size(); ++o) {
        if (base.form == BForm::B1 && o > 0) break;  // prefix shape
        bool ok = true;
        for (std::size_t i = 0; i < q.size() && ok; ++i) ok = (q.at(i) == pat.at(o + i));
        if (ok) {
            BWitness wit = base;
            wit.offset = o;
            out.insert(wit);
        }
    }
}

}  // namespace

std::set<BWitness> decompose(const Word& q) {
    require_nonempty(q);
    std::set<BWitness> out;
    const std::size_t bound = q.size();
    for (const auto& seq : sjf_sequences(q.alphabet())) {
        Word all{std::vector<std::string>(seq)};
        // B1 uses a split into (v, w); the others split into (u, v, w).
        for (std::size_t a = 0; a <= seq.size(); ++a) {
            Word v = all.prefix(a);
            Word w = all.suffix_from(a);
            std::size_t kmax = v.empty() ? 0 : bound;
            for (std::size_t k = 0; k <= kmax; ++k) {
                scan_offsets(q, BWitness{BForm::B1, Word{}, v, w, 0, k, 0}, out);
            }
        }
        for (std::size_t a = 0; a <= seq.size(); ++a) {
            for (std::size_t b = a; b <= seq.size(); ++b) {
                Word u = all.prefix(a);
                Word v = all.sub(a, b - a);
                Word w = all.suffix_from(b);
                std::size_t jmax = u.empty() ? 0 : bound;
                std::size_t kmax = v.empty() ? 0 : bound;
                for (std::size_t j = 0; j <= jmax; ++j) {
                    for (std::size_t k = 0; k <= kmax; ++k) {
                        scan_offsets(q, BWitness{BForm::B2A, u, v, w, j, k, 0}, out);
                    }
                }
                std::size_t loopmax = (u + v).empty() ? 0 : bound;
                for (std::size_t k = 0; k <= loopmax; ++k) {
                    scan_offsets(q, BWitness{BForm::B2B, u, v, w, 0, k, 0}, out);
                    scan_offsets(q, BWitness{BForm::B3, u, v, w, 0, k, 0}, out);
                }
            }
        }
    }
    return out;
}

std::vector<Episode> find_episodes(const Word& q) {
    std::vector<Episode> out;
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = i + 1; j < q.size(); ++j) {
            if (q.at(j) != q.at(i)) continue;
            // consecutive occurrences only: interior must omit the symbol
            bool interior_clear = true;
            for (std::size_t t = i + 1; t < j && interior_clear; ++t) {
                interior_clear = (q.at(t) != q.at(i));
            }
            if (!interior_clear) break;  // later j's contain this occurrence
            Word interior = q.sub(i + 1, j - i - 1);
            Word left = q.prefix(i);
            Word right = q.suffix_from(j + 1);
            Word ru = Word{std::vector<std::string>{q.at(i)}} + interior;  // R u
            Word ur = interior + Word{std::vector<std::string>{q.at(i)}};  // u R
            bool lrep = left.is_suffix_of(ru.repeated(left.size()));
            bool rrep = right.is_prefix_of(ur.repeated(right.size()));
            out.push_back(Episode{i, q.sub(i, j - i + 1), lrep, rrep});
        }
    }
    return out;
}

}  // namespace cqa
