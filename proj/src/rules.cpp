#include "calaw/rules.hpp"

#include <set>
#include <stdexcept>

namespace calaw {

Alphabet::Alphabet(int size_, std::vector<std::string> names_)
    : size(size_), names(std::move(names_)) {
    if (size < 1) throw std::invalid_argument("alphabet must have at least one symbol");
    if (!names.empty()) {
        if (static_cast<int>(names.size()) != size)
            throw std::invalid_argument("symbol name count does not match alphabet size");
        std::set<std::string> uniq(names.begin(), names.end());
        if (static_cast<int>(uniq.size()) != size)
            throw std::invalid_argument("symbol names must be distinct");
    }
}

std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp, std::uint64_t limit) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > limit / base)
            throw std::overflow_error("pattern space exceeds limit");
        r *= base;
    }
    return r;
}

bool next_pattern_mixed_radix(std::vector<Symbol>& pattern, int alphabet_size) {
    int i = static_cast<int>(pattern.size()) - 1;
    while (i >= 0 && pattern[i] == alphabet_size - 1) pattern[i--] = 0;
    if (i < 0) return false;
    ++pattern[i];
    return true;
}

std::uint64_t encode_pattern(const std::vector<Symbol>& pattern, int alphabet_size) {
    std::uint64_t code = 0;
    for (Symbol s : pattern) {
        if (s < 0 || s >= alphabet_size)
            throw std::invalid_argument("symbol out of alphabet range");
        code = code * static_cast<std::uint64_t>(alphabet_size) + static_cast<std::uint64_t>(s);
    }
    return code;
}

std::vector<Symbol> decode_pattern(std::uint64_t code, int alphabet_size, int length) {
    std::vector<Symbol> p(length);
    for (int i = length; i-- > 0;) {
        p[i] = static_cast<Symbol>(code % static_cast<std::uint64_t>(alphabet_size));
        code /= static_cast<std::uint64_t>(alphabet_size);
    }
    if (code != 0) throw std::invalid_argument("pattern code out of range");
    return p;
}

LocalRule::LocalRule(Alphabet alphabet, Neighborhood nbhd, std::vector<Symbol> table,
                     std::optional<std::string> name)
    : alphabet_(std::move(alphabet)), nbhd_(std::move(nbhd)), table_(std::move(table)),
      name_(std::move(name)) {
    std::uint64_t expect =
        checked_power(static_cast<std::uint64_t>(alphabet_.size),
                      static_cast<std::uint64_t>(nbhd_.size()));
    if (table_.size() != expect)
        throw std::invalid_argument("rule table has wrong length");
    for (Symbol s : table_)
        if (s < 0 || s >= alphabet_.size)
            throw std::invalid_argument("rule table entry out of alphabet range");
}

Symbol LocalRule::apply_local(const std::vector<Symbol>& pattern) const {
    if (static_cast<int>(pattern.size()) != nbhd_.size())
        throw std::invalid_argument("pattern length does not match neighborhood");
    return table_[encode_pattern(pattern, alphabet_.size)];
}

std::vector<std::vector<int>> patch_index_map(const Neighborhood& nbhd) {
    Neighborhood dbl = nbhd.doubled();
    std::vector<std::vector<int>> map;
    map.reserve(nbhd.size());
    for (const auto& v : nbhd.offsets()) {
        std::vector<int> row;
        row.reserve(nbhd.size());
        for (const auto& b : nbhd.offsets()) {
            int idx = dbl.index_of(add(v, b));
            if (idx < 0) throw std::logic_error("translated offset escapes doubled window");
            row.push_back(idx);
        }
        map.push_back(std::move(row));
    }
    return map;
}

std::vector<Symbol> LocalRule::apply_patch(const std::vector<Symbol>& doubled_pattern) const {
    Neighborhood dbl = nbhd_.doubled();
    if (static_cast<int>(doubled_pattern.size()) != dbl.size())
        throw std::invalid_argument("pattern length does not match doubled neighborhood");
    auto map = patch_index_map(nbhd_);
    std::vector<Symbol> out;
    out.reserve(map.size());
    std::vector<Symbol> window(nbhd_.size());
    for (const auto& row : map) {
        for (std::size_t i = 0; i < row.size(); ++i) window[i] = doubled_pattern[row[i]];
        out.push_back(apply_local(window));
    }
    return out;
}

LocalRule from_wolfram(int number) {
    if (number < 0 || number > 255)
        throw std::invalid_argument("rule number must be in 0..255");
    std::vector<Symbol> table(8);
    for (int k = 0; k < 8; ++k) table[k] = (number >> k) & 1;
    return LocalRule(Alphabet(2), Neighborhood::box(1, 1), std::move(table),
                     "rule " + std::to_string(number));
}

std::optional<int> to_wolfram(const LocalRule& rule) {
    if (rule.alphabet().size != 2 || !(rule.nbhd() == Neighborhood::box(1, 1)))
        return std::nullopt;
    int n = 0;
    for (int k = 0; k < 8; ++k) n |= rule.table()[k] << k;
    return n;
}

}  // namespace calaw
