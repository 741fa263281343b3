#include "qq/word.hpp"

#include <array>
#include <cctype>
#include <charconv>

namespace qq {

namespace {

long long floor_mod(long long value, long long modulus) {
    long long r = value % modulus;
    return r < 0 ? r + modulus : r;
}

[[noreturn]] void fail(std::string_view text, std::size_t pos, std::string_view what) {
    throw WordParseError("cannot parse word \"" + std::string(text) + "\" at offset " +
                         std::to_string(pos) + ": " + std::string(what));
}

}  // namespace

GeneratorWord GeneratorWord::parse(std::string_view text) {
    GeneratorWord word;
    std::size_t i = 0;
    const auto skip_space = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_space();
    if (i == text.size()) return word;
    if (text.substr(i) == "1") return word;

    while (true) {
        skip_space();
        if (i == text.size()) break;
        Letter base;
        switch (text[i]) {
            case 'S': case 's': base = Letter::S; break;
            case 'T': case 't': base = Letter::T; break;
            default: fail(text, i, "expected S or T");
        }
        ++i;
        long long exponent = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            char close = 0;
            if (i < text.size() && (text[i] == '{' || text[i] == '(')) {
                close = text[i] == '{' ? '}' : ')';
                ++i;
            }
            std::size_t start = i;
            if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            std::string_view digits = text.substr(start, i - start);
            if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), exponent);
            if (ec != std::errc{} || ptr != digits.data() + digits.size())
                fail(text, start, "bad exponent");
            if (close) {
                if (i == text.size() || text[i] != close) fail(text, i, "unbalanced exponent bracket");
                ++i;
            }
        }
        word.append(base, exponent);
    }
    return word;
}

GeneratorWord GeneratorWord::from_daughters(std::span<const int> indices) {
    GeneratorWord word;
    for (int index : indices) word.append(daughter_word(index));
    return word;
}

GeneratorWord& GeneratorWord::append(Letter base, long long exponent) {
    factors_.push_back({base, exponent});
    return *this;
}

GeneratorWord& GeneratorWord::append(const GeneratorWord& other) {
    factors_.insert(factors_.end(), other.factors_.begin(), other.factors_.end());
    return *this;
}

GeneratorWord GeneratorWord::normalized() const {
    std::vector<Factor> out;
    for (const Factor& f : factors_) {
        long long e = floor_mod(f.exponent, order(f.base));
        if (e == 0) continue;
        if (!out.empty() && out.back().base == f.base) {
            out.back().exponent = floor_mod(out.back().exponent + e, order(f.base));
            if (out.back().exponent == 0) out.pop_back();
        } else {
            out.push_back({f.base, e});
        }
    }
    return GeneratorWord(std::move(out));
}

std::string GeneratorWord::to_string() const {
    if (factors_.empty()) return "1";
    std::string out;
    for (const Factor& f : factors_) {
        if (!out.empty()) out += ' ';
        out += f.base == Letter::S ? 'S' : 'T';
        if (f.exponent != 1) out += '^' + std::to_string(f.exponent);
    }
    return out;
}

const GeneratorWord& daughter_word(int index) {
    // g1 = g4 = g5 = 1, g2 = ST^3, g3 = S, g6 = S^2T^3, g7 = S^2T^2 (= T^4S^2), g8 = T^4.
    static const std::array<GeneratorWord, 8> table = {
        GeneratorWord{},
        GeneratorWord({{Letter::S, 1}, {Letter::T, 3}}),
        GeneratorWord({{Letter::S, 1}}),
        GeneratorWord{},
        GeneratorWord{},
        GeneratorWord({{Letter::S, 2}, {Letter::T, 3}}),
        GeneratorWord({{Letter::S, 2}, {Letter::T, 2}}),
        GeneratorWord({{Letter::T, 4}}),
    };
    if (index < 1 || index > 8)
        throw std::out_of_range("daughter index must be in 1..8, got " + std::to_string(index));
    return table[static_cast<std::size_t>(index - 1)];
}

}  // namespace qq
