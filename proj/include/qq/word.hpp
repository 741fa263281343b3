#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qq {

/// The two generators of G(6,4): S is a quarter turn about y, T a sixth turn about x.
enum class Letter : std::uint8_t { S, T };

/// Element orders: S^4 = T^6 = 1.
constexpr int order(Letter l) noexcept { return l == Letter::S ? 4 : 6; }

struct Factor {
    Letter base;
    long long exponent;

    friend bool operator==(const Factor&, const Factor&) = default;
};

class WordParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A free word S^{a_1} T^{b_1} ... with arbitrary integer exponents.
/// The empty word is the identity.
class GeneratorWord {
public:
    GeneratorWord() = default;
    explicit GeneratorWord(std::vector<Factor> factors) : factors_(std::move(factors)) {}

    /// Parses "S^2 T^3 S T^-1". Whitespace between factors is optional,
    /// "1" and the empty string denote the identity.
    static GeneratorWord parse(std::string_view text);

    /// Concatenation of the daughter orientations g_i, i in 1..8.
    static GeneratorWord from_daughters(std::span<const int> indices);

    const std::vector<Factor>& factors() const noexcept { return factors_; }
    bool empty() const noexcept { return factors_.empty(); }

    GeneratorWord& append(Letter base, long long exponent = 1);
    GeneratorWord& append(const GeneratorWord& other);

    /// Exponents reduced into [0, order) with zero powers dropped and
    /// adjacent equal bases merged. Represents the same group element.
    GeneratorWord normalized() const;

    std::string to_string() const;

    friend GeneratorWord operator*(GeneratorWord a, const GeneratorWord& b) {
        a.append(b);
        return a;
    }
    friend bool operator==(const GeneratorWord&, const GeneratorWord&) = default;

private:
    std::vector<Factor> factors_;
};

/// Word of daughter orientation g_i (1-based), as listed in the subdivision rule.
const GeneratorWord& daughter_word(int index);

}  // namespace qq
