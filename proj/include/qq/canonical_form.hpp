#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qq/exact_rotation.hpp"
#include "qq/word.hpp"

namespace qq {

/// Unique normal form S^{a0} T^{b0} (S T^{b_1}) ... (S T^{b_n}) E of an
/// element of G(6,4), with a0 in 0..3, b0 in {0,3}, b_i in {2,4} and
/// E in {1, S}. The number n of body factors is the element's size.
struct CanonicalForm {
    std::uint8_t a0 = 0;
    std::uint8_t b0 = 0;
    std::vector<std::uint8_t> body;
    bool trailing_s = false;

    std::size_t size() const noexcept { return body.size(); }
    bool is_identity() const noexcept { return a0 == 0 && b0 == 0 && body.empty(); }

    /// Re-expansion as a word in S and T.
    GeneratorWord to_word() const;
    std::string to_string() const;
    /// Checks the field ranges and that size-0 forms carry no trailing S.
    bool well_formed() const noexcept;

    /// Right multiplication by a single generator, in place.
    void right_multiply(Letter l);
    void right_multiply(Letter l, long long exponent);
    void right_multiply(const GeneratorWord& w);
    void right_multiply(const CanonicalForm& other) { right_multiply(other.to_word()); }

    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
    /// Orders by size first, then lexicographically; used for deterministic output.
    friend std::strong_ordering operator<=>(const CanonicalForm& x, const CanonicalForm& y);
};

CanonicalForm canonicalize(const GeneratorWord& w);
inline CanonicalForm operator*(CanonicalForm x, const CanonicalForm& y) {
    x.right_multiply(y);
    return x;
}

ExactRotation to_matrix(const CanonicalForm& c);

enum class TailClass : std::uint8_t { R0, ST2, ST4, T2S, T4S };

TailClass tail_class(const CanonicalForm& c);
const char* to_string(TailClass t);

/// 8 elements of size 0, 16 * 2^n of size n > 0.
BigInt element_count(unsigned size);
/// Every canonical form of the given size, in ascending order.
std::vector<CanonicalForm> forms_of_size(unsigned size);

/// g_1..g_8 (1-based) in canonical form.
const CanonicalForm& daughter(int index);
const ExactRotation& daughter_matrix(int index);

struct CanonicalFormHash {
    std::size_t operator()(const CanonicalForm& c) const noexcept;
};

}  // namespace qq
