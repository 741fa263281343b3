#include "qq/canonical_form.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "qq/exec.hpp"

namespace qq {

namespace {

// An element of the Klein group {1, T^3, S^2, T^3 S^2} of half-turns about
// the coordinate axes. Conjugation by it sends S -> S^{+-1} and T -> T^{+-1}:
//   T^3 S T^3 = S^{-1},  S^2 T S^2 = T^{-1}.
struct HalfTurn {
    bool t3 = false;
    bool s2 = false;
};

// Moves `v`, sitting just right of body[pos-1], to the far left and absorbs
// it into the head. For a body factor F = S T^b we use F v = v phi_v(F); when
// phi_v(S) = S^3 = S^2 S the extra S^2 joins the carried element.
void push_left(CanonicalForm& c, HalfTurn v, std::size_t pos) {
    for (std::size_t i = pos; i-- > 0;) {
        if (v.s2) c.body[i] = static_cast<std::uint8_t>(6 - c.body[i]);
        if (v.t3) v.s2 = !v.s2;
    }
    // T^{b0} lies in the Klein group, which is abelian.
    if (v.s2) c.a0 = static_cast<std::uint8_t>((c.a0 + 2) % 4);
    if (v.t3) c.b0 = static_cast<std::uint8_t>((c.b0 + 3) % 6);
}

}  // namespace

void CanonicalForm::right_multiply(Letter l) {
    if (l == Letter::S) {
        if (body.empty()) {
            // T^3 S = S^{-1} T^3
            a0 = static_cast<std::uint8_t>((a0 + (b0 == 0 ? 1 : 3)) % 4);
        } else if (!trailing_s) {
            trailing_s = true;
        } else {
            // ... S S = ... S^2, then carry S^2 to the head.
            trailing_s = false;
            push_left(*this, {false, true}, body.size());
        }
        return;
    }

    if (body.empty()) {
        // T^4 = S^3 (S T^4) and T = S T^3 (S T^4).
        if (b0 == 3) {
            a0 = static_cast<std::uint8_t>((a0 + 3) % 4);
            b0 = 0;
        } else {
            a0 = static_cast<std::uint8_t>((a0 + 1) % 4);
            b0 = 3;
        }
        body.push_back(4);
        return;
    }
    if (trailing_s) {
        // S T = T^3 S^2 (S T^4)
        trailing_s = false;
        body.push_back(4);
        push_left(*this, {true, true}, body.size() - 1);
        return;
    }
    if (body.back() == 2) {
        // S T^3 = T^3 S^2 S: the last factor collapses into a trailing S.
        body.pop_back();
        push_left(*this, {true, true}, body.size());
        if (body.empty())
            right_multiply(Letter::S);
        else
            trailing_s = true;
    } else {
        // S T^5 = T^3 S^2 (S T^2)
        body.back() = 2;
        push_left(*this, {true, true}, body.size() - 1);
    }
}

void CanonicalForm::right_multiply(Letter l, long long exponent) {
    long long e = exponent % order(l);
    if (e < 0) e += order(l);
    for (long long i = 0; i < e; ++i) right_multiply(l);
}

void CanonicalForm::right_multiply(const GeneratorWord& w) {
    for (const Factor& f : w.factors()) right_multiply(f.base, f.exponent);
}

GeneratorWord CanonicalForm::to_word() const {
    GeneratorWord w;
    if (a0) w.append(Letter::S, a0);
    if (b0) w.append(Letter::T, b0);
    for (std::uint8_t b : body) w.append(Letter::S).append(Letter::T, b);
    if (trailing_s) w.append(Letter::S);
    return w;
}

std::string CanonicalForm::to_string() const { return to_word().to_string(); }

bool CanonicalForm::well_formed() const noexcept {
    if (a0 > 3 || (b0 != 0 && b0 != 3)) return false;
    if (body.empty() && trailing_s) return false;
    return std::all_of(body.begin(), body.end(), [](std::uint8_t b) { return b == 2 || b == 4; });
}

std::strong_ordering operator<=>(const CanonicalForm& x, const CanonicalForm& y) {
    if (auto c = x.body.size() <=> y.body.size(); c != 0) return c;
    if (auto c = x.a0 <=> y.a0; c != 0) return c;
    if (auto c = x.b0 <=> y.b0; c != 0) return c;
    if (auto c = x.body <=> y.body; c != 0) return c;
    return x.trailing_s <=> y.trailing_s;
}

CanonicalForm canonicalize(const GeneratorWord& w) {
    CanonicalForm c;
    c.right_multiply(w);
    return c;
}

ExactRotation to_matrix(const CanonicalForm& c) { return to_matrix(c.to_word()); }

TailClass tail_class(const CanonicalForm& c) {
    if (c.body.empty()) return TailClass::R0;
    const bool two = c.body.back() == 2;
    if (c.trailing_s) return two ? TailClass::T2S : TailClass::T4S;
    return two ? TailClass::ST2 : TailClass::ST4;
}

const char* to_string(TailClass t) {
    switch (t) {
        case TailClass::R0: return "R0";
        case TailClass::ST2: return "ST2";
        case TailClass::ST4: return "ST4";
        case TailClass::T2S: return "T2S";
        case TailClass::T4S: return "T4S";
    }
    return "?";
}

BigInt element_count(unsigned size) {
    if (size == 0) return 8;
    return BigInt(16) << size;
}

std::vector<CanonicalForm> forms_of_size(unsigned size) {
    if (size > 24) throw ResourceCapExceeded("forms_of_size: size " + std::to_string(size) + " exceeds 24");
    std::vector<CanonicalForm> out;
    for (std::uint8_t a0 = 0; a0 < 4; ++a0)
        for (std::uint8_t b0 : {0, 3}) {
            CanonicalForm c;
            c.a0 = a0;
            c.b0 = b0;
            if (size == 0) {
                out.push_back(c);
                continue;
            }
            c.body.resize(size);
            for (unsigned bits = 0; bits < (1u << size); ++bits) {
                for (unsigned i = 0; i < size; ++i) c.body[i] = (bits >> (size - 1 - i)) & 1u ? 4 : 2;
                c.trailing_s = false;
                out.push_back(c);
                c.trailing_s = true;
                out.push_back(c);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

const CanonicalForm& daughter(int index) {
    static const std::array<CanonicalForm, 8> table = [] {
        std::array<CanonicalForm, 8> t;
        for (int i = 1; i <= 8; ++i) t[static_cast<std::size_t>(i - 1)] = canonicalize(daughter_word(i));
        return t;
    }();
    if (index < 1 || index > 8)
        throw std::out_of_range("daughter index must be in 1..8, got " + std::to_string(index));
    return table[static_cast<std::size_t>(index - 1)];
}

const ExactRotation& daughter_matrix(int index) {
    static const std::array<ExactRotation, 8> table = [] {
        std::array<ExactRotation, 8> t;
        for (int i = 1; i <= 8; ++i) t[static_cast<std::size_t>(i - 1)] = to_matrix(daughter_word(i));
        return t;
    }();
    if (index < 1 || index > 8)
        throw std::out_of_range("daughter index must be in 1..8, got " + std::to_string(index));
    return table[static_cast<std::size_t>(index - 1)];
}

std::size_t CanonicalFormHash::operator()(const CanonicalForm& c) const noexcept {
    // FNV-1a over the packed fields; body entries contribute one bit each.
    std::uint64_t h = 1469598103934665603ull;
    const auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(c.a0 | (c.b0 << 2) | (static_cast<std::uint64_t>(c.trailing_s) << 5));
    mix(c.body.size());
    std::uint64_t word = 0;
    int bits = 0;
    for (std::uint8_t b : c.body) {
        word = (word << 1) | (b == 4 ? 1u : 0u);
        if (++bits == 64) {
            mix(word);
            word = 0;
            bits = 0;
        }
    }
    mix(word);
    return static_cast<std::size_t>(h);
}

}  // namespace qq
