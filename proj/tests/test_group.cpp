#include <doctest.h>

#include <algorithm>
#include <random>
#include <unordered_set>

#include "qq/canonical_form.hpp"
#include "qq/exact_rotation.hpp"

using namespace qq;

namespace {

ExactRotation mat(std::initializer_list<int> v, unsigned e) {
    ExactRotation::Matrix m;
    std::size_t i = 0;
    for (int x : v) m[i++] = x;
    return {m, e};
}

GeneratorWord random_word(std::mt19937_64& rng, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<long long> exp(-9, 9);
    GeneratorWord w;
    int n = len(rng);
    for (int i = 0; i < n; ++i) w.append(rng() % 2 ? Letter::S : Letter::T, exp(rng));
    return w;
}

CanonicalForm form(int a0, int b0, std::vector<std::uint8_t> body, bool trailing) {
    CanonicalForm c;
    c.a0 = static_cast<std::uint8_t>(a0);
    c.b0 = static_cast<std::uint8_t>(b0);
    c.body = std::move(body);
    c.trailing_s = trailing;
    return c;
}

// All canonical forms of the given size, by construction from the definition.
std::vector<CanonicalForm> all_forms(unsigned size) {
    std::vector<CanonicalForm> out;
    for (int a0 = 0; a0 < 4; ++a0)
        for (int b0 : {0, 3}) {
            if (size == 0) {
                out.push_back(form(a0, b0, {}, false));
                continue;
            }
            for (unsigned bits = 0; bits < (1u << size); ++bits) {
                std::vector<std::uint8_t> body;
                for (unsigned i = 0; i < size; ++i) body.push_back((bits >> i) & 1u ? 4 : 2);
                out.push_back(form(a0, b0, body, false));
                out.push_back(form(a0, b0, body, true));
            }
        }
    return out;
}

}  // namespace

TEST_CASE("word parsing") {
    CHECK(GeneratorWord::parse("S^2 T^3 S T^4").to_string() == "S^2 T^3 S T^4");
    CHECK(GeneratorWord::parse("ST^-1").factors() == std::vector<Factor>{{Letter::S, 1}, {Letter::T, -1}});
    CHECK(GeneratorWord::parse("S^{2}T^(3)").to_string() == "S^2 T^3");
    CHECK(GeneratorWord::parse("  ").empty());
    CHECK(GeneratorWord::parse("1").empty());
    CHECK_THROWS_AS(GeneratorWord::parse("S^"), WordParseError);
    CHECK_THROWS_AS(GeneratorWord::parse("X"), WordParseError);
    CHECK_THROWS_AS(GeneratorWord::parse("S^{2"), WordParseError);
    CHECK(GeneratorWord::parse("S^5 S^3 T^6 T^-1").normalized().to_string() == "T^5");
    CHECK_THROWS_AS(daughter_word(9), std::out_of_range);
}

TEST_CASE("to_matrix on generators") {
    CHECK(to_matrix(GeneratorWord::parse("S")) == mat({0, 0, 1, 0, 1, 0, -1, 0, 0}, 0));
    CHECK(to_matrix(GeneratorWord::parse("T^3")) == mat({1, 0, 0, 0, -1, 0, 0, 0, -1}, 0));
    CHECK(to_matrix(GeneratorWord{}) == ExactRotation::identity());
    const ExactRotation st2 = to_matrix(GeneratorWord::parse("ST^2"));
    CHECK(st2 == mat({0, 3, -1, 0, -1, -1, -2, 0, 0}, 1));
    CHECK(st2.exponent() == 1);
    // ST^-2 has the opposite signs on the +- entries.
    CHECK(to_matrix(GeneratorWord::parse("ST^-2")) == mat({0, -3, -1, 0, -1, 1, -2, 0, 0}, 1));
}

TEST_CASE("compose") {
    const auto s = ExactRotation::generator(Letter::S);
    const auto t = ExactRotation::generator(Letter::T);
    CHECK(compose(s, ExactRotation::power(Letter::S, 3)) == ExactRotation::identity());
    // T*T by hand: 2T = [[2,0,0],[0,1,-1],[0,3,1]], (2T)^2 = [[4,0,0],[0,-2,-2],[0,6,-2]] -> halve once.
    const auto t2 = compose(t, t);
    CHECK(t2 == mat({2, 0, 0, 0, -1, -1, 0, 3, -1}, 1));
    const auto prod = compose(to_matrix(GeneratorWord::parse("ST^2")), to_matrix(GeneratorWord::parse("ST^4")));
    CHECK(prod.exponent() == 2);
    CHECK(prod.odd_entry_count() == 4);
    CHECK(prod.preserves_metric());
    CHECK(prod.determinant() == 64);
}

TEST_CASE("group relations hold exactly") {
    const auto m = [](const char* w) { return to_matrix(GeneratorWord::parse(w)); };
    CHECK(m("S^4") == ExactRotation::identity());
    CHECK(m("T^6") == ExactRotation::identity());
    CHECK(m("S T^3") == m("T^3 S^-1"));
    CHECK(m("S^2 T") == m("T^-1 S^2"));
    CHECK(m("T^4 S^2") == m("S^2 T^2"));
    // T = g7 g6
    CHECK(m("T") == compose(daughter_matrix(7), daughter_matrix(6)));
}

TEST_CASE("orthonormal view is a rotation") {
    const auto r = to_matrix(GeneratorWord::parse("S T^2 S T^4 S")).orthonormal();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double dot = 0;
            for (int k = 0; k < 3; ++k) dot += r[3 * k + i] * r[3 * k + j];
            CHECK(dot == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
        }
    const auto t = ExactRotation::generator(Letter::T).orthonormal();
    CHECK(t[4] == doctest::Approx(0.5));
    CHECK(t[7] == doctest::Approx(std::sqrt(3.0) / 2));
}

TEST_CASE("canonicalize examples") {
    CHECK(canonicalize(GeneratorWord::parse("ST^3")) == form(1, 3, {}, false));
    CHECK(canonicalize(GeneratorWord::parse("S^2T^2")) == form(1, 0, {2}, false));
    CHECK(canonicalize(GeneratorWord::parse("T")) == form(1, 3, {4}, false));
    CHECK(canonicalize(GeneratorWord{}) == CanonicalForm{});
    CHECK(to_matrix(GeneratorWord::parse("S T^3 S T^4")) == to_matrix(GeneratorWord::parse("T")));
    CHECK(form(0, 3, {2, 4}, true).size() == 2);
}

TEST_CASE("daughter table") {
    CHECK(daughter(1).is_identity());
    CHECK(daughter(4).is_identity());
    CHECK(daughter(5).is_identity());
    CHECK(daughter(2) == form(1, 3, {}, false));
    CHECK(daughter(3) == form(1, 0, {}, false));
    CHECK(daughter(6) == form(2, 3, {}, false));
    CHECK(daughter(7) == form(1, 0, {2}, false));
    CHECK(daughter(8) == form(3, 0, {4}, false));
    for (int i = 1; i <= 8; ++i) CHECK(daughter(i).size() == (i == 7 || i == 8 ? 1u : 0u));
    CHECK(tail_class(daughter(7)) == TailClass::ST2);
    CHECK(tail_class(daughter(8)) == TailClass::ST4);
    CHECK(tail_class(daughter(1)) == TailClass::R0);
    CHECK(tail_class(form(0, 0, {4, 2}, true)) == TailClass::T2S);
    CHECK(tail_class(form(0, 0, {2, 4}, true)) == TailClass::T4S);
}

TEST_CASE("element counts") {
    CHECK(element_count(0) == 8);
    CHECK(element_count(1) == 32);
    CHECK(element_count(5) == 512);
}

TEST_CASE("canonical forms of size <= 3 are distinct group elements") {
    std::unordered_set<ExactRotation, ExactRotationHash> seen;
    std::size_t total = 0;
    for (unsigned size = 0; size <= 3; ++size) {
        const auto forms = all_forms(size);
        CHECK(BigInt(forms.size()) == element_count(size));
        auto sorted = forms;
        std::sort(sorted.begin(), sorted.end());
        CHECK(forms_of_size(size) == sorted);
        for (const auto& c : forms) {
            const ExactRotation r = to_matrix(c);
            CHECK(r.exponent() == size);
            CHECK(r.odd_entry_count() == (size == 0 ? 3 : 4));
            CHECK(canonicalize(c.to_word()) == c);
            seen.insert(r);
            ++total;
        }
    }
    CHECK(total == 8 + 32 + 64 + 128);
    CHECK(seen.size() == total);
}

TEST_CASE("canonicalize is sound and idempotent on random words") {
    std::mt19937_64 rng(20261015);
    for (int trial = 0; trial < 400; ++trial) {
        const GeneratorWord w = random_word(rng, 50);
        const CanonicalForm c = canonicalize(w);
        REQUIRE(c.well_formed());
        const ExactRotation r = to_matrix(w);
        CHECK(to_matrix(c) == r);
        CHECK(canonicalize(c.to_word()) == c);
        CHECK(r.exponent() == c.size());
        CHECK(r.odd_entry_count() == (c.size() == 0 ? 3 : 4));
        CHECK(r.preserves_metric());
        CHECK(r.determinant() == (BigInt(1) << (3 * r.exponent())));
    }
}

TEST_CASE("product of canonical forms matches matrix product") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const CanonicalForm x = canonicalize(random_word(rng, 20));
        const CanonicalForm y = canonicalize(random_word(rng, 20));
        CHECK(to_matrix(x * y) == compose(to_matrix(x), to_matrix(y)));
    }
}

TEST_CASE("large words stay exact beyond 64-bit range") {
    // (ST^2)^40 has entries around 3^40 / 2^... before reduction; exponent must equal size.
    GeneratorWord w;
    for (int i = 0; i < 40; ++i) w.append(Letter::S).append(Letter::T, i % 3 == 0 ? 2 : 4);
    const CanonicalForm c = canonicalize(w);
    CHECK(c.size() == 40);
    CHECK(to_matrix(c) == to_matrix(w));
    CHECK(to_matrix(w).exponent() == 40);
}
