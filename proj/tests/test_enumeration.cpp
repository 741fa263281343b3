#include <doctest.h>

#include <algorithm>
#include <unordered_set>

#include "qq/enumeration.hpp"

using namespace qq;

namespace {

// Brute force over all 8^n daughter words, keyed by exact matrix.
std::unordered_set<ExactRotation, ExactRotationHash> brute_force_orientations(unsigned n) {
    std::unordered_set<ExactRotation, ExactRotationHash> level = {ExactRotation::identity()};
    std::vector<ExactRotation> words = {ExactRotation::identity()};
    for (unsigned d = 0; d < n; ++d) {
        std::vector<ExactRotation> next;
        next.reserve(words.size() * 8);
        for (const auto& w : words)
            for (int i = 1; i <= 8; ++i) next.push_back(w * daughter_matrix(i));
        words = std::move(next);
    }
    return {words.begin(), words.end()};
}

}  // namespace

TEST_CASE("closed-form orientation counts") {
    CHECK(!orientation_count_formula(1));
    CHECK(*orientation_count_formula(2) == 24);
    CHECK(*orientation_count_formula(3) == 44);
    CHECK(*orientation_count_formula(4) == 72);
    CHECK(*orientation_count_formula(5) == 112);
    CHECK(*orientation_count_formula(6) == 168);
}

TEST_CASE("small depths") {
    const auto s0 = orientations_after(0);
    REQUIRE(s0.size() == 1);
    CHECK(s0.members[0].is_identity());
    CHECK(orientations_after(1).size() == 6);
    CHECK(orientations_after(2).size() == 24);
    CHECK(orientations_after(3).size() == 44);
    CHECK(orientations_after(4).size() == 72);
}

TEST_CASE("iterated multiplication agrees with brute-force word expansion") {
    for (unsigned n = 0; n <= 5; ++n) {
        const auto oracle = brute_force_orientations(n);
        const auto set = orientations_after(n);
        CHECK(set.size() == oracle.size());
        for (const auto& c : set.members) CHECK(oracle.count(to_matrix(c)) == 1);
    }
}

TEST_CASE("serial and parallel generations are identical") {
    const auto a = orientation_sweep(10, Exec::serial);
    const auto b = orientation_sweep(10, Exec::parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].members == b[i].members);
}

TEST_CASE("nesting and size bound") {
    const auto sweep = orientation_sweep(14);
    for (unsigned n = 0; n + 1 < sweep.size(); ++n) CHECK(sweep[n + 1].includes(sweep[n]));
    for (unsigned n = 2; n < sweep.size(); n += 2) CHECK(sweep[n].max_member_size() <= n / 2);
    for (unsigned n = 2; n < sweep.size(); ++n) CHECK(BigInt(sweep[n].size()) == *orientation_count_formula(n));
}

TEST_CASE("resource cap") {
    CHECK_THROWS_AS(orientations_after(12, Exec::serial, 10), ResourceCapExceeded);
    CHECK_THROWS_AS(orientation_sweep(31), ResourceCapExceeded);
}

TEST_CASE("size-class counts") {
    CHECK(count_size_at_most(0) == 8);
    CHECK(count_size_at_most(1) == 40);
    CHECK(count_size_at_most(2) == 104);
    CHECK(count_size_at_most(3) == 232);
    CHECK(count_size_at_most(5) == 1000);
    CHECK(count_size_at_most(8) == 8168);
}

TEST_CASE("listed families reproduce the enumeration") {
    const auto sweep = orientation_sweep(12);
    for (unsigned n = 2; n <= 12; ++n) {
        CAPTURE(n);
        const auto report = compare_theorem_list(n, sweep[n]);
        CHECK(report.missing.empty());
        CHECK(report.extra.empty());
        CHECK(report.overlap == 0);
        CHECK(report.matches);
        CHECK(theorem_list(n).members == sweep[n].members);
    }
    CHECK(theorem_list(5).size() == 112);
    CHECK(theorem_list(6).size() == 168);
    CHECK(compare_theorem_list(4, orientations_after(4)).families.size() == 5);
    CHECK(theorem_list(2, ListReading::mirrored).members == orientations_after(2).members);
    CHECK(compare_theorem_list(5, orientations_after(5)).families.size() == 4);
    CHECK_THROWS_AS(theorem_list(1), std::invalid_argument);
}

TEST_CASE("literal reading of the families disagrees with the daughter table") {
    // Same cardinalities and pairwise disjoint, but not the same elements:
    // items 2-5 carry T exponents of the opposite sign.
    for (unsigned n = 2; n <= 8; ++n) {
        CAPTURE(n);
        const auto oracle = orientations_after(n);
        const auto report = compare_theorem_list(n, oracle, ListReading::literal);
        CHECK(report.union_size == oracle.size());
        CHECK(report.overlap == 0);
        CHECK(!report.matches);
        CHECK(report.missing.size() == report.extra.size());
    }
    const auto r2 = compare_theorem_list(2, orientations_after(2), ListReading::literal);
    CHECK(r2.missing.size() == 8);
    // S T^4 is an orientation of the second subdivision; family 4 read literally gives S T^2 instead.
    CHECK(std::find(r2.missing.begin(), r2.missing.end(), canonicalize(GeneratorWord::parse("S T^4"))) != r2.missing.end());
    CHECK(std::find(r2.extra.begin(), r2.extra.end(), canonicalize(GeneratorWord::parse("S T^2"))) != r2.extra.end());
}
