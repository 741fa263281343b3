#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qq/canonical_form.hpp"
#include "qq/exec.hpp"

namespace qq {

/// Distinct orientations M g_{i_1} ... g_{i_n} of the n-th subdivision,
/// relative to the parent orientation M. Members are sorted and unique.
struct OrientationSet {
    unsigned n = 0;
    std::vector<CanonicalForm> members;

    std::size_t size() const noexcept { return members.size(); }
    bool contains(const CanonicalForm& c) const;
    bool includes(const OrientationSet& other) const;
    std::size_t max_member_size() const;
};

inline constexpr unsigned kDefaultEnumerationCap = 30;

/// Orientation count of the n-th subdivision in closed form (n >= 2):
/// 24 (2^k - 1) for n = 2k, 34 * 2^k - 24 for n = 2k + 1.
std::optional<BigInt> orientation_count_formula(unsigned n);

/// members(n) = { x g_i : x in members(n-1), i = 1..8 }, members(0) = {1}.
OrientationSet next_generation(const OrientationSet& prev, Exec exec = Exec::parallel);
OrientationSet orientations_after(unsigned n, Exec exec = Exec::parallel,
                                  unsigned cap = kDefaultEnumerationCap);
/// Generations 0..n_max from a single pass.
std::vector<OrientationSet> orientation_sweep(unsigned n_max, Exec exec = Exec::parallel,
                                              unsigned cap = kDefaultEnumerationCap);

/// Number of elements of size at most k: 8 + sum_{j=1..k} 16 * 2^j.
BigInt count_size_at_most(unsigned k);

/// One of the explicitly listed families of orientations, e.g. "T^b P_m S^a".
struct FamilyReport {
    std::string label;
    std::size_t words = 0;     // words generated from the description
    std::size_t distinct = 0;  // distinct group elements among them
};

/// How T exponents in the printed family descriptions are read. `literal`
/// takes them as printed; `mirrored` applies the automorphism T -> T^{-1}
/// (S fixed), under which the families coincide with the orientations
/// generated by the daughter table. P_m is invariant under the mirror.
enum class ListReading { literal, mirrored };

const char* to_string(ListReading r);

struct TheoremListReport {
    unsigned n = 0;
    ListReading reading = ListReading::mirrored;
    std::vector<FamilyReport> families;
    std::size_t union_size = 0;
    /// sum of per-family distinct counts minus the size of the union
    std::size_t overlap = 0;
    std::vector<CanonicalForm> missing;  // in the oracle but not listed
    std::vector<CanonicalForm> extra;    // listed but not in the oracle
    bool matches = false;
    std::string interpretation;
};

/// Union of the listed families for depth n >= 2, built from words in
/// P_m = { (S T^{c_1}) ... (S T^{c_m}) : c_i in {2,4} }.
OrientationSet theorem_list(unsigned n, ListReading reading = ListReading::mirrored);
TheoremListReport compare_theorem_list(unsigned n, const OrientationSet& oracle,
                                       ListReading reading = ListReading::mirrored);

}  // namespace qq
