#include "qq/enumeration.hpp"

#include <algorithm>
#include <iterator>

#include <omp.h>

namespace qq {

namespace {

void sort_unique(std::vector<CanonicalForm>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

void check_cap(unsigned n, unsigned cap) {
    if (n > cap)
        throw ResourceCapExceeded("orientation enumeration depth " + std::to_string(n) +
                                  " exceeds cap " + std::to_string(cap));
}

struct FamilySpec {
    std::string label;
    GeneratorWord prefix;
    std::vector<int> prefix_t;  // T^b exponents applied after the prefix
    unsigned m_lo;
    unsigned m_hi;
    std::vector<int> s_exponents;
};

GeneratorWord T(int b) { return GeneratorWord({{Letter::T, b}}); }

GeneratorWord mirror(const GeneratorWord& w) {
    GeneratorWord out;
    for (const Factor& f : w.factors()) out.append(f.base, f.base == Letter::T ? -f.exponent : f.exponent);
    return out;
}

std::vector<FamilySpec> families_for(unsigned n) {
    const std::vector<int> all_a = {0, 1, 2, 3};
    const std::vector<int> all_b = {0, 1, 2, 3, 4, 5};
    const GeneratorWord st2 = GeneratorWord::parse("S T^2");
    const GeneratorWord t3st4 = GeneratorWord::parse("T^3 S T^4");
    const unsigned k = n / 2;
    std::vector<FamilySpec> out;
    if (n % 2 == 0) {
        if (k >= 2) out.push_back({"T^b P_m S^a, m=0..k-2", {}, all_b, 0, k - 2, all_a});
        out.push_back({"T^b P_{k-1} S^a, b in {0,2,3,5}", {}, {0, 2, 3, 5}, k - 1, k - 1, all_a});
        out.push_back({"T^b P_{k-1} S^a, b in {1,4}, a in {0,2}", {}, {1, 4}, k - 1, k - 1, {0, 2}});
        out.push_back({"S T^2 P_{k-1} S^a, a in {0,2}", st2, {0}, k - 1, k - 1, {0, 2}});
        out.push_back({"T^3 (S T^4) P_{k-1} S^a, a in {0,2}", t3st4, {0}, k - 1, k - 1, {0, 2}});
    } else {
        out.push_back({"T^b P_m S^a, m=0..k-1", {}, all_b, 0, k - 1, all_a});
        out.push_back({"T^b P_k S^a, b in {0,2,3,5}, a in {0,2}", {}, {0, 2, 3, 5}, k, k, {0, 2}});
        out.push_back({"S T^2 P_{k-1} S^a, a in {1,3}", st2, {0}, k - 1, k - 1, {1, 3}});
        out.push_back({"T^3 S T^4 P_{k-1} S^a, a in {1,3}", t3st4, {0}, k - 1, k - 1, {1, 3}});
    }
    return out;
}

// Expands one family into canonical forms, one per generated word. The
// mirrored reading flips the sign of T exponents in the prefix; P_m maps
// onto itself (S T^2 <-> S T^4) so its enumeration order is kept.
std::vector<CanonicalForm> expand(const FamilySpec& f, ListReading reading) {
    std::vector<CanonicalForm> out;
    for (int b : f.prefix_t) {
        GeneratorWord prefix = f.prefix * T(b);
        if (reading == ListReading::mirrored) prefix = mirror(prefix);
        CanonicalForm head = canonicalize(prefix);
        for (unsigned m = f.m_lo; m <= f.m_hi; ++m) {
            for (unsigned long long bits = 0; bits < (1ull << m); ++bits) {
                CanonicalForm body = head;
                for (unsigned i = 0; i < m; ++i) {
                    body.right_multiply(Letter::S);
                    body.right_multiply(Letter::T, (bits >> i) & 1u ? 4 : 2);
                }
                for (int a : f.s_exponents) {
                    CanonicalForm c = body;
                    c.right_multiply(Letter::S, a);
                    out.push_back(std::move(c));
                }
            }
        }
    }
    return out;
}

}  // namespace

bool OrientationSet::contains(const CanonicalForm& c) const {
    return std::binary_search(members.begin(), members.end(), c);
}

bool OrientationSet::includes(const OrientationSet& other) const {
    return std::includes(members.begin(), members.end(), other.members.begin(), other.members.end());
}

std::size_t OrientationSet::max_member_size() const {
    // members are ordered by size first
    return members.empty() ? 0 : members.back().size();
}

std::optional<BigInt> orientation_count_formula(unsigned n) {
    if (n < 2) return std::nullopt;
    const unsigned k = n / 2;
    const BigInt pow = BigInt(1) << k;
    if (n % 2 == 0) return 24 * (pow - 1);
    return 34 * pow - 24;
}

OrientationSet next_generation(const OrientationSet& prev, Exec exec) {
    const auto& src = prev.members;
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(src.size());
    std::vector<CanonicalForm> out;

    if (exec == Exec::serial) {
        out.reserve(src.size() * 8);
        for (const CanonicalForm& x : src)
            for (int i = 1; i <= 8; ++i) out.push_back(x * daughter(i));
    } else {
        std::vector<std::vector<CanonicalForm>> partial(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
        {
            auto& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static) nowait
            for (std::ptrdiff_t j = 0; j < count; ++j)
                for (int i = 1; i <= 8; ++i) local.push_back(src[static_cast<std::size_t>(j)] * daughter(i));
            sort_unique(local);
        }
        for (auto& p : partial) std::move(p.begin(), p.end(), std::back_inserter(out));
    }
    sort_unique(out);
    return {prev.n + 1, std::move(out)};
}

OrientationSet orientations_after(unsigned n, Exec exec, unsigned cap) {
    check_cap(n, cap);
    OrientationSet s{0, {CanonicalForm{}}};
    while (s.n < n) s = next_generation(s, exec);
    return s;
}

std::vector<OrientationSet> orientation_sweep(unsigned n_max, Exec exec, unsigned cap) {
    check_cap(n_max, cap);
    std::vector<OrientationSet> out;
    out.push_back({0, {CanonicalForm{}}});
    while (out.back().n < n_max) out.push_back(next_generation(out.back(), exec));
    return out;
}

BigInt count_size_at_most(unsigned k) {
    BigInt total = 0;
    for (unsigned j = 0; j <= k; ++j) total += element_count(j);
    return total;
}

const char* to_string(ListReading r) { return r == ListReading::literal ? "literal" : "mirrored"; }

OrientationSet theorem_list(unsigned n, ListReading reading) {
    if (n < 2) throw std::invalid_argument("theorem_list requires n >= 2");
    std::vector<CanonicalForm> all;
    for (const FamilySpec& f : families_for(n)) {
        auto part = expand(f, reading);
        std::move(part.begin(), part.end(), std::back_inserter(all));
    }
    sort_unique(all);
    return {n, std::move(all)};
}

TheoremListReport compare_theorem_list(unsigned n, const OrientationSet& oracle, ListReading reading) {
    if (n < 2) throw std::invalid_argument("theorem_list requires n >= 2");
    TheoremListReport report;
    report.n = n;
    report.reading = reading;
    report.interpretation =
        "T^3 (S T^4) P_{k-1} read as the group product T^3 * (S T^4) * p for p in P_{k-1} "
        "(a concatenated word and a set product give the same elements); T exponents read ";
    report.interpretation += reading == ListReading::literal ? "as printed" : "with sign flipped (T -> T^-1)";
    std::vector<CanonicalForm> all;
    std::size_t distinct_total = 0;
    for (const FamilySpec& f : families_for(n)) {
        auto part = expand(f, reading);
        FamilyReport fr{f.label, part.size(), 0};
        sort_unique(part);
        fr.distinct = part.size();
        distinct_total += part.size();
        report.families.push_back(fr);
        std::move(part.begin(), part.end(), std::back_inserter(all));
    }
    sort_unique(all);
    report.union_size = all.size();
    report.overlap = distinct_total - all.size();
    std::set_difference(oracle.members.begin(), oracle.members.end(), all.begin(), all.end(),
                        std::back_inserter(report.missing));
    std::set_difference(all.begin(), all.end(), oracle.members.begin(), oracle.members.end(),
                        std::back_inserter(report.extra));
    report.matches = report.missing.empty() && report.extra.empty();
    return report;
}

}  // namespace qq
