// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.
// QQ_EXTENDED=1 adds the l <= 300 record sweep to criterion 10.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "qq/enumeration.hpp"
#include "qq/population.hpp"
#include "qq/reference_values.hpp"
#include "qq/spectral.hpp"

using namespace qq;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_seconds, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget_seconds > 0 && secs > budget_seconds) {
        o.ok = false;
        o.detail += fmt::format("; over the {:.0f} s budget", budget_seconds);
    }
    if (!o.ok) ++failures;
    fmt::print("criterion {:2}: {} - {} ({}; {:.2f} s)\n", id, o.ok ? "PASS" : "FAIL", title, o.detail, secs);
    std::fflush(stdout);
}

template <class T>
T at_or_zero(const std::vector<T>& v, std::size_t i) {
    return i < v.size() ? v[i] : T{};
}

Outcome table_outcome(const reference::SizeTable& table) {
    const auto computed = size_table(table.ns, NumberMode::rational);
    double worst = 0;
    std::size_t entries = 0;
    for (std::size_t s = 0; s < table.rows.size(); ++s)
        for (std::size_t j = 0; j < table.ns.size(); ++j, ++entries)
            worst = std::max(worst, std::abs(at_or_zero(computed[j], s) - table.rows[s][j]));
    return {worst <= 5e-5, fmt::format("{} entries, max error {:.2e}", entries, worst)};
}

}  // namespace

int main() {
    criterion(1, "orientation counts n=2..14", 60, [] {
        const std::vector<unsigned> expected = {24, 44, 72, 112, 168, 248, 360, 520, 744, 1064, 1512, 2152, 3048};
        const auto sweep = orientation_sweep(14);
        bool ok = true;
        for (unsigned n = 2; n <= 14; ++n)
            ok = ok && sweep[n].size() == expected[n - 2] && BigInt(expected[n - 2]) == *orientation_count_formula(n);
        return Outcome{ok, fmt::format("|orientations_after(14)| = {}", sweep[14].size())};
    });

    criterion(2, "listed families equal the oracle, n=2..12", 0, [] {
        const auto sweep = orientation_sweep(12);
        bool ok = true;
        unsigned literal_matches = 0;
        for (unsigned n = 2; n <= 12; ++n) {
            ok = ok && compare_theorem_list(n, sweep[n]).matches && theorem_list(n).members == sweep[n].members;
            literal_matches += compare_theorem_list(n, sweep[n], ListReading::literal).matches;
        }
        return Outcome{ok, fmt::format("T -> T^-1 reading matches all 11; as printed matches {} of 11", literal_matches)};
    });

    criterion(3, "exact orbit equals the lumped chain, n<=12", 300, [] {
        auto chain = point_mass_at_identity<Rational>();
        OrbitMultiset orbit = exact_orbit(0);
        bool ok = true;
        for (unsigned n = 1; n <= 12; ++n) {
            chain = step(chain);
            orbit = next_orbit(orbit);
            const auto om = orbit_size_marginal(orbit);
            const auto cm = size_marginal(chain);
            for (std::size_t s = 0; s < std::max(om.size(), cm.size()); ++s) ok = ok && at_or_zero(om, s) == at_or_zero(cm, s);
            const auto oc = orbit_class_distribution(orbit);
            ok = ok && oc.r0 == chain.r0;
            for (TailClass t : {TailClass::ST2, TailClass::ST4, TailClass::T2S, TailClass::T4S})
                for (unsigned k = 1; k <= std::max(oc.kmax(), chain.kmax()); ++k) {
                    const Rational a = k <= oc.kmax() ? oc.at(t, k) : Rational(0);
                    const Rational b = k <= chain.kmax() ? chain.at(t, k) : Rational(0);
                    ok = ok && a == b;
                }
        }
        return Outcome{ok, fmt::format("{} orientations at n=12, sizes and tails exact", orbit.counts.size())};
    });

    criterion(4, "size distribution table, n=8,27,120", 0, [] { return table_outcome(reference::table1()); });
    criterion(5, "size distribution table, n=10..50", 0, [] { return table_outcome(reference::table2()); });

    criterion(6, "median size, n=1..200", 0, [] {
        const auto medians = median_table(200);
        unsigned bad = 0;
        for (unsigned n = 1; n <= 200; ++n) bad += medians[n - 1] != reference::expected_median(n);
        return Outcome{bad == 0, fmt::format("{} mismatches; median(94) = {}", bad, medians[93])};
    });

    criterion(7, "majority claims", 0, [] {
        const auto m27 = size_marginal(evolve<Rational>(27));
        const double le2 = (m27[0] + m27[1] + m27[2]).convert_to<double>();
        const BigInt f27 = f_alpha(27, 0.5), f120 = f_alpha(120, 0.5);
        return Outcome{f27 == 104 && f120 == 1000 && std::abs(le2 - 0.6925) <= 5e-4,
                       fmt::format("f(27) = {}, f(120) = {}, mass(size<=2, n=27) = {:.6f}", f27.str(), f120.str(), le2)};
    });

    criterion(8, "stationary vector and drift", 0, [] {
        const auto pi = stationary();
        const bool ok = pi == std::array<Rational, 4>{Rational(4, 14), Rational(4, 14), Rational(3, 14), Rational(3, 14)} &&
                        drift() == Rational(1, 28);
        return Outcome{ok, fmt::format("pi = ({}, {}, {}, {}), drift = {}", pi[0].str(), pi[1].str(), pi[2].str(),
                                       pi[3].str(), drift().str())};
    });

    criterion(9, "leading eigenvalues, l=1..20", 60, [] {
        double worst = 0;
        for (unsigned l = 1; l <= 20; ++l)
            worst = std::max(worst, std::abs(leading_eigenvalue(l).leading - reference::kTable3[l - 1]));
        return Outcome{worst <= 1e-4, fmt::format("max error {:.2e}", worst)};
    });

    std::vector<EigenReport> sweep;
    criterion(10, "record eigenvalues through l=72", 900, [&] {
        sweep = spectrum_sweep(72);
        const auto rec = records(sweep);
        std::vector<unsigned> got, want;
        double worst = 0;
        for (const auto& r : rec) got.push_back(r.l);
        for (const auto& [l, v] : reference::table4())
            if (l <= 72) {
                want.push_back(l);
                const auto it = std::find_if(rec.begin(), rec.end(), [l = l](const EigenReport& e) { return e.l == l; });
                if (it != rec.end()) worst = std::max(worst, std::abs(it->leading - v));
            }
        return Outcome{got == want && worst <= 1e-4,
                       fmt::format("{} records, last {:.6f} at l={}, max error {:.2e}", rec.size(), rec.back().leading,
                                   rec.back().l, worst)};
    });

    const char* extended = std::getenv("QQ_EXTENDED");
    if (extended && std::string(extended) == "1") {
        criterion(10, "extended: record at l=258 and none above 0.9940, l<=300", 0, [] {
            const auto full = spectrum_sweep(300);
            const auto rec = records(full);
            double top = 0;
            for (const auto& e : full) top = std::max(top, e.leading);
            const auto it = std::find_if(rec.begin(), rec.end(), [](const EigenReport& e) { return e.l == 258; });
            const bool ok = it != rec.end() && std::abs(it->leading - 0.99381) <= 1e-4 && top <= 0.9940;
            return Outcome{ok, fmt::format("l=258 {}, max leading {:.6f}",
                                           it == rec.end() ? std::string("not a record") : fmt::format("{:.6f}", it->leading), top)};
        });
    }

    criterion(11, "near-real spectrum, l<=72", 0, [&] {
        std::vector<unsigned> violations;
        double worst = 0;
        for (const auto& e : sweep) {
            worst = std::max(worst, e.max_imag / near_real_tolerance(e.l));
            if (e.max_imag >= near_real_tolerance(e.l)) violations.push_back(e.l);
        }
        return Outcome{!sweep.empty() && violations.empty(),
                       violations.empty() ? fmt::format("max |Im| / tolerance = {:.2e}", worst)
                                          : fmt::format("{} blocks with complex eigenvalues, first l={}", violations.size(),
                                                        violations.front())};
    });

    criterion(12, "representation relations and orbit consistency", 0, [&] {
        double rel = 0;
        for (const auto& e : sweep) rel = std::max({rel, e.s4_residual, e.t6_residual});
        double orbit = 0;
        for (unsigned l = 0; l <= 5; ++l)
            for (unsigned n = 0; n <= 8; ++n) orbit = std::max(orbit, orbit_consistency(l, n));
        return Outcome{sweep.size() == 72 && rel < 1e-10 && orbit < 1e-10,
                       fmt::format("relations {:.2e}, orbit {:.2e}", rel, orbit)};
    });

    criterion(13, "decay rate for l=8 within 200 steps", 0, [] {
        const double v = decay_experiment(8, 200).back().ratio;
        const double g = decay_experiment(8, 200, DecayStart::generic).back().ratio;
        return Outcome{std::abs(v - 0.98454) <= 1e-3 && std::abs(g - 0.98454) <= 1e-3,
                       fmt::format("eigenvector start {:.6f}, generic start {:.6f}", v, g)};
    });

    fmt::print("{} criterion failure(s)\n", failures);
    return failures == 0 ? 0 : 1;
}
