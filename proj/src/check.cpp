#include "qq/check.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include <fmt/format.h>

#include "qq/canonical_form.hpp"
#include "qq/enumeration.hpp"
#include "qq/population.hpp"
#include "qq/reference_values.hpp"
#include "qq/spectral.hpp"

namespace qq {

namespace {

class Recorder {
public:
    explicit Recorder(std::string module) : module_(std::move(module)) {}

    void add(std::string name, bool ok, std::string detail = {}) {
        out_.push_back({module_, std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)});
    }
    void info(std::string name, std::string detail) {
        out_.push_back({module_, std::move(name), CheckStatus::info, std::move(detail)});
    }
    std::vector<InvariantResult> take() { return std::move(out_); }

private:
    std::string module_;
    std::vector<InvariantResult> out_;
};

GeneratorWord random_word(std::mt19937_64& rng, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<long long> exp(-9, 9);
    GeneratorWord w;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) w.append(rng() % 2 ? Letter::S : Letter::T, exp(rng));
    return w;
}

template <class T>
T at_or_zero(const std::vector<T>& v, std::size_t i) {
    return i < v.size() ? v[i] : T{};
}

double tail_l1(const SizeClassDistribution<double>& d) {
    static const double pi[4] = {4.0 / 14, 4.0 / 14, 3.0 / 14, 3.0 / 14};
    const auto t = tail_marginal(d);
    const double sum = t[0] + t[1] + t[2] + t[3];
    double l1 = 0;
    for (int c = 0; c < 4; ++c) l1 += std::abs(t[c] / sum - pi[c]);
    return l1;
}

double worst_table_error(const reference::SizeTable& table, std::string& where) {
    const auto computed = size_table(table.ns, NumberMode::rational);
    double worst = 0;
    for (std::size_t s = 0; s < table.rows.size(); ++s)
        for (std::size_t j = 0; j < table.ns.size(); ++j) {
            const double err = std::abs(at_or_zero(computed[j], s) - table.rows[s][j]);
            if (err > worst) {
                worst = err;
                where = fmt::format("size {} n={}", s, table.ns[j]);
            }
        }
    return worst;
}

}  // namespace

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "PASS";
        case CheckStatus::fail: return "FAIL";
        case CheckStatus::info: return "INFO";
    }
    return "?";
}

std::vector<InvariantResult> check_group_core(const CheckConfig& cfg) {
    Recorder r("group-core");
    std::mt19937_64 rng(20261015);

    bool sound = true, idempotent = true;
    for (unsigned i = 0; i < cfg.random_words; ++i) {
        const GeneratorWord w = random_word(rng, 50);
        const CanonicalForm c = canonicalize(w);
        sound = sound && c.well_formed() && to_matrix(c.to_word()) == to_matrix(w);
        idempotent = idempotent && canonicalize(c.to_word()) == c;
    }
    r.add("canonicalize_sound", sound, fmt::format("{} random words up to 50 factors", cfg.random_words));
    r.add("canonicalize_idempotent", idempotent);

    std::unordered_set<ExactRotation, ExactRotationHash> seen;
    std::size_t total = 0;
    bool size_ok = true, odd_ok = true, metric_ok = true, det_ok = true, count_ok = true;
    for (unsigned size = 0; size <= 3; ++size) {
        const auto forms = forms_of_size(size);
        count_ok = count_ok && BigInt(forms.size()) == element_count(size);
        for (const auto& c : forms) {
            const ExactRotation m = to_matrix(c);
            size_ok = size_ok && m.exponent() == size;
            odd_ok = odd_ok && m.odd_entry_count() == (size == 0 ? 3 : 4);
            metric_ok = metric_ok && m.preserves_metric();
            det_ok = det_ok && m.determinant() == (BigInt(1) << (3 * size));
            seen.insert(m);
            ++total;
        }
    }
    r.add("size_equals_exponent", size_ok, "all forms of size <= 3");
    r.add("odd_entry_census", odd_ok);
    r.add("metric_preserved", metric_ok);
    r.add("determinant", det_ok);
    r.add("uniqueness_size_le_3", count_ok && seen.size() == total && total == 232,
          fmt::format("{} forms, {} distinct matrices", total, seen.size()));

    const auto M = [](const char* w) { return to_matrix(GeneratorWord::parse(w)); };
    r.add("relations", M("S^4") == ExactRotation::identity() && M("T^6") == ExactRotation::identity() &&
                           M("S T^3") == M("T^3 S^-1") && M("S^2 T") == M("T^-1 S^2"));

    const char* expected[8] = {"1", "S T^3", "S", "1", "1", "S^2 T^3", "S^2 T^2", "T^4"};
    bool table_ok = true;
    for (int i = 1; i <= 8; ++i) {
        table_ok = table_ok && daughter_matrix(i) == M(expected[i - 1]);
        table_ok = table_ok && daughter(i).size() == (i >= 7 ? 1u : 0u);
    }
    table_ok = table_ok && tail_class(daughter(7)) == TailClass::ST2 && tail_class(daughter(8)) == TailClass::ST4;
    r.add("generator_table", table_ok);
    r.add("element_count", element_count(0) == 8 && element_count(1) == 32 && element_count(5) == 512);
    return r.take();
}

std::vector<InvariantResult> check_enumeration(const CheckConfig& cfg) {
    Recorder r("enumeration");
    const unsigned top = std::max(cfg.enumeration_n_max, cfg.list_n_max);
    const auto sweep = orientation_sweep(top, cfg.exec);

    bool counts = true;
    std::string counts_detail;
    for (unsigned n = 2; n <= cfg.enumeration_n_max; ++n) {
        const bool ok = BigInt(sweep[n].size()) == *orientation_count_formula(n);
        counts = counts && ok;
        counts_detail += fmt::format("{}{}", n == 2 ? "" : " ", sweep[n].size());
    }
    r.add("orientation_counts", counts, fmt::format("n=2..{}: {}", cfg.enumeration_n_max, counts_detail));

    bool lists = true;
    std::size_t literal_missing = 0, literal_extra = 0;
    for (unsigned n = 2; n <= cfg.list_n_max; ++n) {
        lists = lists && compare_theorem_list(n, sweep[n]).matches;
        const auto lit = compare_theorem_list(n, sweep[n], ListReading::literal);
        if (n == 2) {
            literal_missing = lit.missing.size();
            literal_extra = lit.extra.size();
        }
    }
    r.add("family_lists_equal_oracle", lists, fmt::format("n=2..{}, T -> T^-1 reading", cfg.list_n_max));
    r.info("family_lists_literal_reading",
           fmt::format("as printed: n=2 has {} missing and {} extra orientations", literal_missing, literal_extra));

    bool nested = true, bounded = true;
    for (unsigned n = 0; n + 1 <= top; ++n) nested = nested && sweep[n + 1].includes(sweep[n]);
    for (unsigned n = 2; n <= top; n += 2) bounded = bounded && sweep[n].max_member_size() <= n / 2;
    r.add("nesting", nested);
    r.add("size_bound", bounded);
    r.add("count_size_at_most",
          count_size_at_most(0) == 8 && count_size_at_most(2) == 104 && count_size_at_most(5) == 1000 &&
              count_size_at_most(8) == 8168);
    return r.take();
}

std::vector<InvariantResult> check_population(const CheckConfig& cfg) {
    Recorder r("population");

    bool mass = true;
    auto exact = point_mass_at_identity<Rational>();
    for (unsigned n = 1; n <= kDefaultRationalLimit; ++n) {
        exact = step(exact);
        mass = mass && exact.total() == 1;
    }
    r.add("mass_conservation", mass, fmt::format("rational, n=1..{}", kDefaultRationalLimit));

    bool sizes = true, tails = true, orbit_ok = true;
    auto chain = point_mass_at_identity<Rational>();
    const auto sweep = orientation_sweep(cfg.orbit_n_max, cfg.exec);
    OrbitMultiset orbit = exact_orbit(0);
    for (unsigned n = 1; n <= cfg.orbit_n_max; ++n) {
        chain = step(chain);
        orbit = next_orbit(orbit, cfg.exec);
        orbit_ok = orbit_ok && orbit.total() == (BigInt(1) << (3 * n)) && orbit.counts.size() == sweep[n].size();
        const auto om = orbit_size_marginal(orbit);
        const auto cm = size_marginal(chain);
        for (std::size_t s = 0; s < std::max(om.size(), cm.size()); ++s) sizes = sizes && at_or_zero(om, s) == at_or_zero(cm, s);
        const auto oc = orbit_class_distribution(orbit);
        tails = tails && oc.r0 == chain.r0;
        for (TailClass t : {TailClass::ST2, TailClass::ST4, TailClass::T2S, TailClass::T4S})
            for (unsigned k = 1; k <= std::max(oc.kmax(), chain.kmax()); ++k) {
                const Rational a = k <= oc.kmax() ? oc.at(t, k) : Rational(0);
                const Rational b = k <= chain.kmax() ? chain.at(t, k) : Rational(0);
                tails = tails && a == b;
            }
    }
    r.add("orbit_totals", orbit_ok, fmt::format("sum = 8^n and keys = orientations, n<={}", cfg.orbit_n_max));
    r.add("orbit_equals_chain_sizes", sizes, fmt::format("exact, n<={}", cfg.orbit_n_max));
    r.add("orbit_equals_chain_tails", tails, fmt::format("exact, n<={}", cfg.orbit_n_max));

    const auto m = tail_transition_matrix();
    bool stochastic = true;
    for (int c = 0; c < 4; ++c) {
        Rational col = 0;
        for (int row = 0; row < 4; ++row) col += m[row][c];
        stochastic = stochastic && col == 1;
    }
    r.add("transition_matrix_stochastic", stochastic);
    const auto pi = stationary();
    r.add("stationary", pi == std::array<Rational, 4>{Rational(4, 14), Rational(4, 14), Rational(3, 14), Rational(3, 14)},
          "(4,4,3,3)/14");
    r.add("drift", drift() == Rational(1, 28), "1/28");

    auto d = point_mass_at_identity<double>();
    double l1_100 = 0;
    unsigned crossing = 0;
    for (unsigned n = 1; n <= 1000 && crossing == 0; ++n) {
        d = step(d);
        const double l1 = tail_l1(d);
        if (n == 100) l1_100 = l1;
        if (l1 < 1e-3) crossing = n;
    }
    r.add("tail_marginal_converges_by_100", l1_100 < 1e-3,
          fmt::format("L1(100) = {:.6f}; first n with L1 < 1e-3 is {}", l1_100, crossing));

    const double m150 = mean_size(evolve<double>(150));
    const double m200 = mean_size(evolve<double>(200));
    r.add("mean_size_drift", std::abs(m200 - (m150 + 50.0 / 28.0)) <= 1.0,
          fmt::format("mean(150) = {:.6f}, mean(200) = {:.6f}", m150, m200));

    std::string where1, where2;
    const double e1 = worst_table_error(reference::table1(), where1);
    const double e2 = worst_table_error(reference::table2(), where2);
    r.add("size_table_1", e1 <= 5e-5, fmt::format("max error {:.2e} at {}", e1, where1));
    r.add("size_table_2", e2 <= 5e-5, fmt::format("max error {:.2e} at {}", e2, where2));

    const auto medians = median_table(200);
    unsigned bad = 0;
    for (unsigned n = 1; n <= 200; ++n)
        if (medians[n - 1] != reference::expected_median(n)) ++bad;
    r.add("median_table", bad == 0, fmt::format("{} mismatches for n=1..200", bad));

    r.add("f_alpha", f_alpha(27, 0.5) == 104 && f_alpha(120, 0.5) == 1000 && f_alpha(1, 0.7) <= 8,
          "f(27, 0.5) = 104, f(120, 0.5) = 1000");

    const auto spread = class_spread(orbit);
    std::size_t uneven = 0;
    for (const auto& s : spread)
        if (s.min_count != s.max_count) ++uneven;
    r.info("class_spread", fmt::format("n={}: {} of {} (size, tail) classes have unequal occupancy", orbit.n,
                                       uneven, spread.size()));
    return r.take();
}

std::vector<InvariantResult> check_spectral(const CheckConfig& cfg) {
    Recorder r("spectral");

    double period = 0;
    for (unsigned l = 0; l <= cfg.lmax; ++l) period = std::max(period, generator_period_residual(l));
    r.add("generator_periods", period < 1e-10, fmt::format("max residual {:.2e}, l<={}", period, cfg.lmax));

    const auto sweep = spectrum_sweep(cfg.lmax, cfg.exec);
    double rel = 0, radius = 0, conj = 0, lead = 0;
    unsigned lead_l = 0;
    std::vector<unsigned> not_real, complex_lead;
    for (const auto& e : sweep) {
        rel = std::max({rel, e.s4_residual, e.t6_residual});
        radius = std::max(radius, e.spectral_radius);
        conj = std::max(conj, e.conjugation_gap);
        if (e.max_imag >= near_real_tolerance(e.l)) not_real.push_back(e.l);
        if (e.complex_leading) complex_lead.push_back(e.l);
        if (e.leading > lead) {
            lead = e.leading;
            lead_l = e.l;
        }
    }
    r.add("group_relations", rel < 1e-10, fmt::format("max |R(S)^4 - I|, |R(T)^6 - I| = {:.2e}", rel));
    r.add("spectral_radius", radius <= 1 + 1e-9, fmt::format("{:.12f}", radius));
    r.add("conjugation_closed", conj < 1e-8, fmt::format("{:.2e}", conj));
    r.add("near_real_spectrum", not_real.empty(),
          not_real.empty() ? fmt::format("l<={}", cfg.lmax) : fmt::format("{} blocks exceed tolerance, first l={}", not_real.size(), not_real.front()));
    if (!complex_lead.empty())
        r.info("complex_leading", fmt::format("{} blocks, first l={}", complex_lead.size(), complex_lead.front()));
    r.add("leading_bound", lead <= reference::kEmpiricalLeadingBound,
          fmt::format("max leading {:.6f} at l={}; conjectured rate {:.7f}", lead, lead_l, conjectured_rate()));

    const auto rec = records(sweep);
    bool records_ok = true;
    std::size_t compared = 0;
    for (const auto& [l, value] : reference::table4()) {
        if (l > cfg.lmax) continue;
        ++compared;
        const auto it = std::find_if(rec.begin(), rec.end(), [l = l](const EigenReport& e) { return e.l == l; });
        records_ok = records_ok && it != rec.end() && std::abs(it->leading - value) <= 1e-4;
    }
    records_ok = records_ok && rec.size() == compared;
    r.add("record_eigenvalues", records_ok, fmt::format("{} records, l<={}", rec.size(), cfg.lmax));

    double table3 = 0;
    for (unsigned l = 1; l <= std::min(20u, cfg.lmax); ++l)
        table3 = std::max(table3, std::abs(sweep[l - 1].leading - reference::kTable3[l - 1]));
    r.add("leading_eigenvalues_l_le_20", table3 <= 1e-4, fmt::format("max error {:.2e}", table3));

    std::mt19937_64 rng(7);
    double hom = 0;
    for (unsigned l : {1u, 2u, 5u, 9u}) {
        const SpinRepresentation rep(l);
        for (int i = 0; i < 25; ++i) hom = std::max(hom, homomorphism_residual(rep, random_word(rng, 12), random_word(rng, 12)));
    }
    r.add("homomorphism", hom < 1e-10, fmt::format("max residual {:.2e}", hom));

    double orbit = 0;
    for (unsigned l = 0; l <= 5; ++l)
        for (unsigned n = 1; n <= 8; ++n) orbit = std::max(orbit, orbit_consistency(l, n, cfg.exec));
    r.add("orbit_consistency", orbit < 1e-10, fmt::format("max residual {:.2e}, l<=5, n<=8", orbit));

    const double d1 = decay_experiment(1, 50).back().ratio;
    const double d8 = decay_experiment(8, 200).back().ratio;
    r.add("decay_rates", std::abs(d1 - 0.5) < 1e-6 && std::abs(d8 - reference::kTable3[7]) < 1e-3,
          fmt::format("l=1 ratio {:.6f}, l=8 ratio {:.6f}", d1, d8));
    return r.take();
}

std::vector<InvariantResult> run_checks(const CheckConfig& cfg) {
    std::vector<InvariantResult> all;
    for (auto part : {check_group_core, check_enumeration, check_population, check_spectral}) {
        auto v = part(cfg);
        all.insert(all.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
    }
    return all;
}

bool all_passed(const std::vector<InvariantResult>& results) {
    return std::none_of(results.begin(), results.end(), [](const auto& r) { return r.status == CheckStatus::fail; });
}

}  // namespace qq
