#include <cmath>
#include <cstdlib>
#include <limits>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "qq/canonical_form.hpp"
#include "qq/check.hpp"
#include "qq/enumeration.hpp"
#include "qq/exec.hpp"
#include "qq/population.hpp"
#include "qq/spectral.hpp"

using namespace qq;
using nlohmann::ordered_json;

namespace {

enum ExitCode { kOk = 0, kInvariantFailure = 1, kUsage = 2, kResourceCap = 3 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ordered_json big_json(const BigInt& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return v.convert_to<long long>();
    return v.str();
}

// One output record, rendered either as a CSV row or as a JSON object.
class Row {
public:
    Row& text(const std::string& name, const std::string& v) { return put(name, csv_quote(v), v); }
    Row& integer(const std::string& name, const BigInt& v) {
        return put(name, v.str(), big_json(v));
    }
    Row& integer(const std::string& name, long long v) { return put(name, std::to_string(v), v); }
    Row& fixed(const std::string& name, double v) { return number(name, fmt::format("{:.6f}", v + 0.0)); }
    Row& sci(const std::string& name, double v) { return number(name, fmt::format("{:.6e}", v + 0.0)); }
    Row& boolean(const std::string& name, bool v) { return put(name, v ? "true" : "false", v); }
    Row& field(const std::string& name, const std::string& csv, ordered_json json) {
        return put(name, csv_quote(csv), std::move(json));
    }

    const std::vector<std::string>& names() const { return names_; }
    const std::vector<std::string>& cells() const { return cells_; }
    const ordered_json& json() const { return json_; }

private:
    Row& number(const std::string& name, const std::string& s) { return put(name, s, std::stod(s)); }
    Row& put(const std::string& name, std::string csv, ordered_json json) {
        names_.push_back(name);
        cells_.push_back(std::move(csv));
        json_[name] = std::move(json);
        return *this;
    }
    static std::string csv_quote(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += '"';
            out += c;
        }
        return out + "\"";
    }

    std::vector<std::string> names_;
    std::vector<std::string> cells_;
    ordered_json json_ = ordered_json::object();
};

struct Output {
    std::string format = "csv";
    std::string path;

    void emit(const std::vector<Row>& rows) const {
        std::ostringstream os;
        if (format == "json") {
            for (const auto& r : rows) os << r.json().dump() << '\n';
        } else if (!rows.empty()) {
            os << join(rows.front().names()) << '\n';
            for (const auto& r : rows) os << join(r.cells()) << '\n';
        }
        if (path.empty()) {
            std::cout << os.str() << std::flush;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file " + path);
        f << os.str();
    }

    static std::string join(const std::vector<std::string>& v) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
        return out;
    }
};

unsigned parse_unsigned(const std::string& s) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s, &pos);
    } catch (const std::exception&) {
        throw UsageError("not a non-negative integer: '" + s + "'");
    }
    if (pos != s.size() || s.empty() || s[0] == '-' || v > 1000000) throw UsageError("not a valid integer: '" + s + "'");
    return static_cast<unsigned>(v);
}

// "A..B" or "N"
std::pair<unsigned, unsigned> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        const unsigned n = parse_unsigned(s);
        return {n, n};
    }
    const unsigned a = parse_unsigned(s.substr(0, dots)), b = parse_unsigned(s.substr(dots + 2));
    if (a > b) throw UsageError("empty range: " + s);
    return {a, b};
}

// "8,27,120", each item may itself be a range
std::vector<unsigned> parse_list(const std::string& s) {
    std::vector<unsigned> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto [a, b] = parse_range(item);
        for (unsigned n = a; n <= b; ++n) out.push_back(n);
    }
    if (out.empty()) throw UsageError("empty list");
    return out;
}

ordered_json form_json(const CanonicalForm& c) {
    ordered_json j;
    j["a0"] = c.a0;
    j["b0"] = c.b0;
    j["body"] = ordered_json::array();
    for (auto b : c.body) j["body"].push_back(b);
    j["trailing_s"] = c.trailing_s;
    j["size"] = c.size();
    return j;
}

std::string body_text(const CanonicalForm& c) {
    std::string s;
    for (std::size_t i = 0; i < c.body.size(); ++i) s += (i ? " " : "") + std::to_string(c.body[i]);
    return s;
}

void add_form_fields(Row& row, const CanonicalForm& c) {
    row.text("canonical", c.to_string())
        .integer("a0", static_cast<long long>(c.a0))
        .integer("b0", static_cast<long long>(c.b0))
        .field("body", body_text(c), form_json(c)["body"])
        .boolean("trailing_s", c.trailing_s)
        .integer("size", static_cast<long long>(c.size()))
        .text("tail", to_string(tail_class(c)));
}

std::string verdict(unsigned n, const OrientationSet& oracle, ListReading reading) {
    if (n < 2) return "n/a";
    return compare_theorem_list(n, oracle, reading).matches ? "match" : "mismatch";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orientation statistics of the quaquaversal tiling"};
    app.require_subcommand(1);

    Output out;
    int threads = default_thread_count_from_env();
    app.add_option("--format", out.format, "csv or json (one object per line)")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("-o,--output", out.path, "write to this file instead of stdout");
    app.add_option("--threads", threads, "OpenMP threads; default from QQ_THREADS")->check(CLI::NonNegativeNumber);

    std::string word, daughters;
    auto* canon = app.add_subcommand("canon", "canonical form, size and exact matrix of a word");
    canon->add_option("word", word, "word such as \"S^2 T^3 S T^4\"");
    canon->add_option("--daughters", daughters, "comma-separated daughter indices 1..8 instead of a word");

    std::string n_range = "2..14";
    unsigned enum_cap = kDefaultEnumerationCap;
    std::string dump_path;
    auto* enumerate = app.add_subcommand("enumerate", "orientation counts and listed-family verdicts");
    enumerate->add_option("--n", n_range, "A..B");
    enumerate->add_option("--cap", enum_cap, "largest n allowed");
    enumerate->add_option("--dump", dump_path, "write the orientations at the last n as JSON lines");

    std::string n_list = "8,27,120", mode = "rational";
    auto* popdyn = app.add_subcommand("popdyn", "size distributions, one column per n");
    popdyn->add_option("--n", n_list, "comma-separated list, items may be ranges");
    popdyn->add_option("--mode", mode, "rational or float")->check(CLI::IsMember({"rational", "float"}));

    unsigned n_max = 200;
    auto* median = app.add_subcommand("median", "median orientation size for n = 1..n-max");
    median->add_option("--n-max", n_max);

    unsigned fa_n = 27, orbit_cap = kDefaultOrbitCap;
    double alpha = 0.5;
    std::string convention = "whole";
    auto* falpha = app.add_subcommand("falpha", "orientations needed to cover a fraction alpha of the tiles");
    falpha->add_option("--n", fa_n)->required();
    falpha->add_option("--alpha", alpha)->required();
    falpha->add_option("--convention", convention, "whole, proportional or exact")
        ->check(CLI::IsMember({"whole", "proportional", "exact"}));
    falpha->add_option("--cap", orbit_cap, "largest n for the exact convention");

    unsigned orbit_n = 4;
    auto* orbit = app.add_subcommand("orbit", "occupancy of every orientation among the 8^n words");
    orbit->add_option("--n", orbit_n)->required();
    orbit->add_option("--cap", orbit_cap, "largest n allowed");

    unsigned lmax = 20, lmin = 1, lmax_cap = 400;
    bool timing = false;
    auto* spectrum = app.add_subcommand("spectrum", "leading transfer-operator eigenvalue per l");
    spectrum->add_option("--lmax", lmax);
    spectrum->add_option("--lmin", lmin);
    spectrum->add_option("--cap", lmax_cap, "largest l allowed");
    spectrum->add_flag("--timing", timing, "add a seconds column");

    auto* recs = app.add_subcommand("records", "record leading eigenvalues up to lmax");
    recs->add_option("--lmax", lmax);
    recs->add_option("--cap", lmax_cap, "largest l allowed");

    unsigned decay_l = 8, steps = 200;
    std::string start = "eigenvector";
    auto* decay = app.add_subcommand("decay", "norms of L^k v");
    decay->add_option("--l", decay_l);
    decay->add_option("--steps", steps);
    decay->add_option("--start", start, "eigenvector or generic")->check(CLI::IsMember({"eigenvector", "generic"}));

    CheckConfig check_cfg;
    auto* check = app.add_subcommand("check", "run every module invariant");
    check->add_option("--lmax", check_cfg.lmax);
    check->add_option("--orbit-n", check_cfg.orbit_n_max);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        set_thread_count(threads);
        std::vector<Row> rows;

        if (*canon) {
            if (!word.empty() && !daughters.empty())
                throw UsageError("give either a word or --daughters, not both");
            GeneratorWord w;
            if (!daughters.empty()) {
                std::vector<int> idx;
                for (unsigned i : parse_list(daughters)) {
                    if (i < 1 || i > 8) throw UsageError("daughter index must be in 1..8");
                    idx.push_back(static_cast<int>(i));
                }
                w = GeneratorWord::from_daughters(idx);
            } else {
                w = GeneratorWord::parse(word);
            }
            const CanonicalForm c = canonicalize(w);
            const ExactRotation m = to_matrix(c);
            std::string mat_csv;
            ordered_json mat_json = ordered_json::array();
            for (int r = 0; r < 3; ++r) {
                ordered_json row = ordered_json::array();
                for (int col = 0; col < 3; ++col) {
                    mat_csv += (col ? " " : (r ? ";" : "")) + m.at(r, col).str();
                    row.push_back(big_json(m.at(r, col)));
                }
                mat_json.push_back(row);
            }
            Row row;
            row.text("word", w.to_string());
            add_form_fields(row, c);
            row.integer("exponent", static_cast<long long>(m.exponent())).field("matrix", mat_csv, mat_json);
            rows.push_back(row);
        } else if (*enumerate) {
            const auto [a, b] = parse_range(n_range);
            const auto sweep = orientation_sweep(b, Exec::parallel, enum_cap);
            for (unsigned n = a; n <= b; ++n) {
                const auto formula = orientation_count_formula(n);
                Row row;
                row.integer("n", static_cast<long long>(n)).integer("count", static_cast<long long>(sweep[n].size()));
                if (formula)
                    row.integer("formula_count", *formula).text("match", *formula == sweep[n].size() ? "true" : "false");
                else
                    row.text("formula_count", "").text("match", "n/a");
                row.text("list_as_printed", verdict(n, sweep[n], ListReading::literal))
                    .text("list_t_inverted", verdict(n, sweep[n], ListReading::mirrored));
                rows.push_back(row);
            }
            if (!dump_path.empty()) {
                std::ofstream f(dump_path, std::ios::binary);
                if (!f) throw std::runtime_error("cannot open dump file " + dump_path);
                for (const auto& c : sweep[b].members) {
                    ordered_json j;
                    j["n"] = b;
                    j["canonical"] = c.to_string();
                    j["form"] = form_json(c);
                    f << j.dump() << '\n';
                }
            }
        } else if (*popdyn) {
            const auto ns = parse_list(n_list);
            const auto table = size_table(ns, mode == "rational" ? NumberMode::rational : NumberMode::floating);
            std::size_t sizes = 0;
            for (const auto& col : table) sizes = std::max(sizes, col.size());
            for (std::size_t s = 0; s < sizes; ++s) {
                Row row;
                row.integer("size", static_cast<long long>(s));
                for (std::size_t j = 0; j < ns.size(); ++j)
                    row.fixed("n=" + std::to_string(ns[j]), s < table[j].size() ? table[j][s] : 0.0);
                rows.push_back(row);
            }
        } else if (*median) {
            if (n_max < 1) throw UsageError("--n-max must be at least 1");
            const auto table = median_table(n_max);
            for (unsigned n = 1; n <= n_max; ++n)
                rows.push_back(std::move(Row().integer("n", static_cast<long long>(n)).integer("median", static_cast<long long>(table[n - 1]))));
        } else if (*falpha) {
            const FAlphaConvention conv = convention == "whole"          ? FAlphaConvention::whole_classes
                                          : convention == "proportional" ? FAlphaConvention::proportional
                                                                         : FAlphaConvention::exact_ranking;
            if (conv == FAlphaConvention::exact_ranking && fa_n > orbit_cap)
                throw ResourceCapExceeded(fmt::format("exact ranking needs n <= {}", orbit_cap));
            Row row;
            row.integer("n", static_cast<long long>(fa_n))
                .fixed("alpha", alpha)
                .text("convention", convention)
                .integer("orientations", f_alpha(fa_n, alpha, conv));
            rows.push_back(row);
        } else if (*orbit) {
            const auto o = exact_orbit(orbit_n, Exec::parallel, orbit_cap);
            const BigInt total = o.total();
            for (const auto& [c, count] : o.counts) {
                Row row;
                add_form_fields(row, c);
                row.integer("count", count).fixed("probability", Rational(count, total).convert_to<double>());
                rows.push_back(row);
            }
        } else if (*spectrum || *recs) {
            if (lmax < 1) throw UsageError("--lmax must be at least 1");
            if (lmax > lmax_cap) throw ResourceCapExceeded(fmt::format("lmax {} exceeds cap {}", lmax, lmax_cap));
            const auto sweep = spectrum_sweep(lmax);
            if (*spectrum) {
                if (lmin < 1 || lmin > lmax) throw UsageError("--lmin must be in 1..lmax");
                for (const auto& e : sweep) {
                    if (e.l < lmin) continue;
                    Row row;
                    row.integer("l", static_cast<long long>(e.l)).fixed("leading", e.leading).sci("max_imag", e.max_imag);
                    if (timing) row.fixed("seconds", e.seconds);
                    rows.push_back(row);
                }
            } else {
                for (const auto& e : records(sweep))
                    rows.push_back(std::move(Row().integer("l", static_cast<long long>(e.l)).fixed("leading", e.leading)));
            }
        } else if (*decay) {
            if (steps < 1) throw UsageError("--steps must be at least 1");
            if (decay_l > lmax_cap) throw ResourceCapExceeded(fmt::format("l {} exceeds cap {}", decay_l, lmax_cap));
            for (const auto& d : decay_experiment(decay_l, steps,
                                                  start == "generic" ? DecayStart::generic : DecayStart::leading_eigenvector))
                rows.push_back(std::move(Row().integer("k", static_cast<long long>(d.k)).sci("norm", d.norm).fixed("ratio", d.ratio)));
        } else if (*check) {
            const auto results = run_checks(check_cfg);
            for (const auto& r : results)
                rows.push_back(std::move(Row()
                                             .text("status", to_string(r.status))
                                             .text("module", r.module)
                                             .text("invariant", r.name)
                                             .text("detail", r.detail)));
            out.emit(rows);
            return all_passed(results) ? kOk : kInvariantFailure;
        }

        out.emit(rows);
        return kOk;
    } catch (const ResourceCapExceeded& e) {
        std::cerr << "resource cap: " << e.what() << '\n';
        return kResourceCap;
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kUsage;
    } catch (const WordParseError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvariantFailure;
    }
}
