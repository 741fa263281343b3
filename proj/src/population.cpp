#include "qq/population.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>
#include <unordered_map>

#include <omp.h>

#include "qq/enumeration.hpp"

namespace qq {

namespace {

std::size_t slot(TailClass c) {
    if (c == TailClass::R0) throw std::invalid_argument("R0 has no size index");
    return static_cast<std::size_t>(c) - 1;
}

constexpr std::array<TailClass, 4> kTails = {TailClass::ST2, TailClass::ST4, TailClass::T2S, TailClass::T4S};

template <class Scalar>
Scalar eighth(const Scalar& x) {
    return x / 8;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }
double to_double(double d) { return d; }

}  // namespace

// ---------------------------------------------------------------------------
// SizeClassDistribution

template <class Scalar>
const Scalar& SizeClassDistribution<Scalar>::at(TailClass c, unsigned k) const {
    return tails[slot(c)].at(k - 1);
}

template <class Scalar>
Scalar& SizeClassDistribution<Scalar>::at(TailClass c, unsigned k) {
    return tails[slot(c)].at(k - 1);
}

template <class Scalar>
void SizeClassDistribution<Scalar>::reserve_k(std::size_t k) {
    if (k <= kmax()) return;
    for (auto& v : tails) v.resize(k, Scalar{});
}

template <class Scalar>
Scalar SizeClassDistribution<Scalar>::total() const {
    Scalar sum = r0;
    for (const auto& v : tails)
        for (const auto& x : v) sum += x;
    return sum;
}

template struct SizeClassDistribution<double>;
template struct SizeClassDistribution<Rational>;

const std::vector<ClassTransition>& class_transitions() {
    using enum TailClass;
    static const std::vector<ClassTransition> table = {
        {ST2, ST2, 0, 3}, {ST2, ST4, 0, 1}, {ST2, T2S, 0, 1}, {ST2, T4S, 0, 1},
        {ST2, T2S, -1, 1}, {ST2, T4S, -1, 1},
        {ST4, ST2, 0, 2}, {ST4, ST4, 0, 4}, {ST4, T2S, 0, 1}, {ST4, T4S, 0, 1},
        {T2S, ST4, 0, 2}, {T2S, T2S, 0, 4}, {T2S, ST2, +1, 1}, {T2S, ST4, +1, 1},
        {T4S, ST2, 0, 2}, {T4S, T4S, 0, 4}, {T4S, ST2, +1, 1}, {T4S, ST4, +1, 1},
    };
    return table;
}

template <class Scalar>
SizeClassDistribution<Scalar> point_mass_at_identity() {
    SizeClassDistribution<Scalar> d;
    d.r0 = 1;
    d.reserve_k(2);
    return d;
}

template <class Scalar>
SizeClassDistribution<Scalar> initial_distribution() {
    SizeClassDistribution<Scalar> d;
    d.generation = 1;
    d.reserve_k(3);
    d.r0 = Scalar(6) / 8;
    d.at(TailClass::ST2, 1) = Scalar(1) / 8;
    d.at(TailClass::ST4, 1) = Scalar(1) / 8;
    return d;
}

template <class Scalar>
SizeClassDistribution<Scalar> step(const SizeClassDistribution<Scalar>& d) {
    // Highest occupied k may move up by one; keep a free slot above it.
    std::size_t top = 0;
    for (std::size_t k = d.kmax(); k > 0 && top == 0; --k)
        for (const auto& v : d.tails)
            if (v[k - 1] != 0) {
                top = k;
                break;
            }

    SizeClassDistribution<Scalar> out;
    out.generation = d.generation + 1;
    out.reserve_k(std::max(d.kmax(), top + 2));

    out.r0 = d.r0 * 6;
    out.at(TailClass::ST2, 1) += d.r0;
    out.at(TailClass::ST4, 1) += d.r0;
    for (const ClassTransition& t : class_transitions()) {
        const auto& src = d.tails[slot(t.from)];
        for (std::size_t k = 1; k <= src.size(); ++k) {
            const Scalar& mass = src[k - 1];
            if (mass == 0) continue;
            const std::size_t dest = k + static_cast<std::size_t>(t.dk + 1) - 1;
            if (dest == 0)
                out.r0 += mass * t.weight;
            else
                out.at(t.to, static_cast<unsigned>(dest)) += mass * t.weight;
        }
    }
    out.r0 = eighth(out.r0);
    for (auto& v : out.tails)
        for (auto& x : v) x = eighth(x);
    return out;
}

template <class Scalar>
SizeClassDistribution<Scalar> evolve(unsigned n) {
    auto d = point_mass_at_identity<Scalar>();
    for (unsigned i = 0; i < n; ++i) d = step(d);
    return d;
}

template <class Scalar>
std::vector<Scalar> size_marginal(const SizeClassDistribution<Scalar>& d) {
    std::vector<Scalar> out(d.kmax() + 1);
    out[0] = d.r0;
    for (std::size_t k = 1; k <= d.kmax(); ++k)
        for (const auto& v : d.tails) out[k] += v[k - 1];
    return out;
}

template <class Scalar>
Scalar mean_size(const SizeClassDistribution<Scalar>& d) {
    Scalar mean{};
    const auto m = size_marginal(d);
    for (std::size_t s = 1; s < m.size(); ++s) mean += m[s] * static_cast<int>(s);
    return mean;
}

template <class Scalar>
std::array<Scalar, 4> tail_marginal(const SizeClassDistribution<Scalar>& d) {
    std::array<Scalar, 4> out{};
    for (std::size_t c = 0; c < 4; ++c)
        for (const auto& x : d.tails[c]) out[c] += x;
    return out;
}

#define QQ_INSTANTIATE(S)                                                        \
    template SizeClassDistribution<S> point_mass_at_identity<S>();              \
    template SizeClassDistribution<S> initial_distribution<S>();                \
    template SizeClassDistribution<S> step<S>(const SizeClassDistribution<S>&); \
    template SizeClassDistribution<S> evolve<S>(unsigned);                      \
    template std::vector<S> size_marginal<S>(const SizeClassDistribution<S>&);  \
    template S mean_size<S>(const SizeClassDistribution<S>&);                   \
    template std::array<S, 4> tail_marginal<S>(const SizeClassDistribution<S>&);
QQ_INSTANTIATE(double)
QQ_INSTANTIATE(Rational)
#undef QQ_INSTANTIATE

// ---------------------------------------------------------------------------
// Tables

std::vector<std::vector<double>> size_table(const std::vector<unsigned>& ns, NumberMode mode) {
    std::vector<std::vector<double>> out(ns.size());
    const unsigned n_max = ns.empty() ? 0 : *std::max_element(ns.begin(), ns.end());
    const auto run = [&](auto d) {
        for (unsigned n = 0; n <= n_max; ++n) {
            if (n > 0) d = step(d);
            for (std::size_t i = 0; i < ns.size(); ++i) {
                if (ns[i] != n) continue;
                for (const auto& x : size_marginal(d)) out[i].push_back(to_double(x));
            }
        }
    };
    if (mode == NumberMode::rational)
        run(point_mass_at_identity<Rational>());
    else
        run(point_mass_at_identity<double>());
    return out;
}

namespace {

template <class Scalar>
unsigned median_of(const SizeClassDistribution<Scalar>& d) {
    const Scalar half = Scalar(1) / 2;
    Scalar cum{};
    const auto m = size_marginal(d);
    for (std::size_t s = 0; s < m.size(); ++s) {
        cum += m[s];
        if (cum >= half) return static_cast<unsigned>(s);
    }
    return static_cast<unsigned>(m.size() - 1);
}

}  // namespace

std::vector<unsigned> median_table(unsigned n_max) {
    std::vector<unsigned> out;
    auto exact = point_mass_at_identity<Rational>();
    auto approx = point_mass_at_identity<double>();
    for (unsigned n = 1; n <= n_max; ++n) {
        if (n <= kDefaultRationalLimit) {
            exact = step(exact);
            out.push_back(median_of(exact));
        } else {
            if (n == kDefaultRationalLimit + 1) {
                approx = evolve<double>(kDefaultRationalLimit);
            }
            approx = step(approx);
            out.push_back(median_of(approx));
        }
    }
    return out;
}

unsigned median_size(unsigned n) {
    if (n == 0) return 0;
    return median_table(n).back();
}

// ---------------------------------------------------------------------------
// Orbit multiset

BigInt OrbitMultiset::total() const {
    BigInt sum = 0;
    for (const auto& [key, c] : counts) sum += c;
    return sum;
}

const BigInt* OrbitMultiset::find(const CanonicalForm& c) const {
    auto it = std::lower_bound(counts.begin(), counts.end(), c,
                               [](const auto& entry, const CanonicalForm& key) { return entry.first < key; });
    if (it == counts.end() || it->first != c) return nullptr;
    return &it->second;
}

namespace {

using Entry = std::pair<CanonicalForm, BigInt>;

void merge_sorted_runs(std::vector<Entry>& v) {
    std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < v.size(); ++r) {
        if (w > 0 && v[w - 1].first == v[r].first) {
            v[w - 1].second += v[r].second;
        } else {
            if (w != r) v[w] = std::move(v[r]);
            ++w;
        }
    }
    v.resize(w);
}

}  // namespace

OrbitMultiset next_orbit(const OrbitMultiset& prev, Exec exec) {
    OrbitMultiset out;
    out.n = prev.n + 1;
    const auto& src = prev.counts;

    if (exec == Exec::serial) {
        std::unordered_map<CanonicalForm, BigInt, CanonicalFormHash> acc;
        for (const auto& [x, c] : src)
            for (int i = 1; i <= 8; ++i) acc[x * daughter(i)] += c;
        out.counts.reserve(acc.size());
        for (auto& [k, c] : acc) out.counts.emplace_back(k, std::move(c));
        std::sort(out.counts.begin(), out.counts.end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
        return out;
    }

    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(src.size());
    std::vector<std::vector<Entry>> partial(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
    {
        auto& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t j = 0; j < count; ++j) {
            const auto& [x, c] = src[static_cast<std::size_t>(j)];
            for (int i = 1; i <= 8; ++i) local.emplace_back(x * daughter(i), c);
        }
        merge_sorted_runs(local);
    }
    for (auto& p : partial) std::move(p.begin(), p.end(), std::back_inserter(out.counts));
    merge_sorted_runs(out.counts);
    return out;
}

OrbitMultiset exact_orbit(unsigned n, Exec exec, unsigned cap) {
    if (n > cap)
        throw ResourceCapExceeded("orbit depth " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    OrbitMultiset orbit;
    orbit.counts.emplace_back(CanonicalForm{}, BigInt(1));
    while (orbit.n < n) orbit = next_orbit(orbit, exec);
    return orbit;
}

std::vector<Rational> orbit_size_marginal(const OrbitMultiset& orbit) {
    const BigInt denom = BigInt(1) << (3 * orbit.n);
    std::vector<BigInt> sums;
    for (const auto& [key, c] : orbit.counts) {
        if (sums.size() <= key.size()) sums.resize(key.size() + 1);
        sums[key.size()] += c;
    }
    std::vector<Rational> out;
    for (const auto& s : sums) out.emplace_back(s, denom);
    return out;
}

SizeClassDistribution<Rational> orbit_class_distribution(const OrbitMultiset& orbit) {
    SizeClassDistribution<Rational> d;
    d.generation = orbit.n;
    const BigInt denom = BigInt(1) << (3 * orbit.n);
    for (const auto& [key, c] : orbit.counts) {
        const Rational mass(c, denom);
        if (key.size() == 0) {
            d.r0 += mass;
        } else {
            d.reserve_k(key.size());
            d.at(tail_class(key), static_cast<unsigned>(key.size())) += mass;
        }
    }
    return d;
}

std::vector<ClassSpread> class_spread(const OrbitMultiset& orbit) {
    std::vector<ClassSpread> out;
    for (const auto& [key, c] : orbit.counts) {
        const unsigned size = static_cast<unsigned>(key.size());
        const TailClass tail = tail_class(key);
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const ClassSpread& s) { return s.size == size && s.tail == tail; });
        if (it == out.end()) {
            out.push_back({size, tail, 1, c, c});
        } else {
            ++it->populated;
            if (c < it->min_count) it->min_count = c;
            if (c > it->max_count) it->max_count = c;
        }
    }
    std::sort(out.begin(), out.end(), [](const ClassSpread& a, const ClassSpread& b) {
        return std::pair(a.size, a.tail) < std::pair(b.size, b.tail);
    });
    return out;
}

// ---------------------------------------------------------------------------
// f_alpha

BigInt f_alpha(unsigned n, double alpha, FAlphaConvention convention) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");

    if (convention == FAlphaConvention::exact_ranking) {
        const OrbitMultiset orbit = exact_orbit(n);
        std::vector<BigInt> counts;
        for (const auto& [k, c] : orbit.counts) counts.push_back(c);
        std::sort(counts.begin(), counts.end(), std::greater<>());
        const Rational target = Rational(alpha) * orbit.total();
        BigInt cum = 0;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            cum += counts[i];
            if (Rational(cum) >= target) return BigInt(i + 1);
        }
        return BigInt(counts.size());
    }

    std::vector<double> marginal;
    if (n <= kDefaultRationalLimit) {
        for (const auto& x : size_marginal(evolve<Rational>(n))) marginal.push_back(to_double(x));
    } else {
        marginal = size_marginal(evolve<double>(n));
    }

    double cum = 0.0;
    for (std::size_t s = 0; s < marginal.size(); ++s) {
        const double before = cum;
        cum += marginal[s];
        if (cum < alpha) continue;
        const unsigned size = static_cast<unsigned>(s);
        if (convention == FAlphaConvention::whole_classes) return count_size_at_most(size);
        const BigInt below = size == 0 ? BigInt(0) : count_size_at_most(size - 1);
        const double share = (alpha - before) / marginal[s];
        const double partial = std::ceil(share * element_count(size).convert_to<double>());
        return below + BigInt(static_cast<long long>(partial));
    }
    return count_size_at_most(static_cast<unsigned>(marginal.size() - 1));
}

// ---------------------------------------------------------------------------
// Tail chain

Matrix4R tail_transition_matrix() {
    Matrix4R m{};
    for (const ClassTransition& t : class_transitions())
        m[slot(t.to)][slot(t.from)] += Rational(t.weight, 8);
    return m;
}

std::array<Rational, 4> stationary() {
    // Solve (M - I) x = 0 with the last equation replaced by sum(x) = 1.
    Matrix4R a = tail_transition_matrix();
    std::array<Rational, 4> b{};
    for (int i = 0; i < 4; ++i) a[i][i] -= 1;
    for (int j = 0; j < 4; ++j) a[3][j] = 1;
    b[3] = 1;
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        while (pivot < 4 && a[pivot][col] == 0) ++pivot;
        if (pivot == 4) throw std::runtime_error("tail transition matrix has no unique stationary vector");
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (int r = 0; r < 4; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rational f = a[r][col] / a[col][col];
            for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::array<Rational, 4> x;
    for (int i = 0; i < 4; ++i) x[i] = b[i] / a[i][i];
    return x;
}

Rational drift() {
    const auto pi = stationary();
    Rational d = 0;
    for (const ClassTransition& t : class_transitions())
        if (t.dk != 0) d += pi[slot(t.from)] * Rational(t.dk * t.weight, 8);
    return d;
}

}  // namespace qq
