#pragma once

#include <array>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qq/canonical_form.hpp"
#include "qq/exec.hpp"

namespace qq {

using Rational = boost::multiprecision::cpp_rational;

/// Probability mass over R(0) and the classes R(k, tail), k >= 1, of tile
/// orientations after `generation` subdivisions. Scalar is double or Rational.
template <class Scalar>
struct SizeClassDistribution {
    unsigned generation = 0;
    Scalar r0{};
    /// tails[c][k-1] for c in ST2, ST4, T2S, T4S (TailClass order minus R0)
    std::array<std::vector<Scalar>, 4> tails;

    std::size_t kmax() const noexcept { return tails[0].size(); }
    const Scalar& at(TailClass c, unsigned k) const;
    Scalar& at(TailClass c, unsigned k);
    /// Zero-filled growth; never drops mass.
    void reserve_k(std::size_t kmax);
    Scalar total() const;
};

/// Lumped transition from (from, k) to (to, k + dk) with probability weight/8.
/// Moves from k = 1 with dk = -1 land in R(0).
struct ClassTransition {
    TailClass from;
    TailClass to;
    int dk;
    int weight;
};

/// Interior transitions of the size-class walk; R(0) stays with 6/8 and
/// moves to R(1,ST2), R(1,ST4) with 1/8 each.
const std::vector<ClassTransition>& class_transitions();

template <class Scalar>
SizeClassDistribution<Scalar> point_mass_at_identity();
/// State after one subdivision: 6/8 at R(0), 1/8 at R(1,ST2) and R(1,ST4).
template <class Scalar>
SizeClassDistribution<Scalar> initial_distribution();
template <class Scalar>
SizeClassDistribution<Scalar> step(const SizeClassDistribution<Scalar>& d);
/// Distribution after n >= 0 subdivisions.
template <class Scalar>
SizeClassDistribution<Scalar> evolve(unsigned n);

/// Mass per size s = 0, 1, ..., kmax.
template <class Scalar>
std::vector<Scalar> size_marginal(const SizeClassDistribution<Scalar>& d);
template <class Scalar>
Scalar mean_size(const SizeClassDistribution<Scalar>& d);
/// Mass per tail class summed over k >= 1 (ST2, ST4, T2S, T4S).
template <class Scalar>
std::array<Scalar, 4> tail_marginal(const SizeClassDistribution<Scalar>& d);

extern template struct SizeClassDistribution<double>;
extern template struct SizeClassDistribution<Rational>;

enum class NumberMode { rational, floating };

inline constexpr unsigned kDefaultRationalLimit = 60;

/// Size marginals at each requested n, as doubles. Rational mode evolves
/// exactly and converts at the end.
std::vector<std::vector<double>> size_table(const std::vector<unsigned>& ns, NumberMode mode);

/// Smallest s with cumulative size mass >= 1/2 (exact for n <= 60).
unsigned median_size(unsigned n);
/// Medians for n = 1..n_max from a single evolution.
std::vector<unsigned> median_table(unsigned n_max);

enum class FAlphaConvention {
    whole_classes,  // take whole size classes in order until mass >= alpha
    proportional,   // last class counted proportionally, rounded up
    exact_ranking,  // rank actual orientations by population (n <= orbit cap)
};

/// Number of orientations accounting for a fraction alpha of the tiles.
BigInt f_alpha(unsigned n, double alpha, FAlphaConvention convention = FAlphaConvention::whole_classes);

inline constexpr unsigned kDefaultOrbitCap = 20;

/// Occupancy of each distinct orientation among the 8^n words; sorted by key.
struct OrbitMultiset {
    unsigned n = 0;
    std::vector<std::pair<CanonicalForm, BigInt>> counts;

    BigInt total() const;
    const BigInt* find(const CanonicalForm& c) const;
};

OrbitMultiset next_orbit(const OrbitMultiset& prev, Exec exec = Exec::parallel);
OrbitMultiset exact_orbit(unsigned n, Exec exec = Exec::parallel, unsigned cap = kDefaultOrbitCap);

/// Orbit counts / 8^n marginalised by size, and by (size, tail class).
std::vector<Rational> orbit_size_marginal(const OrbitMultiset& orbit);
SizeClassDistribution<Rational> orbit_class_distribution(const OrbitMultiset& orbit);

/// Spread of occupancy inside each populated (size, tail) class.
struct ClassSpread {
    unsigned size;
    TailClass tail;
    std::size_t populated;  // distinct orientations with nonzero count
    BigInt min_count;
    BigInt max_count;
};
std::vector<ClassSpread> class_spread(const OrbitMultiset& orbit);

using Matrix4R = std::array<std::array<Rational, 4>, 4>;

/// Column-stochastic transition matrix over (ST2, ST4, T2S, T4S), summed over k.
Matrix4R tail_transition_matrix();
/// Normalised eigenvector of the tail transition matrix for eigenvalue 1.
std::array<Rational, 4> stationary();
/// Mean change in size per step under the stationary tail distribution.
Rational drift();

}  // namespace qq
