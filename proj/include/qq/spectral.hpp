#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qq/canonical_form.hpp"
#include "qq/exec.hpp"
#include "qq/word.hpp"

namespace qq {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Angular momentum generators of the spin-l representation, in the
/// unnormalised basis: tridiagonal J1, J2 and diagonal J3.
struct GeneratorTriple {
    unsigned l = 0;
    CMatrix j1, j2, j3;
};

GeneratorTriple angular_momentum(unsigned l);

/// log of the diagonal D with D J D^{-1} anti-Hermitian for J1, J2, J3.
Eigen::VectorXd balancing_log_scale(unsigned l);

/// Spin-l representation of G(6,4). Matrices live in the balanced (unitary)
/// frame; to_listing_basis maps back to the basis of angular_momentum.
class SpinRepresentation {
public:
    explicit SpinRepresentation(unsigned l);

    unsigned l() const noexcept { return l_; }
    Eigen::Index dim() const noexcept { return 2 * static_cast<Eigen::Index>(l_) + 1; }

    const CMatrix& generator(Letter g) const { return g == Letter::S ? s_pow_[1] : t_pow_[1]; }
    const CMatrix& power(Letter g, long long exponent) const;

    CMatrix operator()(const GeneratorWord& w) const;
    CMatrix operator()(const CanonicalForm& c) const { return (*this)(c.to_word()); }

    CMatrix to_listing_basis(const CMatrix& m) const;
    CMatrix from_listing_basis(const CMatrix& m) const;

    /// ||R(S)^4 - I||_max and ||R(T)^6 - I||_max.
    std::array<double, 2> relation_residuals() const;

private:
    unsigned l_;
    Eigen::VectorXd log_scale_;
    std::array<CMatrix, 4> s_pow_;
    std::array<CMatrix, 6> t_pow_;
};

/// expm((pi/2) J2) for S, expm((pi/3) J1) for T, in the listing basis.
CMatrix rep_rotation(unsigned l, Letter g);

/// max_a ||expm(2 pi J_a) - I||_max, evaluated in the balanced frame.
double generator_period_residual(unsigned l);

struct TransferBlock {
    unsigned l = 0;
    CMatrix matrix;  // balanced frame
    CVector eigenvalues;
};

/// (1/8) sum_i R_l(g_i).
CMatrix transfer_matrix(const SpinRepresentation& rep);
TransferBlock transfer_block(unsigned l);

struct EigenReport {
    unsigned l = 0;
    double leading = 0;
    double max_imag = 0;
    bool is_record = false;
    /// Eigenvalue of largest real part has |Im| above the near-real tolerance.
    bool complex_leading = false;
    double spectral_radius = 0;
    /// Largest distance from an eigenvalue to the conjugate of its nearest partner.
    double conjugation_gap = 0;
    double s4_residual = 0;
    double t6_residual = 0;
    double seconds = 0;
};

double near_real_tolerance(unsigned l);

EigenReport leading_eigenvalue(unsigned l);

/// Reports for l = 1..lmax with is_record set; per-l results do not depend on exec.
std::vector<EigenReport> spectrum_sweep(unsigned lmax, Exec exec = Exec::parallel);
std::vector<EigenReport> records(unsigned lmax, Exec exec = Exec::parallel);
std::vector<EigenReport> records(const std::vector<EigenReport>& sweep);

/// 2^{-1/112}.
double conjectured_rate();

enum class DecayStart { leading_eigenvector, generic };

struct DecayRow {
    unsigned k;
    double norm;
    double ratio;  // norm_k / norm_{k-1}, with norm_0 = |v| = 1
};

/// ||L_l^k v|| for k = 1..steps.
std::vector<DecayRow> decay_experiment(unsigned l, unsigned steps, DecayStart start = DecayStart::leading_eigenvector);

/// max-entry residual of 8^{-n} sum_g c_g R_l(g) - L_l^n over the exact orbit.
double orbit_consistency(unsigned l, unsigned n, Exec exec = Exec::parallel);

/// ||R(w1) R(w2) - R(canonicalize(w1 w2))||_max.
double homomorphism_residual(const SpinRepresentation& rep, const GeneratorWord& w1, const GeneratorWord& w2);

}  // namespace qq
