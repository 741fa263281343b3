#include "qq/spectral.hpp"

#include <chrono>
#include <limits>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "qq/population.hpp"

namespace qq {

namespace {

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

CMatrix checked_expm(const CMatrix& a) {
    CMatrix r = a.exp();
    if (!r.allFinite()) throw std::runtime_error("matrix exponential failed to converge");
    return r;
}

// D X D^{-1} with D = diag(exp(ls))
CMatrix rescale(const CMatrix& x, const Eigen::VectorXd& ls, double sign) {
    CMatrix y = x;
    for (Eigen::Index i = 0; i < y.rows(); ++i)
        for (Eigen::Index j = 0; j < y.cols(); ++j) y(i, j) *= std::exp(sign * (ls(i) - ls(j)));
    return y;
}

CVector eigenvalues_of(const CMatrix& m) {
    Eigen::ComplexEigenSolver<CMatrix> es(m, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
    return es.eigenvalues();
}

Eigen::Index leading_index(const CVector& ev) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < ev.size(); ++i) {
        const double dr = ev(i).real() - ev(best).real();
        if (dr > 0 || (dr == 0 && std::abs(ev(i)) > std::abs(ev(best)))) best = i;
    }
    return best;
}

long long mod(long long a, long long m) { return ((a % m) + m) % m; }

}  // namespace

GeneratorTriple angular_momentum(unsigned l) {
    const Eigen::Index n = 2 * static_cast<Eigen::Index>(l) + 1;
    const Complex i(0, 1);
    GeneratorTriple g{l, CMatrix::Zero(n, n), CMatrix::Zero(n, n), CMatrix::Zero(n, n)};
    const double L = l;
    // m is 1-based; row m-1 / column m in 0-based storage
    for (Eigen::Index m = 1; m <= 2 * static_cast<Eigen::Index>(l); ++m) {
        const double up = 2 * L + 1 - m, down = m;
        g.j1(m - 1, m) = up * i / 2.0;
        g.j1(m, m - 1) = down * i / 2.0;
        g.j2(m - 1, m) = up / 2.0;
        g.j2(m, m - 1) = -down / 2.0;
        g.j3(m - 1, m - 1) = (L + 1 - m) * i;
    }
    g.j3(n - 1, n - 1) = -L * i;
    return g;
}

Eigen::VectorXd balancing_log_scale(unsigned l) {
    const Eigen::Index n = 2 * static_cast<Eigen::Index>(l) + 1;
    Eigen::VectorXd ls(n);
    ls(0) = 0;
    for (Eigen::Index m = 1; m < n; ++m)
        ls(m) = ls(m - 1) + 0.5 * std::log(static_cast<double>(2 * l + 1 - m) / static_cast<double>(m));
    return ls;
}

SpinRepresentation::SpinRepresentation(unsigned l) : l_(l), log_scale_(balancing_log_scale(l)) {
    const auto g = angular_momentum(l);
    const Eigen::Index n = dim();
    s_pow_[0] = identity(n);
    t_pow_[0] = identity(n);
    s_pow_[1] = checked_expm(std::numbers::pi / 2 * rescale(g.j2, log_scale_, 1));
    t_pow_[1] = checked_expm(std::numbers::pi / 3 * rescale(g.j1, log_scale_, 1));
    for (std::size_t k = 2; k < s_pow_.size(); ++k) s_pow_[k] = s_pow_[k - 1] * s_pow_[1];
    for (std::size_t k = 2; k < t_pow_.size(); ++k) t_pow_[k] = t_pow_[k - 1] * t_pow_[1];
}

const CMatrix& SpinRepresentation::power(Letter g, long long exponent) const {
    if (g == Letter::S) return s_pow_[static_cast<std::size_t>(mod(exponent, 4))];
    return t_pow_[static_cast<std::size_t>(mod(exponent, 6))];
}

CMatrix SpinRepresentation::operator()(const GeneratorWord& w) const {
    CMatrix r = identity(dim());
    const GeneratorWord n = w.normalized();
    for (const auto& f : n.factors()) r = r * power(f.base, f.exponent);
    return r;
}

CMatrix SpinRepresentation::to_listing_basis(const CMatrix& m) const { return rescale(m, log_scale_, -1); }
CMatrix SpinRepresentation::from_listing_basis(const CMatrix& m) const { return rescale(m, log_scale_, 1); }

std::array<double, 2> SpinRepresentation::relation_residuals() const {
    const CMatrix id = identity(dim());
    return {max_abs(s_pow_[3] * s_pow_[1] - id), max_abs(t_pow_[5] * t_pow_[1] - id)};
}

CMatrix rep_rotation(unsigned l, Letter g) {
    const SpinRepresentation rep(l);
    return rep.to_listing_basis(rep.generator(g));
}

double generator_period_residual(unsigned l) {
    const auto g = angular_momentum(l);
    const auto ls = balancing_log_scale(l);
    const CMatrix id = identity(g.j1.rows());
    double r = 0;
    for (const CMatrix* j : {&g.j1, &g.j2, &g.j3})
        r = std::max(r, max_abs(checked_expm(2 * std::numbers::pi * rescale(*j, ls, 1)) - id));
    return r;
}

CMatrix transfer_matrix(const SpinRepresentation& rep) {
    CMatrix f = CMatrix::Zero(rep.dim(), rep.dim());
    for (int i = 1; i <= 8; ++i) f += rep(daughter_word(i));
    return f / 8.0;
}

TransferBlock transfer_block(unsigned l) {
    const SpinRepresentation rep(l);
    TransferBlock b{l, transfer_matrix(rep), {}};
    b.eigenvalues = eigenvalues_of(b.matrix);
    return b;
}

double near_real_tolerance(unsigned l) { return 1e-6 * (2.0 * l + 1); }

EigenReport leading_eigenvalue(unsigned l) {
    const auto start = std::chrono::steady_clock::now();
    const SpinRepresentation rep(l);
    const CMatrix f = transfer_matrix(rep);
    const CVector ev = eigenvalues_of(f);

    EigenReport r;
    r.l = l;
    const auto res = rep.relation_residuals();
    r.s4_residual = res[0];
    r.t6_residual = res[1];
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        r.max_imag = std::max(r.max_imag, std::abs(ev(i).imag()));
        r.spectral_radius = std::max(r.spectral_radius, std::abs(ev(i)));
        double gap = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < ev.size(); ++j) gap = std::min(gap, std::abs(ev(i) - std::conj(ev(j))));
        r.conjugation_gap = std::max(r.conjugation_gap, gap);
    }
    if (l == 0) {
        r.leading = 1.0;
    } else {
        const Complex lead = ev(leading_index(ev));
        r.leading = lead.real();
        r.complex_leading = std::abs(lead.imag()) >= near_real_tolerance(l);
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<EigenReport> spectrum_sweep(unsigned lmax, Exec exec) {
    if (lmax < 1) throw std::invalid_argument("lmax must be at least 1");
    std::vector<EigenReport> out(lmax);
    const long long n = lmax;
    if (exec == Exec::parallel) {
        // largest blocks first
#pragma omp parallel for schedule(dynamic, 1)
        for (long long i = 0; i < n; ++i) out[n - 1 - i] = leading_eigenvalue(static_cast<unsigned>(n - i));
    } else {
        for (long long i = 0; i < n; ++i) out[i] = leading_eigenvalue(static_cast<unsigned>(i + 1));
    }
    double best = -std::numeric_limits<double>::infinity();
    for (auto& r : out) {
        r.is_record = r.leading > best;
        if (r.is_record) best = r.leading;
    }
    return out;
}

std::vector<EigenReport> records(const std::vector<EigenReport>& sweep) {
    std::vector<EigenReport> out;
    for (const auto& r : sweep)
        if (r.is_record) out.push_back(r);
    return out;
}

std::vector<EigenReport> records(unsigned lmax, Exec exec) { return records(spectrum_sweep(lmax, exec)); }

double conjectured_rate() { return std::exp2(-1.0 / 112.0); }

std::vector<DecayRow> decay_experiment(unsigned l, unsigned steps, DecayStart start) {
    if (steps < 1) throw std::invalid_argument("decay experiment needs at least one step");
    const SpinRepresentation rep(l);
    const CMatrix f = transfer_matrix(rep);
    CVector v(rep.dim());
    if (start == DecayStart::leading_eigenvector) {
        Eigen::ComplexEigenSolver<CMatrix> es(f, true);
        if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
        v = es.eigenvectors().col(leading_index(es.eigenvalues()));
    } else {
        std::mt19937_64 rng(0x5eed + l);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            const double re = u(rng), im = u(rng);
            v(i) = Complex(re, im);
        }
    }
    v.normalize();

    std::vector<DecayRow> rows;
    rows.reserve(steps);
    double prev = 1.0;
    for (unsigned k = 1; k <= steps; ++k) {
        v = f * v;
        const double norm = v.norm();
        rows.push_back({k, norm, prev > 0 ? norm / prev : 0.0});
        prev = norm;
    }
    return rows;
}

double orbit_consistency(unsigned l, unsigned n, Exec exec) {
    const SpinRepresentation rep(l);
    const OrbitMultiset orbit = exact_orbit(n, exec);
    CMatrix sum = CMatrix::Zero(rep.dim(), rep.dim());
    for (const auto& [form, count] : orbit.counts)
        sum += std::ldexp(count.convert_to<double>(), -3 * static_cast<int>(n)) * rep(form);
    CMatrix p = identity(rep.dim());
    const CMatrix f = transfer_matrix(rep);
    for (unsigned k = 0; k < n; ++k) p = p * f;
    return max_abs(sum - p);
}

double homomorphism_residual(const SpinRepresentation& rep, const GeneratorWord& w1, const GeneratorWord& w2) {
    return max_abs(rep(w1) * rep(w2) - rep(canonicalize(w1 * w2)));
}

}  // namespace qq
