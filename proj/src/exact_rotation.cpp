#include "qq/exact_rotation.hpp"

#include <cmath>
#include <sstream>

#include <boost/container_hash/hash.hpp>

namespace qq {

namespace {

ExactRotation::Matrix make(std::initializer_list<int> values) {
    ExactRotation::Matrix m;
    std::size_t i = 0;
    for (int v : values) m[i++] = v;
    return m;
}

}  // namespace

ExactRotation::ExactRotation() : mat_(make({1, 0, 0, 0, 1, 0, 0, 0, 1})) {}

ExactRotation::ExactRotation(Matrix mat, unsigned exponent) : mat_(std::move(mat)), e_(exponent) {
    reduce();
}

ExactRotation ExactRotation::generator(Letter l) {
    if (l == Letter::S) return {make({0, 0, 1, 0, 1, 0, -1, 0, 0}), 0};
    // T = [[1,0,0],[0,1/2,-1/2],[0,3/2,1/2]]
    return {make({2, 0, 0, 0, 1, -1, 0, 3, 1}), 1};
}

ExactRotation ExactRotation::power(Letter l, long long exponent) {
    long long e = exponent % order(l);
    if (e < 0) e += order(l);
    ExactRotation out;
    const ExactRotation g = generator(l);
    for (long long i = 0; i < e; ++i) out = compose(out, g);
    return out;
}

void ExactRotation::reduce() {
    while (e_ > 0) {
        for (const BigInt& v : mat_)
            if (bit_test(v, 0)) return;
        for (BigInt& v : mat_) v >>= 1;  // exact: all entries even
        --e_;
    }
}

int ExactRotation::odd_entry_count() const {
    int n = 0;
    for (const BigInt& v : mat_) n += bit_test(v, 0) ? 1 : 0;
    return n;
}

BigInt ExactRotation::determinant() const {
    const auto& m = mat_;
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

bool ExactRotation::preserves_metric() const {
    static constexpr int metric[3] = {1, 3, 1};
    const BigInt scale = BigInt(1) << (2 * e_);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            BigInt sum = 0;
            for (int k = 0; k < 3; ++k) sum += at(k, i) * metric[k] * at(k, j);
            const BigInt expected = i == j ? scale * metric[i] : BigInt(0);
            if (sum != expected) return false;
        }
    }
    return true;
}

std::array<double, 9> ExactRotation::orthonormal() const {
    // Orthonormal matrix = B mat B^{-1} / 2^e with B = diag(1, sqrt3, 1).
    static const double b[3] = {1.0, std::sqrt(3.0), 1.0};
    const double inv = std::ldexp(1.0, -static_cast<int>(e_));
    std::array<double, 9> out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out[static_cast<std::size_t>(3 * i + j)] = at(i, j).convert_to<double>() * b[i] / b[j] * inv;
    return out;
}

std::string ExactRotation::to_string() const {
    std::ostringstream os;
    os << "2^-" << e_ << " [";
    for (int i = 0; i < 3; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < 3; ++j) os << (j ? " " : "") << at(i, j);
    }
    os << ']';
    return os.str();
}

ExactRotation compose(const ExactRotation& a, const ExactRotation& b) {
    ExactRotation::Matrix out;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            BigInt sum = 0;
            for (int k = 0; k < 3; ++k) sum += a.at(i, k) * b.at(k, j);
            out[static_cast<std::size_t>(3 * i + j)] = std::move(sum);
        }
    }
    return {std::move(out), a.exponent() + b.exponent()};
}

ExactRotation to_matrix(const GeneratorWord& word) {
    ExactRotation out;
    for (const Factor& f : word.factors()) out = compose(out, ExactRotation::power(f.base, f.exponent));
    return out;
}

std::size_t ExactRotationHash::operator()(const ExactRotation& r) const noexcept {
    std::size_t seed = r.exponent();
    for (const BigInt& v : r.mat()) boost::hash_combine(seed, boost::multiprecision::hash_value(v));
    return seed;
}

}  // namespace qq
