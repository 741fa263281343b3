#pragma once

#include <array>
#include <cstddef>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "qq/word.hpp"

namespace qq {

using BigInt = boost::multiprecision::cpp_int;

/// A group element as mat / 2^e, written in the basis {e1, sqrt(3) e2, e3}
/// where S and T have dyadic rational entries. Always kept reduced: when
/// e > 0 at least one entry is odd.
class ExactRotation {
public:
    using Matrix = std::array<BigInt, 9>;  // row-major

    ExactRotation();  // identity
    ExactRotation(Matrix mat, unsigned exponent);

    static ExactRotation identity() { return {}; }
    static ExactRotation generator(Letter l);
    static ExactRotation power(Letter l, long long exponent);

    const Matrix& mat() const noexcept { return mat_; }
    const BigInt& at(int row, int col) const { return mat_[static_cast<std::size_t>(3 * row + col)]; }
    unsigned exponent() const noexcept { return e_; }

    int odd_entry_count() const;
    BigInt determinant() const;
    /// mat^T diag(1,3,1) mat == 4^e diag(1,3,1)
    bool preserves_metric() const;

    /// Entries of the rotation in the orthonormal basis {e1, e2, e3}.
    std::array<double, 9> orthonormal() const;

    std::string to_string() const;

    friend bool operator==(const ExactRotation&, const ExactRotation&) = default;

private:
    void reduce();

    Matrix mat_;
    unsigned e_ = 0;
};

ExactRotation compose(const ExactRotation& a, const ExactRotation& b);
inline ExactRotation operator*(const ExactRotation& a, const ExactRotation& b) { return compose(a, b); }

ExactRotation to_matrix(const GeneratorWord& word);

struct ExactRotationHash {
    std::size_t operator()(const ExactRotation& r) const noexcept;
};

}  // namespace qq
