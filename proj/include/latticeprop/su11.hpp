#pragma once

/**
 * @brief Fixed componentwise isomorphism between SU(1,1) wave-basis matrices
 *        [[alpha, beta], [conj(beta), conj(alpha)]] and real unimodular 2x2
 *        matrices. Losslessness |alpha|^2 - |beta|^2 = 1 maps to det = 1.
 */

#include <algorithm>
#include <complex>

#include "latticeprop/mat2.hpp"

namespace latticeprop {

struct Su11Matrix {
    std::complex<double> alpha{1.0, 0.0};
    std::complex<double> beta{0.0, 0.0};

    static constexpr Su11Matrix identity() { return {}; }

    /// [[a1, b1], [b1*, a1*]] * [[a2, b2], [b2*, a2*]] stays in the group.
    Su11Matrix operator*(const Su11Matrix& o) const {
        return {alpha * o.alpha + beta * std::conj(o.beta),
                alpha * o.beta + beta * std::conj(o.alpha)};
    }
};

[[nodiscard]] inline double lossless_defect(const Su11Matrix& u) {
    return std::norm(u.alpha) - std::norm(u.beta) - 1.0;
}

/// M = [[Re a + Re b, Im b - Im a], [Im a + Im b, Re a - Re b]].
/// Requires losslessness (maps to det M = 1); tolerance scales with |alpha|^2.
[[nodiscard]] inline Mat2 su11_to_sp2(const Su11Matrix& u) {
    const double defect = lossless_defect(u);
    if (!(std::fabs(defect) <= 1e-9 * std::max(1.0, std::norm(u.alpha))))
        throw std::domain_error("su11_to_sp2: matrix is not lossless (|alpha|^2 - |beta|^2 - 1 = " +
                                std::to_string(defect) + ")");
    return {u.alpha.real() + u.beta.real(), u.beta.imag() - u.alpha.imag(),
            u.alpha.imag() + u.beta.imag(), u.alpha.real() - u.beta.real()};
}

[[nodiscard]] inline Su11Matrix sp2_to_su11(const Mat2& m) {
    return {{0.5 * (m.a11 + m.a22), 0.5 * (m.a21 - m.a12)},
            {0.5 * (m.a11 - m.a22), 0.5 * (m.a12 + m.a21)}};
}

}  // namespace latticeprop
