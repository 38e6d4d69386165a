#pragma once

/**
 * @brief Bargmann factorization M = rotation(theta1) * boost(lambda) * rotation(theta2)
 *        of a real unimodular 2x2 matrix, and its rotation recombination.
 *
 * The factorization is the 2x2 singular value decomposition with both
 * orthogonal factors proper rotations; the singular values of a unimodular
 * matrix are e^lambda and e^-lambda. Canonical form: lambda >= 0 and
 * theta1, theta2 in (-2*pi, 2*pi]. When lambda < eps_diag the matrix is a
 * pure rotation and theta1 carries the whole angle (theta2 = 0).
 */

#include <cmath>

#include "latticeprop/mat2.hpp"

namespace latticeprop {

struct BargmannFactors {
    Angle theta1;
    Rapidity lambda;
    Angle theta2;
};

/// theta = (theta1 + theta2)/2, delta = (theta1 - theta2)/2, so that
/// rotation(theta1) * B * rotation(theta2)
///   = rotation(delta) * [rotation(theta) * B * rotation(theta)] * rotation(-delta).
struct Recombination {
    Angle theta;
    Angle delta;
};

[[nodiscard]] inline Mat2 reconstruct(const BargmannFactors& f) {
    return rotation(f.theta1) * boost(f.lambda) * rotation(f.theta2);
}

[[nodiscard]] inline BargmannFactors bargmann_decompose(const Mat2& m,
                                                        double eps_det = eps_det_default,
                                                        double eps_diag = eps_diag_default) {
    require_unimodular(m, "bargmann_decompose", eps_det);
    // Split into the rotation-invariant pair (E, H) and the spin-2 pair (F, G):
    // M = [[E+F, G-H], [G+H, E-F]].
    const double E = 0.5 * (m.a11 + m.a22);
    const double F = 0.5 * (m.a11 - m.a22);
    const double G = 0.5 * (m.a12 + m.a21);
    const double H = 0.5 * (m.a21 - m.a12);
    const double q = std::hypot(E, H);   // (e^lambda + e^-lambda)/2
    const double r = std::hypot(F, G);   // (e^lambda - e^-lambda)/2
    const double lambda = std::max(0.0, std::log(q + r));
    const double sum = 2.0 * std::atan2(H, E);   // theta1 + theta2
    if (lambda < eps_diag) return {canonical_angle(sum), lambda, 0.0};
    const double dif = 2.0 * std::atan2(G, F);   // theta1 - theta2
    return {canonical_angle(0.5 * (sum + dif)), lambda, canonical_angle(0.5 * (sum - dif))};
}

[[nodiscard]] constexpr Recombination recombine(const BargmannFactors& f) {
    return {0.5 * (f.theta1.value + f.theta2.value), 0.5 * (f.theta1.value - f.theta2.value)};
}

/// K = rotation(theta) * boost(lambda) * rotation(theta); the original matrix is
/// rotation(delta) * K * rotation(-delta).
[[nodiscard]] inline Mat2 symmetric_core(const BargmannFactors& f) {
    const Recombination rc = recombine(f);
    return rotation(rc.theta) * boost(f.lambda) * rotation(rc.theta);
}

}  // namespace latticeprop
