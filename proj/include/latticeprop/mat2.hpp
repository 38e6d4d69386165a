#pragma once

/**
 * @brief Real 2x2 unimodular matrices and the one-parameter subgroups used
 *        to build them: rotations, boosts, 45-degree squeezes and shears.
 *
 * Rotations follow the half-angle convention: rotation(theta) has entries in
 * theta/2, so the subgroup has period 4*pi and rotation(2*pi) == -identity.
 */

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace latticeprop {

/// Rotation-like parameter in radians. Canonical representative in (-2*pi, 2*pi].
struct Angle {
    double value = 0.0;
    constexpr Angle() = default;
    constexpr Angle(double v) : value(v) {}
    constexpr operator double() const { return value; }
};

/// Boost/squeeze/shear parameter (dimensionless).
struct Rapidity {
    double value = 0.0;
    constexpr Rapidity() = default;
    constexpr Rapidity(double v) : value(v) {}
    constexpr operator double() const { return value; }
};

enum class ShearOrientation { Upper, Lower };

/// Largest boost/squeeze rapidity before exp() overflow guards trip.
inline constexpr double lambda_max = 300.0;

/// Base unimodularity tolerance; scaled by max(1, norm_inf(M)^2) at the check site.
inline constexpr double eps_det_default = 1e-9;

/// Half-trace band treated as parabolic by the classifier.
inline constexpr double eps_parab_default = 1e-9;

/// Bargmann degeneracy threshold: below it the rotation is not split.
inline constexpr double eps_diag_default = 1e-12;

struct Mat2 {
    double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    constexpr Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }

    constexpr Mat2 operator-() const { return {-a11, -a12, -a21, -a22}; }
};

[[nodiscard]] constexpr Mat2 multiply(const Mat2& a, const Mat2& b) { return a * b; }

[[nodiscard]] constexpr double trace(const Mat2& m) { return m.a11 + m.a22; }

[[nodiscard]] constexpr double det(const Mat2& m) { return m.a11 * m.a22 - m.a12 * m.a21; }

[[nodiscard]] constexpr double half_trace(const Mat2& m) { return 0.5 * (m.a11 + m.a22); }

[[nodiscard]] inline double norm_inf(const Mat2& m) {
    return std::max(std::max(std::fabs(m.a11), std::fabs(m.a12)),
                    std::max(std::fabs(m.a21), std::fabs(m.a22)));
}

[[nodiscard]] inline double max_abs_diff(const Mat2& a, const Mat2& b) {
    return std::max(std::max(std::fabs(a.a11 - b.a11), std::fabs(a.a12 - b.a12)),
                    std::max(std::fabs(a.a21 - b.a21), std::fabs(a.a22 - b.a22)));
}

[[nodiscard]] inline bool is_finite(const Mat2& m) {
    return std::isfinite(m.a11) && std::isfinite(m.a12) && std::isfinite(m.a21) &&
           std::isfinite(m.a22);
}

inline void require_finite(const Mat2& m, const char* who) {
    if (!is_finite(m)) throw std::domain_error(std::string(who) + ": non-finite matrix entry");
}

inline void require_finite(double v, const char* who) {
    if (!std::isfinite(v)) throw std::domain_error(std::string(who) + ": non-finite parameter");
}

/// Unimodularity check with a scale-aware tolerance:
/// |det - 1| <= eps * max(1, norm_inf(M)^2).
inline void require_unimodular(const Mat2& m, const char* who,
                               double eps = eps_det_default) {
    require_finite(m, who);
    const double n = norm_inf(m);
    const double tol = eps * std::max(1.0, n * n);
    const double d = det(m);
    if (std::fabs(d - 1.0) > tol) {
        char det_str[32];
        std::snprintf(det_str, sizeof det_str, "%.17g", d);
        throw std::domain_error(std::string(who) + ": matrix is not unimodular (det = " +
                                det_str + ")");
    }
}

/// Inverse of a unimodular matrix (adjugate).
[[nodiscard]] inline Mat2 inverse(const Mat2& m, double eps = eps_det_default) {
    require_unimodular(m, "inverse", eps);
    return {m.a22, -m.a12, -m.a21, m.a11};
}

/// Reduce an angle to the canonical representative in (-2*pi, 2*pi].
[[nodiscard]] inline double canonical_angle(double theta) {
    constexpr double period = 4.0 * M_PI;
    double r = std::fmod(theta, period);
    if (r <= -2.0 * M_PI) r += period;
    else if (r > 2.0 * M_PI) r -= period;
    return r;
}

/// rotation(theta) = [[cos(theta/2), -sin(theta/2)], [sin(theta/2), cos(theta/2)]].
[[nodiscard]] inline Mat2 rotation(Angle theta) {
    require_finite(theta.value, "rotation");
    const double c = std::cos(0.5 * theta.value);
    const double s = std::sin(0.5 * theta.value);
    return {c, -s, s, c};
}

/// boost(lambda) = diag(e^lambda, e^-lambda). |lambda| <= lambda_max.
[[nodiscard]] inline Mat2 boost(Rapidity lambda) {
    require_finite(lambda.value, "boost");
    if (std::fabs(lambda.value) > lambda_max)
        throw std::overflow_error("boost: |lambda| exceeds lambda_max = 300");
    return {std::exp(lambda.value), 0.0, 0.0, std::exp(-lambda.value)};
}

/// squeeze45(lambda) = [[cosh lambda, sinh lambda], [sinh lambda, cosh lambda]]
/// = rotation(pi/2) * boost(lambda) * rotation(-pi/2).
[[nodiscard]] inline Mat2 squeeze45(Rapidity lambda) {
    require_finite(lambda.value, "squeeze45");
    if (std::fabs(lambda.value) > lambda_max)
        throw std::overflow_error("squeeze45: |lambda| exceeds lambda_max = 300");
    const double ch = std::cosh(lambda.value);
    const double sh = std::sinh(lambda.value);
    return {ch, sh, sh, ch};
}

/// shear(gamma, Upper) = [[1, gamma], [0, 1]];
/// shear(gamma, Lower) = [[1, 0], [-gamma, 1]] (= transpose of shear(-gamma, Upper)).
[[nodiscard]] inline Mat2 shear(Rapidity gamma,
                                ShearOrientation o = ShearOrientation::Upper) {
    require_finite(gamma.value, "shear");
    if (o == ShearOrientation::Upper) return {1.0, gamma.value, 0.0, 1.0};
    return {1.0, 0.0, -gamma.value, 1.0};
}

}  // namespace latticeprop
