#pragma once

/**
 * @brief Little-group reduction of a unimodular 2x2 matrix:
 *        M = sign * C * W * C^-1 with C = rotation(delta) * diag(e^-eta/2, e^+eta/2)
 *        and W one of rotation(phi), X(chi) = [[cosh chi/2, sinh chi/2],
 *        [sinh chi/2, cosh chi/2]], or a unit shear E(gamma).
 *
 * Powers then collapse to M^N = sign^N * C * W_N * C^-1 where W_N rescales the
 * single class parameter: phi -> N*phi, chi -> N*chi, gamma -> N*gamma.
 *
 * Conventions: eta is read from the diagonal-equalized matrix as
 * e^{2*eta} = |m21 / m12|, which reproduces the squeeze-core ratios
 * (cosh(l)sin(t) + sinh(l)) / (cosh(l)sin(t) - sinh(l)) for the elliptic class
 * and (cosh(l)sin(t) + sinh(l)) / (sinh(l) - cosh(l)sin(t)) for the hyperbolic
 * one. The elliptic angle phi lives in (0, 4*pi): the rotation sense, an
 * invariant, selects the branch above or below 2*pi. The overall sign bit
 * covers trace < 0 hyperbolic/parabolic classes and is raised to N in powers.
 */

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <variant>

#include "latticeprop/mat2.hpp"

namespace latticeprop {

struct Elliptic {
    Angle phi;  // in (0, 4*pi)
};

struct Hyperbolic {
    Rapidity chi;  // > 0
};

struct Parabolic {
    Rapidity gamma;
    ShearOrientation orientation;
};

struct Identity {};

using WignerClass = std::variant<Elliptic, Hyperbolic, Parabolic, Identity>;

[[nodiscard]] inline const char* class_name(const WignerClass& c) {
    switch (c.index()) {
        case 0: return "elliptic";
        case 1: return "hyperbolic";
        case 2: return "parabolic";
        default: return "identity";
    }
}

/// M == +I or -I within this tolerance collapses to the Identity class.
inline constexpr double eps_identity = 1e-12;

struct WignerDecomposition {
    WignerClass w_class;
    int sign = 1;      // M = sign * conjugator * W * conjugator^-1
    Mat2 conjugator;   // rotation(delta) * diag(e^-eta/2, e^+eta/2), det = 1
    Angle delta;
    Rapidity eta;

    [[nodiscard]] Mat2 w() const;
    [[nodiscard]] Mat2 w_power(std::uint64_t n) const;
};

namespace detail {

inline double reduce_phase_times(double phi, std::uint64_t n) {
    // N*phi mod 4*pi in extended precision; N can reach 1e9.
    constexpr long double period = 4.0L * 3.141592653589793238462643383279502884L;
    long double r = std::fmod(static_cast<long double>(n) * static_cast<long double>(phi), period);
    return static_cast<double>(r);
}

inline Mat2 x_form(double chi) {
    const double ch = std::cosh(0.5 * chi);
    const double sh = std::sinh(0.5 * chi);
    return {ch, sh, sh, ch};
}

}  // namespace detail

inline Mat2 WignerDecomposition::w() const { return w_power(1); }

inline Mat2 WignerDecomposition::w_power(std::uint64_t n) const {
    if (n == 0) return Mat2::identity();
    if (std::holds_alternative<Identity>(w_class)) return Mat2::identity();
    if (const auto* e = std::get_if<Elliptic>(&w_class))
        return rotation(detail::reduce_phase_times(e->phi.value, n));
    if (const auto* h = std::get_if<Hyperbolic>(&w_class)) {
        const double half = 0.5 * static_cast<double>(n) * h->chi.value;
        if (std::fabs(half) > lambda_max)
            throw std::overflow_error(
                "w_power: N*chi/2 exceeds lambda_max = 300; the hyperbolic power overflows");
        return detail::x_form(static_cast<double>(n) * h->chi.value);
    }
    const auto& p = std::get<Parabolic>(w_class);
    const double g = static_cast<double>(n) * p.gamma.value;
    if (!std::isfinite(g)) throw std::overflow_error("w_power: N*gamma overflows");
    return shear(g, p.orientation);
}

[[nodiscard]] inline WignerDecomposition wigner_decompose(const Mat2& m,
                                                          double eps_det = eps_det_default,
                                                          double eps_parab = eps_parab_default) {
    require_unimodular(m, "wigner_decompose", eps_det);
    const double t = half_trace(m);
    const int s = t < 0.0 ? -1 : 1;
    const Mat2 si{static_cast<double>(s), 0.0, 0.0, static_cast<double>(s)};
    if (max_abs_diff(m, si) <= eps_identity)
        return {Identity{}, s, Mat2::identity(), 0.0, 0.0};

    // Rotate so the diagonal equalizes: the traceless symmetric part (F, G)
    // turns by -delta under M -> rotation(-delta) * M * rotation(delta).
    const double F = 0.5 * (m.a11 - m.a22);
    const double G = 0.5 * (m.a12 + m.a21);
    double delta = std::atan2(-F, G);
    if (delta <= -0.5 * M_PI) delta += M_PI;
    else if (delta > 0.5 * M_PI) delta -= M_PI;

    const Mat2 eq = rotation(-delta) * m * rotation(delta);
    double b = eq.a12;
    double c = eq.a21;

    // Parabolic only when the trace sits in the band AND a single shear fits
    // (one off-diagonal negligible); otherwise the guarded elliptic/hyperbolic
    // forms below stay accurate arbitrarily close to the boundary.
    if (std::fabs(std::fabs(t) - 1.0) <= eps_parab &&
        std::min(std::fabs(b), std::fabs(c)) <=
            eps_parab * std::max(1.0, std::max(std::fabs(b), std::fabs(c)))) {
        if (std::fabs(b) >= std::fabs(c)) {
            const double gamma = s * b;
            return {Parabolic{gamma, ShearOrientation::Upper}, s, rotation(delta), delta, 0.0};
        }
        const double gamma = -s * c;
        return {Parabolic{gamma, ShearOrientation::Lower}, s, rotation(delta), delta, 0.0};
    }

    const double p = b * c;  // = half_trace^2 - 1 for unimodular input
    WignerClass cls;
    int sign = 1;
    if (p < 0.0) {
        // Rotation sense sign(m21 - m12) is conjugation invariant and picks the
        // (0, 2*pi) vs (2*pi, 4*pi) branch.
        const double sphi = (c - b) > 0.0 ? std::sqrt(-p) : -std::sqrt(-p);
        double phi = 2.0 * std::atan2(sphi, t);
        if (phi <= 0.0) phi += 4.0 * M_PI;
        cls = Elliptic{phi};
    } else {
        if (s * b < 0.0) {
            // The X form needs positive off-diagonals after the sign fold; the
            // pi-shifted equalizing branch swaps (b, c) -> (-c, -b).
            delta += delta > 0.0 ? -M_PI : M_PI;
            const double nb = -c;
            c = -b;
            b = nb;
        }
        cls = Hyperbolic{2.0 * std::asinh(std::sqrt(p))};
        sign = s;
    }
    const double eta = 0.5 * std::log(std::fabs(c) / std::fabs(b));
    const double u = std::exp(-0.5 * eta);
    const Mat2 conj = rotation(delta) * Mat2{u, 0.0, 0.0, 1.0 / u};
    return {cls, sign, conj, delta, eta};
}

[[nodiscard]] inline WignerClass classify(const Mat2& m, double eps_det = eps_det_default,
                                          double eps_parab = eps_parab_default) {
    return wigner_decompose(m, eps_det, eps_parab).w_class;
}

/// M^N through the decomposition: M^N = sign^N * C * W_N * C^-1. O(1) in N.
[[nodiscard]] inline Mat2 power(const WignerDecomposition& d, std::uint64_t n) {
    if (n == 0) return Mat2::identity();
    const Mat2& C = d.conjugator;
    const Mat2 cinv{C.a22, -C.a12, -C.a21, C.a11};
    Mat2 r = C * d.w_power(n) * cinv;
    if (d.sign < 0 && (n & 1u)) r = -r;
    return r;
}

[[nodiscard]] inline Mat2 closed_power(const Mat2& m, std::uint64_t n,
                                       double eps_det = eps_det_default,
                                       double eps_parab = eps_parab_default) {
    const WignerDecomposition d = wigner_decompose(m, eps_det, eps_parab);
    if (n == 0) return Mat2::identity();
    if (n == 1) return m;
    return power(d, n);
}

/// Reference O(N) product.
[[nodiscard]] inline Mat2 naive_power(const Mat2& m, std::uint64_t n,
                                      double eps_det = eps_det_default) {
    require_unimodular(m, "naive_power", eps_det);
    Mat2 r = Mat2::identity();
    for (std::uint64_t i = 0; i < n; ++i) r = r * m;
    if (!is_finite(r)) throw std::overflow_error("naive_power: result overflowed");
    return r;
}

/// M^N = U_{N-1}(x) * M - U_{N-2}(x) * I with x = half_trace(M) and U_k the
/// Chebyshev polynomials of the second kind. O(N) scalar recurrence.
[[nodiscard]] inline Mat2 chebyshev_power(const Mat2& m, std::uint64_t n,
                                          double eps_det = eps_det_default) {
    require_unimodular(m, "chebyshev_power", eps_det);
    if (n == 0) return Mat2::identity();
    const double x = half_trace(m);
    double ukm1 = 0.0;  // U_{-1}
    double uk = 1.0;    // U_0
    for (std::uint64_t k = 1; k < n; ++k) {
        const double next = 2.0 * x * uk - ukm1;
        ukm1 = uk;
        uk = next;
        if (std::fabs(uk) > 1e300)
            throw std::overflow_error("chebyshev_power: recurrence overflowed (|half_trace| > 1)");
    }
    return {uk * m.a11 - ukm1, uk * m.a12, uk * m.a21, uk * m.a22 - ukm1};
}

struct BargmannWignerParams {
    WignerClass w_class;
    Rapidity eta;
};

///// Closed-form class parameters of K = rotation(theta) * squeeze45(lambda) * rotation(theta):
/// half-trace cosh(lambda)cos(theta), off-diagonals sinh(lambda) -/+ cosh(lambda)sin(theta).
/// Elliptic when (cosh(l)sin(t) - sinh(l))(cosh(l)sin(t) + sinh(l)) > 0, hyperbolic when
/// negative, parabolic on the vanishing boundary. Agrees with wigner_decompose applied to K.
[[nodiscard]] inline BargmannWignerParams params_from_bargmann(Rapidity lambda, Angle theta,
                                                               double eps_parab = eps_parab_default) {
    require_finite(lambda.value, "params_from_bargmann");
    require_finite(theta.value, "params_from_bargmann");
    if (std::fabs(lambda.value) > lambda_max)
        throw std::overflow_error("params_from_bargmann: |lambda| exceeds lambda_max = 300");
    const double ch = std::cosh(lambda.value);
    const double sh = std::sinh(lambda.value);
    const double st = std::sin(theta.value);
    const double h = ch * std::cos(theta.value);
    const double d = ch * st - sh;    // -m12 of the core
    const double ssum = ch * st + sh; // m21 of the core
    const int s = h < 0.0 ? -1 : 1;
    const double p = d * ssum;        // = 1 - h^2

    if (std::fabs(std::fabs(h) - 1.0) <= eps_parab &&
        std::min(std::fabs(d), std::fabs(ssum)) <=
            eps_parab * std::max(1.0, std::max(std::fabs(d), std::fabs(ssum)))) {
        if (std::fabs(d) >= std::fabs(ssum))
            return {Parabolic{-s * d, ShearOrientation::Upper}, 0.0};
        return {Parabolic{-s * ssum, ShearOrientation::Lower}, 0.0};
    }
    if (p > 0.0) {
        const double sphi = (ssum + d) > 0.0 ? std::sqrt(p) : -std::sqrt(p);
        double phi = 2.0 * std::atan2(sphi, h);
        if (phi <= 0.0) phi += 4.0 * M_PI;
        return {Elliptic{phi}, 0.5 * std::log(ssum / d)};
    }
    if (ssum <= 0.0)
        throw std::domain_error(
            "params_from_bargmann: convention violation: cosh(lambda)*sin(theta) + sinh(lambda) "
            "<= 0 while the elliptic criterion holds; the printed relations assume the "
            "positive-sense axis");
    const double chi = 2.0 * std::asinh(std::sqrt(-p));
    const double eta = s > 0 ? 0.5 * std::log(ssum / -d) : 0.5 * std::log(-d / ssum);
    return {Hyperbolic{chi}, eta};
}

}  // namespace latticeprop
