#pragma once

/**
 * @brief Finite one-dimensional crystals driven by the closed matrix power:
 *        multilayer optical stacks at normal incidence and delta-potential
 *        lattices. One unit cell maps to a unimodular transfer matrix; the
 *        N-period response uses M^N = sign^N * C * W_N * C^-1.
 *
 * Optical amplitudes are flux-normalized (sqrt(n) * E), which makes every
 * interface matrix symmetric and unimodular:
 *   interface(na, nb) = (1/t) [[1, r], [r, 1]],
 *   r = (na - nb)/(na + nb), t = 2 sqrt(na nb)/(na + nb),
 * and propagation through a layer is diag(e^{i phi}, e^{-i phi}) with
 * phi = 2 pi n d / lambda. Transfer matrices relate the amplitudes on the
 * left of an element to those on its right, so factors compose in physical
 * left-to-right order and T = 1/|alpha|^2, R = |beta|^2/|alpha|^2.
 *
 * The delta lattice works in the scaled basis (psi, psi'/k): free propagation
 * over the period a is rotation(2 k a) and each delta is the lower shear with
 * gamma = g / k, giving the discriminant cos(ka) + (g/2k) sin(ka).
 */

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "latticeprop/mat2.hpp"
#include "latticeprop/su11.hpp"
#include "latticeprop/wigner.hpp"

namespace latticeprop {

struct Layer {
    double n = 1.0;     // refractive index
    double d_nm = 0.0;  // thickness in nm
};

struct StackConfig {
    double ambient_n = 1.0;
    double exit_n = 1.0;
    std::vector<Layer> cell;       // one period, traversed left to right
    std::uint64_t periods = 1;
    double lambda_min_nm = 400.0;
    double lambda_max_nm = 800.0;
    int points = 201;
};

struct DeltaLattice {
    double g = 0.0;  // dimensionless delta strength
    double a = 1.0;  // period
    double k_min = 0.1;
    double k_max = 10.0;
    int points = 100;
    std::uint64_t periods = 1;
};

struct SpectrumRow {
    double x = 0.0;  // scan coordinate: lambda_nm (optical) or k (delta)
    double half_trace = 0.0;
    WignerClass w_class;
    double bloch_phase = 0.0;  // phi/2 for elliptic rows; 0 otherwise
    double T = 1.0;
    double R = 0.0;
    bool saturated = false;  // hyperbolic power overflowed; T, R pinned to 0, 1
};

struct StackResponse {
    double T = 1.0;
    double R = 0.0;
    double half_trace = 0.0;
    WignerClass w_class;
    bool saturated = false;
};

namespace detail {

inline void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::domain_error(std::string(what) + " must be positive and finite");
}

inline Su11Matrix interface(double na, double nb) {
    // cosh/sinh of half the log-index step; consecutive interfaces compose exactly.
    const double r = (na - nb) / (na + nb);
    const double inv_t = (na + nb) / (2.0 * std::sqrt(na * nb));
    return {{inv_t, 0.0}, {r * inv_t, 0.0}};
}

inline Su11Matrix propagation(double n, double d_nm, double lambda_nm) {
    const double phase = 2.0 * M_PI * n * d_nm / lambda_nm;
    return {{std::cos(phase), std::sin(phase)}, {0.0, 0.0}};
}

}  // namespace detail

inline void validate(const StackConfig& c) {
    detail::require_positive(c.ambient_n, "StackConfig.ambient_n");
    detail::require_positive(c.exit_n, "StackConfig.exit_n");
    if (c.cell.empty()) throw std::domain_error("StackConfig.cell must not be empty");
    for (const Layer& l : c.cell) {
        detail::require_positive(l.n, "StackConfig.cell[].n");
        detail::require_positive(l.d_nm, "StackConfig.cell[].d_nm");
    }
    detail::require_positive(c.lambda_min_nm, "StackConfig.lambda_min_nm");
    detail::require_positive(c.lambda_max_nm, "StackConfig.lambda_max_nm");
    if (c.lambda_max_nm < c.lambda_min_nm)
        throw std::domain_error("StackConfig scan: lambda_max_nm < lambda_min_nm");
    if (c.points < 1) throw std::domain_error("StackConfig.points must be >= 1");
}

inline void validate(const DeltaLattice& c) {
    if (!std::isfinite(c.g)) throw std::domain_error("DeltaLattice.g must be finite");
    detail::require_positive(c.a, "DeltaLattice.a");
    detail::require_positive(c.k_min, "DeltaLattice.k_min");
    detail::require_positive(c.k_max, "DeltaLattice.k_max");
    if (c.k_max < c.k_min) throw std::domain_error("DeltaLattice scan: k_max < k_min");
    if (c.points < 1) throw std::domain_error("DeltaLattice.points must be >= 1");
}

/// One closed period seen from inside the first layer's medium:
/// P_1 I_12 P_2 I_23 ... P_m I_m1.
[[nodiscard]] inline Su11Matrix cell_matrix_optical(const StackConfig& c, double lambda_nm) {
    detail::require_positive(lambda_nm, "lambda_nm");
    Su11Matrix m = Su11Matrix::identity();
    for (std::size_t j = 0; j < c.cell.size(); ++j) {
        const Layer& cur = c.cell[j];
        const Layer& nxt = c.cell[(j + 1) % c.cell.size()];
        m = m * detail::propagation(cur.n, cur.d_nm, lambda_nm) * detail::interface(cur.n, nxt.n);
    }
    return m;
}

/// One period in the scaled basis: shear(g/k, Lower) * rotation(2 k a).
[[nodiscard]] inline Mat2 cell_matrix_delta(const DeltaLattice& c, double k) {
    detail::require_positive(k, "k");
    return shear(c.g / k, ShearOrientation::Lower) * rotation(2.0 * k * c.a);
}

namespace detail {

struct PoweredCell {
    Mat2 cell_sp2;
    Mat2 powered;
    bool saturated = false;
};

inline PoweredCell power_cell(const Mat2& cell, std::uint64_t n, double eps_parab) {
    PoweredCell out{cell, Mat2::identity(), false};
    try {
        out.powered = closed_power(cell, n, eps_det_default, eps_parab);
    } catch (const std::overflow_error&) {
        out.saturated = true;
    }
    return out;
}

inline void read_t_r(const Su11Matrix& total, bool saturated, double& T, double& R) {
    if (saturated) {
        T = 0.0;
        R = 1.0;
        return;
    }
    const double na = std::norm(total.alpha);
    if (!std::isfinite(na)) {
        T = 0.0;
        R = 1.0;
        return;
    }
    T = 1.0 / na;
    R = std::norm(total.beta) / na;
    // Rounding can overshoot the physical range by a few ulp; pinch it so
    // T, R in [0, 1] holds exactly. Anything beyond the guard is a real bug.
    if (T > 1.0 && T < 1.0 + 1e-9) T = 1.0;
    if (R > 1.0 && R < 1.0 + 1e-9) R = 1.0;
}

}  // namespace detail

[[nodiscard]] inline StackResponse stack_response(const StackConfig& c, double lambda_nm,
                                                  std::uint64_t n_periods,
                                                  double eps_parab = eps_parab_default) {
    validate(c);
    const Su11Matrix cell = cell_matrix_optical(c, lambda_nm);
    const Mat2 cell_sp2 = su11_to_sp2(cell);
    StackResponse out;
    out.half_trace = half_trace(cell_sp2);
    out.w_class = classify(cell_sp2, eps_det_default, eps_parab);
    const detail::PoweredCell p = detail::power_cell(cell_sp2, n_periods, eps_parab);
    out.saturated = p.saturated;
    if (!p.saturated) {
        const Su11Matrix total = detail::interface(c.ambient_n, c.cell.front().n) *
                                 sp2_to_su11(p.powered) *
                                 detail::interface(c.cell.front().n, c.exit_n);
        detail::read_t_r(total, false, out.T, out.R);
    } else {
        detail::read_t_r(Su11Matrix::identity(), true, out.T, out.R);
    }
    return out;
}

[[nodiscard]] inline StackResponse stack_response(const DeltaLattice& c, double k,
                                                  std::uint64_t n_periods,
                                                  double eps_parab = eps_parab_default) {
    validate(c);
    const Mat2 cell = cell_matrix_delta(c, k);
    StackResponse out;
    out.half_trace = half_trace(cell);
    out.w_class = classify(cell, eps_det_default, eps_parab);
    const detail::PoweredCell p = detail::power_cell(cell, n_periods, eps_parab);
    out.saturated = p.saturated;
    detail::read_t_r(sp2_to_su11(p.powered), p.saturated, out.T, out.R);
    return out;
}

namespace detail {

inline SpectrumRow make_row(double x, const StackResponse& r) {
    SpectrumRow row;
    row.x = x;
    row.half_trace = r.half_trace;
    row.w_class = r.w_class;
    if (const auto* e = std::get_if<Elliptic>(&r.w_class)) row.bloch_phase = 0.5 * e->phi.value;
    row.T = r.T;
    row.R = r.R;
    row.saturated = r.saturated;
    return row;
}

/// LATTICEPROP_THREADS caps scan parallelism; 0 or unset means auto.
inline unsigned scan_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("LATTICEPROP_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 0)
            return v == 0 ? hw : static_cast<unsigned>(std::min<long>(v, 1024));
    }
    return hw;
}

template <typename F>
void parallel_index_for(int points, F&& body) {
    unsigned nthreads = std::min<unsigned>(scan_threads(), static_cast<unsigned>(points));
    if (nthreads <= 1) {
        for (int i = 0; i < points; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const int chunk = (points + static_cast<int>(nthreads) - 1) / static_cast<int>(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) {
        const int lo = static_cast<int>(t) * chunk;
        const int hi = std::min(points, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (int i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (std::thread& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

inline double grid_point(double lo, double hi, int points, int i) {
    if (points <= 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
}

}  // namespace detail

/// Rows keyed by grid index; evaluation may run on several threads but the
/// result order is deterministic.
[[nodiscard]] inline std::vector<SpectrumRow> band_scan(const StackConfig& c,
                                                        double eps_parab = eps_parab_default) {
    validate(c);
    std::vector<SpectrumRow> rows(static_cast<std::size_t>(c.points));
    detail::parallel_index_for(c.points, [&](int i) {
        const double lam = detail::grid_point(c.lambda_min_nm, c.lambda_max_nm, c.points, i);
        rows[static_cast<std::size_t>(i)] =
            detail::make_row(lam, stack_response(c, lam, c.periods, eps_parab));
    });
    return rows;
}

[[nodiscard]] inline std::vector<SpectrumRow> band_scan(const DeltaLattice& c,
                                                        double eps_parab = eps_parab_default) {
    validate(c);
    std::vector<SpectrumRow> rows(static_cast<std::size_t>(c.points));
    detail::parallel_index_for(c.points, [&](int i) {
        const double k = detail::grid_point(c.k_min, c.k_max, c.points, i);
        rows[static_cast<std::size_t>(i)] =
            detail::make_row(k, stack_response(c, k, c.periods, eps_parab));
    });
    return rows;
}

}  // namespace latticeprop
