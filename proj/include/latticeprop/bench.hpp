#pragma once

/**
 * @brief Wall-clock comparison of closed-form powering against the naive
 *        O(N) product on a seeded elliptic workload.
 *
 * The closed form is timed as the full pipeline (decompose + rescale +
 * conjugate), so its cost should not depend on N. The naive product is capped
 * at naive_cap multiplications; above that the measured time is scaled
 * linearly and the row is flagged as extrapolated. Correctness is checked at
 * min(N, naive_cap), where both methods are exact.
 */

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "latticeprop/mat2.hpp"
#include "latticeprop/wigner.hpp"

namespace latticeprop {

inline constexpr double bench_deviation_bound = 1e-8;
inline constexpr std::uint64_t bench_naive_cap = 10'000'000;

struct BenchResult {
    std::uint64_t n = 0;
    double closed_ns = 0.0;  // median per-call time
    double naive_ns = 0.0;   // median per-call time, extrapolated above the cap
    bool naive_extrapolated = false;
    double max_rel_deviation = 0.0;  // closed vs naive at min(n, cap)
};

struct BenchReport {
    std::uint64_t seed = 0;
    int batch = 0;
    int repeats = 0;
    std::vector<BenchResult> results;
    double closed_ratio = 0.0;  // max/min of closed_ns across rows
    bool passed = false;        // every deviation within bench_deviation_bound
};

namespace detail {

// Side-effect sink so the optimizer cannot discard timed work.
inline volatile double bench_sink = 0.0;

template <class Body>
[[nodiscard]] double median_ns_per_call(Body&& body, int repeats, double calls) {
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(repeats));
    for (int r = 0; r < repeats; ++r) {
        const auto start = std::chrono::steady_clock::now();
        bench_sink = bench_sink + body();
        const auto stop = std::chrono::steady_clock::now();
        const double ns =
            std::chrono::duration<double, std::nano>(stop - start).count();
        samples.push_back(ns / calls);
    }
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
}

[[nodiscard]] inline std::vector<Mat2> elliptic_workload(std::uint64_t seed, int batch) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> ang(-2.0 * M_PI, 2.0 * M_PI);
    std::uniform_real_distribution<double> rap(0.0, 1.0);
    std::vector<Mat2> out;
    out.reserve(static_cast<std::size_t>(batch));
    while (out.size() < static_cast<std::size_t>(batch)) {
        const Mat2 m = rotation(ang(gen)) * boost(rap(gen)) * rotation(ang(gen));
        if (std::abs(half_trace(m)) <= 0.9) out.push_back(m);
    }
    return out;
}

}  // namespace detail

[[nodiscard]] inline BenchReport run_bench(const std::vector<std::uint64_t>& n_values,
                                           std::uint64_t seed, int batch = 32,
                                           int repeats = 5,
                                           std::uint64_t naive_cap = bench_naive_cap) {
    BenchReport report;
    report.seed = seed;
    report.batch = batch;
    report.repeats = repeats;
    const std::vector<Mat2> work = detail::elliptic_workload(seed, batch);

    // Many closed calls per timing sample; one pass is enough for the naive
    // product, whose cost per call dwarfs the clock resolution.
    const int closed_iters = 2000;

    report.passed = true;
    for (const std::uint64_t n : n_values) {
        BenchResult row;
        row.n = n;
        row.closed_ns = detail::median_ns_per_call(
            [&] {
                double acc = 0.0;
                for (int it = 0; it < closed_iters; ++it)
                    for (const Mat2& m : work) acc += closed_power(m, n).a11;
                return acc;
            },
            repeats, static_cast<double>(closed_iters) * batch);

        const std::uint64_t nd = std::min(n, naive_cap);
        row.naive_extrapolated = n > naive_cap;
        row.naive_ns = detail::median_ns_per_call(
            [&] {
                double acc = 0.0;
                for (const Mat2& m : work) acc += naive_power(m, nd).a11;
                return acc;
            },
            repeats, static_cast<double>(batch));
        if (row.naive_extrapolated)
            row.naive_ns *= static_cast<double>(n) / static_cast<double>(nd);

        for (const Mat2& m : work) {
            const Mat2 c = closed_power(m, nd);
            const Mat2 v = naive_power(m, nd);
            const double dev = max_abs_diff(c, v) / std::max(1.0, norm_inf(v));
            row.max_rel_deviation = std::max(row.max_rel_deviation, dev);
        }
        if (!(row.max_rel_deviation <= bench_deviation_bound)) report.passed = false;
        report.results.push_back(row);
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const BenchResult& row : report.results) {
        lo = std::min(lo, row.closed_ns);
        hi = std::max(hi, row.closed_ns);
    }
    report.closed_ratio = report.results.empty() ? 0.0 : hi / lo;
    return report;
}

[[nodiscard]] inline std::vector<std::uint64_t> default_bench_n() {
    return {1000, 1000000, 1000000000};
}

}  // namespace latticeprop
