#pragma once

/**
 * @brief Deterministic text rendering: doubles print as their shortest
 *        round-trip representation, so identical inputs give byte-identical
 *        csv/json output.
 */

#include <charconv>
#include <string>
#include <vector>

#include "latticeprop/crystal.hpp"
#include "latticeprop/mat2.hpp"

namespace latticeprop {

[[nodiscard]] inline std::string format_double(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

inline constexpr const char* spectrum_csv_header = "x,half_trace,class,bloch_phase,T,R";

[[nodiscard]] inline std::string to_csv(const std::vector<SpectrumRow>& rows) {
    std::string out(spectrum_csv_header);
    out += '\n';
    for (const SpectrumRow& r : rows) {
        out += format_double(r.x);
        out += ',';
        out += format_double(r.half_trace);
        out += ',';
        out += class_name(r.w_class);
        out += ',';
        out += format_double(r.bloch_phase);
        out += ',';
        out += format_double(r.T);
        out += ',';
        out += format_double(r.R);
        out += '\n';
    }
    return out;
}

/// Matrices print/parse inline as four whitespace-separated reals, row-major.
[[nodiscard]] inline std::string format_matrix(const Mat2& m) {
    return format_double(m.a11) + ' ' + format_double(m.a12) + ' ' + format_double(m.a21) + ' ' +
           format_double(m.a22);
}

}  // namespace latticeprop
