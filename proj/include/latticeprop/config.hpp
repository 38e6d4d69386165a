#pragma once

/**
 * @brief JSON lattice configs (see schemas/config.schema.json). Violations
 *        throw std::domain_error naming the offending field path.
 */

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "latticeprop/crystal.hpp"

namespace latticeprop {

using LatticeConfig = std::variant<StackConfig, DeltaLattice>;

namespace detail {

using nlohmann::json;

inline const json& member(const json& j, const std::string& path, const char* key,
                          bool required = true) {
    static const json null_json;
    const auto it = j.find(key);
    if (it == j.end()) {
        if (required) throw std::domain_error("config: missing field " + path + key);
        return null_json;
    }
    return *it;
}

inline double number_at(const json& j, const std::string& path) {
    if (!j.is_number()) throw std::domain_error("config: " + path + " must be a number");
    return j.get<double>();
}

inline double positive_at(const json& j, const std::string& path) {
    const double v = number_at(j, path);
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::domain_error("config: " + path + " must be positive and finite");
    return v;
}

inline std::uint64_t count_at(const json& j, const std::string& path, std::uint64_t max_value) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
        throw std::domain_error("config: " + path + " must be a nonnegative integer");
    const auto v = j.get<std::uint64_t>();
    if (v > max_value)
        throw std::domain_error("config: " + path + " exceeds the maximum " +
                                std::to_string(max_value));
    return v;
}

}  // namespace detail

[[nodiscard]] inline LatticeConfig parse_config(const nlohmann::json& j) {
    using detail::member;
    if (!j.is_object()) throw std::domain_error("config: root must be an object");
    const auto& type = member(j, "", "type");
    if (!type.is_string()) throw std::domain_error("config: type must be a string");
    const std::string kind = type.get<std::string>();

    if (kind == "optical") {
        StackConfig c;
        if (j.contains("ambient_n")) c.ambient_n = detail::positive_at(j["ambient_n"], "ambient_n");
        if (j.contains("exit_n")) c.exit_n = detail::positive_at(j["exit_n"], "exit_n");
        const auto& cell = member(j, "", "cell");
        if (!cell.is_array() || cell.empty())
            throw std::domain_error("config: cell must be a non-empty array of layers");
        for (std::size_t i = 0; i < cell.size(); ++i) {
            const std::string path = "cell[" + std::to_string(i) + "].";
            const auto& layer = cell[i];
            if (!layer.is_object()) throw std::domain_error("config: " + path + " must be an object");
            Layer l;
            l.n = detail::positive_at(member(layer, path, "n"), path + "n");
            l.d_nm = detail::positive_at(member(layer, path, "d_nm"), path + "d_nm");
            c.cell.push_back(l);
        }
        if (j.contains("periods")) c.periods = detail::count_at(j["periods"], "periods", 1000000000ull);
        const auto& scan = member(j, "", "scan");
        if (!scan.is_object()) throw std::domain_error("config: scan must be an object");
        c.lambda_min_nm = detail::positive_at(member(scan, "scan.", "lambda_min_nm"), "scan.lambda_min_nm");
        c.lambda_max_nm = detail::positive_at(member(scan, "scan.", "lambda_max_nm"), "scan.lambda_max_nm");
        c.points = static_cast<int>(detail::count_at(member(scan, "scan.", "points"), "scan.points", 10000000ull));
        if (c.points < 1) throw std::domain_error("config: scan.points must be >= 1");
        if (c.lambda_max_nm < c.lambda_min_nm)
            throw std::domain_error("config: scan.lambda_max_nm < scan.lambda_min_nm");
        return c;
    }
    if (kind == "delta") {
        DeltaLattice c;
        const auto& g = member(j, "", "g");
        c.g = detail::number_at(g, "g");
        if (!std::isfinite(c.g)) throw std::domain_error("config: g must be finite");
        c.a = detail::positive_at(member(j, "", "a"), "a");
        if (j.contains("periods")) c.periods = detail::count_at(j["periods"], "periods", 1000000000ull);
        const auto& scan = member(j, "", "k_scan");
        if (!scan.is_object()) throw std::domain_error("config: k_scan must be an object");
        c.k_min = detail::positive_at(member(scan, "k_scan.", "k_min"), "k_scan.k_min");
        c.k_max = detail::positive_at(member(scan, "k_scan.", "k_max"), "k_scan.k_max");
        c.points = static_cast<int>(detail::count_at(member(scan, "k_scan.", "points"), "k_scan.points", 10000000ull));
        if (c.points < 1) throw std::domain_error("config: k_scan.points must be >= 1");
        if (c.k_max < c.k_min) throw std::domain_error("config: k_scan.k_max < k_scan.k_min");
        return c;
    }
    throw std::domain_error("config: type must be \"optical\" or \"delta\", got \"" + kind + "\"");
}

[[nodiscard]] inline LatticeConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::domain_error("config: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::domain_error("config: " + path + " is not valid json: " + e.what());
    }
    return parse_config(j);
}

}  // namespace latticeprop
