// latticeprop command-line front end.
//
// Subcommands: decompose, power, transmit, bands, bench.
// Exit codes: 0 success, 2 input error, 3 numeric overflow, 4 verification
// failure. Output is byte-deterministic for fixed inputs and seed.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latticeprop/latticeprop.hpp"

namespace lp = latticeprop;
using nlohmann::json;

namespace {

struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr double verify_bound = 1e-8;

struct CommonOpts {
    std::string input;
    std::string output;
    std::string format = "csv";
    double eps_det = lp::eps_det_default;
    double eps_parab = lp::eps_parab_default;
};

void add_output_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("-o,--output", o.output, "write to this file instead of stdout");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

void add_matrix_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("-i,--input", o.input,
                    "matrix as four whitespace-separated reals, row-major (inline or a file)")
        ->required();
    add_output_opts(cmd, o);
    cmd->add_option("--eps-det", o.eps_det, "unimodularity tolerance")->capture_default_str();
    cmd->add_option("--eps-parab", o.eps_parab, "parabolic classification band")
        ->capture_default_str();
}

void add_config_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("-i,--input", o.input, "lattice config json file")->required();
    add_output_opts(cmd, o);
    cmd->add_option("--eps-parab", o.eps_parab, "parabolic classification band")
        ->capture_default_str();
}

bool try_parse_matrix(const std::string& text, lp::Mat2& m, std::string& err) {
    std::istringstream in(text);
    double v[4];
    for (int i = 0; i < 4; ++i) {
        if (!(in >> v[i])) {
            err = "expected four whitespace-separated reals, row-major";
            return false;
        }
    }
    std::string rest;
    if (in >> rest) {
        err = "trailing content after four reals: " + rest;
        return false;
    }
    m = {v[0], v[1], v[2], v[3]};
    return true;
}

lp::Mat2 read_matrix_arg(const std::string& arg) {
    lp::Mat2 m;
    std::string err;
    if (try_parse_matrix(arg, m, err)) return m;
    if (std::ifstream f(arg); f) {
        std::stringstream buf;
        buf << f.rdbuf();
        std::string ferr;
        if (try_parse_matrix(buf.str(), m, ferr)) return m;
        throw std::domain_error("input file " + arg + ": " + ferr);
    }
    throw std::domain_error("input \"" + arg + "\": " + err);
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw std::domain_error("cannot open output file " + o.output);
    out << text;
    if (!out) throw std::domain_error("failed writing output file " + o.output);
}

struct ClassParams {
    std::optional<double> phi;
    std::optional<double> chi;
    std::optional<double> gamma;
    std::optional<std::string> orientation;
};

ClassParams class_params(const lp::WignerClass& c) {
    ClassParams p;
    if (const auto* e = std::get_if<lp::Elliptic>(&c)) {
        p.phi = e->phi.value;
    } else if (const auto* h = std::get_if<lp::Hyperbolic>(&c)) {
        p.chi = h->chi.value;
    } else if (const auto* pa = std::get_if<lp::Parabolic>(&c)) {
        p.gamma = pa->gamma.value;
        p.orientation = pa->orientation == lp::ShearOrientation::Upper ? "upper" : "lower";
    }
    return p;
}

std::string opt_cell(const std::optional<double>& v) {
    return v ? lp::format_double(*v) : std::string();
}

int cmd_decompose(const CommonOpts& o) {
    const lp::Mat2 m = read_matrix_arg(o.input);
    const lp::BargmannFactors factors = lp::bargmann_decompose(m, o.eps_det);
    const lp::Recombination rec = lp::recombine(factors);
    const lp::WignerDecomposition wd = lp::wigner_decompose(m, o.eps_det, o.eps_parab);
    const ClassParams cp = class_params(wd.w_class);

    if (o.format == "json") {
        json w{{"class", lp::class_name(wd.w_class)},
               {"delta", wd.delta.value},
               {"eta", wd.eta.value},
               {"sign", wd.sign}};
        if (cp.phi) w["phi"] = *cp.phi;
        if (cp.chi) w["chi"] = *cp.chi;
        if (cp.gamma) {
            w["gamma"] = *cp.gamma;
            w["orientation"] = *cp.orientation;
        }
        const json doc{{"kind", "decomposition"},
                       {"matrix", {m.a11, m.a12, m.a21, m.a22}},
                       {"class", lp::class_name(wd.w_class)},
                       {"bargmann",
                        {{"theta1", factors.theta1.value},
                         {"lambda", factors.lambda.value},
                         {"theta2", factors.theta2.value}}},
                       {"recombination", {{"theta", rec.theta.value}, {"delta", rec.delta.value}}},
                       {"wigner", w}};
        emit(o, doc.dump(2) + "\n");
        return 0;
    }

    std::string out =
        "class,theta1,lambda,theta2,rec_theta,rec_delta,w_delta,w_eta,w_sign,"
        "phi,chi,gamma,orientation\n";
    out += std::string(lp::class_name(wd.w_class)) + ',';
    out += lp::format_double(factors.theta1.value) + ',';
    out += lp::format_double(factors.lambda.value) + ',';
    out += lp::format_double(factors.theta2.value) + ',';
    out += lp::format_double(rec.theta.value) + ',';
    out += lp::format_double(rec.delta.value) + ',';
    out += lp::format_double(wd.delta.value) + ',';
    out += lp::format_double(wd.eta.value) + ',';
    out += std::to_string(wd.sign) + ',';
    out += opt_cell(cp.phi) + ',';
    out += opt_cell(cp.chi) + ',';
    out += opt_cell(cp.gamma) + ',';
    out += cp.orientation.value_or("");
    out += '\n';
    emit(o, out);
    return 0;
}

int cmd_power(const CommonOpts& o, std::uint64_t n, bool verify) {
    const lp::Mat2 m = read_matrix_arg(o.input);
    const lp::Mat2 p = lp::closed_power(m, n, o.eps_det, o.eps_parab);
    std::optional<double> deviation;
    if (verify) {
        const lp::Mat2 ref = lp::chebyshev_power(m, n, o.eps_det);
        deviation = lp::max_abs_diff(p, ref) / std::max(1.0, lp::norm_inf(ref));
    }

    if (o.format == "json") {
        json doc{{"kind", "power"}, {"n", n}, {"matrix", {p.a11, p.a12, p.a21, p.a22}}};
        if (deviation) doc["deviation"] = *deviation;
        emit(o, doc.dump(2) + "\n");
    } else {
        std::string out = deviation ? "m11,m12,m21,m22,deviation\n" : "m11,m12,m21,m22\n";
        out += lp::format_double(p.a11) + ',' + lp::format_double(p.a12) + ',' +
               lp::format_double(p.a21) + ',' + lp::format_double(p.a22);
        if (deviation) out += ',' + lp::format_double(*deviation);
        out += '\n';
        emit(o, out);
    }
    if (deviation && !(*deviation <= verify_bound))
        throw VerificationError("power --verify: relative deviation " +
                                lp::format_double(*deviation) + " exceeds 1e-08");
    return 0;
}

int cmd_scan(const CommonOpts& o, const std::optional<std::uint64_t>& n_override) {
    const lp::LatticeConfig cfg = lp::load_config(o.input);
    const std::vector<lp::SpectrumRow> rows = std::visit(
        [&](auto c) {
            if (n_override) c.periods = *n_override;
            return lp::band_scan(c, o.eps_parab);
        },
        cfg);

    if (o.format == "json") {
        json jrows = json::array();
        for (const lp::SpectrumRow& r : rows) {
            json jr{{"x", r.x},
                    {"half_trace", r.half_trace},
                    {"class", lp::class_name(r.w_class)},
                    {"bloch_phase", r.bloch_phase},
                    {"T", r.T},
                    {"R", r.R}};
            if (r.saturated) jr["saturated"] = true;
            jrows.push_back(std::move(jr));
        }
        emit(o, json{{"kind", "spectrum"}, {"rows", jrows}}.dump(2) + "\n");
    } else {
        emit(o, lp::to_csv(rows));
    }
    return 0;
}

int cmd_bench(const CommonOpts& o, std::vector<std::uint64_t> n_values, std::uint64_t seed) {
    if (n_values.empty()) n_values = lp::default_bench_n();
    for (const std::uint64_t n : n_values)
        if (n > 1000000000ull)
            throw std::domain_error("bench: N value " + std::to_string(n) +
                                    " exceeds the closed-method cap 1e9");
    const lp::BenchReport rep = lp::run_bench(n_values, seed);

    if (o.format == "json") {
        json res = json::array();
        for (const lp::BenchResult& r : rep.results)
            res.push_back({{"n", r.n},
                           {"closed_ns", r.closed_ns},
                           {"naive_ns", r.naive_ns},
                           {"naive_extrapolated", r.naive_extrapolated},
                           {"max_rel_deviation", r.max_rel_deviation}});
        const json doc{{"kind", "bench"},     {"seed", rep.seed},
                       {"batch", rep.batch},  {"repeats", rep.repeats},
                       {"results", res},      {"closed_ratio", rep.closed_ratio},
                       {"passed", rep.passed}};
        emit(o, doc.dump(2) + "\n");
    } else {
        std::string out = "n,closed_ns,naive_ns,naive_extrapolated,max_rel_deviation\n";
        for (const lp::BenchResult& r : rep.results) {
            out += std::to_string(r.n) + ',';
            out += lp::format_double(r.closed_ns) + ',';
            out += lp::format_double(r.naive_ns) + ',';
            out += (r.naive_extrapolated ? "1," : "0,");
            out += lp::format_double(r.max_rel_deviation) + '\n';
        }
        emit(o, out);
    }
    if (!rep.passed)
        throw VerificationError("bench: closed vs naive relative deviation exceeds 1e-08");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "latticeprop: closed-form N-period response of one-dimensional crystals\n"
        "via decomposition of the unit-cell Sp(2) transfer matrix"};
    app.require_subcommand(1);

    CommonOpts dec_opts;
    CLI::App* dec = app.add_subcommand("decompose",
                                       "factor a unimodular matrix and classify its power form");
    add_matrix_opts(dec, dec_opts);

    CommonOpts pow_opts;
    std::uint64_t pow_n = 1;
    bool pow_verify = false;
    CLI::App* pow = app.add_subcommand("power", "compute M^N in closed form");
    add_matrix_opts(pow, pow_opts);
    pow->add_option("--N", pow_n, "power exponent, N >= 0")->required();
    pow->add_flag("--verify", pow_verify, "cross-check against the Chebyshev form");

    CommonOpts tr_opts;
    std::uint64_t tr_n = 0;
    CLI::App* tr = app.add_subcommand("transmit", "N-period transmission spectrum from a config");
    add_config_opts(tr, tr_opts);
    CLI::Option* tr_n_opt = tr->add_option("--N", tr_n, "override the config's period count");

    CommonOpts bd_opts;
    CLI::App* bd = app.add_subcommand("bands", "band/gap classification scan from a config");
    add_config_opts(bd, bd_opts);

    CommonOpts be_opts;
    std::vector<std::uint64_t> be_n;
    std::uint64_t be_seed = 12345;
    CLI::App* be = app.add_subcommand("bench", "time closed-form vs naive powering");
    add_output_opts(be, be_opts);
    be->add_option("--N", be_n, "exponents to time (default: 1e3 1e6 1e9)");
    be->add_option("--seed", be_seed, "workload seed")->capture_default_str();

    std::function<int()> run;
    dec->callback([&] { run = [&] { return cmd_decompose(dec_opts); }; });
    pow->callback([&] { run = [&] { return cmd_power(pow_opts, pow_n, pow_verify); }; });
    tr->callback([&] {
        run = [&] {
            std::optional<std::uint64_t> n;
            if (tr_n_opt->count() > 0) n = tr_n;
            return cmd_scan(tr_opts, n);
        };
    });
    bd->callback([&] { run = [&] { return cmd_scan(bd_opts, std::nullopt); }; });
    be->callback([&] { run = [&] { return cmd_bench(be_opts, be_n, be_seed); }; });

    try {
        app.parse(argc, argv);
        return run ? run() : 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const VerificationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
