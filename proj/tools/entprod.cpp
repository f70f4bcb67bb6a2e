// Command line front end: run scenarios, sweep k and xi, build tensor ladders.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "entprod/format.hpp"
#include "entprod/fourier.hpp"
#include "entprod/scenario.hpp"
#include "entprod/tensor_approx.hpp"

using namespace entprod;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Options {
    std::string config;
    std::string scenario;
    std::string out;
    std::string format = "csv";
    std::uint64_t seed = 1;
    int jobs = 1;
};

json load_config(const Options& o, const std::string& fallback) {
    if (!o.config.empty()) {
        std::ifstream in(o.config);
        if (!in) throw ConfigError("cannot open config '" + o.config + "'");
        try {
            return json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
    }
    return builtin_config(o.scenario.empty() ? fallback : o.scenario, o.seed);
}

std::ofstream open_out(const Options& o, const std::string& file) {
    fs::create_directories(o.out);
    const fs::path path = fs::path(o.out) / file;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    return os;
}

void emit(const Options& o, const RunReport& r) {
    std::ostringstream ss;
    if (o.format == "json")
        ss << to_json(r).dump(2) << '\n';
    else
        write_report_csv(ss, r);
    if (o.out.empty()) {
        std::cout << ss.str();
        return;
    }
    auto os = open_out(o, r.scenario + "." + o.format);
    os << ss.str();
    if (!os) throw std::runtime_error("write failed for " + r.scenario);
}

int cmd_run(const Options& o) {
    const RunReport r = run_scenario(load_config(o, "burgers_shock"), o.jobs);
    emit(o, r);
    return r.all_pass() ? 0 : 2;
}

int cmd_check(const Options& o) {
    std::vector<json> configs;
    if (!o.config.empty() || !o.scenario.empty())
        configs.push_back(load_config(o, ""));
    else
        for (const auto& name : builtin_scenarios()) configs.push_back(builtin_config(name, o.seed));
    bool ok = true;
    for (const auto& c : configs) {
        const RunReport r = run_scenario(c, o.jobs);
        std::size_t failed = 0;
        for (const auto& k : r.checks) {
            if (k.pass) continue;
            ++failed;
            std::cerr << "  FAIL " << r.scenario << '/' << k.check_id << " lhs=" << fmt_num(k.lhs)
                      << " rhs=" << fmt_num(k.rhs) << " abs_err=" << fmt_num(k.abs_err)
                      << (k.note.empty() ? "" : " (" + k.note + ")") << '\n';
        }
        std::printf("%s %-22s %3zu checks %3zu failed %.2fs\n", failed ? "FAIL" : "PASS", r.scenario.c_str(),
                    r.checks.size(), failed, r.wall_time_s);
        if (!o.out.empty()) emit(o, r);
        ok = ok && failed == 0;
    }
    return ok ? 0 : 2;
}

int cmd_curve(Options o) {
    if (o.out.empty()) o.out = ".";
    const Scenario sc = build_scenario(load_config(o, "burgers_shock"));
    for (std::size_t i = 0; i < sc.test_functions.size(); ++i) {
        const std::string ph = "phi" + std::to_string(i);
        MuCache mu(sc.problem, sc.test_functions[i].weight(), sc.spec);
        std::vector<double> vals(sc.k_grid.size());
        parallel_for(static_cast<int>(vals.size()), o.jobs, [&](int m) { vals[m] = mu(sc.k_grid[m]); });
        {
            auto os = open_out(o, "mu_" + ph + ".csv");
            os << "k,value\n";
            for (std::size_t m = 0; m < vals.size(); ++m) os << fmt_num(sc.k_grid[m]) << ',' << fmt_num(vals[m]) << '\n';
        }
        // k-integrand 1/2 E''(k) mu_k of each C2 entropy
        for (std::size_t j = 0; j < sc.entropies.size(); ++j) {
            const Entropy1D& e = sc.entropies[j];
            if (e.is_acr()) continue;
            auto os = open_out(o, "curve_E" + std::to_string(j) + "_" + ph + ".csv");
            os << "k,value\n";
            for (std::size_t m = 0; m < vals.size(); ++m)
                os << fmt_num(sc.k_grid[m]) << ','
                   << fmt_num(0.5 * e.second_derivative(sc.k_grid[m]).real() * vals[m]) << '\n';
        }
        if (!sc.xi_grid.empty()) {
            auto os = open_out(o, "fourier_" + ph + ".csv");
            write_fourier_csv(os, fourier_table(sc.xi_grid, mu, o.jobs));
        }
    }
    return 0;
}

int cmd_approx(Options o) {
    if (o.out.empty()) o.out = ".";
    json c = {{"zeta", "sin_t_cos_u"}, {"R", 1.0}, {"nu", {4, 8, 16, 32}}, {"samples", 33}};
    if (!o.config.empty()) {
        std::ifstream in(o.config);
        if (!in) throw ConfigError("cannot open config '" + o.config + "'");
        try {
            c.update(json::parse(in));
        } catch (const json::exception& e) {
            throw ConfigError(std::string("approx config: ") + e.what());
        }
    }
    EntropyTX z;
    double R = 0;
    std::vector<int> nus;
    int samples = 0;
    try {
        z = sample_zeta(c.at("zeta").get<std::string>());
        R = c.at("R").get<double>();
        nus = c.at("nu").get<std::vector<int>>();
        samples = c.at("samples").get<int>();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("approx config: ") + e.what());
    }
    if (!(R > 0.0) || nus.empty() || samples < 2) throw ConfigError("approx config: need R > 0, nu list, samples >= 2");
    auto os = open_out(o, "approx.csv");
    os << "nu,degree,terms,pK_error,seconds\n";
    for (int nu : nus) {
        if (nu < 1) throw ConfigError("approx config: nu must be >= 1");
        const auto start = std::chrono::steady_clock::now();
        const auto s = tensor_approximate(z, nu, R);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const double err = pK_error(z, s, samples);
        os << nu << ',' << s.degree() << ',' << s.terms() << ',' << fmt_num(err) << ',' << fmt_num(secs) << '\n';
        auto js = open_out(o, "separable_nu" + std::to_string(nu) + ".json");
        js << s.to_json().dump() << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropy production toolkit"};
    app.require_subcommand(1);
    Options o;
    auto common = [&o](CLI::App* c) {
        c->add_option("--config", o.config, "JSON config file");
        c->add_option("--scenario", o.scenario, "builtin scenario name");
        c->add_option("--out", o.out, "output directory");
        c->add_option("--format", o.format, "report format")->check(CLI::IsMember({"csv", "json"}));
        c->add_option("--seed", o.seed, "seed for random_piecewise");
        c->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    };
    auto* run = app.add_subcommand("run", "run one scenario and emit its report");
    auto* check = app.add_subcommand("check", "run the invariant suite over the builtin scenarios");
    auto* curve = app.add_subcommand("curve", "write k -> mu_k and xi sweeps");
    auto* approx = app.add_subcommand("approx", "tensor approximation ladder");
    auto* list = app.add_subcommand("list", "list builtin scenarios and sample entropies");
    for (auto* c : {run, check, curve, approx, list}) common(c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    try {
        if (*run) return cmd_run(o);
        if (*check) return cmd_check(o);
        if (*curve) return cmd_curve(o);
        if (*approx) return cmd_approx(o);
        for (const auto& n : builtin_scenarios()) std::cout << "scenario " << n << '\n';
        for (const auto& n : sample_zeta_names()) std::cout << "zeta " << n << '\n';
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
