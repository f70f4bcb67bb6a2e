#include "entprod/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>

#include "entprod/format.hpp"
#include "entprod/fourier.hpp"
#include "entprod/parallel.hpp"
#include "entprod/representation.hpp"
#include "entprod/solvers.hpp"

namespace entprod {

using nlohmann::json;

void CheckRecord::settle() {
    abs_err = std::abs(lhs - rhs);
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    rel_err = scale > 0.0 ? abs_err / scale : 0.0;
    pass = abs_err <= tolerance;
}

bool RunReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

std::vector<std::string> builtin_scenarios() {
    return {"burgers_shock", "burgers_rarefaction", "nonentropic_shock", "paper_x2u_strong", "fv_burgers",
            "random_piecewise"};
}

namespace {

json bump(double t0, double x0, double rt, double rx) { return {{"t0", t0}, {"x0", x0}, {"rt", rt}, {"rx", rx}}; }

json riemann_config(const std::string& name, double ul, double ur, const std::string& kind) {
    return {{"name", name},
            {"domain", {{"t_end", 2.0}, {"n", 1}, {"box", {-1.0, 2.0}}}},
            {"flux", "burgers"},
            {"source", "zero"},
            {"field", {{"mode", "riemann"}, {"ul", ul}, {"ur", ur}, {"kind", kind}}},
            {"entropies",
             {"u^2/2", "u^4", "cos", "kruzkov:0.3",
              {{"kind", "ladder"}, {"base", -1.0}, {"jumps", {{0.25, 1.0}, {0.75, 1.0}}}}}},
            {"test_functions", {bump(1.0, 0.5, 0.8, 0.6), bump(0.6, 0.3, 0.7, 0.5)}},
            {"k_grid", {{"points", 129}}},
            {"xi_grid", {{0.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}, {5.0, 0.0}, {-5.0, 0.0}, {2.0, 1.0}}}};
}

}  // namespace

json builtin_config(const std::string& name, std::uint64_t seed) {
    if (name == "burgers_shock") return riemann_config(name, 1.0, 0.0, "entropy-shock");
    if (name == "burgers_rarefaction") return riemann_config(name, 0.0, 1.0, "rarefaction");
    if (name == "nonentropic_shock") return riemann_config(name, 0.0, 1.0, "non-entropic-shock");
    if (name == "paper_x2u_strong")
        return {{"name", name},
                {"domain", {{"t_end", 3.0}, {"n", 1}, {"box", {-2.0, 1.0}}}},
                {"flux", "linear_x2"},
                {"source", "linear_x2"},
                {"field", {{"mode", "characteristic"}, {"name", "paper_x2u"}}},
                {"entropies", {"u^2", "u^4", "cos"}},
                {"test_functions", {bump(1.5, -0.6, 1.2, 0.35), bump(1.0, -0.3, 1.2, 0.5)}},
                {"k_grid", {{"points", 33}}},
                {"xi_grid", {{0.0, 0.0}, {1.0, 0.0}}}};
    if (name == "fv_burgers")
        return {{"name", name},
                {"domain", {{"t_end", 2.0}, {"n", 1}, {"box", {-1.0, 2.0}}}},
                {"flux", "burgers"},
                {"source", "zero"},
                {"datum", {{"breaks", {0.0}}, {"values", {1.0, 0.0}}}},
                {"field", {{"mode", "fv"}, {"cells", 150}, {"cfl", 0.9}, {"scheme", "llf"}, {"boundary", "outflow"}}},
                {"entropies", {"u^2/2", "u^4", "kruzkov:0.5"}},
                {"test_functions", {bump(1.0, 0.5, 0.8, 0.6)}},
                {"k_grid", {{"points", 21}}},
                {"quadrature", {{"gauss_order", 5}, {"max_subdivision_depth", 0}}}};
    if (name == "random_piecewise")
        return {{"name", name},
                {"domain", {{"t_end", 1.5}, {"n", 1}, {"box", {-1.0, 2.0}}}},
                {"flux", "burgers"},
                {"source", "zero"},
                {"field", {{"mode", "random_piecewise"}, {"seed", seed}}},
                {"entropies", {"u^4", "u^2/2"}},
                {"test_functions", {bump(0.5, 0.5, 0.9, 0.8)}},
                {"k_grid", {{"points", 33}}}};
    throw ConfigError("unknown builtin scenario '" + name + "'");
}

std::string config_hash(const json& config) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : config.dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

template <class T>
T get_or(const json& j, const char* where, const char* key, T fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError((where ? std::string(where) + "." : std::string()) + key + " has the wrong type");
    }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    return get_or(j, nullptr, key, fallback);
}

const json& require(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
    return j.at(key);
}

Factor1D parse_factor(const json& j, const std::string& where) {
    if (j.is_number()) return Factor1D::constant(j.get<double>());
    if (j.contains("poly")) return Factor1D::polynomial(j.at("poly").get<std::vector<double>>());
    auto trig = [&](const char* key) {
        const auto v = j.at(key).get<std::vector<double>>();
        if (v.size() != 3) throw ConfigError(where + ": '" + key + "' needs [amplitude, omega, phase]");
        return v;
    };
    if (j.contains("sin")) {
        const auto v = trig("sin");
        return Factor1D::sine(v[0], v[1], v[2]);
    }
    if (j.contains("cos")) {
        const auto v = trig("cos");
        return Factor1D::cosine(v[0], v[1], v[2]);
    }
    throw ConfigError(where + ": factor must be a number, {poly}, {sin} or {cos}");
}

FluxFunction parse_flux(const json& j) {
    if (j.is_string()) {
        try {
            return FluxFunction::builtin(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("flux: ") + e.what());
        }
    }
    if (j.contains("separable")) {
        std::vector<SeparableTerm> terms;
        for (const auto& t : j.at("separable"))
            terms.push_back({parse_factor(require(t, "at", "flux.separable"), "flux.separable.at"),
                             parse_factor(require(t, "ax", "flux.separable"), "flux.separable.ax"),
                             parse_factor(require(t, "b", "flux.separable"), "flux.separable.b")});
        if (terms.empty()) throw ConfigError("flux.separable: empty term list");
        return FluxFunction::from_separable("separable", std::move(terms));
    }
    const std::string name = get_or<std::string>(j, "builtin", "");
    if (name == "linear") return FluxFunction::linear(get_or(j, "speed", 1.0));
    try {
        return FluxFunction::builtin(name);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("flux: ") + e.what());
    }
}

SourceFunction parse_source(const json& j) {
    const std::string name = j.is_string() ? j.get<std::string>() : get_or<std::string>(j, "builtin", "zero");
    if (name == "decay") return SourceFunction::decay(get_or(j, "rate", 1.0));
    try {
        return SourceFunction::builtin(name);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("source: ") + e.what());
    }
}

QuadratureSpec parse_spec(const json& j) {
    QuadratureSpec s;
    s.gauss_order = get_or(j, "gauss_order", s.gauss_order);
    s.max_subdivision_depth = get_or(j, "max_subdivision_depth", s.max_subdivision_depth);
    s.k_axis_order = get_or(j, "k_axis_order", s.k_axis_order);
    s.target_tolerance = get_or(j, "target_tolerance", s.target_tolerance);
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("quadrature: ") + e.what());
    }
    return s;
}

}  // namespace

Entropy1D parse_entropy(const json& j, Interval working) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "id" || s == "identity") return Entropy1D::identity();
        if (s == "cos") return Entropy1D::cosine();
        try {
            std::size_t used = 0;
            if (s.rfind("kruzkov:", 0) == 0) {
                const double c = std::stod(s.substr(8), &used);
                if (used == s.size() - 8) return Entropy1D::kruzkov(c, working);
            } else if (s.rfind("u^", 0) == 0) {
                const auto slash = s.find('/');
                const std::string ms = s.substr(2, slash == std::string::npos ? std::string::npos : slash - 2);
                const int m = std::stoi(ms, &used);
                if (used == ms.size()) {
                    const double scale = slash == std::string::npos ? 1.0 : std::stod(s.substr(slash + 1), &used);
                    if (slash == std::string::npos || used == s.size() - slash - 1) return Entropy1D::power(m, scale);
                }
            }
        } catch (const std::invalid_argument&) {
        } catch (const std::out_of_range&) {
        }
        throw ConfigError("entropies: unknown entropy '" + s + "'");
    }
    const std::string kind = get_or<std::string>(j, "kind", "");
    if (kind == "power") return Entropy1D::power(get_or(j, "m", 2), get_or(j, "scale", 1.0));
    if (kind == "cos") return Entropy1D::cosine();
    if (kind == "identity") return Entropy1D::identity();
    if (kind == "kruzkov") return Entropy1D::kruzkov(get_or(j, "c", 0.0), working);
    if (kind == "ladder") {
        const double base = get_or(j, "base", 0.0);
        std::vector<Jump> jumps;
        for (const auto& p : require(j, "jumps", "entropies.ladder")) {
            const auto v = p.get<std::vector<double>>();
            if (v.size() != 2) throw ConfigError("entropies.ladder: each jump is [location, size]");
            jumps.push_back({v[0], v[1]});
        }
        std::sort(jumps.begin(), jumps.end(), [](const Jump& a, const Jump& b) { return a.at < b.at; });
        auto e = [base, jumps](double u) {
            double v = base * u;
            for (const auto& jp : jumps) v += jp.size * (std::max(u - jp.at, 0.0) - std::max(-jp.at, 0.0));
            return v;
        };
        try {
            RegulatedBV d(working, [base](double) { return base; }, [](double) { return 0.0; }, jumps);
            return Entropy1D::acr("ladder", e, std::move(d));
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(std::string("entropies.ladder: ") + ex.what());
        }
    }
    throw ConfigError("entropies: unknown kind '" + kind + "'");
}

Problem random_piecewise_problem(std::uint64_t seed, double t_end) {
    std::mt19937_64 rng(seed);
    auto uni = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
    auto pick = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };

    const int n_if = pick(2, 4);
    const int n_states = pick(3, 6);
    std::vector<double> pool(n_states);
    for (auto& v : pool) v = uni(-1.0, 1.5);

    std::vector<double> base(n_if), speed(n_if);
    for (;;) {
        for (auto& b : base) b = uni(-0.6, 1.4);
        for (auto& s : speed) s = uni(-0.4, 0.4);
        std::vector<int> idx(n_if);
        for (int i = 0; i < n_if; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return base[a] < base[b]; });
        std::vector<double> b2(n_if), s2(n_if);
        for (int i = 0; i < n_if; ++i) {
            b2[i] = base[idx[i]];
            s2[i] = speed[idx[i]];
        }
        bool ok = true;
        for (int i = 1; i < n_if; ++i)
            ok = ok && b2[i] - b2[i - 1] > 0.1 && (b2[i] + s2[i] * t_end) - (b2[i - 1] + s2[i - 1] * t_end) > 0.1;
        if (ok) {
            base = b2;
            speed = s2;
            break;
        }
    }
    std::vector<Region> regions;
    int prev = -1;
    double lo = 1e300, hi = -1e300;
    for (int r = 0; r <= n_if; ++r) {
        int s = pick(0, n_states - 1);
        while (s == prev) s = pick(0, n_states - 1);
        prev = s;
        regions.push_back(Region::constant_state("s" + std::to_string(r), pool[s]));
        lo = std::min(lo, pool[s]);
        hi = std::max(hi, pool[s]);
    }
    std::vector<Curve> interfaces;
    for (int i = 0; i < n_if; ++i) {
        const double b = base[i], s = speed[i];
        interfaces.push_back([b, s](double t) { return b + s * t; });
    }
    const int n_breaks = pick(1, 3);
    std::vector<double> breaks(n_breaks), values(n_breaks + 1);
    for (auto& b : breaks) b = uni(-0.5, 1.5);
    std::sort(breaks.begin(), breaks.end());
    for (auto& v : values) v = pool[pick(0, n_states - 1)];

    auto field = std::make_shared<AnalyticPiecewiseField>(std::move(regions), std::move(interfaces),
                                                          Interval{lo, hi}, t_end);
    return {field, InitialDatum::piecewise_constant(breaks, values), FluxFunction::burgers(),
            SourceFunction::zero()};
}

double line_integral(const Weight& phi, double s, const QuadratureSpec& spec) {
    const Box& b = phi.support;
    std::vector<double> breaks;
    if (s != 0.0)
        for (double xe : {b.x.lo, b.x.hi}) breaks.push_back(xe / s);
    return integrate_1d<double>([&](double t) { return phi.value(t, s * t); }, std::max(0.0, b.t.lo), b.t.hi,
                                breaks, spec)
        .value;
}

Scenario build_scenario(const json& config) {
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    Scenario sc;
    sc.config = config;
    sc.name = get_or<std::string>(config, "name", "scenario");
    const json domain = config.value("domain", json::object());
    const double t_end = get_or(domain, "domain", "t_end", 2.0);
    if (!(t_end > 0.0)) throw ConfigError("domain.t_end must be positive");
    if (get_or(domain, "domain", "n", 1) != 1) throw ConfigError("domain.n: only one space dimension is supported");
    const auto box = get_or<std::vector<double>>(domain, "domain", "box", {-1.0, 2.0});
    if (box.size() != 2 || !(box[1] > box[0])) throw ConfigError("domain.box must be [lo, hi] with lo < hi");
    sc.spec = parse_spec(config.value("quadrature", json::object()));

    FluxFunction f = parse_flux(config.value("flux", json("burgers")));
    SourceFunction g = parse_source(config.value("source", json("zero")));
    const json& field = require(config, "field", "config");
    const std::string mode = get_or<std::string>(field, "field", "mode", "");
    if (mode == "riemann") {
        if (f.name != "burgers") throw ConfigError("field.mode riemann requires the burgers flux");
        RiemannSpec rs;
        rs.ul = get_or(field, "field", "ul", 1.0);
        rs.ur = get_or(field, "field", "ur", 0.0);
        rs.t_end = t_end;
        try {
            rs.mode = parse_riemann_mode(get_or<std::string>(field, "field", "kind", "entropy-shock"));
            rs.speed = get_or(field, "field", "speed", 0.0);
            rs.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("field: ") + e.what());
        }
        sc.problem = riemann_problem(rs);
        sc.problem.g = g;
        sc.riemann = true;
        sc.ul = rs.ul;
        sc.ur = rs.ur;
        sc.shock_speed = rs.shock_speed();
        sc.rarefaction = rs.mode == RiemannMode::Rarefaction;
        sc.solution = rs.mode != RiemannMode::CustomSpeed || rs.speed == 0.5 * (rs.ul + rs.ur);
        sc.admissible = rs.mode == RiemannMode::NonEntropicShock ? 0 : (sc.solution ? 1 : -1);
    } else if (mode == "characteristic") {
        CharacteristicParams cp;
        cp.speed = get_or(field, "field", "speed", cp.speed);
        cp.rate = get_or(field, "field", "rate", cp.rate);
        cp.t_end = t_end;
        try {
            sc.problem = characteristic_solution(get_or<std::string>(field, "field", "name", ""), cp);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("field: ") + e.what());
        }
    } else if (mode == "fv") {
        const json& d = require(config, "datum", "config");
        InitialDatum u0;
        try {
            u0 = InitialDatum::piecewise_constant(get_or<std::vector<double>>(d, "datum", "breaks", {}),
                                                  get_or<std::vector<double>>(d, "datum", "values", {}));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("datum: ") + e.what());
        }
        FVGrid grid;
        grid.x_lo = box[0];
        grid.x_hi = box[1];
        grid.t_end = t_end;
        grid.cells = get_or(field, "field", "cells", grid.cells);
        grid.cfl = get_or(field, "field", "cfl", grid.cfl);
        const std::string scheme = get_or<std::string>(field, "field", "scheme", "llf");
        if (scheme != "llf" && scheme != "godunov") throw ConfigError("field.scheme must be llf or godunov");
        grid.scheme = scheme == "llf" ? FVScheme::LLF : FVScheme::Godunov;
        const std::string bc = get_or<std::string>(field, "field", "boundary", "outflow");
        if (bc != "outflow" && bc != "periodic") throw ConfigError("field.boundary must be outflow or periodic");
        grid.boundary = bc == "outflow" ? Boundary::Outflow : Boundary::Periodic;
        try {
            grid.validate();
            auto res = fv_solve(f, g, u0, grid);
            sc.problem = {res.field, u0, f, g};
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("field: ") + e.what());
        } catch (const ContractViolation& e) {
            throw ConfigError(std::string("field: ") + e.what());
        }
        sc.fv_dx = grid.dx();
    } else if (mode == "random_piecewise") {
        sc.problem = random_piecewise_problem(get_or<std::uint64_t>(field, "field", "seed", 1), t_end);
        sc.problem.f = f;
        sc.problem.g = g;
        sc.solution = false;
        sc.admissible = -1;
    } else {
        throw ConfigError("field.mode must be riemann, characteristic, fv or random_piecewise");
    }
    if (config.contains("expect")) {
        const json& e = config.at("expect");
        sc.solution = get_or(e, "expect", "solution", sc.solution);
        if (e.contains("admissible")) sc.admissible = get_or(e, "expect", "admissible", true) ? 1 : 0;
    }

    const Interval range = sc.problem.range();
    const Interval working{range.lo - 1.0, range.hi + 1.0};
    for (const auto& e : config.value("entropies", json::array())) sc.entropies.push_back(parse_entropy(e, working));
    for (const auto& t : config.value("test_functions", json::array())) {
        if (!t.is_object()) throw ConfigError("test_functions: each entry is an object {t0, x0, rt, rx, p}");
        const char* w = "test_functions";
        try {
            sc.test_functions.emplace_back(get_or(t, w, "t0", 1.0), get_or(t, w, "x0", 0.0), get_or(t, w, "rt", 0.5),
                                           get_or(t, w, "rx", 0.5), get_or(t, w, "p", 4));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("test_functions: ") + e.what());
        }
        if (sc.test_functions.back().support().t.hi > t_end)
            throw ConfigError("test_functions: support extends beyond domain.t_end");
    }
    if (sc.test_functions.empty()) throw ConfigError("test_functions: at least one test function is required");

    const json kg = config.value("k_grid", json::object());
    if (kg.is_array()) {
        sc.k_grid = kg.get<std::vector<double>>();
        for (std::size_t i = 1; i < sc.k_grid.size(); ++i)
            if (!(sc.k_grid[i] > sc.k_grid[i - 1])) throw ConfigError("k_grid must be strictly increasing");
    } else {
        const int pts = get_or(kg, "k_grid", "points", 129);
        if (pts < 2) throw ConfigError("k_grid.points must be at least 2");
        sc.k_grid = default_k_grid(range, pts);
    }
    for (const auto& x : config.value("xi_grid", json::array())) {
        const auto v = x.get<std::vector<double>>();
        if (v.empty() || v.size() > 2) throw ConfigError("xi_grid entries are [re] or [re, im]");
        sc.xi_grid.emplace_back(v[0], v.size() > 1 ? v[1] : 0.0);
    }
    return sc;
}

namespace {

struct Tolerances {
    double oracle_rel = 1e-4;
    double oracle_abs = 1e-4;
    double representation = 1e-6;
    double boundary = 1e-6;
    double ks = 1e-8;
    double residual = 1e-6;
    double annihilation = 1e-5;
    double positivity = 1e-6;
    double midpoint = 1e-3;
    double fourier = 1e-6;
    double series = 1e-8;
    double fv_factor = 5.0;
};

Tolerances parse_tolerances(const json& j) {
    Tolerances t;
    t.oracle_rel = get_or(j, "oracle_rel", t.oracle_rel);
    t.oracle_abs = get_or(j, "oracle_abs", t.oracle_abs);
    t.representation = get_or(j, "representation", t.representation);
    t.boundary = get_or(j, "boundary", t.boundary);
    t.ks = get_or(j, "ks", t.ks);
    t.residual = get_or(j, "residual", t.residual);
    t.annihilation = get_or(j, "annihilation", t.annihilation);
    t.positivity = get_or(j, "positivity", t.positivity);
    t.midpoint = get_or(j, "midpoint", t.midpoint);
    t.fourier = get_or(j, "fourier", t.fourier);
    t.series = get_or(j, "series", t.series);
    t.fv_factor = get_or(j, "fv_factor", t.fv_factor);
    return t;
}

using Task = std::function<std::vector<CheckRecord>()>;

CheckRecord record(std::string id, std::string anchor, double lhs, double rhs, double tol, std::string note = {}) {
    CheckRecord c;
    c.check_id = std::move(id);
    c.anchor = std::move(anchor);
    c.lhs = lhs;
    c.rhs = rhs;
    c.tolerance = tol;
    c.note = std::move(note);
    c.settle();
    return c;
}

/// Wraps a task so numerical failures become a failed record.
Task guarded(std::string id, std::string anchor, Task t) {
    return [id, anchor, t]() -> std::vector<CheckRecord> {
        try {
            return t();
        } catch (const std::exception& e) {
            CheckRecord c;
            c.check_id = id;
            c.anchor = anchor;
            c.lhs = c.rhs = c.abs_err = c.rel_err = std::nan("");
            c.pass = false;
            c.note = std::string("error: ") + e.what();
            return {c};
        }
    };
}

/// Convexity on [a, b]: nonnegative jumps and density for ACR entropies,
/// sampled E'' >= 0 otherwise.
bool is_convex(const Entropy1D& e, Interval ab) {
    if (e.is_acr()) {
        const auto& d = e.regulated_derivative();
        for (const auto& j : d.jumps())
            if (j.size < 0.0) return false;
        for (int i = 0; i <= 64; ++i)
            if (d.density(ab.lo + ab.width() * i / 64.0) < 0.0) return false;
        return true;
    }
    if (!e.is_real()) return false;
    for (int i = 0; i <= 64; ++i)
        if (e.second_derivative(ab.lo + ab.width() * i / 64.0).real() < -1e-14) return false;
    return true;
}

std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

}  // namespace

RunReport run_scenario(const json& config, int jobs) {
    const auto start = std::chrono::steady_clock::now();
    const Scenario sc = build_scenario(config);
    const Tolerances tol = parse_tolerances(config.value("tolerances", json::object()));
    const Problem& p = sc.problem;
    const QuadratureSpec& spec = sc.spec;
    const bool grid_field = sc.fv_dx > 0.0;
    const bool strong = get_or<std::string>(config.at("field"), "mode", "") == "characteristic";

    std::vector<Task> tasks;
    // weak-form residual
    tasks.push_back(guarded("residual", "weak-form residual max |M(Id)(phi)| / |phi|_C1", [&] {
        const double r = solution_residual(p, sc.test_functions, spec);
        if (grid_field) {
            const double bound = tol.fv_factor * sc.fv_dx;
            return std::vector{record("residual", "weak-form residual of the finite-volume field", r, 0.0, bound)};
        }
        if (sc.solution)
            return std::vector{record("residual", "weak-form residual max |M(Id)(phi)| / |phi|_C1", r, 0.0,
                                      tol.residual)};
        // a non-solution must show a visible defect
        auto c = record("residual", "weak-form defect of a non-solution", r, 0.0, 0.0, "defect expected");
        c.pass = r > tol.residual;
        return std::vector{c};
    }));

    // without entropies the report carries the residual only
    const std::size_t n_phi = sc.entropies.empty() ? 0 : sc.test_functions.size();
    for (std::size_t i = 0; i < n_phi; ++i) {
        const TestFunction& phi = sc.test_functions[i];
        const std::string ph = "_phi" + std::to_string(i);
        const double c1 = phi.c1_norm();

        for (std::size_t j = 0; j < sc.entropies.size(); ++j) {
            const Entropy1D& e = sc.entropies[j];
            const std::string en = "_E" + std::to_string(j);
            if (sc.riemann) {
                const std::string id = "oracle" + en + ph;
                tasks.push_back(guarded(id, "shock jump oracle for " + e.name(), [=, &sc, &p, &spec, &tol] {
                    const double v = production(e, p, phi.weight(), spec).real();
                    double oracle = 0.0;
                    if (!sc.rarefaction) {
                        const auto F = entropy_flux(e, p.f, spec);
                        const double s = sc.shock_speed;
                        const double el = e.value(sc.ul).real(), er = e.value(sc.ur).real();
                        const double fl = F.flux(0.0, 0.0, sc.ul).real(), fr = F.flux(0.0, 0.0, sc.ur).real();
                        oracle = line_integral(phi.weight(), s, spec) * (-s * (el - er) + (fl - fr));
                    }
                    const double t = sc.rarefaction ? tol.oracle_abs * c1 : tol.oracle_rel * std::abs(oracle) + 1e-14;
                    return std::vector{record(id, "shock jump oracle for " + e.name(), v, oracle, t)};
                }));
            }
            if (strong) {
                const std::string id = "annihilation" + en + ph;
                tasks.push_back(guarded(id, "strong solution has zero production for " + e.name(), [=, &sc, &p, &spec, &tol] {
                    const double v = std::abs(production(e, p, phi.weight(), spec).value);
                    return std::vector{record(id, "strong solution has zero production for " + e.name(), v, 0.0,
                                              tol.annihilation * c1)};
                }));
            }
            if (grid_field) {
                const std::string id = "dissipation" + en + ph;
                tasks.push_back(guarded(id, "convex entropy production is nonnegative up to O(dx)", [=, &sc, &p, &spec, &tol] {
                    const double v = production(e, p, phi.weight(), spec).real();
                    const double bound = tol.fv_factor * sc.fv_dx * c1;
                    auto c = record(id, "convex entropy production is nonnegative up to O(dx)", v, 0.0, bound);
                    if (is_convex(e, p.range())) {
                        c.pass = v >= -bound;
                    } else {
                        c.pass = true;
                        c.note = "entropy not convex; informational";
                    }
                    return std::vector{c};
                }));
                continue;
            }
            if (!e.is_acr()) {
                const std::string id = "representation" + en + ph;
                tasks.push_back(guarded(id, "C2 representation through mu_k with boundary term", [=, &sc, &p, &spec, &tol] {
                    const auto r = represent_c2(e, p, phi.weight(), spec);
                    std::vector<CheckRecord> out{record(id, "C2 representation through mu_k with boundary term",
                                                        r.lhs.real(), r.rhs.real(),
                                                        tol.representation * std::max(std::abs(r.lhs), std::abs(r.rhs)) + 1e-12 * c1)};
                    if (sc.solution)
                        out.push_back(record("boundary" + en + ph, "boundary term vanishes for a solution",
                                             std::abs(r.boundary_term), 0.0, tol.boundary * c1));
                    return out;
                }));
            } else if (sc.solution) {
                const std::string id = "ks_representation" + en + ph;
                tasks.push_back(guarded(id, "Kurzweil-Stieltjes representation for an ACR entropy", [=, &sc, &p, &spec, &tol] {
                    const auto r = represent_acr(e, p, phi.weight(), spec);
                    return std::vector{record(id, "Kurzweil-Stieltjes representation for an ACR entropy",
                                              r.lhs.real(), r.rhs.real(),
                                              tol.ks * std::max(std::abs(r.rhs), c1 * 1e-6))};
                }));
            }
        }

        if (sc.riemann) {
            for (int m = 1; m <= 9; ++m) {
                const double k = std::min(sc.ul, sc.ur) + 0.1 * m * std::abs(sc.ul - sc.ur);
                const std::string id = "kruzkov_k" + label(k) + ph;
                tasks.push_back(guarded(id, "Kruzkov jump oracle", [=, &sc, &p, &spec, &tol] {
                    const double v = kruzkov(k, p, phi.weight(), spec).real();
                    double oracle = 0.0;
                    if (!sc.rarefaction) {
                        const double s = sc.shock_speed;
                        auto Phi = [&](double u) { return phi_jump(p.f, 0.0, 0.0, u, k); };
                        oracle = line_integral(phi.weight(), s, spec) *
                                 (-s * (std::abs(sc.ul - k) - std::abs(sc.ur - k)) + (Phi(sc.ul) - Phi(sc.ur)));
                    }
                    return std::vector{record(id, "Kruzkov jump oracle", v, oracle, tol.oracle_abs * c1)};
                }));
            }
        }

        {
            const std::string id = "positivity" + ph;
            tasks.push_back(guarded(id, "min over k of mu_k(phi)", [=, &sc, &p, &spec, &tol] {
                const auto rep = convexity_positivity_check(p, {phi}, {}, sc.k_grid, spec, 0.0);
                const double bound = grid_field ? tol.fv_factor * sc.fv_dx * c1 : tol.positivity * c1;
                auto c = record(id, "min over k of mu_k(phi)", rep.min_mu, 0.0, 0.0,
                                "argmin k = " + label(rep.argmin_k));
                if (sc.admissible == 1) {
                    c.tolerance = bound;
                    c.pass = rep.min_mu >= -bound;
                } else if (sc.admissible == 0) {
                    c.anchor = "negative mu_k witnesses a non-admissible solution";
                    c.pass = rep.min_mu < -bound;
                } else {
                    c.pass = true;
                    c.note += "; informational";
                }
                return std::vector{c};
            }));
        }

        if (!grid_field) {
            const auto states = kink_states(p);
            for (double s : states) {
                const double eps = 1e-3;
                const std::string id = "midpoint_k" + label(s) + ph;
                tasks.push_back(guarded(id, "mu at a state is the mean of one-sided values", [=, &sc, &p, &spec, &tol] {
                    const double at = kruzkov(s, p, phi.weight(), spec).real();
                    const double l = kruzkov(s - eps, p, phi.weight(), spec).real();
                    const double r = kruzkov(s + eps, p, phi.weight(), spec).real();
                    return std::vector{record(id, "mu at a state is the mean of one-sided values", at,
                                              0.5 * (l + r), tol.midpoint * c1)};
                }));
            }
        }

        if (sc.solution && !grid_field && !sc.xi_grid.empty() && i == 0) {
            tasks.push_back(guarded("fourier" + ph, "Fourier transform of mu_k against M(E_xi)", [=, &sc, &p, &spec, &tol] {
                MuCache mu(p, phi.weight(), spec);
                const auto rows = fourier_table(sc.xi_grid, mu);
                std::vector<CheckRecord> out;
                cplx at_one{};
                bool have_one = false;
                for (const auto& r : rows) {
                    const std::string id = "fourier_xi" + label(r.xi.real()) +
                                           (r.xi.imag() != 0.0 ? "i" + label(r.xi.imag()) : "") + ph;
                    out.push_back(record(id, "Fourier transform of mu_k against M(E_xi)", std::abs(r.mu_hat),
                                         std::abs(r.via_entropy), tol.fourier * (1.0 + std::abs(r.mu_hat)),
                                         "abs_err of complex values " + fmt_num(r.abs_err)));
                    out.back().abs_err = r.abs_err;
                    out.back().pass = r.abs_err <= out.back().tolerance;
                    if (r.xi == cplx(1.0, 0.0)) {
                        at_one = r.mu_hat;
                        have_one = true;
                    }
                }
                if (have_one) {
                    const auto a = moment_series(mu, 20);
                    const cplx s = eval_series(a, 1.0);
                    auto c = record("series_xi1" + ph, "moment power series at xi = 1", std::abs(s),
                                    std::abs(at_one), tol.series * (1.0 + std::abs(at_one)));
                    c.abs_err = std::abs(s - at_one);
                    c.pass = c.abs_err <= c.tolerance;
                    out.push_back(c);
                }
                return out;
            }));
        }
    }

    std::vector<std::vector<CheckRecord>> results(tasks.size());
    parallel_for(static_cast<int>(tasks.size()), jobs, [&](int i) { results[i] = tasks[i](); });

    RunReport rep;
    rep.scenario = sc.name;
    rep.config_hash = config_hash(config);
    rep.spec = {{"gauss_order", spec.gauss_order},
                {"max_subdivision_depth", spec.max_subdivision_depth},
                {"k_axis_order", spec.k_axis_order},
                {"target_tolerance", spec.target_tolerance}};
    for (auto& r : results)
        for (auto& c : r) rep.checks.push_back(std::move(c));
    std::stable_sort(rep.checks.begin(), rep.checks.end(),
                     [](const CheckRecord& a, const CheckRecord& b) { return a.check_id < b.check_id; });
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double from_num(const json& j) { return j.is_null() ? std::nan("") : j.get<double>(); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

json to_json(const RunReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"check_id", c.check_id},
                          {"anchor", c.anchor},
                          {"lhs", num(c.lhs)},
                          {"rhs", num(c.rhs)},
                          {"abs_err", num(c.abs_err)},
                          {"rel_err", num(c.rel_err)},
                          {"tolerance", num(c.tolerance)},
                          {"pass", c.pass},
                          {"note", c.note}});
    return {{"scenario", r.scenario},
            {"config_hash", r.config_hash},
            {"spec", r.spec},
            {"wall_time_s", r.wall_time_s},
            {"all_pass", r.all_pass()},
            {"checks", checks}};
}

RunReport report_from_json(const json& j) {
    RunReport r;
    r.scenario = j.at("scenario").get<std::string>();
    r.config_hash = j.at("config_hash").get<std::string>();
    r.spec = j.at("spec");
    r.wall_time_s = j.at("wall_time_s").get<double>();
    for (const auto& c : j.at("checks")) {
        CheckRecord k;
        k.check_id = c.at("check_id").get<std::string>();
        k.anchor = c.at("anchor").get<std::string>();
        k.lhs = from_num(c.at("lhs"));
        k.rhs = from_num(c.at("rhs"));
        k.abs_err = from_num(c.at("abs_err"));
        k.rel_err = from_num(c.at("rel_err"));
        k.tolerance = from_num(c.at("tolerance"));
        k.pass = c.at("pass").get<bool>();
        k.note = c.value("note", "");
        r.checks.push_back(std::move(k));
    }
    return r;
}

void write_report_csv(std::ostream& os, const RunReport& r) {
    os << "check_id,anchor,lhs,rhs,abs_err,rel_err,pass\n";
    for (const auto& c : r.checks)
        os << csv_field(c.check_id) << ',' << csv_field(c.anchor) << ',' << fmt_num(c.lhs) << ',' << fmt_num(c.rhs)
           << ',' << fmt_num(c.abs_err) << ',' << fmt_num(c.rel_err) << ',' << (c.pass ? "true" : "false") << '\n';
}

}  // namespace entprod
