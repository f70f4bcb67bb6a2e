#include "entprod/solvers.hpp"

#include <algorithm>

namespace entprod {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Curve line(double speed, double offset = 0.0) {
    return [=](double t) { return offset + speed * t; };
}

}  // namespace

RiemannMode parse_riemann_mode(const std::string& s) {
    if (s == "entropy-shock") return RiemannMode::EntropyShock;
    if (s == "rarefaction") return RiemannMode::Rarefaction;
    if (s == "non-entropic-shock") return RiemannMode::NonEntropicShock;
    if (s == "custom-speed") return RiemannMode::CustomSpeed;
    throw std::invalid_argument("unknown riemann mode '" + s + "'");
}

std::string to_string(RiemannMode m) {
    switch (m) {
        case RiemannMode::EntropyShock: return "entropy-shock";
        case RiemannMode::Rarefaction: return "rarefaction";
        case RiemannMode::NonEntropicShock: return "non-entropic-shock";
        case RiemannMode::CustomSpeed: return "custom-speed";
    }
    return "?";
}

void RiemannSpec::validate() const {
    if (!std::isfinite(ul) || !std::isfinite(ur)) throw std::invalid_argument("riemann: non-finite state");
    if (!(t_end > 0.0)) throw std::invalid_argument("riemann: t_end must be positive");
    switch (mode) {
        case RiemannMode::EntropyShock:
            if (!(ul > ur)) throw std::invalid_argument("riemann: entropy shock needs ul > ur");
            break;
        case RiemannMode::Rarefaction:
            if (!(ul < ur)) throw std::invalid_argument("riemann: rarefaction needs ul < ur");
            break;
        case RiemannMode::NonEntropicShock:
            if (!(ul < ur)) throw std::invalid_argument("riemann: non-entropic shock needs ul < ur");
            break;
        case RiemannMode::CustomSpeed:
            if (!std::isfinite(speed)) throw std::invalid_argument("riemann: custom speed must be finite");
            break;
    }
}

double RiemannSpec::shock_speed() const { return mode == RiemannMode::CustomSpeed ? speed : 0.5 * (ul + ur); }

std::shared_ptr<AnalyticPiecewiseField> riemann_burgers(const RiemannSpec& spec) {
    spec.validate();
    const Interval range{std::min(spec.ul, spec.ur), std::max(spec.ul, spec.ur)};
    if (spec.mode != RiemannMode::Rarefaction) {
        return std::make_shared<AnalyticPiecewiseField>(
            std::vector<Region>{Region::constant_state("left", spec.ul), Region::constant_state("right", spec.ur)},
            std::vector<Curve>{line(spec.shock_speed())}, range, spec.t_end);
    }
    const double ul = spec.ul, ur = spec.ur;
    Region fan{"fan",
               [=](double t, double x) { return t > 0.0 ? std::clamp(x / t, ul, ur) : 0.5 * (ul + ur); },
               std::nullopt,
               [=](double k) {
                   std::vector<Curve> c;
                   if (k > ul && k < ur) c.push_back(line(k));
                   return c;
               }};
    return std::make_shared<AnalyticPiecewiseField>(
        std::vector<Region>{Region::constant_state("left", ul), fan, Region::constant_state("right", ur)},
        std::vector<Curve>{line(ul), line(ur)}, range, spec.t_end);
}

InitialDatum riemann_initial_datum(const RiemannSpec& spec) {
    return InitialDatum::piecewise_constant({0.0}, {spec.ul, spec.ur});
}

Problem riemann_problem(const RiemannSpec& spec) {
    return {riemann_burgers(spec), riemann_initial_datum(spec), FluxFunction::burgers(), SourceFunction::zero()};
}

double smooth_bump_w(double s) {
    if (!(s > 0.0 && s < 2.0)) return 0.0;
    const double q = 1.0 - (s - 1.0) * (s - 1.0);
    return q * q * q * q;
}

namespace {

/// Offsets y in (-1, 1) with (1 - y^2)^4 = level.
std::vector<double> bump_level_offsets(double level) {
    if (!(level > 0.0 && level < 1.0)) return {};
    const double y = std::sqrt(1.0 - std::pow(level, 0.25));
    return {-y, y};
}

/// u(t,x) = amp(t) * bump(x - c t) with the bump (1 - y^2)^4 on |y| < 1.
Problem translated_bump(const std::string& name, double c, double rate, double t_end, SourceFunction g) {
    auto amp = [rate](double t) { return std::exp(-rate * t); };
    auto bump = [](double y) { return smooth_bump_w(y + 1.0); };
    Region mid{name, [=](double t, double x) { return amp(t) * bump(x - c * t); }, std::nullopt,
               [=](double k) {
                   std::vector<Curve> out;
                   for (int sgn : {-1, 1}) {
                       out.push_back([=](double t) {
                           const auto ys = bump_level_offsets(k / amp(t));
                           return ys.empty() ? -kInf : c * t + sgn * ys[1];
                       });
                   }
                   return out;
               }};
    auto field = std::make_shared<AnalyticPiecewiseField>(
        std::vector<Region>{Region::constant_state("left", 0.0), mid, Region::constant_state("right", 0.0)},
        std::vector<Curve>{line(c, -1.0), line(c, 1.0)}, Interval{0.0, 1.0}, t_end);
    InitialDatum u0 = InitialDatum::smooth(bump, {0.0, 1.0}, {-1.0, 1.0});
    u0.constants = {0.0, std::nullopt, 0.0};
    u0.level_points = [](double k) { return bump_level_offsets(k); };
    return {field, u0, FluxFunction::linear(c), std::move(g)};
}

}  // namespace

Problem characteristic_solution(const std::string& name, const CharacteristicParams& params) {
    if (!(params.t_end > 0.0)) throw std::invalid_argument("characteristic solution: t_end must be positive");
    if (name == "paper_x2u") {
        Region left{"characteristic",
                    [](double t, double x) { return smooth_bump_w(t + 1.0 / x); },
                    std::nullopt,
                    [](double k) {
                        std::vector<Curve> out;
                        for (double y : bump_level_offsets(k)) {
                            const double s = 1.0 + y;
                            out.push_back([s](double t) { return t > s ? 1.0 / (s - t) : -kInf; });
                        }
                        return out;
                    }};
        // w(t + 1/x) is only C^3 where t + 1/x crosses 0 or 2
        std::vector<Curve> kinks{[](double t) { return t > 0.0 ? -1.0 / t : -kInf; },
                                 [](double t) { return t > 2.0 ? -1.0 / (t - 2.0) : -kInf; }};
        auto field = std::make_shared<AnalyticPiecewiseField>(
            std::vector<Region>{left, Region::constant_state("right", 0.0)},
            std::vector<Curve>{[](double) { return 0.0; }}, Interval{0.0, 1.0}, params.t_end, kinks);
        return {field, InitialDatum::constant(0.0), FluxFunction::linear_x2(), SourceFunction::linear_x2()};
    }
    if (name == "linear_advection")
        return translated_bump(name, params.speed, 0.0, params.t_end, SourceFunction::zero());
    if (name == "decay_source")
        return translated_bump(name, params.speed, params.rate, params.t_end, SourceFunction::decay(params.rate));
    throw std::invalid_argument("unknown characteristic solution '" + name + "'");
}

void FVGrid::validate() const {
    if (!(x_hi > x_lo)) throw std::invalid_argument("fv grid: empty interval");
    if (cells < 2) throw std::invalid_argument("fv grid: need at least two cells");
    if (!(t_end > 0.0)) throw std::invalid_argument("fv grid: t_end must be positive");
    if (!(cfl > 0.0)) throw std::invalid_argument("fv grid: cfl must be positive");
    if (cfl > 0.9) throw ContractViolation("fv grid: CFL number above 0.9");
}

namespace {

double godunov_burgers(double ul, double ur) {
    auto f = [](double u) { return 0.5 * u * u; };
    if (ul <= ur) {
        if (ul > 0.0) return f(ul);
        if (ur < 0.0) return f(ur);
        return 0.0;
    }
    return std::max(f(ul), f(ur));
}

}  // namespace

FVResult fv_solve(const FluxFunction& f, const SourceFunction& g, const InitialDatum& u0, const FVGrid& grid) {
    grid.validate();
    if (grid.scheme == FVScheme::Godunov && f.name != "burgers")
        throw std::invalid_argument("fv: the Godunov flux is only available for Burgers");
    const int n = grid.cells;
    const double dx = grid.dx();

    FVResult res;
    res.max_speed = max_wave_speed(f, {0.0, grid.t_end}, {grid.x_lo, grid.x_hi}, u0.range);
    const double dt_max = res.max_speed > 0.0 ? grid.cfl * dx / res.max_speed : grid.t_end;
    res.steps = std::max(1, static_cast<int>(std::ceil(grid.t_end / dt_max - 1e-12)));
    res.dt = grid.t_end / res.steps;
    const double lam = res.dt / dx;

    std::vector<double> u(n);
    for (int j = 0; j < n; ++j) {
        const double a = grid.x_lo + j * dx;
        u[j] = integrate_interval<double>([&](double x) { return u0.value(x); }, a, a + dx, u0.breaks, 8) / dx;
    }
    const double bound = 2.0 * std::max({std::abs(u0.range.lo), std::abs(u0.range.hi), u0.range.width()});

    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(res.steps) * n);
    std::vector<double> flux(n + 1), next(n);
    auto mass = [&] {
        double m = 0.0;
        for (double v : u) m += v;
        return m * dx;
    };
    for (int m = 0; m < res.steps; ++m) {
        values.insert(values.end(), u.begin(), u.end());
        res.mass.push_back(mass());
        const double t = m * res.dt;
        for (int i = 0; i <= n; ++i) {
            double ul, ur;
            if (grid.boundary == Boundary::Periodic) {
                ul = u[(i - 1 + n) % n];
                ur = u[i % n];
            } else {
                ul = u[std::max(i - 1, 0)];
                ur = u[std::min(i, n - 1)];
            }
            const double xi = grid.x_lo + i * dx;
            if (grid.scheme == FVScheme::Godunov) {
                flux[i] = godunov_burgers(ul, ur);
            } else {
                const double a = std::max(std::abs(f.fu(t, xi, ul)), std::abs(f.fu(t, xi, ur)));
                flux[i] = 0.5 * (f.f(t, xi, ul) + f.f(t, xi, ur)) - 0.5 * a * (ur - ul);
            }
        }
        for (int j = 0; j < n; ++j) {
            const double xc = grid.x_lo + (j + 0.5) * dx;
            next[j] = u[j] - lam * (flux[j + 1] - flux[j]) + res.dt * g.g(t, xc, u[j]);
            if (!std::isfinite(next[j]) || std::abs(next[j]) > bound)
                throw NumericalError("fv: solution left twice the initial range at step " + std::to_string(m));
        }
        u.swap(next);
    }
    res.mass.push_back(mass());
    res.field = std::make_shared<GridField>(GridGeometry{res.dt, grid.x_lo, dx}, res.steps, n, std::move(values));
    return res;
}

}  // namespace entprod
