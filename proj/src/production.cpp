#include "entprod/production.hpp"

#include <algorithm>
#include <set>

#include "entprod/parallel.hpp"

namespace entprod {

namespace {

using T4 = Terms<cplx, 4>;

void check_horizon(const Box& support, const ScalarField& u) {
    if (!support.empty && support.t.hi > u.t_end() && support.t.lo < u.t_end())
        throw std::invalid_argument("weight support extends beyond the field's time horizon");
}

template <class F>
cplx initial_term(F&& integrand, const Box& support, const InitialDatum& u0, std::span<const double> levels,
                  const QuadratureSpec& spec, long& nodes) {
    if (support.empty || support.t.lo > 0.0) return {};
    const auto breaks = u0.breakpoints(levels);
    auto r = integrate_1d<cplx>(integrand, support.x.lo, support.x.hi, breaks, spec);
    nodes += r.report.nodes;
    return r.value;
}

ProductionResult finish(const QuadResult<T4>& body, cplx initial, long init_nodes) {
    ProductionResult out;
    out.terms = {body.value[0], body.value[1], body.value[2], body.value[3], initial};
    out.value = out.terms.total();
    out.report = body.report;
    out.report.nodes += init_nodes;
    return out;
}

}  // namespace

ProductionResult production(const Entropy1D& e, const Problem& p, const Weight& phi, const QuadratureSpec& spec,
                            const FluxOffset& offset) {
    check_horizon(phi.support, *p.u);
    const auto levels = e.jump_points();
    if (e.is_acr() && !e.regulated_derivative().support().contains(p.range()))
        throw ContractViolation("production: essential range outside the entropy's interval");
    const auto region = p.u->region(phi.support, levels);
    const auto& f = p.f;
    const auto& g = p.g;
    auto body = integrate_spacetime<T4>(
        [&](double t, double x) {
            const double w = phi.value(t, x);
            const double wt = phi.dt(t, x), wx = phi.dx(t, x);
            const double u = p.u->evaluate(t, x).value;
            const cplx de = e.derivative(u);
            FluxPair F = entropy_flux_and_div(e, f, t, x, u, spec);
            if (offset.value) {
                F.flux += offset.value(t, x);
                F.div += offset.div(t, x);
            }
            T4 r;
            r[0] = e.value(u) * wt + F.flux * wx;
            r[1] = -de * f.fx(t, x, u) * w;
            r[2] = F.div * w;
            r[3] = de * g.g(t, x, u) * w;
            return r;
        },
        region, spec);
    long init_nodes = 0;
    const cplx init = initial_term([&](double x) { return e.value(p.u0.value(x)) * phi.value(0.0, x); },
                                   phi.support, p.u0, levels, spec, init_nodes);
    return finish(body, init, init_nodes);
}

ProductionResult kruzkov(double k, const Problem& p, const Weight& phi, const QuadratureSpec& spec) {
    check_horizon(phi.support, *p.u);
    const double levels[] = {k};
    const auto region = p.u->region(phi.support, levels);
    const auto& f = p.f;
    const auto& g = p.g;
    auto body = integrate_spacetime<T4>(
        [&](double t, double x) {
            const double w = phi.value(t, x);
            const FieldSample s = p.u->evaluate(t, x);
            const int sg = sign_minus(s, k);
            T4 r;
            if (sg == 0) {
                // |u - k| and the flux jump vanish with the sign
                return r;
            }
            const double u = s.value;
            r[0] = sg * (u - k) * phi.dt(t, x) + sg * (f.f(t, x, u) - f.f(t, x, k)) * phi.dx(t, x);
            r[1] = -sg * f.fx(t, x, k) * w;
            r[3] = sg * g.g(t, x, u) * w;
            return r;
        },
        region, spec);
    long init_nodes = 0;
    const cplx init = initial_term([&](double x) { return std::abs(p.u0.value(x) - k) * phi.value(0.0, x); },
                                   phi.support, p.u0, levels, spec, init_nodes);
    return finish(body, init, init_nodes);
}

ProductionResult production_tx(const EntropyTX& e, const Problem& p, const QuadratureSpec& spec) {
    if (e.support.empty) return {};
    check_horizon(e.support, *p.u);
    const auto region = p.u->region(e.support);
    const auto F = entropy_flux(e, p.f, spec);
    const auto& f = p.f;
    const auto& g = p.g;
    auto body = integrate_spacetime<T4>(
        [&](double t, double x) {
            const double u = p.u->evaluate(t, x).value;
            const double du = e.du(t, x, u);
            T4 r;
            r[0] = e.dt(t, x, u);
            r[1] = -du * f.fx(t, x, u);
            r[2] = F.div(t, x, u);
            r[3] = du * g.g(t, x, u);
            return r;
        },
        region, spec);
    long init_nodes = 0;
    const cplx init = initial_term([&](double x) { return cplx(e.value(0.0, x, p.u0.value(x))); }, e.support,
                                   p.u0, {}, spec, init_nodes);
    return finish(body, init, init_nodes);
}

double solution_residual(const Problem& p, const std::vector<TestFunction>& family, const QuadratureSpec& spec,
                         int jobs) {
    const auto id = Entropy1D::identity();
    std::vector<double> r(family.size(), 0.0);
    parallel_for(static_cast<int>(family.size()), jobs, [&](int i) {
        const auto& phi = family[i];
        r[i] = std::abs(production(id, p, phi.weight(), spec).value) / phi.c1_norm();
    });
    return r.empty() ? 0.0 : *std::max_element(r.begin(), r.end());
}

std::vector<double> default_k_grid(Interval range, int points) {
    if (points < 2) throw std::invalid_argument("k grid: need at least two points");
    double w = range.width();
    if (w == 0.0) w = 1.0;
    const double lo = range.lo - 0.05 * w, hi = range.hi + 0.05 * w;
    std::vector<double> k(points);
    for (int i = 0; i < points; ++i) k[i] = lo + (hi - lo) * i / (points - 1);
    return k;
}

double total_variation(const std::vector<double>& values) {
    double tv = 0.0;
    for (std::size_t i = 1; i < values.size(); ++i) tv += std::abs(values[i] - values[i - 1]);
    return tv;
}

KruzkovCurve kruzkov_curve(const std::vector<double>& k_grid, const Problem& p, const Weight& phi,
                           const QuadratureSpec& spec, double probe_eps, int jobs) {
    for (std::size_t i = 1; i < k_grid.size(); ++i)
        if (!(k_grid[i] > k_grid[i - 1])) throw std::invalid_argument("k grid must be strictly increasing");
    KruzkovCurve c;
    c.k = k_grid;
    c.mu.assign(k_grid.size(), 0.0);
    parallel_for(static_cast<int>(k_grid.size()), jobs,
                 [&](int i) { c.mu[i] = kruzkov(k_grid[i], p, phi, spec).real(); });
    c.total_variation = total_variation(c.mu);
    if (probe_eps > 0.0 && !k_grid.empty()) {
        std::set<double> states;
        for (double s : p.u->states()) states.insert(s);
        for (double s : p.u0.states()) states.insert(s);
        for (double s : states) {
            if (!(s - probe_eps > k_grid.front() && s + probe_eps < k_grid.back())) continue;
            StateProbe pr{s, probe_eps, 0, 0, 0};
            pr.left = kruzkov(s - probe_eps, p, phi, spec).real();
            pr.at = kruzkov(s, p, phi, spec).real();
            pr.right = kruzkov(s + probe_eps, p, phi, spec).real();
            c.probes.push_back(pr);
        }
    }
    return c;
}

}  // namespace entprod
