#include "entprod/representation.hpp"

#include <algorithm>
#include <set>

#include "entprod/parallel.hpp"

namespace entprod {

void RepresentationReport::settle() {
    abs_err = std::abs(lhs - rhs);
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    rel_err = scale > 0.0 ? abs_err / scale : 0.0;
}

std::vector<double> kink_states(const Problem& p) {
    std::set<double> s;
    for (double v : p.u->states()) s.insert(v);
    for (double v : p.u0.states()) s.insert(v);
    return {s.begin(), s.end()};
}

namespace {

Interval k_interval(const Problem& p, double inflate) {
    Interval r = p.range();
    const double pad = inflate * r.width();
    return {r.lo - pad, r.hi + pad};
}

QuadratureSpec k_spec(const QuadratureSpec& spec) {
    QuadratureSpec s = spec;
    s.gauss_order = spec.k_axis_order;
    return s;
}

}  // namespace

QuadResult<cplx> weighted_k_integral(const std::function<cplx(double)>& w, const Problem& p, const Weight& phi,
                                     Interval ab, const QuadratureSpec& spec, int jobs,
                                     std::span<const double> w_kinks) {
    auto kinks = kink_states(p);
    kinks.insert(kinks.end(), w_kinks.begin(), w_kinks.end());
    auto r = integrate_1d_batched<cplx>([&](double k) { return w(k) * kruzkov(k, p, phi, spec).value; }, ab.lo,
                                        ab.hi, kinks, k_spec(spec), jobs);
    r.value *= 0.5;
    return r;
}

RepresentationReport represent_c2(const Entropy1D& e, const Problem& p, const Weight& phi,
                                  const QuadratureSpec& spec, const RepresentationOptions& opt) {
    if (e.is_acr()) throw std::invalid_argument("represent_c2: entropy is not C^2");
    RepresentationReport rep;
    rep.k_range = k_interval(p, opt.inflate);
    const double a = rep.k_range.lo, b = rep.k_range.hi;
    rep.lhs = production(e, p, phi, spec).value;
    const auto e_kinks = e.jump_points();
    auto kint = weighted_k_integral([&](double k) { return e.second_derivative(k); }, p, phi, rep.k_range, spec,
                                    opt.jobs, e_kinks);
    rep.k_report = kint.report;
    const cplx m_id = production(Entropy1D::identity(), p, phi, spec).value;
    rep.boundary_term = 0.5 * (e.derivative(a) + e.derivative(b)) * m_id;
    rep.rhs = kint.value + rep.boundary_term;
    rep.settle();
    return rep;
}

RepresentationReport represent_tx(const EntropyTX& e, const Problem& p, const QuadratureSpec& spec,
                                  const RepresentationOptions& opt) {
    RepresentationReport rep;
    rep.k_range = k_interval(p, opt.inflate);
    rep.lhs = production_tx(e, p, spec).value;
    if (!e.has_second_u()) {
        rep.hypothesis_ok = false;
        rep.rhs = std::nan("");
        rep.abs_err = rep.rel_err = std::nan("");
        return rep;
    }
    const double a = rep.k_range.lo, b = rep.k_range.hi;
    const auto kinks = kink_states(p);
    auto kint = integrate_1d_batched<cplx>(
        [&](double k) {
            Weight w{[&e, k](double t, double x) { return e.duu(t, x, k); },
                     [&e, k](double t, double x) { return e.dtuu(t, x, k); },
                     [&e, k](double t, double x) { return e.dxuu(t, x, k); }, e.support};
            return kruzkov(k, p, w, spec).value;
        },
        a, b, kinks, k_spec(spec), opt.jobs);
    rep.k_report = kint.report;
    Weight psi{[&e, a, b](double t, double x) { return 0.5 * (e.du(t, x, a) + e.du(t, x, b)); },
               [&e, a, b](double t, double x) { return 0.5 * (e.dtu(t, x, a) + e.dtu(t, x, b)); },
               [&e, a, b](double t, double x) { return 0.5 * (e.dxu(t, x, a) + e.dxu(t, x, b)); }, e.support};
    rep.boundary_term = production_tx(EntropyTX::times_identity(psi), p, spec).value;
    rep.rhs = 0.5 * kint.value + rep.boundary_term;
    rep.settle();
    return rep;
}

RepresentationReport represent_acr(const Entropy1D& e, const Problem& p, const Weight& phi,
                                   const QuadratureSpec& spec, const RepresentationOptions& opt) {
    if (!e.is_acr()) throw std::invalid_argument("represent_acr: entropy has no regulated derivative");
    RepresentationReport rep;
    rep.k_range = k_interval(p, opt.inflate);
    const double a = rep.k_range.lo, b = rep.k_range.hi;
    const auto& gamma = e.regulated_derivative();
    if (!gamma.support().contains(rep.k_range))
        throw ContractViolation("represent_acr: derivative support does not cover the essential range");
    rep.lhs = production(e, p, phi, spec).value;
    const auto kinks = kink_states(p);
    // density part in parallel, atoms one by one
    std::vector<double> breaks = kinks;
    for (const auto& j : gamma.jumps()) breaks.push_back(j.at);
    auto ac = integrate_1d_batched<cplx>(
        [&](double k) { return gamma.density(k) * kruzkov(k, p, phi, spec).value; }, a, b, breaks, k_spec(spec),
        opt.jobs);
    cplx atoms{};
    for (const auto& j : gamma.jumps()) {
        const bool inside = (j.at > a && j.at <= b) || (j.at == a && a == gamma.support().lo);
        if (inside) atoms += j.size * kruzkov(j.at, p, phi, spec).value;
    }
    rep.k_report = ac.report;
    rep.rhs = 0.5 * (ac.value + atoms);
    const cplx m_id = production(Entropy1D::identity(), p, phi, spec).value;
    rep.boundary_term = 0.5 * (e.derivative(a) + e.derivative(b)) * m_id;
    rep.settle();
    return rep;
}

PositivityReport convexity_positivity_check(const Problem& p, const std::vector<TestFunction>& phis,
                                            const std::vector<Entropy1D>& convex, const std::vector<double>& k_grid,
                                            const QuadratureSpec& spec, double tol, int jobs) {
    PositivityReport rep;
    rep.min_mu = std::numeric_limits<double>::infinity();
    rep.min_production = std::numeric_limits<double>::infinity();
    for (const auto& phi : phis) {
        const Weight w = phi.weight();
        std::vector<double> mu(k_grid.size());
        parallel_for(static_cast<int>(k_grid.size()), jobs,
                     [&](int i) { mu[i] = kruzkov(k_grid[i], p, w, spec).real(); });
        for (std::size_t i = 0; i < mu.size(); ++i)
            if (mu[i] < rep.min_mu) {
                rep.min_mu = mu[i];
                rep.argmin_k = k_grid[i];
            }
        for (const auto& e : convex) {
            const double v = production(e, p, w, spec).real();
            if (v < rep.min_production) {
                rep.min_production = v;
                rep.argmin_entropy = e.name();
            }
        }
    }
    if (k_grid.empty() || phis.empty()) rep.min_mu = 0.0;
    if (convex.empty() || phis.empty()) rep.min_production = 0.0;
    rep.nonnegative = rep.min_mu >= -tol && rep.min_production >= -tol;
    return rep;
}

}  // namespace entprod
