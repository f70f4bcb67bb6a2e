#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "entprod/entropy.hpp"
#include "entprod/fields.hpp"
#include "entprod/flux.hpp"
#include "entprod/quadrature.hpp"
#include "entprod/test_function.hpp"

namespace entprod {

/// u, u0, f and g of one balance law instance.
struct Problem {
    std::shared_ptr<const ScalarField> u;
    InitialDatum u0;
    FluxFunction f;
    SourceFunction g;

    Interval range() const { return essential_range(*u, u0); }
};

/// One value per addend. For the Kruzkov functional `divF_correction` is 0;
/// for the (t,x) functional `transport` carries the time derivative of E.
struct ProductionTerms {
    cplx transport{};
    cplx divf_correction{};
    cplx divF_correction{};
    cplx source{};
    cplx initial{};

    cplx total() const { return transport + divf_correction + divF_correction + source + initial; }
};

struct ProductionResult {
    cplx value{};
    ProductionTerms terms;
    QuadReport report;

    double real() const { return value.real(); }
};

/// A u-independent field Delta(t,x) added to the canonical entropy flux,
/// with its x-divergence. Any two entropy fluxes of E differ by one.
struct FluxOffset {
    std::function<double(double, double)> value;
    std::function<double(double, double)> div;
};

/// M_u(E)(phi). ACR entropies use the same expression with E' regulated.
/// With an offset, F + Delta replaces the canonical F.
ProductionResult production(const Entropy1D& e, const Problem& p, const Weight& phi, const QuadratureSpec& spec,
                            const FluxOffset& offset = {});
/// mu_k(phi), with sgn(u - k) region-exact on constant regions.
ProductionResult kruzkov(double k, const Problem& p, const Weight& phi, const QuadratureSpec& spec);
/// M^tx_u(E) for an entropy with bounded (t,x)-support.
ProductionResult production_tx(const EntropyTX& e, const Problem& p, const QuadratureSpec& spec);

/// max over the family of |M_u(Id)(phi)| / ||phi||_C1.
double solution_residual(const Problem& p, const std::vector<TestFunction>& family, const QuadratureSpec& spec,
                         int jobs = 1);

/// mu at a declared state and at state -+ eps.
struct StateProbe {
    double state;
    double eps;
    double left;
    double at;
    double right;
};

struct KruzkovCurve {
    std::vector<double> k;
    std::vector<double> mu;
    double total_variation = 0.0;
    std::vector<StateProbe> probes;
};

/// 129 points on [a - 5%, b + 5%] around the essential range.
std::vector<double> default_k_grid(Interval range, int points = 129);

/// Samples k -> mu_k(phi) on a strictly increasing grid. Probes are taken at
/// every declared state inside the grid with eps = probe_eps (skipped when
/// probe_eps <= 0).
KruzkovCurve kruzkov_curve(const std::vector<double>& k_grid, const Problem& p, const Weight& phi,
                           const QuadratureSpec& spec, double probe_eps = 1e-3, int jobs = 1);

/// sum |y_{i+1} - y_i|
double total_variation(const std::vector<double>& values);

}  // namespace entprod
