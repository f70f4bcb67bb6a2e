#pragma once

#include <memory>
#include <string>
#include <vector>

#include "entprod/fields.hpp"
#include "entprod/flux.hpp"
#include "entprod/production.hpp"

namespace entprod {

enum class RiemannMode { EntropyShock, Rarefaction, NonEntropicShock, CustomSpeed };

RiemannMode parse_riemann_mode(const std::string& s);
std::string to_string(RiemannMode m);

struct RiemannSpec {
    double ul = 1.0;
    double ur = 0.0;
    RiemannMode mode = RiemannMode::EntropyShock;
    double speed = 0.0;  ///< used by CustomSpeed only
    double t_end = 2.0;

    void validate() const;
    /// Discontinuity speed; (ul + ur) / 2 unless CustomSpeed.
    double shock_speed() const;
};

/// Exact Burgers solution for a Riemann datum at x = 0.
std::shared_ptr<AnalyticPiecewiseField> riemann_burgers(const RiemannSpec& spec);
InitialDatum riemann_initial_datum(const RiemannSpec& spec);
/// Field, datum, Burgers flux and zero source.
Problem riemann_problem(const RiemannSpec& spec);

struct CharacteristicParams {
    double speed = 1.0;   ///< linear_advection, decay_source
    double rate = 0.5;    ///< decay_source
    double t_end = 3.0;
};

/// The bump w(s) = (1 - (s - 1)^2)^4 on (0, 2), zero elsewhere.
double smooth_bump_w(double s);

/// Closed-form strong solutions: `paper_x2u` (f = x^2 u, g = 2 x u, u0 = 0),
/// `linear_advection` (f = c u, u0 a bump) and `decay_source` (f = c u,
/// g = -rate u). Returns the whole problem so the pairing is unambiguous.
Problem characteristic_solution(const std::string& name, const CharacteristicParams& params = {});

enum class FVScheme { LLF, Godunov };
enum class Boundary { Outflow, Periodic };

struct FVGrid {
    double x_lo = -1.0;
    double x_hi = 2.0;
    int cells = 100;
    double t_end = 2.0;
    double cfl = 0.9;  ///< dt = cfl * dx / max |f_u|; must not exceed 0.9
    FVScheme scheme = FVScheme::LLF;
    Boundary boundary = Boundary::Outflow;

    double dx() const { return (x_hi - x_lo) / cells; }
    void validate() const;
};

struct FVResult {
    std::shared_ptr<GridField> field;
    double dt = 0.0;
    int steps = 0;
    double max_speed = 0.0;
    /// sum of cell values times dx before each step and after the last
    std::vector<double> mass;
};

/// Explicit first-order finite volumes: numerical flux evaluated at
/// (t_m, x_{j+1/2}), source added at cell centers.
FVResult fv_solve(const FluxFunction& f, const SourceFunction& g, const InitialDatum& u0, const FVGrid& grid);

}  // namespace entprod
