#pragma once

#include <functional>
#include <string>
#include <vector>

#include "entprod/core.hpp"

namespace entprod {

using TXU = std::function<double(double, double, double)>;

/// Smooth scalar factor of one variable with its derivative, used to build
/// separable fluxes a(t,x) b(u) from configuration.
struct Factor1D {
    std::function<double(double)> value;
    std::function<double(double)> derivative;

    static Factor1D constant(double c);
    /// sum_i coeffs[i] * s^i
    static Factor1D polynomial(std::vector<double> coeffs);
    /// amplitude * sin(omega * s + phase)
    static Factor1D sine(double amplitude, double omega, double phase);
    /// amplitude * cos(omega * s + phase)
    static Factor1D cosine(double amplitude, double omega, double phase);
};

/// One term a(t,x) * b(u) with a(t,x) = at(t) * ax(x).
struct SeparableTerm {
    Factor1D at;
    Factor1D ax;
    Factor1D b;
};

/// Flux f(t,x,u) in one space dimension with the derivative surface the
/// production functionals need: f_u, the partial x-divergence f_x (u frozen),
/// and the mixed derivatives f_tu, f_xu.
struct FluxFunction {
    std::string name;
    TXU f;
    TXU fu;
    TXU fx;
    TXU ftu;
    TXU fxu;
    std::vector<SeparableTerm> separable;  ///< empty when no separable form is known
    bool x_independent = false;

    static FluxFunction from_separable(std::string name, std::vector<SeparableTerm> terms);
    /// f = u^2 / 2
    static FluxFunction burgers();
    /// f = x^2 u (pairs with SourceFunction::linear_x2)
    static FluxFunction linear_x2();
    /// f = c u
    static FluxFunction linear(double speed);
    static FluxFunction builtin(const std::string& name);

    /// Evaluates f through the separable terms; throws if none are declared.
    double eval_separable(double t, double x, double u) const;
};

struct SourceFunction {
    std::string name;
    TXU g;
    TXU gu;  ///< optional

    static SourceFunction zero();
    /// g = 2 x u
    static SourceFunction linear_x2();
    /// g = -rate * u
    static SourceFunction decay(double rate);
    static SourceFunction builtin(const std::string& name);
};

/// sgn(u - k) (f(t,x,u) - f(t,x,k)).
double phi_jump(const FluxFunction& f, double t, double x, double u, double k);

/// Largest |f_u| over a sampled (t, x, u) box.
double max_wave_speed(const FluxFunction& f, Interval t, Interval x, Interval u, int samples = 17);

}  // namespace entprod
