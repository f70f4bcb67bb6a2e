#pragma once

#include <string>
#include <vector>

#include "entprod/production.hpp"

namespace entprod {

struct RepresentationReport {
    cplx lhs{};
    cplx rhs{};
    /// ((E'(a) + E'(b)) / 2) M_u(Id)(phi), or its (t,x) analogue
    cplx boundary_term{};
    double abs_err = 0.0;
    double rel_err = 0.0;
    Interval k_range;
    QuadReport k_report;
    /// false when the entropy lacks the second u-derivatives the formula needs
    bool hypothesis_ok = true;

    /// Recomputes abs_err and rel_err from lhs and rhs.
    void settle();
};

struct RepresentationOptions {
    /// [a, b] is the essential range widened by this fraction on both sides
    double inflate = 0.0;
    int jobs = 1;
};

/// lhs = M_u(E)(phi); rhs = 1/2 int_a^b E''(k) mu_k(phi) dk + boundary_term.
RepresentationReport represent_c2(const Entropy1D& e, const Problem& p, const Weight& phi,
                                  const QuadratureSpec& spec, const RepresentationOptions& opt = {});

/// lhs = M^tx(E); rhs = 1/2 int_a^b mu_k(E_uu(., ., k)) dk
///   + M^tx(((E_u(., ., a) + E_u(., ., b)) / 2) (x) Id).
RepresentationReport represent_tx(const EntropyTX& e, const Problem& p, const QuadratureSpec& spec,
                                  const RepresentationOptions& opt = {});

/// lhs = M_u(E)(phi) through the regulated E'; rhs = 1/2 KS int_a^b mu_k(phi) dE'(k).
/// The rhs carries no boundary term (it is exact for distributional
/// solutions); boundary_term is reported for diagnosis only.
RepresentationReport represent_acr(const Entropy1D& e, const Problem& p, const Weight& phi,
                                   const QuadratureSpec& spec, const RepresentationOptions& opt = {});

/// 1/2 int_a^b w(k) mu_k(phi) dk with panels split at the declared states
/// and at the kinks of w.
QuadResult<cplx> weighted_k_integral(const std::function<cplx(double)>& w, const Problem& p, const Weight& phi,
                                     Interval ab, const QuadratureSpec& spec, int jobs = 1,
                                     std::span<const double> w_kinks = {});

/// Declared states of u and u0 (where k -> mu_k may kink).
std::vector<double> kink_states(const Problem& p);

struct PositivityReport {
    double min_mu = 0.0;
    double argmin_k = 0.0;
    double min_production = 0.0;
    std::string argmin_entropy;
    bool nonnegative = true;  ///< both minima >= -tol
};

/// Minimum of mu_k(phi) over the k grid and of M_u(E)(phi) over the convex
/// entropies, across nonnegative test functions.
PositivityReport convexity_positivity_check(const Problem& p, const std::vector<TestFunction>& phis,
                                            const std::vector<Entropy1D>& convex, const std::vector<double>& k_grid,
                                            const QuadratureSpec& spec, double tol, int jobs = 1);

}  // namespace entprod
