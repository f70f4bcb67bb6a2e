#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "entprod/entropy.hpp"

namespace entprod {

/// rho(xi) = c (1 - (xi / 3R)^2)^nu on |xi| <= 3R, zero outside, unit mass.
struct LandauKernel {
    int nu = 1;
    double R = 1.0;
    double c = 0.75;

    double operator()(double xi) const;
};

/// c = 1 / (3R sqrt(pi) Gamma(nu + 1) / Gamma(nu + 3/2)).
LandauKernel landau_kernel(int nu, double R);

/// Extension to t < 0 by 2 z(0, x, u) - z(-t, x, u); C^1 across t = 0.
EntropyTX reflect_t(const EntropyTX& z);

/// chi(t) chi(x) chi(u) z with chi = 1 on [-R, R], 0 outside [-2R, 2R] and
/// a C^2 quintic transition in between. The support box covers [-2R, 2R]^2.
EntropyTX smooth_cutoff(const EntropyTX& z, double R);

/// (f * rho^(x3))(y) for f supported in [-2R, 2R]^3, by tensor Gauss with
/// 2 nu + 8 nodes on each of the panels [-2R,-R], [-R,R], [R,2R] per axis.
class LandauConvolution {
public:
    LandauConvolution(const Fn3& f, int nu, double R);

    /// Direct evaluation at one point.
    double at(double t, double x, double u) const;
    /// Values on the tensor grid ts x xs x us, index (i * nx + j) * nu + l.
    std::vector<double> on_grid(const std::vector<double>& ts, const std::vector<double>& xs,
                                const std::vector<double>& us) const;

    const LandauKernel& kernel() const { return rho_; }

private:
    LandauKernel rho_;
    std::vector<double> z_;       ///< nodes, shared by all axes
    std::vector<double> values_;  ///< w_a w_b w_c f(z_a, z_b, z_c)
};

/// Values and the derivatives entering p_K.
struct Jet {
    double v = 0, t = 0, x = 0, u = 0, tu = 0, xu = 0;
};

/// sum_m P_m(t,x) e_m(u) on K = [-R, R]^3 with P_m a tensor Chebyshev
/// polynomial in (t/R, x/R) and e_m(u) = T_m(u/R). Degree n - 1 per variable.
class SeparableFunction {
public:
    SeparableFunction(int n, double R, std::vector<double> coeffs);

    /// Interpolates grid values at the n Chebyshev points per axis of K.
    static SeparableFunction interpolate(int n, double R, const std::vector<double>& values);
    static std::vector<double> chebyshev_points(int n, double R);

    double value(double t, double x, double u) const;
    Jet jet(double t, double x, double u) const;
    /// Jets on a tensor grid, index (i * nx + j) * nu + l.
    std::vector<Jet> jet_grid(const std::vector<double>& ts, const std::vector<double>& xs,
                              const std::vector<double>& us) const;

    int degree() const { return n_ - 1; }
    /// Number of u-groups P_m (x) e_m.
    int terms() const { return n_; }
    double R() const { return R_; }
    double coeff(int i, int j, int m) const { return a_[(static_cast<std::size_t>(i) * n_ + j) * n_ + m]; }

    /// {"basis": "chebyshev", "scale": R, "terms": [{"u_degree": m, "txt": [[...]]}]}
    nlohmann::json to_json() const;

private:
    int n_;
    double R_;
    std::vector<double> a_;
};

/// z_nu = (smooth_cutoff(z) * rho_nu) restricted to K, as a separable
/// polynomial of degree 2 nu per variable.
SeparableFunction tensor_approximate(const EntropyTX& z, int nu, double R);

/// p_K(z - s) on a uniform grid over K with `samples` points per axis,
/// using the convention of seminorm_pK.
double pK_error(const EntropyTX& z, const SeparableFunction& s, int samples = 33);

/// Named smooth entropies for approximation ladders: "u", "tu",
/// "sin_t_cos_u" = sin t cos u, "gauss_x_sin" = exp(-x^2) sin(t + u).
EntropyTX sample_zeta(const std::string& name);
std::vector<std::string> sample_zeta_names();

}  // namespace entprod
