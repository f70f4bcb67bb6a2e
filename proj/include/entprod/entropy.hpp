#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "entprod/core.hpp"
#include "entprod/flux.hpp"
#include "entprod/regulated.hpp"
#include "entprod/test_function.hpp"

namespace entprod {

/// Entropy E(u) of one variable. Either C^2 (real or complex valued, with
/// E, E', E'') or ACR: absolutely continuous with a regulated derivative
/// stored as a RegulatedBV, so the midpoint value at jumps is structural.
class Entropy1D {
public:
    using CFn = std::function<cplx(double)>;

    static Entropy1D c2(std::string name, CFn e, CFn de, CFn d2e, bool real = true);
    static Entropy1D real_c2(std::string name, std::function<double(double)> e,
                             std::function<double(double)> de, std::function<double(double)> d2e);
    static Entropy1D acr(std::string name, std::function<double(double)> e, RegulatedBV derivative);

    static Entropy1D identity();
    static Entropy1D constant(double c);
    /// u^m / scale
    static Entropy1D power(int m, double scale = 1.0);
    static Entropy1D cosine();
    /// |u - c| with derivative sgn(u - c) regulated on `support`
    static Entropy1D kruzkov(double c, Interval support);

    /// a * this + b * other; ACR if either operand is ACR.
    Entropy1D combine(double a, const Entropy1D& other, double b) const;
    /// this + a u + b
    Entropy1D plus_affine(double a, double b) const;
    /// Same entropy with declared points where E'' is not smooth.
    Entropy1D with_kinks(std::vector<double> kinks) const;

    cplx value(double u) const { return e_(u); }
    cplx derivative(double u) const;
    /// E''; throws for ACR entropies.
    cplx second_derivative(double u) const;

    bool is_acr() const { return regulated_.has_value(); }
    bool is_real() const { return real_; }
    const RegulatedBV& regulated_derivative() const { return regulated_.value(); }
    /// Jumps of E' plus the declared kinks of E''.
    std::vector<double> jump_points() const;
    const std::string& name() const { return name_; }

private:
    std::string name_;
    CFn e_, de_, d2e_;
    std::optional<RegulatedBV> regulated_;
    std::vector<double> kinks_;
    bool real_ = true;
};

using Fn3 = std::function<double(double, double, double)>;

/// Entropy E(t,x,u) with compact (t,x)-support and the derivative surface of
/// the class F: E, E_t, E_x, E_u, E_tu, E_xu. The second u-derivative and its
/// (t,x) derivatives are optional; the (t,x)-dependent representation needs them.
struct EntropyTX {
    Fn3 value, dt, dx, du, dtu, dxu;
    Fn3 duu, dtuu, dxuu;
    Box support;

    bool has_second_u() const { return static_cast<bool>(duu) && dtuu && dxuu; }

    /// phi (x) e for a real C^2 entropy e
    static EntropyTX tensor(const Weight& phi, const Entropy1D& e);
    /// psi (x) Id
    static EntropyTX times_identity(const Weight& psi);
    static EntropyTX zero();
    /// a * this + b * other; support is the bounding box of both.
    EntropyTX combine(double a, const EntropyTX& other, double b) const;
};

/// Entropy flux F paired with an entropy, with the derivatives used by the
/// production functionals. T is double for (t,x)-entropies and complex for
/// one-variable entropies.
template <class T>
struct BasicEntropyFlux {
    using Fn = std::function<T(double, double, double)>;
    Fn flux;  ///< F
    Fn du;    ///< F_u = E_u f_u
    Fn div;   ///< partial x-divergence, u frozen
    Fn dt;    ///< F_t
    Fn dtu;   ///< F_tu
    Box support;
};

using EntropyFluxTX = BasicEntropyFlux<double>;
using EntropyFlux1D = BasicEntropyFlux<cplx>;

/// F(t,x,u) = int_0^u E_u(t,x,w) f_u(t,x,w) dw, Gauss in w split at the
/// jump points of E'. Jump points outside [min(0,u), max(0,u)] are ignored.
EntropyFlux1D entropy_flux(const Entropy1D& e, const FluxFunction& f, const QuadratureSpec& spec);
EntropyFluxTX entropy_flux(const EntropyTX& e, const FluxFunction& f, const QuadratureSpec& spec);

/// F and its partial x-divergence at one point, sharing one w-quadrature.
struct FluxPair {
    cplx flux;
    cplx div;
};
FluxPair entropy_flux_and_div(const Entropy1D& e, const FluxFunction& f, double t, double x, double u,
                              const QuadratureSpec& spec);

struct Box3 {
    Interval t, x, u;
};

/// p_K: sup|z| + max(sup|z_t|, sup|z_x|, sup|z_u|) + sup|z_tu| + sup|z_xu|,
/// sampled on a uniform grid with `samples` points per axis.
double seminorm_pK(const EntropyTX& z, const Box3& k, int samples = 33);

/// Declared (t,x)-support. With a verification frame, samples the frame
/// outside the declared box (u in `u_range`) and throws ContractViolation on
/// any nonzero value or derivative.
Box spt_tx(const EntropyTX& z, const std::optional<Box>& verify_frame = std::nullopt,
           Interval u_range = {-1.0, 1.0}, int samples = 21);

}  // namespace entprod
