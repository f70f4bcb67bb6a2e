#include "entprod/entropy.hpp"

#include <algorithm>

#include "entprod/quadrature.hpp"

namespace entprod {

Entropy1D Entropy1D::c2(std::string name, CFn e, CFn de, CFn d2e, bool real) {
    Entropy1D out;
    out.name_ = std::move(name);
    out.e_ = std::move(e);
    out.de_ = std::move(de);
    out.d2e_ = std::move(d2e);
    out.real_ = real;
    return out;
}

Entropy1D Entropy1D::real_c2(std::string name, std::function<double(double)> e,
                             std::function<double(double)> de, std::function<double(double)> d2e) {
    return c2(std::move(name), [e](double u) { return cplx(e(u)); }, [de](double u) { return cplx(de(u)); },
              [d2e](double u) { return cplx(d2e(u)); }, true);
}

Entropy1D Entropy1D::acr(std::string name, std::function<double(double)> e, RegulatedBV derivative) {
    Entropy1D out;
    out.name_ = std::move(name);
    out.e_ = [e](double u) { return cplx(e(u)); };
    out.regulated_ = std::move(derivative);
    out.real_ = true;
    return out;
}

Entropy1D Entropy1D::identity() {
    return real_c2("identity", [](double u) { return u; }, [](double) { return 1.0; },
                   [](double) { return 0.0; });
}

Entropy1D Entropy1D::constant(double c) {
    return real_c2("constant", [c](double) { return c; }, [](double) { return 0.0; },
                   [](double) { return 0.0; });
}

Entropy1D Entropy1D::power(int m, double scale) {
    if (m < 0) throw std::invalid_argument("power entropy: negative exponent");
    auto pw = [](double u, int k) { return k <= 0 ? 1.0 : std::pow(u, k); };
    return real_c2(
        "u^" + std::to_string(m), [=](double u) { return pw(u, m) / scale; },
        [=](double u) { return m == 0 ? 0.0 : m * pw(u, m - 1) / scale; },
        [=](double u) { return m < 2 ? 0.0 : m * (m - 1) * pw(u, m - 2) / scale; });
}

Entropy1D Entropy1D::cosine() {
    return real_c2("cos", [](double u) { return std::cos(u); }, [](double u) { return -std::sin(u); },
                   [](double u) { return -std::cos(u); });
}

Entropy1D Entropy1D::kruzkov(double c, Interval support) {
    std::vector<Jump> jumps;
    double left = -1.0;
    if (c < support.lo)
        left = 1.0;
    else if (c <= support.hi)
        jumps.push_back({c, 2.0});
    RegulatedBV d(support, [left](double) { return left; }, [](double) { return 0.0; }, std::move(jumps));
    return acr("kruzkov", [c](double u) { return std::abs(u - c); }, std::move(d));
}

cplx Entropy1D::derivative(double u) const {
    if (regulated_) return regulated_->value(u);
    return de_(u);
}

cplx Entropy1D::second_derivative(double u) const {
    if (regulated_) throw std::logic_error("second derivative of an ACR entropy is a measure");
    return d2e_(u);
}

std::vector<double> Entropy1D::jump_points() const {
    std::vector<double> pts = regulated_ ? regulated_->jump_points() : std::vector<double>{};
    pts.insert(pts.end(), kinks_.begin(), kinks_.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

Entropy1D Entropy1D::with_kinks(std::vector<double> kinks) const {
    Entropy1D e = *this;
    e.kinks_.insert(e.kinks_.end(), kinks.begin(), kinks.end());
    return e;
}

namespace {

RegulatedBV as_regulated(const Entropy1D& e, Interval support) {
    if (e.is_acr()) return e.regulated_derivative();
    if (!e.is_real()) throw std::invalid_argument("cannot mix a complex entropy with an ACR entropy");
    return RegulatedBV(support, [e](double u) { return e.derivative(u).real(); },
                       [e](double u) { return e.second_derivative(u).real(); }, {});
}

}  // namespace

Entropy1D Entropy1D::combine(double a, const Entropy1D& other, double b) const {
    const std::string nm = "(" + name_ + ")+(" + other.name_ + ")";
    auto e1 = e_, e2 = other.e_;
    if (is_acr() || other.is_acr()) {
        const Interval sup = is_acr() ? regulated_->support() : other.regulated_->support();
        auto d = as_regulated(*this, sup).combine(a, as_regulated(other, sup), b);
        return acr(nm, [=](double u) { return (a * e1(u) + b * e2(u)).real(); }, std::move(d))
            .with_kinks(kinks_)
            .with_kinks(other.kinks_);
    }
    auto d1 = de_, d2 = other.de_, s1 = d2e_, s2 = other.d2e_;
    return c2(
               nm, [=](double u) { return a * e1(u) + b * e2(u); }, [=](double u) { return a * d1(u) + b * d2(u); },
               [=](double u) { return a * s1(u) + b * s2(u); }, real_ && other.real_)
        .with_kinks(kinks_)
        .with_kinks(other.kinks_);
}

Entropy1D Entropy1D::plus_affine(double a, double b) const {
    if (is_acr()) {
        const auto& r = *regulated_;
        RegulatedBV lin(r.support(), [a](double) { return a; }, [](double) { return 0.0; }, {});
        auto d = r.combine(1.0, lin, 1.0);
        auto e = e_;
        return acr(name_ + "+affine", [=](double u) { return e(u).real() + a * u + b; }, std::move(d))
            .with_kinks(kinks_);
    }
    auto e = e_, de = de_;
    return c2(
               name_ + "+affine", [=](double u) { return e(u) + a * u + b; }, [=](double u) { return de(u) + a; },
               d2e_, real_)
        .with_kinks(kinks_);
}

EntropyTX EntropyTX::tensor(const Weight& phi, const Entropy1D& e) {
    if (e.is_acr() || !e.is_real()) throw std::invalid_argument("tensor entropy requires a real C^2 entropy");
    auto v = phi.value, pt = phi.dt, px = phi.dx;
    auto E = [e](double u) { return e.value(u).real(); };
    auto dE = [e](double u) { return e.derivative(u).real(); };
    auto d2E = [e](double u) { return e.second_derivative(u).real(); };
    EntropyTX z;
    z.value = [=](double t, double x, double u) { return v(t, x) * E(u); };
    z.dt = [=](double t, double x, double u) { return pt(t, x) * E(u); };
    z.dx = [=](double t, double x, double u) { return px(t, x) * E(u); };
    z.du = [=](double t, double x, double u) { return v(t, x) * dE(u); };
    z.dtu = [=](double t, double x, double u) { return pt(t, x) * dE(u); };
    z.dxu = [=](double t, double x, double u) { return px(t, x) * dE(u); };
    z.duu = [=](double t, double x, double u) { return v(t, x) * d2E(u); };
    z.dtuu = [=](double t, double x, double u) { return pt(t, x) * d2E(u); };
    z.dxuu = [=](double t, double x, double u) { return px(t, x) * d2E(u); };
    z.support = phi.support;
    return z;
}

EntropyTX EntropyTX::times_identity(const Weight& psi) {
    auto v = psi.value, pt = psi.dt, px = psi.dx;
    EntropyTX z;
    z.value = [=](double t, double x, double u) { return v(t, x) * u; };
    z.dt = [=](double t, double x, double u) { return pt(t, x) * u; };
    z.dx = [=](double t, double x, double u) { return px(t, x) * u; };
    z.du = [=](double t, double x, double) { return v(t, x); };
    z.dtu = [=](double t, double x, double) { return pt(t, x); };
    z.dxu = [=](double t, double x, double) { return px(t, x); };
    z.duu = [](double, double, double) { return 0.0; };
    z.dtuu = z.duu;
    z.dxuu = z.duu;
    z.support = psi.support;
    return z;
}

EntropyTX EntropyTX::zero() {
    EntropyTX z;
    z.value = [](double, double, double) { return 0.0; };
    z.dt = z.dx = z.du = z.dtu = z.dxu = z.duu = z.dtuu = z.dxuu = z.value;
    z.support = Box::none();
    return z;
}

EntropyTX EntropyTX::combine(double a, const EntropyTX& o, double b) const {
    auto mix = [a, b](const Fn3& p, const Fn3& q) -> Fn3 {
        if (!p || !q) return {};
        return [=](double t, double x, double u) { return a * p(t, x, u) + b * q(t, x, u); };
    };
    EntropyTX z;
    z.value = mix(value, o.value);
    z.dt = mix(dt, o.dt);
    z.dx = mix(dx, o.dx);
    z.du = mix(du, o.du);
    z.dtu = mix(dtu, o.dtu);
    z.dxu = mix(dxu, o.dxu);
    z.duu = mix(duu, o.duu);
    z.dtuu = mix(dtuu, o.dtuu);
    z.dxuu = mix(dxuu, o.dxuu);
    if (support.empty)
        z.support = o.support;
    else if (o.support.empty)
        z.support = support;
    else
        z.support = Box{{std::min(support.t.lo, o.support.t.lo), std::max(support.t.hi, o.support.t.hi)},
                        {std::min(support.x.lo, o.support.x.lo), std::max(support.x.hi, o.support.x.hi)},
                        false};
    return z;
}

namespace {

/// Gauss over [0, u] (oriented), split at the given points. `integrand`
/// returns the contribution at w.
template <class V, class F>
V oriented_integral(F&& integrand, double u, std::span<const double> jumps, int order) {
    if (u == 0.0) return V{};
    const double lo = std::min(0.0, u), hi = std::max(0.0, u);
    V val = integrate_interval<V>(integrand, lo, hi, jumps, order);
    return u > 0.0 ? val : V{} - val;
}

}  // namespace

FluxPair entropy_flux_and_div(const Entropy1D& e, const FluxFunction& f, double t, double x, double u,
                              const QuadratureSpec& spec) {
    const auto jumps = e.jump_points();
    if (f.x_independent) {
        cplx fl = oriented_integral<cplx>([&](double w) { return e.derivative(w) * f.fu(t, x, w); }, u, jumps,
                                          spec.k_axis_order);
        return {fl, cplx{}};
    }
    auto both = oriented_integral<Terms<cplx, 2>>(
        [&](double w) {
            const cplx d = e.derivative(w);
            return Terms<cplx, 2>{{d * f.fu(t, x, w), d * f.fxu(t, x, w)}};
        },
        u, jumps, spec.k_axis_order);
    return {both[0], both[1]};
}

EntropyFlux1D entropy_flux(const Entropy1D& e, const FluxFunction& f, const QuadratureSpec& spec) {
    const int order = spec.k_axis_order;
    const auto jumps = e.jump_points();
    EntropyFlux1D F;
    F.flux = [=](double t, double x, double u) {
        return oriented_integral<cplx>([&](double w) { return e.derivative(w) * f.fu(t, x, w); }, u, jumps,
                                       order);
    };
    F.du = [=](double t, double x, double u) { return e.derivative(u) * f.fu(t, x, u); };
    F.div = [=](double t, double x, double u) {
        return oriented_integral<cplx>([&](double w) { return e.derivative(w) * f.fxu(t, x, w); }, u, jumps,
                                       order);
    };
    F.dt = [=](double t, double x, double u) {
        return oriented_integral<cplx>([&](double w) { return e.derivative(w) * f.ftu(t, x, w); }, u, jumps,
                                       order);
    };
    F.dtu = [=](double t, double x, double u) { return e.derivative(u) * f.ftu(t, x, u); };
    F.support = Box{{0.0, std::numeric_limits<double>::infinity()},
                    {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()},
                    false};
    return F;
}

EntropyFluxTX entropy_flux(const EntropyTX& e, const FluxFunction& f, const QuadratureSpec& spec) {
    const int order = spec.k_axis_order;
    EntropyFluxTX F;
    F.flux = [=](double t, double x, double u) {
        return oriented_integral<double>([&](double w) { return e.du(t, x, w) * f.fu(t, x, w); }, u, {}, order);
    };
    F.du = [=](double t, double x, double u) { return e.du(t, x, u) * f.fu(t, x, u); };
    F.div = [=](double t, double x, double u) {
        return oriented_integral<double>(
            [&](double w) { return e.dxu(t, x, w) * f.fu(t, x, w) + e.du(t, x, w) * f.fxu(t, x, w); }, u, {},
            order);
    };
    F.dt = [=](double t, double x, double u) {
        return oriented_integral<double>(
            [&](double w) { return e.dtu(t, x, w) * f.fu(t, x, w) + e.du(t, x, w) * f.ftu(t, x, w); }, u, {},
            order);
    };
    F.dtu = [=](double t, double x, double u) {
        return e.dtu(t, x, u) * f.fu(t, x, u) + e.du(t, x, u) * f.ftu(t, x, u);
    };
    F.support = e.support;
    return F;
}

double seminorm_pK(const EntropyTX& z, const Box3& k, int samples) {
    const int n = std::max(samples, 2);
    double s0 = 0, st = 0, sx = 0, su = 0, stu = 0, sxu = 0;
    for (int i = 0; i < n; ++i) {
        const double t = k.t.lo + k.t.width() * i / (n - 1);
        for (int j = 0; j < n; ++j) {
            const double x = k.x.lo + k.x.width() * j / (n - 1);
            for (int l = 0; l < n; ++l) {
                const double u = k.u.lo + k.u.width() * l / (n - 1);
                s0 = std::max(s0, std::abs(z.value(t, x, u)));
                st = std::max(st, std::abs(z.dt(t, x, u)));
                sx = std::max(sx, std::abs(z.dx(t, x, u)));
                su = std::max(su, std::abs(z.du(t, x, u)));
                stu = std::max(stu, std::abs(z.dtu(t, x, u)));
                sxu = std::max(sxu, std::abs(z.dxu(t, x, u)));
            }
        }
    }
    return s0 + std::max({st, sx, su}) + stu + sxu;
}

Box spt_tx(const EntropyTX& z, const std::optional<Box>& verify_frame, Interval u_range, int samples) {
    if (!verify_frame) return z.support;
    const Box& fr = *verify_frame;
    const int n = std::max(samples, 2);
    for (int i = 0; i < n; ++i) {
        const double t = fr.t.lo + fr.t.width() * i / (n - 1);
        for (int j = 0; j < n; ++j) {
            const double x = fr.x.lo + fr.x.width() * j / (n - 1);
            if (z.support.contains(t, x)) continue;
            for (int l = 0; l < n; ++l) {
                const double u = u_range.lo + u_range.width() * l / (n - 1);
                for (const Fn3* g : {&z.value, &z.dt, &z.dx, &z.du, &z.dtu, &z.dxu})
                    if (*g && (*g)(t, x, u) != 0.0)
                        throw ContractViolation("spt_tx: nonzero value outside the declared support");
            }
        }
    }
    return z.support;
}

}  // namespace entprod
