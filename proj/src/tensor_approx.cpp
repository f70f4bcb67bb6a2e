#include "entprod/tensor_approx.hpp"

#include <numbers>

#include "entprod/quadrature.hpp"

namespace entprod {

double LandauKernel::operator()(double xi) const {
    const double s = xi / (3.0 * R);
    if (std::abs(s) >= 1.0) return 0.0;
    return c * std::pow(1.0 - s * s, nu);
}

LandauKernel landau_kernel(int nu, double R) {
    if (nu < 1) throw std::invalid_argument("landau kernel: nu must be >= 1");
    if (!(R > 0.0)) throw std::invalid_argument("landau kernel: R must be positive");
    const double mass = 3.0 * R * std::sqrt(std::numbers::pi) * std::exp(std::lgamma(nu + 1.0) - std::lgamma(nu + 1.5));
    return {nu, R, 1.0 / mass};
}

EntropyTX reflect_t(const EntropyTX& z) {
    EntropyTX r;
    auto even = [](Fn3 f) -> Fn3 {
        return [f](double t, double x, double u) { return t >= 0.0 ? f(t, x, u) : 2.0 * f(0.0, x, u) - f(-t, x, u); };
    };
    auto odd_t = [](Fn3 f) -> Fn3 {
        return [f](double t, double x, double u) { return t >= 0.0 ? f(t, x, u) : f(-t, x, u); };
    };
    r.value = even(z.value);
    r.dx = even(z.dx);
    r.du = even(z.du);
    r.dxu = even(z.dxu);
    r.dt = odd_t(z.dt);
    r.dtu = odd_t(z.dtu);
    r.support = z.support;
    if (!r.support.empty) r.support.t = {-z.support.t.hi, z.support.t.hi};
    return r;
}

namespace {

struct Cut {
    double v, d;
};

Cut cutoff_1d(double s, double R) {
    const double a = std::abs(s);
    if (a <= R) return {1.0, 0.0};
    if (a >= 2.0 * R) return {0.0, 0.0};
    const double q = (a - R) / R;
    const double S = q * q * q * (10.0 - 15.0 * q + 6.0 * q * q);
    const double dS = 30.0 * q * q * (1.0 - q) * (1.0 - q) / R;
    return {1.0 - S, (s > 0.0 ? -dS : dS)};
}

}  // namespace

EntropyTX smooth_cutoff(const EntropyTX& z, double R) {
    EntropyTX c;
    c.value = [=](double t, double x, double u) {
        return cutoff_1d(t, R).v * cutoff_1d(x, R).v * cutoff_1d(u, R).v * z.value(t, x, u);
    };
    c.dt = [=](double t, double x, double u) {
        const Cut a = cutoff_1d(t, R), b = cutoff_1d(x, R), e = cutoff_1d(u, R);
        return b.v * e.v * (a.d * z.value(t, x, u) + a.v * z.dt(t, x, u));
    };
    c.dx = [=](double t, double x, double u) {
        const Cut a = cutoff_1d(t, R), b = cutoff_1d(x, R), e = cutoff_1d(u, R);
        return a.v * e.v * (b.d * z.value(t, x, u) + b.v * z.dx(t, x, u));
    };
    c.du = [=](double t, double x, double u) {
        const Cut a = cutoff_1d(t, R), b = cutoff_1d(x, R), e = cutoff_1d(u, R);
        return a.v * b.v * (e.d * z.value(t, x, u) + e.v * z.du(t, x, u));
    };
    c.dtu = [=](double t, double x, double u) {
        const Cut a = cutoff_1d(t, R), b = cutoff_1d(x, R), e = cutoff_1d(u, R);
        return b.v * (a.d * e.d * z.value(t, x, u) + a.d * e.v * z.du(t, x, u) + a.v * e.d * z.dt(t, x, u) +
                      a.v * e.v * z.dtu(t, x, u));
    };
    c.dxu = [=](double t, double x, double u) {
        const Cut a = cutoff_1d(t, R), b = cutoff_1d(x, R), e = cutoff_1d(u, R);
        return a.v * (b.d * e.d * z.value(t, x, u) + b.d * e.v * z.du(t, x, u) + b.v * e.d * z.dx(t, x, u) +
                      b.v * e.v * z.dxu(t, x, u));
    };
    c.support = Box{{-2.0 * R, 2.0 * R}, {-2.0 * R, 2.0 * R}, false};
    return c;
}

LandauConvolution::LandauConvolution(const Fn3& f, int nu, double R) : rho_(landau_kernel(nu, R)) {
    const auto& rule = gauss_legendre(2 * nu + 8);
    std::vector<double> w;
    const double edges[] = {-2.0 * R, -R, R, 2.0 * R};
    for (int p = 0; p < 3; ++p) {
        const double half = 0.5 * (edges[p + 1] - edges[p]), mid = edges[p] + half;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            z_.push_back(mid + half * rule.nodes[i]);
            w.push_back(half * rule.weights[i]);
        }
    }
    const std::size_t q = z_.size();
    values_.resize(q * q * q);
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b)
            for (std::size_t c = 0; c < q; ++c)
                values_[(a * q + b) * q + c] = w[a] * w[b] * w[c] * f(z_[a], z_[b], z_[c]);
}

double LandauConvolution::at(double t, double x, double u) const {
    const std::size_t q = z_.size();
    std::vector<double> kt(q), kx(q), ku(q);
    for (std::size_t a = 0; a < q; ++a) {
        kt[a] = rho_(t - z_[a]);
        kx[a] = rho_(x - z_[a]);
        ku[a] = rho_(u - z_[a]);
    }
    double total = 0.0;
    for (std::size_t a = 0; a < q; ++a) {
        double sa = 0.0;
        for (std::size_t b = 0; b < q; ++b) {
            const double* row = &values_[(a * q + b) * q];
            double sb = 0.0;
            for (std::size_t c = 0; c < q; ++c) sb += row[c] * ku[c];
            sa += sb * kx[b];
        }
        total += sa * kt[a];
    }
    return total;
}

namespace {

/// out[i, b, c] = sum_a M[i, a] in[a, b, c] for in of shape (na, nb, nc).
std::vector<double> contract_first(const std::vector<double>& m, std::size_t ni, const std::vector<double>& in,
                                   std::size_t na, std::size_t rest) {
    std::vector<double> out(ni * rest, 0.0);
    for (std::size_t i = 0; i < ni; ++i)
        for (std::size_t a = 0; a < na; ++a) {
            const double mia = m[i * na + a];
            if (mia == 0.0) continue;
            const double* src = &in[a * rest];
            double* dst = &out[i * rest];
            for (std::size_t r = 0; r < rest; ++r) dst[r] += mia * src[r];
        }
    return out;
}

/// Moves the first axis to the end: (a, b, c) -> (b, c, a).
std::vector<double> rotate(const std::vector<double>& in, std::size_t na, std::size_t nb, std::size_t nc) {
    std::vector<double> out(in.size());
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b)
            for (std::size_t c = 0; c < nc; ++c) out[(b * nc + c) * na + a] = in[(a * nb + b) * nc + c];
    return out;
}

/// Applies one matrix per axis: out[i,j,l] = sum M0[i,a] M1[j,b] M2[l,c] in[a,b,c].
std::vector<double> apply3(const std::vector<double>& in, std::size_t n0, std::size_t n1, std::size_t n2,
                           const std::vector<double>& m0, std::size_t r0, const std::vector<double>& m1,
                           std::size_t r1, const std::vector<double>& m2, std::size_t r2) {
    auto s = contract_first(m0, r0, in, n0, n1 * n2);  // (r0, n1, n2)
    s = rotate(s, r0, n1, n2);                         // (n1, n2, r0)
    s = contract_first(m1, r1, s, n1, n2 * r0);        // (r1, n2, r0)
    s = rotate(s, r1, n2, r0);                         // (n2, r0, r1)
    s = contract_first(m2, r2, s, n2, r0 * r1);        // (r2, r0, r1)
    return rotate(s, r2, r0, r1);                      // (r0, r1, r2)
}

}  // namespace

std::vector<double> LandauConvolution::on_grid(const std::vector<double>& ts, const std::vector<double>& xs,
                                               const std::vector<double>& us) const {
    const std::size_t q = z_.size();
    auto kernel_matrix = [&](const std::vector<double>& ys) {
        std::vector<double> m(ys.size() * q);
        for (std::size_t i = 0; i < ys.size(); ++i)
            for (std::size_t a = 0; a < q; ++a) m[i * q + a] = rho_(ys[i] - z_[a]);
        return m;
    };
    return apply3(values_, q, q, q, kernel_matrix(ts), ts.size(), kernel_matrix(xs), xs.size(), kernel_matrix(us),
                  us.size());
}

SeparableFunction::SeparableFunction(int n, double R, std::vector<double> coeffs)
    : n_(n), R_(R), a_(std::move(coeffs)) {
    if (n_ < 1 || !(R_ > 0.0)) throw std::invalid_argument("separable: bad size or scale");
    if (a_.size() != static_cast<std::size_t>(n_) * n_ * n_)
        throw std::invalid_argument("separable: coefficient count mismatch");
}

std::vector<double> SeparableFunction::chebyshev_points(int n, double R) {
    std::vector<double> p(n);
    for (int i = 0; i < n; ++i) p[i] = R * std::cos(std::numbers::pi * (i + 0.5) / n);
    return p;
}

namespace {

/// T_0..T_{n-1} at s and their first derivatives in s.
void chebyshev_basis(int n, double s, double* T, double* dT) {
    T[0] = 1.0;
    dT[0] = 0.0;
    if (n > 1) {
        T[1] = s;
        dT[1] = 1.0;
    }
    for (int k = 2; k < n; ++k) {
        T[k] = 2.0 * s * T[k - 1] - T[k - 2];
        dT[k] = 2.0 * T[k - 1] + 2.0 * s * dT[k - 1] - dT[k - 2];
    }
}

}  // namespace

SeparableFunction SeparableFunction::interpolate(int n, double R, const std::vector<double>& values) {
    // c_k = (2 - delta_k0) / n * sum_i f(s_i) T_k(s_i), per axis
    std::vector<double> m(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            m[k * n + i] = (k == 0 ? 1.0 : 2.0) / n * std::cos(std::numbers::pi * k * (i + 0.5) / n);
    auto c = apply3(values, n, n, n, m, n, m, n, m, n);
    return SeparableFunction(n, R, std::move(c));
}

double SeparableFunction::value(double t, double x, double u) const { return jet(t, x, u).v; }

Jet SeparableFunction::jet(double t, double x, double u) const {
    return jet_grid({t}, {x}, {u}).front();
}

std::vector<Jet> SeparableFunction::jet_grid(const std::vector<double>& ts, const std::vector<double>& xs,
                                             const std::vector<double>& us) const {
    const std::size_t n = n_;
    auto basis = [&](const std::vector<double>& ys, std::vector<double>& T, std::vector<double>& dT) {
        T.assign(ys.size() * n, 0.0);
        dT.assign(ys.size() * n, 0.0);
        for (std::size_t i = 0; i < ys.size(); ++i) {
            chebyshev_basis(n_, ys[i] / R_, &T[i * n], &dT[i * n]);
            for (std::size_t k = 0; k < n; ++k) dT[i * n + k] /= R_;
        }
    };
    std::vector<double> Tt, dTt, Tx, dTx, Tu, dTu;
    basis(ts, Tt, dTt);
    basis(xs, Tx, dTx);
    basis(us, Tu, dTu);
    const auto nt = ts.size(), nx = xs.size(), nu = us.size();
    auto v = apply3(a_, n, n, n, Tt, nt, Tx, nx, Tu, nu);
    auto vt = apply3(a_, n, n, n, dTt, nt, Tx, nx, Tu, nu);
    auto vx = apply3(a_, n, n, n, Tt, nt, dTx, nx, Tu, nu);
    auto vu = apply3(a_, n, n, n, Tt, nt, Tx, nx, dTu, nu);
    auto vtu = apply3(a_, n, n, n, dTt, nt, Tx, nx, dTu, nu);
    auto vxu = apply3(a_, n, n, n, Tt, nt, dTx, nx, dTu, nu);
    std::vector<Jet> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = {v[i], vt[i], vx[i], vu[i], vtu[i], vxu[i]};
    return out;
}

nlohmann::json SeparableFunction::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (int m = 0; m < n_; ++m) {
        nlohmann::json txt = nlohmann::json::array();
        for (int i = 0; i < n_; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int j = 0; j < n_; ++j) row.push_back(coeff(i, j, m));
            txt.push_back(std::move(row));
        }
        terms.push_back({{"u_degree", m}, {"txt", std::move(txt)}});
    }
    return {{"basis", "chebyshev"}, {"scale", R_}, {"terms", std::move(terms)}};
}

SeparableFunction tensor_approximate(const EntropyTX& z, int nu, double R) {
    const EntropyTX cut = smooth_cutoff(z, R);
    const LandauConvolution conv(cut.value, nu, R);
    const int n = 2 * nu + 1;
    const auto pts = SeparableFunction::chebyshev_points(n, R);
    return SeparableFunction::interpolate(n, R, conv.on_grid(pts, pts, pts));
}

double pK_error(const EntropyTX& z, const SeparableFunction& s, int samples) {
    const int n = std::max(samples, 2);
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = -s.R() + 2.0 * s.R() * i / (n - 1);
    const auto jets = s.jet_grid(g, g, g);
    double s0 = 0, st = 0, sx = 0, su = 0, stu = 0, sxu = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                const Jet& J = jets[(static_cast<std::size_t>(i) * n + j) * n + l];
                const double t = g[i], x = g[j], u = g[l];
                s0 = std::max(s0, std::abs(z.value(t, x, u) - J.v));
                st = std::max(st, std::abs(z.dt(t, x, u) - J.t));
                sx = std::max(sx, std::abs(z.dx(t, x, u) - J.x));
                su = std::max(su, std::abs(z.du(t, x, u) - J.u));
                stu = std::max(stu, std::abs(z.dtu(t, x, u) - J.tu));
                sxu = std::max(sxu, std::abs(z.dxu(t, x, u) - J.xu));
            }
    return s0 + std::max({st, sx, su}) + stu + sxu;
}

std::vector<std::string> sample_zeta_names() { return {"u", "tu", "sin_t_cos_u", "gauss_x_sin"}; }

EntropyTX sample_zeta(const std::string& name) {
    const Fn3 zero = [](double, double, double) { return 0.0; };
    EntropyTX z;
    z.support = Box{{-1e300, 1e300}, {-1e300, 1e300}, false};
    z.dx = z.dxu = zero;
    if (name == "u") {
        z.value = [](double, double, double u) { return u; };
        z.du = [](double, double, double) { return 1.0; };
        z.dt = z.dtu = zero;
    } else if (name == "tu") {
        z.value = [](double t, double, double u) { return t * u; };
        z.dt = [](double, double, double u) { return u; };
        z.du = [](double t, double, double) { return t; };
        z.dtu = [](double, double, double) { return 1.0; };
    } else if (name == "sin_t_cos_u") {
        z.value = [](double t, double, double u) { return std::sin(t) * std::cos(u); };
        z.dt = [](double t, double, double u) { return std::cos(t) * std::cos(u); };
        z.du = [](double t, double, double u) { return -std::sin(t) * std::sin(u); };
        z.dtu = [](double t, double, double u) { return -std::cos(t) * std::sin(u); };
    } else if (name == "gauss_x_sin") {
        z.value = [](double t, double x, double u) { return std::exp(-x * x) * std::sin(t + u); };
        z.dt = [](double t, double x, double u) { return std::exp(-x * x) * std::cos(t + u); };
        z.dx = [](double t, double x, double u) { return -2.0 * x * std::exp(-x * x) * std::sin(t + u); };
        z.du = z.dt;
        z.dtu = [](double t, double x, double u) { return -std::exp(-x * x) * std::sin(t + u); };
        z.dxu = [](double t, double x, double u) { return -2.0 * x * std::exp(-x * x) * std::cos(t + u); };
    } else {
        throw std::invalid_argument("unknown sample entropy '" + name + "'");
    }
    return z;
}

}  // namespace entprod
