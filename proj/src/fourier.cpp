#include "entprod/fourier.hpp"

#include <ostream>

#include "entprod/format.hpp"
#include "entprod/representation.hpp"

namespace entprod {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double kSeam = 1e-3;

}  // namespace

Entropy1D entropy_xi(cplx xi) {
    if (!std::isfinite(xi.real()) || !std::isfinite(xi.imag()))
        throw std::invalid_argument("entropy_xi: non-finite frequency");
    auto e = [xi](double k) -> cplx {
        if (std::abs(xi * k) < kSeam) {
            // -2 sum_{m>=2} (-i)^m xi^(m-2) k^m / m!
            const cplx z = -I * xi * k;
            cplx term = -0.5 * k * k;
            cplx sum = 0.0;
            for (int m = 2; m < 8; ++m) {
                sum += term;
                term *= z / static_cast<double>(m + 1);
            }
            return -2.0 * sum;
        }
        return -2.0 * (std::exp(-I * xi * k) - 1.0 + I * xi * k) / (xi * xi);
    };
    auto de = [xi](double k) -> cplx {
        if (std::abs(xi * k) < kSeam) {
            // 2i sum_{m>=1} (-i)^m xi^(m-1) k^m / m!
            const cplx z = -I * xi * k;
            cplx term = -I * k;
            cplx sum = 0.0;
            for (int m = 1; m < 7; ++m) {
                sum += term;
                term *= z / static_cast<double>(m + 1);
            }
            return 2.0 * I * sum;
        }
        return 2.0 * I * (std::exp(-I * xi * k) - 1.0) / xi;
    };
    auto d2e = [xi](double k) { return 2.0 * std::exp(-I * xi * k); };
    return Entropy1D::c2("E_xi", e, de, d2e, xi.imag() == 0.0 && xi.real() == 0.0);
}

MuCache::MuCache(const Problem& p, Weight phi, QuadratureSpec spec)
    : p_(p), phi_(std::move(phi)), spec_(spec) {}

double MuCache::operator()(double k) const {
    {
        std::lock_guard lk(mu_);
        auto it = values_.find(k);
        if (it != values_.end()) return it->second;
    }
    const double v = kruzkov(k, p_, phi_, spec_).real();
    std::lock_guard lk(mu_);
    values_.emplace(k, v);
    return v;
}

namespace {

QuadratureSpec k_spec(const QuadratureSpec& spec) {
    QuadratureSpec s = spec;
    s.gauss_order = spec.k_axis_order;
    return s;
}

}  // namespace

QuadResult<cplx> mu_hat(cplx xi, const MuCache& mu, int jobs) {
    const Interval ab = mu.problem().range();
    const auto kinks = kink_states(mu.problem());
    return integrate_1d_batched<cplx>([&](double k) { return mu(k) * std::exp(-I * xi * k); }, ab.lo, ab.hi,
                                      kinks, k_spec(mu.spec()), jobs);
}

std::vector<cplx> moment_series(const MuCache& mu, int nu_max, int jobs) {
    if (nu_max < 0) throw std::invalid_argument("moment_series: negative order");
    const Interval ab = mu.problem().range();
    const auto kinks = kink_states(mu.problem());
    std::vector<cplx> a(nu_max + 1);
    cplx pref = 1.0;
    for (int nu = 0; nu <= nu_max; ++nu) {
        if (nu > 0) pref *= -I / static_cast<double>(nu);
        const auto m = integrate_1d_batched<double>([&](double k) { return std::pow(k, nu) * mu(k); }, ab.lo, ab.hi,
                                                    kinks, k_spec(mu.spec()), jobs);
        a[nu] = pref * m.value;
    }
    return a;
}

cplx eval_series(const std::vector<cplx>& a, cplx xi) {
    cplx s = 0.0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) s = s * xi + *it;
    return s;
}

std::vector<FourierRow> fourier_table(const std::vector<cplx>& xis, const MuCache& mu, int jobs) {
    std::vector<FourierRow> rows;
    for (cplx xi : xis) {
        FourierRow r;
        r.xi = xi;
        r.mu_hat = mu_hat(xi, mu, jobs).value;
        r.via_entropy = production(entropy_xi(xi), mu.problem(), mu.weight(), mu.spec()).value;
        r.abs_err = std::abs(r.mu_hat - r.via_entropy);
        rows.push_back(r);
    }
    return rows;
}

void write_fourier_csv(std::ostream& os, const std::vector<FourierRow>& rows) {
    os << "xi_re,xi_im,muhat_re,muhat_im,viaE_re,viaE_im,abs_err\n";
    for (const auto& r : rows)
        os << fmt_num(r.xi.real()) << ',' << fmt_num(r.xi.imag()) << ',' << fmt_num(r.mu_hat.real()) << ','
           << fmt_num(r.mu_hat.imag()) << ',' << fmt_num(r.via_entropy.real()) << ','
           << fmt_num(r.via_entropy.imag()) << ',' << fmt_num(r.abs_err) << '\n';
}

}  // namespace entprod
