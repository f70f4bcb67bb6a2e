#pragma once

#include <iosfwd>
#include <map>
#include <mutex>
#include <vector>

#include "entprod/entropy.hpp"
#include "entprod/production.hpp"

namespace entprod {

/// E_xi(k) = -2 (exp(-i xi k) - 1 + i xi k) / xi^2, with E_xi'' = 2 exp(-i xi k).
/// Where |xi k| < 1e-3 a six-term Taylor series replaces the closed form.
Entropy1D entropy_xi(cplx xi);

/// Memoized k -> mu_k(phi) for one problem and weight. Safe to call from
/// several threads.
class MuCache {
public:
    MuCache(const Problem& p, Weight phi, QuadratureSpec spec);

    double operator()(double k) const;
    const Problem& problem() const { return p_; }
    const Weight& weight() const { return phi_; }
    const QuadratureSpec& spec() const { return spec_; }

private:
    const Problem& p_;
    Weight phi_;
    QuadratureSpec spec_;
    mutable std::map<double, double> values_;
    mutable std::mutex mu_;
};

/// int_a^b mu_k(phi) exp(-i xi k) dk over the essential range.
QuadResult<cplx> mu_hat(cplx xi, const MuCache& mu, int jobs = 1);

/// a_nu = ((-i)^nu / nu!) int k^nu mu_k(phi) dk for nu = 0..nu_max.
std::vector<cplx> moment_series(const MuCache& mu, int nu_max, int jobs = 1);
/// sum_nu a_nu xi^nu
cplx eval_series(const std::vector<cplx>& a, cplx xi);

struct FourierRow {
    cplx xi;
    cplx mu_hat;
    cplx via_entropy;  ///< M_u(E_xi)(phi)
    double abs_err;
};

std::vector<FourierRow> fourier_table(const std::vector<cplx>& xis, const MuCache& mu, int jobs = 1);
/// Columns xi_re,xi_im,muhat_re,muhat_im,viaE_re,viaE_im,abs_err.
void write_fourier_csv(std::ostream& os, const std::vector<FourierRow>& rows);

}  // namespace entprod
