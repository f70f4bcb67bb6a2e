#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "entprod/fourier.hpp"
#include "entprod/solvers.hpp"

using namespace entprod;

namespace {

const QuadratureSpec kSpec{};
const TestFunction kPhi(1.0, 0.5, 0.8, 0.6);
const cplx I{0.0, 1.0};

double line(const TestFunction& phi, double s) {
    const Box b = phi.support();
    const int n = 20000;
    const double h = (b.t.hi - b.t.lo) / n;
    double acc = 0;
    for (int i = 0; i <= n; ++i) {
        const double t = b.t.lo + i * h;
        acc += ((i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2)) * phi.value(t, s * t);
    }
    return acc * h / 3;
}

/// int_0^1 k (1 - k) exp(-i xi k) dk in closed form.
cplx density_transform(cplx xi) {
    if (xi == cplx{}) return 1.0 / 6.0;
    const cplx a = -I * xi, ea = std::exp(a);
    const cplx m1 = ea * (1.0 / a - 1.0 / (a * a)) + 1.0 / (a * a);
    const cplx m2 = ea * (1.0 / a - 2.0 / (a * a) + 2.0 / (a * a * a)) - 2.0 / (a * a * a);
    return m1 - m2;
}

const Problem& shock() {
    static const Problem p = riemann_problem(RiemannSpec{});
    return p;
}

}  // namespace

TEST_CASE("entropy_xi examples") {
    const auto e0 = entropy_xi(0.0);
    CHECK(e0.is_real());
    for (double k : {-1.0, 0.0, 0.3, 2.0}) {
        CHECK(std::abs(e0.value(k) - k * k) <= 1e-15);
        CHECK(std::abs(e0.derivative(k) - 2 * k) <= 1e-15);
    }
    CHECK(entropy_xi(1.0).second_derivative(0.0) == cplx(2.0, 0.0));
    CHECK_FALSE(entropy_xi(1.0).is_real());

    const auto e = entropy_xi(cplx(2.0, 1.0));
    const double h = 1e-4, k = 0.3;
    const cplx fd2 = (e.value(k + h) - 2.0 * e.value(k) + e.value(k - h)) / (h * h);
    CHECK(std::abs(fd2 - e.second_derivative(k)) <= 1e-5);
    const cplx fd1 = (e.value(k + h) - e.value(k - h)) / (2 * h);
    CHECK(std::abs(fd1 - e.derivative(k)) <= 1e-7);
    CHECK_THROWS_AS(entropy_xi(cplx(NAN, 0.0)), std::invalid_argument);
}

TEST_CASE("Taylor and closed-form branches agree at the seam") {
    for (cplx xi : {cplx(1.0, 0.0), cplx(2.0, 1.0), cplx(-5.0, 0.0), cplx(0.1, -0.3)}) {
        const auto e = entropy_xi(xi);
        for (double side : {1.0 - 1e-9, 1.0 + 1e-9}) {
            const double k = side * 1e-3 / std::abs(xi);
            const cplx z = I * xi * k;
            const cplx closed = -2.0 * (std::exp(-z) - 1.0 + z) / (xi * xi);
            const cplx dclosed = 2.0 * I * (std::exp(-z) - 1.0) / xi;
            CHECK(std::abs(e.value(k) - closed) <= 1e-9 * std::max(1.0, std::abs(closed)));
            CHECK(std::abs(e.derivative(k) - dclosed) <= 1e-9 * std::max(1.0, std::abs(dclosed)));
        }
    }
}

TEST_CASE("mu_hat on the shock against closed forms") {
    MuCache mu(shock(), kPhi.weight(), kSpec);
    const double L = line(kPhi, 0.5);
    CHECK(std::abs(mu_hat(0.0, mu).value - L / 6) <= 1e-10 * L);
    for (cplx xi : {cplx(1, 0), cplx(-1, 0), cplx(5, 0), cplx(2, 1), cplx(-3, 0.5)}) {
        const cplx want = density_transform(xi) * L;
        CHECK(std::abs(mu_hat(xi, mu).value - want) <= 1e-10 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("constant solution has zero transform") {
    std::vector<Region> one{Region::constant_state("c", 0.4)};
    auto u = std::make_shared<AnalyticPiecewiseField>(one, std::vector<Curve>{}, Interval{0.4, 0.4}, 3.0);
    const Problem p{u, InitialDatum::constant(0.4), FluxFunction::burgers(), SourceFunction::zero()};
    MuCache mu(p, kPhi.weight(), kSpec);
    for (cplx xi : {cplx(0, 0), cplx(1, 0), cplx(2, 1)}) CHECK(std::abs(mu_hat(xi, mu).value) <= 1e-13);
}

TEST_CASE("moment series") {
    MuCache mu(shock(), kPhi.weight(), kSpec);
    const double L = line(kPhi, 0.5);
    const auto a = moment_series(mu, 20);
    REQUIRE(a.size() == 21);
    CHECK(std::abs(a[0] - mu_hat(0.0, mu).value) <= 1e-14);
    CHECK(std::abs(a[1] - (-I / 12.0) * L) <= 1e-10 * L);
    const cplx at1 = mu_hat(1.0, mu).value;
    CHECK(std::abs(eval_series(a, 1.0) - at1) <= 1e-10 * std::abs(at1));
    double prev = 1e300;
    for (int n : {2, 4, 8, 12}) {
        const std::vector<cplx> head(a.begin(), a.begin() + n + 1);
        const double err = std::abs(eval_series(head, 1.0) - at1);
        CHECK(err < prev / 10);
        prev = err;
    }
    CHECK_THROWS_AS(moment_series(mu, -1), std::invalid_argument);
}

TEST_CASE("Fourier identity and conjugate symmetry") {
    const std::vector<cplx> xis{0.0, 1.0, -1.0, 5.0, -5.0, cplx(2, 1), cplx(-3, 0.5)};
    for (const auto& phi : {kPhi, TestFunction(0.6, 0.3, 0.7, 0.5)}) {
        MuCache mu(shock(), phi.weight(), kSpec);
        for (const auto& row : fourier_table(xis, mu)) {
            CHECK(row.abs_err <= 1e-6 * (1 + std::abs(row.mu_hat)));
            const cplx mirror = mu_hat(-std::conj(row.xi), mu).value;
            CHECK(std::abs(mirror - std::conj(row.mu_hat)) <= 1e-10);
        }
    }
    // a strong solution: both sides vanish
    const auto p = characteristic_solution("paper_x2u");
    const TestFunction phi(1.5, -0.6, 1.2, 0.35);
    MuCache mu(p, phi.weight(), kSpec);
    for (const auto& row : fourier_table({1.0, cplx(2, 1)}, mu)) CHECK(row.abs_err <= 1e-6);
}

TEST_CASE("memo and csv") {
    MuCache mu(shock(), kPhi.weight(), kSpec);
    const double a = mu(0.5), b = mu(0.5);
    CHECK(a == b);
    std::ostringstream os;
    write_fourier_csv(os, fourier_table({1.0}, mu));
    const std::string s = os.str();
    CHECK(s.rfind("xi_re,xi_im,muhat_re,muhat_im,viaE_re,viaE_im,abs_err\n", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 2);
}
