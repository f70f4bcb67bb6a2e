#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "entprod/production.hpp"
#include "entprod/solvers.hpp"

using namespace entprod;

namespace {

const QuadratureSpec kSpec{};

/// Composite Simpson for int phi(t, s t) dt, independent of the library quadrature.
double line(const TestFunction& phi, double s) {
    const Box b = phi.support();
    const int n = 20000;
    const double h = (b.t.hi - b.t.lo) / n;
    double acc = 0;
    for (int i = 0; i <= n; ++i) {
        const double t = b.t.lo + i * h;
        const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
        acc += w * phi.value(t, s * t);
    }
    return acc * h / 3;
}

Problem shock() { return riemann_problem(RiemannSpec{}); }

Problem riemann(double ul, double ur, RiemannMode m, double speed = 0.0) {
    RiemannSpec s;
    s.ul = ul;
    s.ur = ur;
    s.mode = m;
    s.speed = speed;
    return riemann_problem(s);
}

Problem constant_problem(double c, FluxFunction f) {
    std::vector<Region> one{Region::constant_state("c", c)};
    auto u = std::make_shared<AnalyticPiecewiseField>(one, std::vector<Curve>{}, Interval{c, c}, 3.0);
    return {u, InitialDatum::constant(c), std::move(f), SourceFunction::zero()};
}

const TestFunction kPhi(1.0, 0.5, 0.8, 0.6);
const TestFunction kPhiInit(0.6, 0.3, 0.7, 0.5);

}  // namespace

TEST_CASE("shock production matches the jump oracle") {
    const auto p = shock();
    for (const auto& phi : {kPhi, kPhiInit}) {
        const double want = line(phi, 0.5) / 12.0;
        const auto r = production(Entropy1D::power(2, 2.0), p, phi.weight(), kSpec);
        CHECK(std::abs(r.real() - want) <= 1e-10 * want);
        CHECK(std::abs(r.value.imag()) == 0.0);
        CHECK(std::abs(r.terms.total() - r.value) <= 1e-15);
    }
}

TEST_CASE("constant states produce nothing") {
    for (const auto& f : {FluxFunction::burgers(), FluxFunction::linear(0.4)}) {
        const auto p = constant_problem(0.7, f);
        for (const auto& e : {Entropy1D::power(2), Entropy1D::cosine(), Entropy1D::power(5, 3.0)})
            CHECK(std::abs(production(e, p, kPhiInit.weight(), kSpec).value) <= 1e-13);
        CHECK(std::abs(kruzkov(0.2, p, kPhiInit.weight(), kSpec).value) <= 1e-13);
        CHECK(solution_residual(p, {kPhi, kPhiInit}, kSpec) <= 1e-12);
    }
}

TEST_CASE("strong solution with x^2 u flux") {
    const auto p = characteristic_solution("paper_x2u");
    const TestFunction phi(1.5, -0.6, 1.2, 0.35), psi(1.0, -0.3, 1.2, 0.5);
    for (const auto& e : {Entropy1D::power(2), Entropy1D::power(4), Entropy1D::cosine()})
        for (const auto& f : {phi, psi})
            CHECK(std::abs(production(e, p, f.weight(), kSpec).value) <= 1e-5 * f.c1_norm());
    const auto z = EntropyTX::tensor(phi.weight(), Entropy1D::power(2));
    CHECK(std::abs(production_tx(z, p, kSpec).value) <= 1e-5 * phi.c1_norm());
}

TEST_CASE("Kruzkov examples on the shock") {
    const auto p = shock();
    const double L = line(kPhi, 0.5);
    for (int m = 1; m <= 9; ++m) {
        const double k = 0.1 * m;
        CHECK(std::abs(kruzkov(k, p, kPhi.weight(), kSpec).real() / L - k * (1 - k)) <= 1e-10);
    }
    CHECK(std::abs(kruzkov(2.0, p, kPhi.weight(), kSpec).real()) <= 1e-13);
    CHECK(std::abs(kruzkov(-1.0, p, kPhi.weight(), kSpec).real()) <= 1e-13);
}

TEST_CASE("rarefaction has zero production") {
    const auto p = riemann(0.0, 1.0, RiemannMode::Rarefaction);
    for (double k : {-0.1, 0.0, 0.25, 0.5, 0.9, 1.0})
        CHECK(std::abs(kruzkov(k, p, kPhi.weight(), kSpec).real()) <= 1e-10 * kPhi.c1_norm());
    CHECK(std::abs(production(Entropy1D::power(4), p, kPhiInit.weight(), kSpec).real()) <= 1e-10);
}

TEST_CASE("solution residual") {
    CHECK(solution_residual(shock(), {kPhi, kPhiInit}, kSpec) <= 1e-10);
    // wrong speed: defect (s - 1/2)(ul - ur) int phi(t, s t) dt
    const auto bad = riemann(1.0, 0.0, RiemannMode::CustomSpeed, 0.9);
    const double r = solution_residual(bad, {kPhi}, kSpec);
    CHECK(r >= 0.01);
    const TestFunction phi(1.0, 0.9, 0.8, 0.6);
    const double want = 0.4 * line(phi, 0.9) / phi.c1_norm();
    CHECK(solution_residual(bad, {phi}, kSpec) == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("Kruzkov curve and its variation") {
    const auto p = shock();
    const auto grid = default_k_grid(p.range());
    REQUIRE(grid.size() == 129);
    CHECK(grid.front() == doctest::Approx(-0.05));
    CHECK(grid.back() == doctest::Approx(1.05));
    const auto c = kruzkov_curve(grid, p, kPhi.weight(), kSpec);
    const double L = line(kPhi, 0.5);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double k = grid[i];
        const double want = (k > 0 && k < 1) ? k * (1 - k) * L : 0.0;
        CHECK(std::abs(c.mu[i] - want) <= 1e-10);
    }
    CHECK(c.total_variation == doctest::Approx(0.5 * L).epsilon(0.02));
    CHECK(c.probes.size() == 2);
    const auto flat = kruzkov_curve(grid, constant_problem(0.5, FluxFunction::burgers()), kPhi.weight(), kSpec);
    for (double v : flat.mu) CHECK(std::abs(v) <= 1e-13);
    CHECK_THROWS_AS(default_k_grid({0, 1}, 1), std::invalid_argument);
}

TEST_CASE("flux offset invariance") {
    FluxOffset d{[](double t, double x) { return std::sin(3 * x + t) + x * x; },
                 [](double t, double x) { return 3 * std::cos(3 * x + t) + 2 * x; }};
    for (const auto& p : {shock(), characteristic_solution("paper_x2u")}) {
        const TestFunction& phi = p.f.name == "burgers" ? kPhiInit : TestFunction(1.5, -0.6, 1.2, 0.35);
        for (const auto& e : {Entropy1D::power(2), Entropy1D::cosine()}) {
            const auto a = production(e, p, phi.weight(), kSpec).value;
            const auto b = production(e, p, phi.weight(), kSpec, d).value;
            CHECK(std::abs(a - b) <= 1e-10 * 13.0);
        }
    }
}

TEST_CASE("linearity, homogeneity and the support property") {
    const auto p = shock();
    const auto e1 = Entropy1D::power(4), e2 = Entropy1D::cosine();
    const double a = 1.7, b = -0.3;
    const auto lhs = production(e1.combine(a, e2, b), p, kPhi.weight(), kSpec).value;
    const auto rhs = a * production(e1, p, kPhi.weight(), kSpec).value + b * production(e2, p, kPhi.weight(), kSpec).value;
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    const auto one = production(e1, p, kPhi.weight(), kSpec).value;
    const auto three = production(e1, p, kPhi.weight().scaled(3.0), kSpec).value;
    CHECK(std::abs(three - 3.0 * one) <= 1e-14);
    // vanishes on [0, 1]
    const auto off = Entropy1D::real_c2(
        "outside", [](double u) { return u > 2 ? std::pow(u - 2, 4) : 0.0; },
        [](double u) { return u > 2 ? 4 * std::pow(u - 2, 3) : 0.0; },
        [](double u) { return u > 2 ? 12 * std::pow(u - 2, 2) : 0.0; });
    CHECK(std::abs(production(off, p, kPhi.weight(), kSpec).value) <= 1e-13);
}

TEST_CASE("affine invariance") {
    const auto e = Entropy1D::power(4);
    const auto sol = shock();
    const double res = solution_residual(sol, {kPhiInit}, kSpec);
    const auto base = production(e, sol, kPhiInit.weight(), kSpec).value;
    const auto moved = production(e.plus_affine(2.5, -1.0), sol, kPhiInit.weight(), kSpec).value;
    CHECK(std::abs(moved - base) <= 2.5 * res * kPhiInit.c1_norm() + 1e-10);

    // non-solution: only +b is free
    const auto bad = riemann(1.0, 0.0, RiemannMode::CustomSpeed, 0.9);
    const TestFunction phi(0.6, 0.4, 0.7, 0.6);
    const auto b0 = production(e, bad, phi.weight(), kSpec).value;
    CHECK(std::abs(production(e.plus_affine(0.0, 4.0), bad, phi.weight(), kSpec).value - b0) <= 1e-10);
    const auto ba = production(e.plus_affine(1.0, 0.0), bad, phi.weight(), kSpec).value;
    CHECK(std::abs(ba - b0) > 1e-3);
}

TEST_CASE("midpoint at states") {
    const auto p = shock();
    const double L = line(kPhi, 0.5);
    for (double kb : {0.0, 1.0})
        for (double eps : {1e-2, 1e-3}) {
            const double at = kruzkov(kb, p, kPhi.weight(), kSpec).real();
            const double l = kruzkov(kb - eps, p, kPhi.weight(), kSpec).real();
            const double r = kruzkov(kb + eps, p, kPhi.weight(), kSpec).real();
            CHECK(std::abs(at - 0.5 * (l + r)) <= L * eps);
        }
}

TEST_CASE("tensor bridge on random pairs") {
    const auto p = shock();
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    for (int r = 0; r < 20; ++r) {
        const TestFunction phi(0.3 + 1.2 * d(rng), -0.5 + 1.5 * d(rng), 0.2 + 0.5 * d(rng), 0.2 + 0.6 * d(rng));
        const auto e = Entropy1D::power(2 + r % 4, 1.0 + d(rng)).combine(d(rng), Entropy1D::cosine(), d(rng) - 0.5);
        const auto a = production(e, p, phi.weight(), kSpec).value;
        const auto b = production_tx(EntropyTX::tensor(phi.weight(), e), p, kSpec).value;
        CHECK(std::abs(a - b) <= 1e-10);
    }
    CHECK(production_tx(EntropyTX::zero(), p, kSpec).value == cplx{});
}

TEST_CASE("mollified Kruzkov entropies converge") {
    // E_eps = |. - c| * rho_eps with rho(z) = 35/32 (1 - z^2)^3
    const double c = 0.5;
    auto cdf = [](double z) {
        z = std::clamp(z, -1.0, 1.0);
        return 0.5 + 35.0 / 32.0 * (z - z * z * z + 0.6 * std::pow(z, 5) - std::pow(z, 7) / 7.0);
    };
    auto G = [&](double z) {
        if (std::abs(z) >= 1) return std::abs(z);
        // 1 + int_{-1}^z (2 cdf - 1), a polynomial integrated by Simpson on a fine grid
        const int n = 2000;
        const double h = (z + 1) / n;
        double acc = 0;
        for (int i = 0; i <= n; ++i) {
            const double s = -1 + i * h;
            acc += ((i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2)) * (2 * cdf(s) - 1);
        }
        return 1 + acc * h / 3;
    };
    const auto p = shock();
    const double mu = kruzkov(c, p, kPhi.weight(), kSpec).real();
    double prev = 1e300;
    for (double eps : {0.25, 1.0 / 16, 1.0 / 64}) {
        const auto e = Entropy1D::real_c2(
            "mollified", [&, eps](double u) { return eps * G((u - c) / eps); },
            [&, eps](double u) { return 2 * cdf((u - c) / eps) - 1; },
            [&, eps](double u) {
                const double z = (u - c) / eps;
                return std::abs(z) < 1 ? 2 * 35.0 / 32.0 * std::pow(1 - z * z, 3) / eps : 0.0;
            })
                           .with_kinks({c - eps, c + eps});
        const double err = std::abs(production(e, p, kPhi.weight(), kSpec).real() - mu);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev <= 1e-4);
}

TEST_CASE("horizon and range contracts") {
    const auto p = shock();
    const TestFunction late(1.9, 0.5, 0.5, 0.5);
    CHECK_THROWS_AS(production(Entropy1D::power(2), p, late.weight(), kSpec), std::invalid_argument);
    const auto narrow = Entropy1D::kruzkov(0.5, {0.2, 0.8});
    CHECK_THROWS_AS(production(narrow, p, kPhi.weight(), kSpec), ContractViolation);
}
