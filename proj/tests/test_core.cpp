#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "entprod/flux.hpp"
#include "entprod/quadrature.hpp"
#include "entprod/test_function.hpp"

using namespace entprod;

TEST_CASE("sign examples") {
    CHECK(sign(3.5) == 1);
    CHECK(sign(0.0) == 0);
    CHECK(sign(-0.0) == 0);
    CHECK(sign(-2.0) == -1);
    CHECK_THROWS_AS(sign(std::nan("")), std::invalid_argument);
}

TEST_CASE("sign is odd") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-1e3, 1e3);
    for (int i = 0; i < 1000; ++i) {
        const double z = d(rng);
        CHECK(sign(-z) == -sign(z));
    }
    CHECK(sign(1e-300) == 1);
    CHECK(sign(-1e-300) == -1);
}

TEST_CASE("phi_jump examples") {
    const auto f = FluxFunction::burgers();
    CHECK(phi_jump(f, 0, 0, 1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(phi_jump(f, 0, 0, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    for (double k : {-1.0, 0.3, 2.0}) CHECK(phi_jump(f, 0.2, 0.1, k, k) == 0.0);
    const auto g = FluxFunction::linear_x2();
    CHECK(phi_jump(g, 0.0, 2.0, 0.7, 0.7) == 0.0);
    // sgn(u-k)(x^2 u - x^2 k) = x^2 |u-k|
    CHECK(phi_jump(g, 0.0, 2.0, 0.2, 0.7) == doctest::Approx(4.0 * 0.5));
}

TEST_CASE("chi examples") {
    CHECK(chi(0.5, 1.0, 0.0) == 1);
    CHECK(chi(0.5, 0.0, 1.0) == -1);
    CHECK(chi(2.0, 1.0, 0.0) == 0);
    // half-open ends
    CHECK(chi(0.0, 1.0, 0.0) == 1);
    CHECK(chi(1.0, 1.0, 0.0) == 0);
    CHECK(chi(0.3, 0.3, 0.3) == 0);
}

TEST_CASE("chi reproduces eta(a) - eta(b)") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    const std::vector<std::function<double(double)>> eta = {
        [](double s) { return std::sin(3 * s); }, [](double s) { return s * s * s - s; },
        [](double s) { return std::exp(s); }};
    const std::vector<std::function<double(double)>> deta = {
        [](double s) { return 3 * std::cos(3 * s); }, [](double s) { return 3 * s * s - 1; },
        [](double s) { return std::exp(s); }};
    QuadratureSpec spec;
    spec.gauss_order = 64;
    spec.max_subdivision_depth = 0;
    for (int r = 0; r < 50; ++r) {
        const double a = d(rng), b = d(rng);
        for (std::size_t m = 0; m < eta.size(); ++m) {
            const double lo = std::min(a, b), hi = std::max(a, b);
            const double v =
                integrate_1d<double>([&](double s) { return deta[m](s) * chi(s, a, b); }, lo, hi, {}, spec).value;
            CHECK(std::abs(eta[m](a) - eta[m](b) - v) <= 1e-10);
        }
    }
}

TEST_CASE("box intersection") {
    const Box a{{0, 2}, {-1, 1}, false}, b{{1, 3}, {0, 4}, false};
    const Box c = a.intersect(b);
    CHECK(c.t.lo == 1);
    CHECK(c.t.hi == 2);
    CHECK(c.x.lo == 0);
    CHECK(c.x.hi == 1);
    CHECK(a.intersect(Box{{5, 6}, {0, 1}, false}).empty);
    CHECK(a.intersect(Box::none()).empty);
    CHECK(a.contains(Box::none()));
}

TEST_CASE("spec and domain validation") {
    QuadratureSpec s;
    CHECK_NOTHROW(s.validate());
    s.gauss_order = 1;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = {};
    s.target_tolerance = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    Domain d;
    d.space_dim = 2;
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}

TEST_CASE("test function derivatives match central differences") {
    std::mt19937_64 rng(3);
    const TestFunction phi(1.0, 0.5, 0.8, 0.6);
    std::uniform_real_distribution<double> dt(0.2, 1.8), dx(-0.1, 1.1);
    const double h = 1e-5;
    for (int i = 0; i < 100; ++i) {
        const double t = dt(rng), x = dx(rng);
        const double ft = (phi.value(t + h, x) - phi.value(t - h, x)) / (2 * h);
        const double fx = (phi.value(t, x + h) - phi.value(t, x - h)) / (2 * h);
        CHECK(std::abs(ft - phi.dt(t, x)) <= 1e-6);
        CHECK(std::abs(fx - phi.dx(t, x)) <= 1e-6);
    }
}

TEST_CASE("test function support, truncation and C1 norm") {
    const TestFunction phi(0.3, 0.0, 0.5, 0.4);
    const Box b = phi.support();
    CHECK(b.t.lo == 0.0);
    CHECK(b.t.hi == doctest::Approx(0.8));
    CHECK(phi.value(0.0, 0.0) > 0.0);
    CHECK(phi.value(-0.1, 0.0) == 0.0);
    CHECK(phi.value(0.3, 0.5) == 0.0);
    // sampled sup norms never exceed the closed form and come close to it
    double s0 = 0, s1 = 0, s2 = 0;
    for (int i = 0; i <= 400; ++i)
        for (int j = 0; j <= 400; ++j) {
            const double t = 0.8 * i / 400.0, x = -0.4 + 0.8 * j / 400.0;
            s0 = std::max(s0, std::abs(phi.value(t, x)));
            s1 = std::max(s1, std::abs(phi.dt(t, x)));
            s2 = std::max(s2, std::abs(phi.dx(t, x)));
        }
    const double sampled = s0 + std::max(s1, s2);
    CHECK(sampled <= phi.c1_norm() * (1 + 1e-12));
    CHECK(sampled >= phi.c1_norm() * 0.99);
    CHECK_THROWS_AS(TestFunction(1.0, 0.0, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(TestFunction(-2.0, 0.0, 1.0, 1.0), std::invalid_argument);
    const Weight w = phi.weight().scaled(-2.0);
    CHECK(w.value(0.3, 0.0) == doctest::Approx(-2.0 * phi.value(0.3, 0.0)));
    CHECK(w.c1_norm == doctest::Approx(2.0 * phi.c1_norm()));
}
