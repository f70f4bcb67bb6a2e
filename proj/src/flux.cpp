#include "entprod/flux.hpp"

#include <algorithm>

namespace entprod {

Factor1D Factor1D::constant(double c) {
    return {[c](double) { return c; }, [](double) { return 0.0; }};
}

Factor1D Factor1D::polynomial(std::vector<double> coeffs) {
    auto value = [coeffs](double s) {
        double acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * s + *it;
        return acc;
    };
    auto derivative = [coeffs](double s) {
        double acc = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 1;) acc = acc * s + static_cast<double>(i) * coeffs[i];
        return acc;
    };
    return {value, derivative};
}

Factor1D Factor1D::sine(double a, double w, double ph) {
    return {[=](double s) { return a * std::sin(w * s + ph); },
            [=](double s) { return a * w * std::cos(w * s + ph); }};
}

Factor1D Factor1D::cosine(double a, double w, double ph) {
    return {[=](double s) { return a * std::cos(w * s + ph); },
            [=](double s) { return -a * w * std::sin(w * s + ph); }};
}

FluxFunction FluxFunction::from_separable(std::string name, std::vector<SeparableTerm> terms) {
    if (terms.empty()) throw std::invalid_argument("separable flux: no terms");
    FluxFunction fl;
    fl.name = std::move(name);
    fl.separable = terms;
    auto sum = [terms](auto&& term_value) {
        return [terms, term_value](double t, double x, double u) {
            double acc = 0.0;
            for (const auto& tm : terms) acc += term_value(tm, t, x, u);
            return acc;
        };
    };
    fl.f = sum([](const SeparableTerm& m, double t, double x, double u) {
        return m.at.value(t) * m.ax.value(x) * m.b.value(u);
    });
    fl.fu = sum([](const SeparableTerm& m, double t, double x, double u) {
        return m.at.value(t) * m.ax.value(x) * m.b.derivative(u);
    });
    fl.fx = sum([](const SeparableTerm& m, double t, double x, double u) {
        return m.at.value(t) * m.ax.derivative(x) * m.b.value(u);
    });
    fl.ftu = sum([](const SeparableTerm& m, double t, double x, double u) {
        return m.at.derivative(t) * m.ax.value(x) * m.b.derivative(u);
    });
    fl.fxu = sum([](const SeparableTerm& m, double t, double x, double u) {
        return m.at.value(t) * m.ax.derivative(x) * m.b.derivative(u);
    });
    return fl;
}

FluxFunction FluxFunction::burgers() {
    FluxFunction fl;
    fl.name = "burgers";
    fl.f = [](double, double, double u) { return 0.5 * u * u; };
    fl.fu = [](double, double, double u) { return u; };
    fl.fx = [](double, double, double) { return 0.0; };
    fl.ftu = fl.fx;
    fl.fxu = fl.fx;
    fl.separable = {{Factor1D::constant(1.0), Factor1D::constant(1.0),
                     Factor1D::polynomial({0.0, 0.0, 0.5})}};
    fl.x_independent = true;
    return fl;
}

FluxFunction FluxFunction::linear_x2() {
    FluxFunction fl;
    fl.name = "linear_x2";
    fl.f = [](double, double x, double u) { return x * x * u; };
    fl.fu = [](double, double x, double) { return x * x; };
    fl.fx = [](double, double x, double u) { return 2.0 * x * u; };
    fl.ftu = [](double, double, double) { return 0.0; };
    fl.fxu = [](double, double x, double) { return 2.0 * x; };
    fl.separable = {{Factor1D::constant(1.0), Factor1D::polynomial({0.0, 0.0, 1.0}),
                     Factor1D::polynomial({0.0, 1.0})}};
    return fl;
}

FluxFunction FluxFunction::linear(double c) {
    FluxFunction fl;
    fl.name = "linear";
    fl.f = [c](double, double, double u) { return c * u; };
    fl.fu = [c](double, double, double) { return c; };
    fl.fx = [](double, double, double) { return 0.0; };
    fl.ftu = fl.fx;
    fl.fxu = fl.fx;
    fl.separable = {{Factor1D::constant(1.0), Factor1D::constant(1.0), Factor1D::polynomial({0.0, c})}};
    fl.x_independent = true;
    return fl;
}

FluxFunction FluxFunction::builtin(const std::string& name) {
    if (name == "burgers") return burgers();
    if (name == "linear_x2") return linear_x2();
    if (name == "linear") return linear(1.0);
    throw std::invalid_argument("unknown builtin flux '" + name + "'");
}

double FluxFunction::eval_separable(double t, double x, double u) const {
    if (separable.empty()) throw std::logic_error("flux has no separable form");
    double acc = 0.0;
    for (const auto& m : separable) acc += m.at.value(t) * m.ax.value(x) * m.b.value(u);
    return acc;
}

SourceFunction SourceFunction::zero() {
    return {"zero", [](double, double, double) { return 0.0; }, [](double, double, double) { return 0.0; }};
}

SourceFunction SourceFunction::linear_x2() {
    return {"linear_x2", [](double, double x, double u) { return 2.0 * x * u; },
            [](double, double x, double) { return 2.0 * x; }};
}

SourceFunction SourceFunction::decay(double rate) {
    return {"decay", [rate](double, double, double u) { return -rate * u; },
            [rate](double, double, double) { return -rate; }};
}

SourceFunction SourceFunction::builtin(const std::string& name) {
    if (name == "zero") return zero();
    if (name == "linear_x2") return linear_x2();
    if (name == "decay") return decay(1.0);
    throw std::invalid_argument("unknown builtin source '" + name + "'");
}

double phi_jump(const FluxFunction& f, double t, double x, double u, double k) {
    return sign(u - k) * (f.f(t, x, u) - f.f(t, x, k));
}

double max_wave_speed(const FluxFunction& f, Interval t, Interval x, Interval u, int samples) {
    double m = 0.0;
    const int n = std::max(samples, 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                const double tt = t.lo + t.width() * i / (n - 1);
                const double xx = x.lo + x.width() * j / (n - 1);
                const double uu = u.lo + u.width() * l / (n - 1);
                m = std::max(m, std::abs(f.fu(tt, xx, uu)));
            }
    return m;
}

}  // namespace entprod
