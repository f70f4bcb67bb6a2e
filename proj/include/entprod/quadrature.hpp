#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "entprod/core.hpp"
#include "entprod/parallel.hpp"

namespace entprod {

/// Gauss-Legendre rule on [-1, 1]. Rules are computed once per order and
/// cached for the lifetime of the process.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_legendre(int order);

/// Fixed-size bundle of integrand components, summed in one quadrature pass.
template <class T, std::size_t N>
struct Terms {
    std::array<T, N> v{};

    Terms& operator+=(const Terms& o) {
        for (std::size_t i = 0; i < N; ++i) v[i] += o.v[i];
        return *this;
    }
    friend Terms operator+(Terms a, const Terms& b) { return a += b; }
    friend Terms operator-(Terms a, const Terms& b) {
        for (std::size_t i = 0; i < N; ++i) a.v[i] -= b.v[i];
        return a;
    }
    friend Terms operator*(double w, Terms a) {
        for (auto& e : a.v) e *= w;
        return a;
    }
    T& operator[](std::size_t i) { return v[i]; }
    const T& operator[](std::size_t i) const { return v[i]; }
};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const cplx& v) { return std::abs(v); }
template <class T, std::size_t N>
double magnitude(const Terms<T, N>& t) {
    double m = 0.0;
    for (const auto& e : t.v) m = std::max(m, magnitude(e));
    return m;
}

struct QuadReport {
    long nodes = 0;                ///< integrand evaluations in the accepted pass
    double error_estimate = 0.0;   ///< |I_fine - I_coarse|; NaN when unchecked
    int depth = 0;                 ///< panel doublings used
};

template <class V>
struct QuadResult {
    V value{};
    QuadReport report;
};

/// Sorted, de-duplicated breakpoints strictly inside (lo, hi), with lo and hi
/// prepended/appended.
std::vector<double> piece_edges(double lo, double hi, std::span<const double> breaks);

/// Region of integration: a (t, x) box, the times where the x-breakpoint
/// structure changes, and the x-breakpoints at a given time.
struct SpaceTimeRegion {
    Box box;
    std::vector<double> t_breaks;
    std::function<std::vector<double>(double)> x_breaks;
};

namespace detail {

template <class V, class F>
V composite_1d(F&& fn, std::span<const double> edges, const GaussRule& rule, int panels,
               V zero, long& count) {
    V total = zero;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double a = edges[p], b = edges[p + 1];
        const double h = (b - a) / panels;
        for (int s = 0; s < panels; ++s) {
            const double lo = a + s * h;
            const double half = 0.5 * h, mid = lo + half;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                total += (half * rule.weights[i]) * fn(mid + half * rule.nodes[i]);
                ++count;
            }
        }
    }
    return total;
}

}  // namespace detail

/// Composite Gauss-Legendre on [a, b], split at `breaks`, with `panels`
/// equal sub-panels per piece. No error control.
template <class V, class F>
V integrate_interval(F&& fn, double a, double b, std::span<const double> breaks, int order,
                     int panels = 1, V zero = V{}) {
    if (!(b > a)) return zero;
    const auto edges = piece_edges(a, b, breaks);
    long count = 0;
    return detail::composite_1d<V>(fn, edges, gauss_legendre(order), panels, zero, count);
}

/// Piecewise Gauss on [a, b] with panel doubling until successive passes
/// agree to spec.target_tolerance * (1 + |I|).
template <class V, class F>
QuadResult<V> integrate_1d(F&& fn, double a, double b, std::span<const double> breaks,
                           const QuadratureSpec& spec, V zero = V{}) {
    QuadResult<V> out{zero, {}};
    if (!(b > a)) return out;
    const auto edges = piece_edges(a, b, breaks);
    const auto& rule = gauss_legendre(spec.gauss_order);
    long count = 0;
    V coarse = detail::composite_1d<V>(fn, edges, rule, 1, zero, count);
    if (spec.max_subdivision_depth == 0) {
        out.value = coarse;
        out.report = {count, std::nan(""), 0};
        return out;
    }
    double est = 0.0;
    for (int d = 1; d <= spec.max_subdivision_depth; ++d) {
        count = 0;
        V fine = detail::composite_1d<V>(fn, edges, rule, 1 << d, zero, count);
        est = magnitude(fine - coarse);
        coarse = fine;
        if (est <= spec.target_tolerance * (1.0 + magnitude(fine))) {
            out.value = fine;
            out.report = {count, est, d};
            return out;
        }
    }
    throw AccuracyError("integrate_1d: subdivision depth exceeded", est);
}

/// Iterated composite Gauss over a space-time region: Gauss in t between
/// the declared t-breaks, and for every t-node Gauss in x between the
/// x-breakpoints valid at that time. Quadrature never straddles a declared
/// breakpoint. Summation runs in ascending node order.
template <class V, class F>
QuadResult<V> integrate_spacetime(F&& integrand, const SpaceTimeRegion& region,
                                  const QuadratureSpec& spec, V zero = V{}) {
    QuadResult<V> out{zero, {}};
    if (region.box.empty) return out;
    const auto t_edges = piece_edges(region.box.t.lo, region.box.t.hi, region.t_breaks);
    const auto& rule = gauss_legendre(spec.gauss_order);

    auto pass = [&](int panels, long& count) {
        auto inner = [&](double t) {
            std::vector<double> xb;
            if (region.x_breaks) xb = region.x_breaks(t);
            const auto x_edges = piece_edges(region.box.x.lo, region.box.x.hi, xb);
            return detail::composite_1d<V>([&](double x) { return integrand(t, x); }, x_edges,
                                           rule, panels, zero, count);
        };
        return detail::composite_1d<V>(inner, t_edges, rule, panels, zero, count);
    };

    long count = 0;
    V coarse = pass(1, count);
    if (spec.max_subdivision_depth == 0) {
        out.value = coarse;
        out.report = {count, std::nan(""), 0};
        return out;
    }
    double est = 0.0;
    for (int d = 1; d <= spec.max_subdivision_depth; ++d) {
        count = 0;
        V fine = pass(1 << d, count);
        est = magnitude(fine - coarse);
        coarse = fine;
        if (est <= spec.target_tolerance * (1.0 + magnitude(fine))) {
            out.value = fine;
            out.report = {count, est, d};
            return out;
        }
    }
    throw AccuracyError("integrate_spacetime: subdivision depth exceeded", est);
}

/// Same rule and acceptance test as integrate_1d, but every pass evaluates
/// its nodes on up to `jobs` threads before summing in node order. For
/// expensive integrands such as k -> mu_k(phi).
template <class V, class F>
QuadResult<V> integrate_1d_batched(F&& fn, double a, double b, std::span<const double> breaks,
                                   const QuadratureSpec& spec, int jobs, V zero = V{}) {
    QuadResult<V> out{zero, {}};
    if (!(b > a)) return out;
    const auto edges = piece_edges(a, b, breaks);
    const auto& rule = gauss_legendre(spec.gauss_order);
    auto pass = [&](int panels) {
        std::vector<double> xs, ws;
        for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
            const double h = (edges[p + 1] - edges[p]) / panels;
            for (int s = 0; s < panels; ++s) {
                const double half = 0.5 * h, mid = edges[p] + s * h + half;
                for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                    xs.push_back(mid + half * rule.nodes[i]);
                    ws.push_back(half * rule.weights[i]);
                }
            }
        }
        std::vector<V> vals(xs.size(), zero);
        parallel_for(static_cast<int>(xs.size()), jobs, [&](int i) { vals[i] = fn(xs[i]); });
        V total = zero;
        for (std::size_t i = 0; i < xs.size(); ++i) total += ws[i] * vals[i];
        return std::pair<V, long>{total, static_cast<long>(xs.size())};
    };
    auto [coarse, n0] = pass(1);
    if (spec.max_subdivision_depth == 0) {
        out.value = coarse;
        out.report = {n0, std::nan(""), 0};
        return out;
    }
    double est = 0.0;
    for (int d = 1; d <= spec.max_subdivision_depth; ++d) {
        auto [fine, n] = pass(1 << d);
        est = magnitude(fine - coarse);
        coarse = fine;
        if (est <= spec.target_tolerance * (1.0 + magnitude(fine))) {
            out.value = fine;
            out.report = {n, est, d};
            return out;
        }
    }
    throw AccuracyError("integrate_1d_batched: subdivision depth exceeded", est);
}

}  // namespace entprod
