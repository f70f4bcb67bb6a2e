#pragma once

#include <functional>
#include <span>
#include <vector>

#include "entprod/core.hpp"
#include "entprod/quadrature.hpp"

namespace entprod {

struct Jump {
    double at;
    double size;
};

/// One-sided limits of a regulated function at a point of discontinuity.
struct JumpLimits {
    double at;
    double left;
    double right;
};

/// Regulated BV function on a closed interval, stored as an absolutely
/// continuous part (with its density) plus finitely many jumps. The value at
/// a jump is always the midpoint of the one-sided limits.
class RegulatedBV {
public:
    RegulatedBV(Interval support, std::function<double(double)> ac,
                std::function<double(double)> density, std::vector<Jump> jumps);

    double value(double k) const;
    double left_limit(double k) const;
    double right_limit(double k) const;
    /// Midpoint value stored at the j-th jump.
    double stored_value(std::size_t j) const;
    double density(double k) const { return density_(k); }
    double ac_part(double k) const { return ac_(k); }

    /// integral of |density| + sum |jump|
    double total_variation(const QuadratureSpec& spec) const;

    const Interval& support() const { return support_; }
    const std::vector<Jump>& jumps() const { return jumps_; }
    std::vector<double> jump_points() const;

    /// a * this + b * other (supports must coincide)
    RegulatedBV combine(double a, const RegulatedBV& other, double b) const;

private:
    Interval support_;
    std::function<double(double)> ac_;
    std::function<double(double)> density_;
    std::vector<Jump> jumps_;
};

/// Builds a RegulatedBV from an absolutely continuous part and the one-sided
/// limits at each discontinuity. Rejects non-finite limits and left limits
/// that disagree with the accumulated value; drops points where left == right.
RegulatedBV regulated_normalize(Interval support, std::function<double(double)> ac,
                                std::function<double(double)> density,
                                std::vector<JumpLimits> limits);

/// Kurzweil-Stieltjes integral of h against a regulated integrator on
/// [a, b]: the density part by piecewise Gauss (panels split at the jumps and
/// at the caller-declared kinks of h), plus h(c_j) * jump_j for each atom.
/// An atom at a split point belongs to the left interval: atoms in (a, b] are
/// counted, and an atom at a is counted only when a is the support's start.
template <class F>
auto ks_integrate(F&& h, const RegulatedBV& gamma, double a, double b,
                  std::span<const double> kinks, const QuadratureSpec& spec) {
    using V = std::decay_t<decltype(h(0.0))>;
    std::vector<double> breaks(kinks.begin(), kinks.end());
    for (const auto& j : gamma.jumps()) breaks.push_back(j.at);
    QuadratureSpec k_spec = spec;
    k_spec.gauss_order = spec.k_axis_order;
    auto ac = integrate_1d<V>([&](double k) { return gamma.density(k) * h(k); }, a, b, breaks, k_spec,
                              V{});
    V atoms{};
    for (const auto& j : gamma.jumps()) {
        const bool inside = (j.at > a && j.at <= b) || (j.at == a && a == gamma.support().lo);
        if (inside) atoms += j.size * h(j.at);
    }
    return ac.value + atoms;
}

template <class F>
auto ks_integrate(F&& h, const RegulatedBV& gamma, std::span<const double> kinks,
                  const QuadratureSpec& spec) {
    return ks_integrate(std::forward<F>(h), gamma, gamma.support().lo, gamma.support().hi, kinks, spec);
}

}  // namespace entprod
