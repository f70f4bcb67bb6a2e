#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entprod/core.hpp"
#include "entprod/quadrature.hpp"

namespace entprod {

/// x = gamma(t); may return +-inf where the curve has left the strip.
using Curve = std::function<double(double)>;

struct FieldSample {
    double value;
    int region;
    /// true when the region is constant-valued, so `value` is the declared
    /// state bit-for-bit
    bool exact;
};

/// sgn(u - k) for a field sample. Constant regions compare their declared
/// state, so k equal to a state yields 0 exactly.
int sign_minus(const FieldSample& s, double k);

/// Bounded field u(t,x) on [0, T] x X.
class ScalarField {
public:
    virtual ~ScalarField() = default;

    virtual FieldSample evaluate(double t, double x) const = 0;
    virtual Interval declared_range() const = 0;
    virtual double t_end() const = 0;
    virtual Interval x_extent() const = 0;
    /// Constant states where k -> mu_k may kink. Empty when unknown or too many.
    virtual std::vector<double> states() const = 0;
    /// Quadrature region for `box` (clipped to the field's extent). For each
    /// level k, curves where u crosses k continuously are added as breakpoints.
    virtual SpaceTimeRegion region(const Box& box, std::span<const double> levels = {}) const = 0;
};

struct Region {
    std::string name;
    std::function<double(double, double)> value;
    std::optional<double> constant;
    /// Curves inside the region where u = k, for continuously varying regions.
    std::function<std::vector<Curve>(double)> level_curves;

    static Region constant_state(std::string name, double c);
};

/// Piecewise-smooth 1D field: regions separated by non-crossing interface
/// curves, ordered left to right. The region index at (t, x) is the number of
/// interfaces with gamma(t) <= x, so selection never uses a tolerance.
class AnalyticPiecewiseField final : public ScalarField {
public:
    AnalyticPiecewiseField(std::vector<Region> regions, std::vector<Curve> interfaces, Interval range,
                           double t_end, std::vector<Curve> kinks = {});

    FieldSample evaluate(double t, double x) const override;
    Interval declared_range() const override { return range_; }
    double t_end() const override { return t_end_; }
    Interval x_extent() const override;
    std::vector<double> states() const override;
    SpaceTimeRegion region(const Box& box, std::span<const double> levels = {}) const override;

    const std::vector<Region>& regions() const { return regions_; }
    const std::vector<Curve>& interfaces() const { return interfaces_; }

private:
    std::vector<Region> regions_;
    std::vector<Curve> interfaces_;
    std::vector<Curve> kinks_;
    Interval range_;
    double t_end_;
};

struct GridGeometry {
    double dt = 0.0;
    double x_lo = 0.0;
    double dx = 0.0;
};

/// Piecewise-constant field on a uniform space-time mesh: slab m = [m dt,
/// (m+1) dt), cell j = [x_lo + j dx, x_lo + (j+1) dx).
class GridField final : public ScalarField {
public:
    GridField(GridGeometry geometry, int slabs, int cells, std::vector<double> values);

    FieldSample evaluate(double t, double x) const override;
    Interval declared_range() const override { return range_; }
    double t_end() const override { return geometry_.dt * slabs_; }
    Interval x_extent() const override { return {geometry_.x_lo, geometry_.x_lo + geometry_.dx * cells_}; }
    std::vector<double> states() const override;
    SpaceTimeRegion region(const Box& box, std::span<const double> levels = {}) const override;

    double cell(int slab, int j) const { return values_[static_cast<std::size_t>(slab) * cells_ + j]; }
    int slabs() const { return slabs_; }
    int cells() const { return cells_; }
    const GridGeometry& geometry() const { return geometry_; }

    /// Header `t_index,x_index,value`, one row per cell, LF endings.
    void write_csv(std::ostream& os) const;
    static GridField read_csv(std::istream& is, GridGeometry geometry);

private:
    GridGeometry geometry_;
    int slabs_;
    int cells_;
    std::vector<double> values_;
    Interval range_;
};

/// Initial datum u0(x): smooth pieces between sorted breakpoints.
struct InitialDatum {
    std::vector<double> breaks;
    std::vector<std::function<double(double)>> pieces;  ///< breaks.size() + 1 pieces
    std::vector<std::optional<double>> constants;
    Interval range;
    /// Points where a smooth piece crosses level k; optional.
    std::function<std::vector<double>(double)> level_points;

    double value(double x) const;
    std::vector<double> states() const;
    /// Breakpoints plus level points for each k.
    std::vector<double> breakpoints(std::span<const double> levels = {}) const;

    static InitialDatum constant(double c);
    static InitialDatum piecewise_constant(std::vector<double> breaks, std::vector<double> values);
    static InitialDatum smooth(std::function<double(double)> fn, Interval range, std::vector<double> breaks = {});
};

/// [a, b] containing every declared value of u and u0.
Interval essential_range(const ScalarField& u, const InitialDatum& u0);

/// Times in [t.lo, t.hi] where the curve crosses x = level (sampled sign
/// changes refined by bisection).
std::vector<double> crossing_times(const Curve& c, double level, Interval t, int samples = 64);

}  // namespace entprod
