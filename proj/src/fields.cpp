#include "entprod/fields.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace entprod {

int sign_minus(const FieldSample& s, double k) { return sign(s.value - k); }

Region Region::constant_state(std::string name, double c) {
    return Region{std::move(name), [c](double, double) { return c; }, c, {}};
}

AnalyticPiecewiseField::AnalyticPiecewiseField(std::vector<Region> regions, std::vector<Curve> interfaces,
                                               Interval range, double t_end, std::vector<Curve> kinks)
    : regions_(std::move(regions)),
      interfaces_(std::move(interfaces)),
      kinks_(std::move(kinks)),
      range_(range),
      t_end_(t_end) {
    if (regions_.size() != interfaces_.size() + 1)
        throw std::invalid_argument("analytic field: need exactly one more region than interfaces");
    if (!(t_end_ > 0.0)) throw std::invalid_argument("analytic field: t_end must be positive");
    if (range_.hi < range_.lo) throw std::invalid_argument("analytic field: inverted range");
    // interfaces must stay ordered over [0, T]
    for (int i = 0; i <= 32; ++i) {
        const double t = t_end_ * i / 32.0;
        for (std::size_t j = 1; j < interfaces_.size(); ++j)
            if (interfaces_[j](t) < interfaces_[j - 1](t))
                throw std::invalid_argument("analytic field: interfaces cross");
    }
}

FieldSample AnalyticPiecewiseField::evaluate(double t, double x) const {
    if (!(t >= 0.0 && t <= t_end_) || !std::isfinite(x))
        throw std::invalid_argument("analytic field: point outside domain");
    int r = 0;
    for (const auto& g : interfaces_)
        if (g(t) <= x) ++r;
    const Region& reg = regions_[r];
    if (reg.constant) return {*reg.constant, r, true};
    return {reg.value(t, x), r, false};
}

Interval AnalyticPiecewiseField::x_extent() const {
    return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
}

std::vector<double> AnalyticPiecewiseField::states() const {
    std::set<double> s;
    for (const auto& r : regions_)
        if (r.constant) s.insert(*r.constant);
    return {s.begin(), s.end()};
}

std::vector<double> crossing_times(const Curve& c, double level, Interval t, int samples) {
    std::vector<double> out;
    auto g = [&](double s) { return c(s) - level; };
    double prev_t = t.lo, prev_g = g(t.lo);
    for (int i = 1; i <= samples; ++i) {
        const double cur_t = t.lo + t.width() * i / samples;
        const double cur_g = g(cur_t);
        if (prev_g == 0.0) out.push_back(prev_t);
        if ((prev_g < 0.0 && cur_g > 0.0) || (prev_g > 0.0 && cur_g < 0.0)) {
            double a = prev_t, b = cur_t, ga = prev_g;
            for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
                const double m = 0.5 * (a + b);
                const double gm = g(m);
                if (gm == 0.0) {
                    a = b = m;
                    break;
                }
                if ((gm < 0.0) == (ga < 0.0)) {
                    a = m;
                    ga = gm;
                } else {
                    b = m;
                }
            }
            out.push_back(0.5 * (a + b));
        }
        prev_t = cur_t;
        prev_g = cur_g;
    }
    if (prev_g == 0.0) out.push_back(prev_t);
    return out;
}

SpaceTimeRegion AnalyticPiecewiseField::region(const Box& box, std::span<const double> levels) const {
    SpaceTimeRegion reg;
    reg.box = box.intersect(Box{{0.0, t_end_}, x_extent(), false});
    if (reg.box.empty) return reg;
    std::vector<Curve> curves = interfaces_;
    curves.insert(curves.end(), kinks_.begin(), kinks_.end());
    for (double k : levels)
        for (const auto& r : regions_)
            if (r.level_curves) {
                auto lc = r.level_curves(k);
                curves.insert(curves.end(), lc.begin(), lc.end());
            }
    for (const auto& c : curves)
        for (double edge : {reg.box.x.lo, reg.box.x.hi}) {
            auto ts = crossing_times(c, edge, reg.box.t);
            reg.t_breaks.insert(reg.t_breaks.end(), ts.begin(), ts.end());
        }
    reg.x_breaks = [curves](double t) {
        std::vector<double> xs;
        xs.reserve(curves.size());
        for (const auto& c : curves) {
            const double x = c(t);
            if (std::isfinite(x)) xs.push_back(x);
        }
        return xs;
    };
    return reg;
}

GridField::GridField(GridGeometry geometry, int slabs, int cells, std::vector<double> values)
    : geometry_(geometry), slabs_(slabs), cells_(cells), values_(std::move(values)) {
    if (!(geometry_.dt > 0.0) || !(geometry_.dx > 0.0)) throw std::invalid_argument("grid field: bad spacing");
    if (slabs_ <= 0 || cells_ <= 0 || values_.size() != static_cast<std::size_t>(slabs_) * cells_)
        throw std::invalid_argument("grid field: value count does not match the mesh");
    range_ = {values_.front(), values_.front()};
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("grid field: non-finite cell value");
        range_.lo = std::min(range_.lo, v);
        range_.hi = std::max(range_.hi, v);
    }
}

FieldSample GridField::evaluate(double t, double x) const {
    const Interval xe = x_extent();
    if (!(t >= 0.0 && t <= t_end()) || !(x >= xe.lo && x <= xe.hi))
        throw std::invalid_argument("grid field: point outside domain");
    const int m = std::min(slabs_ - 1, static_cast<int>(t / geometry_.dt));
    const int j = std::min(cells_ - 1, static_cast<int>((x - geometry_.x_lo) / geometry_.dx));
    return {cell(m, j), m * cells_ + j, true};
}

std::vector<double> GridField::states() const {
    std::set<double> s;
    for (double v : values_) {
        s.insert(v);
        if (s.size() > 64) return {};
    }
    return {s.begin(), s.end()};
}

SpaceTimeRegion GridField::region(const Box& box, std::span<const double>) const {
    SpaceTimeRegion reg;
    reg.box = box.intersect(Box{{0.0, t_end()}, x_extent(), false});
    if (reg.box.empty) return reg;
    const int m0 = static_cast<int>(reg.box.t.lo / geometry_.dt);
    const int m1 = std::min(slabs_, static_cast<int>(reg.box.t.hi / geometry_.dt) + 1);
    for (int m = m0; m <= m1; ++m) reg.t_breaks.push_back(m * geometry_.dt);
    std::vector<double> xs;
    const int j0 = static_cast<int>((reg.box.x.lo - geometry_.x_lo) / geometry_.dx);
    const int j1 = std::min(cells_, static_cast<int>((reg.box.x.hi - geometry_.x_lo) / geometry_.dx) + 1);
    for (int j = j0; j <= j1; ++j) xs.push_back(geometry_.x_lo + j * geometry_.dx);
    reg.x_breaks = [xs](double) { return xs; };
    return reg;
}

void GridField::write_csv(std::ostream& os) const {
    os << "t_index,x_index,value\n";
    char buf[64];
    for (int m = 0; m < slabs_; ++m)
        for (int j = 0; j < cells_; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", cell(m, j));
            os << m << ',' << j << ',' << buf << '\n';
        }
}

GridField GridField::read_csv(std::istream& is, GridGeometry geometry) {
    std::string line;
    if (!std::getline(is, line) || line != "t_index,x_index,value")
        throw std::invalid_argument("grid csv: missing header");
    struct Row {
        int m, j;
        double v;
    };
    std::vector<Row> rows;
    int slabs = 0, cells = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Row r{};
        char c1 = 0, c2 = 0;
        if (!(ls >> r.m >> c1 >> r.j >> c2 >> r.v) || c1 != ',' || c2 != ',' || r.m < 0 || r.j < 0)
            throw std::invalid_argument("grid csv: malformed row '" + line + "'");
        slabs = std::max(slabs, r.m + 1);
        cells = std::max(cells, r.j + 1);
        rows.push_back(r);
    }
    if (rows.size() != static_cast<std::size_t>(slabs) * cells)
        throw std::invalid_argument("grid csv: incomplete mesh");
    std::vector<double> values(rows.size(), std::nan(""));
    for (const auto& r : rows) values[static_cast<std::size_t>(r.m) * cells + r.j] = r.v;
    return GridField(geometry, slabs, cells, std::move(values));
}

double InitialDatum::value(double x) const {
    const auto idx = static_cast<std::size_t>(std::upper_bound(breaks.begin(), breaks.end(), x) - breaks.begin());
    if (constants[idx]) return *constants[idx];
    return pieces[idx](x);
}

std::vector<double> InitialDatum::states() const {
    std::set<double> s;
    for (const auto& c : constants)
        if (c) s.insert(*c);
    return {s.begin(), s.end()};
}

std::vector<double> InitialDatum::breakpoints(std::span<const double> levels) const {
    std::vector<double> out = breaks;
    if (level_points)
        for (double k : levels) {
            auto p = level_points(k);
            out.insert(out.end(), p.begin(), p.end());
        }
    return out;
}

InitialDatum InitialDatum::constant(double c) { return piecewise_constant({}, {c}); }

InitialDatum InitialDatum::piecewise_constant(std::vector<double> breaks, std::vector<double> values) {
    if (values.size() != breaks.size() + 1) throw std::invalid_argument("datum: need one more value than breaks");
    if (!std::is_sorted(breaks.begin(), breaks.end())) throw std::invalid_argument("datum: breakpoints unsorted");
    InitialDatum d;
    d.breaks = std::move(breaks);
    d.range = {*std::min_element(values.begin(), values.end()), *std::max_element(values.begin(), values.end())};
    for (double v : values) {
        d.pieces.push_back([v](double) { return v; });
        d.constants.emplace_back(v);
    }
    return d;
}

InitialDatum InitialDatum::smooth(std::function<double(double)> fn, Interval range, std::vector<double> breaks) {
    if (!std::is_sorted(breaks.begin(), breaks.end())) throw std::invalid_argument("datum: breakpoints unsorted");
    InitialDatum d;
    d.breaks = std::move(breaks);
    d.range = range;
    d.pieces.assign(d.breaks.size() + 1, fn);
    d.constants.assign(d.breaks.size() + 1, std::nullopt);
    return d;
}

Interval essential_range(const ScalarField& u, const InitialDatum& u0) {
    const Interval a = u.declared_range();
    return {std::min(a.lo, u0.range.lo), std::max(a.hi, u0.range.hi)};
}

}  // namespace entprod
