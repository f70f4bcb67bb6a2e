#include "entprod/core.hpp"

#include <algorithm>

namespace entprod {

Box Box::intersect(const Box& o) const {
    if (empty || o.empty) return none();
    Box r{{std::max(t.lo, o.t.lo), std::min(t.hi, o.t.hi)},
          {std::max(x.lo, o.x.lo), std::min(x.hi, o.x.hi)},
          false};
    if (r.t.lo >= r.t.hi || r.x.lo >= r.x.hi) return none();
    return r;
}

void Domain::validate() const {
    if (!(t_end > 0.0)) throw std::invalid_argument("domain: t_end must be positive");
    if (space_dim != 1) throw std::invalid_argument("domain: only space_dim = 1 is supported");
    if (!(space_box.hi > space_box.lo))
        throw std::invalid_argument("domain: space box is degenerate");
}

void QuadratureSpec::validate() const {
    if (gauss_order < 2 || k_axis_order < 2)
        throw std::invalid_argument("quadrature: orders must be >= 2");
    if (max_subdivision_depth < 0)
        throw std::invalid_argument("quadrature: negative subdivision depth");
    if (!(target_tolerance > 0.0))
        throw std::invalid_argument("quadrature: tolerance must be positive");
}

int sign(double z) {
    if (std::isnan(z)) throw std::invalid_argument("sign: NaN argument");
    return (z > 0.0) - (z < 0.0);
}

int chi(double xi, double a, double b) {
    if (b <= xi && xi < a) return 1;
    if (a <= xi && xi < b) return -1;
    return 0;
}

}  // namespace entprod
