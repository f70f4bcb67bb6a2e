#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace entprod {

using cplx = std::complex<double>;

/// Raised when a quadrature cannot reach its target tolerance within the
/// configured subdivision depth. Carries the best estimate it achieved.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// A declared contract (support box, range, CFL bound) was observed to fail.
class ContractViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Solver blow-up or other non-recoverable numerical failure.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    bool contains(double v) const { return v >= lo && v <= hi; }
    bool contains(const Interval& o) const { return o.lo >= lo && o.hi <= hi; }
};

/// Axis-aligned (t, x) box. An empty box represents "no support".
struct Box {
    Interval t;
    Interval x;
    bool empty = false;

    static Box none() { return Box{{0, 0}, {0, 0}, true}; }
    bool contains(double tt, double xx) const {
        return !empty && t.contains(tt) && x.contains(xx);
    }
    bool contains(const Box& o) const {
        return o.empty || (!empty && t.contains(o.t) && x.contains(o.x));
    }
    Box intersect(const Box& o) const;
};

/// Space-time domain I x R^n with I = [0, T).
struct Domain {
    double t_end = 1.0;
    int space_dim = 1;
    Interval space_box{-1.0, 1.0};

    void validate() const;
};

struct QuadratureSpec {
    int gauss_order = 10;           ///< nodes per panel in t and x
    int max_subdivision_depth = 4;  ///< panel doublings; 0 disables the check
    int k_axis_order = 16;          ///< nodes per panel along k and in flux integrals
    double target_tolerance = 1e-10;

    void validate() const;
};

/// sgn with sgn(0) = 0. NaN is rejected.
int sign(double z);

/// +1 if b <= xi < a, -1 if a <= xi < b, 0 otherwise.
int chi(double xi, double a, double b);

}  // namespace entprod
