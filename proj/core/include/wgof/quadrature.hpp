#pragma once

#include <functional>

namespace wgof {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    bool converged = false;
};

/// Adaptive Gauss-Kronrod (61 point) on [a, b]; either bound may be infinite.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-10);

/// How (0,1) is mapped onto the real line before integrating.
///
/// Logistic: t = 1/(1+e^-u), dt = t(1-t) du. Tames integrable endpoint
/// singularities of order 1/(t(1-t)).
/// Probit: t = Phi(z), dt = phi(z) dz. Used for alternatives defined through a
/// Gaussian null, whose tails live at |z| large rather than at log t large.
enum class UnitMap { Logistic, Probit };

/// A point of (0,1) carried as (t, 1 - t), both accurate, plus dt/dx.
struct UnitPoint {
    double t;
    double tc;
    double jacobian;
};

UnitPoint map_to_unit(UnitMap map, double x) noexcept;

/// Inverse of map_to_unit on the t coordinate.
double unit_to_line(UnitMap map, double t, double tc) noexcept;

/// Integral over (0,1) of f(t, 1-t) dt, evaluated on the real line through
/// `map`. Points where t or 1-t underflows to zero contribute nothing.
QuadratureResult integrate_unit(const std::function<double(double, double)>& f, UnitMap map,
                                double abs_tol = 1e-10);

}  // namespace wgof
