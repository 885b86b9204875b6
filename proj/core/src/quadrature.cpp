#include "wgof/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

#include "wgof/normal.hpp"

namespace wgof {

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol)
{
    using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;
    QuadratureResult out;
    double l1 = 0.0;
    out.value = Rule::integrate(f, a, b, 18, 1e-13, &out.abs_error, &l1);
    out.converged = std::isfinite(out.value) &&
                    (out.abs_error <= abs_tol || out.abs_error <= 1e-9 * l1);
    return out;
}

UnitPoint map_to_unit(UnitMap map, double x) noexcept
{
    if (map == UnitMap::Logistic) {
        // Evaluate each of t and 1-t as 1/(1+e^{-|.|}) or e^{-|.|}/(1+e^{-|.|})
        // so the small one never goes through a subtraction.
        const double e = std::exp(-std::fabs(x));
        const double big = 1.0 / (1.0 + e);
        const double small = e / (1.0 + e);
        const double t = x >= 0.0 ? big : small;
        const double tc = x >= 0.0 ? small : big;
        return {t, tc, t * tc};
    }
    return {normal_cdf(x), normal_sf(x), normal_pdf(x)};
}

double unit_to_line(UnitMap map, double t, double tc) noexcept
{
    if (map == UnitMap::Logistic) {
        return t <= 0.5 ? std::log(t) - std::log1p(-t) : std::log1p(-tc) - std::log(tc);
    }
    return probit(t, tc);
}

QuadratureResult integrate_unit(const std::function<double(double, double)>& f, UnitMap map,
                                double abs_tol)
{
    auto g = [&](double x) {
        const UnitPoint p = map_to_unit(map, x);
        if (p.t <= 0.0 || p.tc <= 0.0 || p.jacobian <= 0.0) {
            return 0.0;
        }
        return f(p.t, p.tc) * p.jacobian;
    };
    const double inf = std::numeric_limits<double>::infinity();
    // Splitting at the centre keeps each half-line mapping well conditioned.
    const QuadratureResult lo = integrate(g, -inf, 0.0, abs_tol / 2);
    const QuadratureResult hi = integrate(g, 0.0, inf, abs_tol / 2);
    return {lo.value + hi.value, lo.abs_error + hi.abs_error, lo.converged && hi.converged};
}

}  // namespace wgof
