#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wgof/rules.hpp"
#include "wgof/shape.hpp"

namespace wgof {

/// t in [lo, 1 - hi_c]; both margins are held exactly so that the upper end
/// keeps full precision. Margins of 0 mean the open end of (0,1).
struct Domain {
    double lo = 0.0;
    double hi_c = 0.0;

    static Domain full() { return {0.0, 0.0}; }
    static Domain symmetric(double kappa) { return {kappa, kappa}; }
    bool touches_ends() const noexcept { return lo == 0.0 || hi_c == 0.0; }
};

/// Innermost margin used for the open ends of (0,1).
inline constexpr double kEdge = 1e-12;

struct SupResult {
    double t0 = 0.5;   ///< argmax
    double t0c = 0.5;  ///< 1 - t0, exact
    double m0 = 0.0;   ///< sup of |f|
    /// The supremum over the open domain is +infinity; m0 is the value on
    /// [1e-12, 1 - 1e-12] only.
    bool diverges = false;
    /// The supremum is a finite limit approached at an open end (t0 is 0 or 1).
    bool edge_limit = false;
};

/// Global maximum of |f| over the domain: a 20001 point grid uniform in
/// log(t/(1-t)), then golden-section refinement around the largest local
/// maxima. Argument tolerance about 1e-10 in the logit scale.
SupResult sup_abs(const ShapeFunction::Fn& f, Domain d);

/// (t0, m0) for |A*|.
SupResult sup_abs_Astar(const ShapeFunction& s, Domain d = Domain::full());

/// sup |A|.
double sup_norm_A(const ShapeFunction& s);

/// Squared L2 norm of A*, the integral of A^2/(t(1-t)).
struct IntegralResult {
    double value = 0.0;
    double abs_error = 0.0;
    bool converged = false;
};
IntegralResult l2_Astar_squared(const ShapeFunction& s);

/// rho_A from the double integral with kernel min(s,t) - st.
///
/// The kernel factorizes on s < t, so rho^2 = 2 * integral of A(t)/t * G(t)
/// with G(t) = integral over (0,t) of A(s)/(1-s). Evaluated with composite
/// Gauss-Legendre panels in the substituted variable, G by nested rules inside
/// each panel, at `panels` and 2 * `panels`; abs_error is their difference.
IntegralResult rho_A_squared(const ShapeFunction& s, std::size_t panels = 1200);
double rho_A(const ShapeFunction& s);

/// Raised when an efficiency is requested but undefined for the shape.
class UndefinedEfficiency : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// sup over [kappa, 1 - kappa] of A*^2 / (4 sup|A|^2).
double e_gk(const ShapeFunction& s, double kappa);

/// sup |A*|^2 / (4 sup|A|^2). Requires A* to vanish at both ends.
double e_ek(const ShapeFunction& s);

/// ||A*||_2^2 / (2 sup|A|^2). Requires the integrability condition.
double e_ik(const ShapeFunction& s);

/// Phi(w ||A*||_2 / rho_A).
double asymptotic_power_I(const ShapeFunction& s, double w);
double asymptotic_power_I(double l2_astar, double rho, double w);

/// Restricted supremum and slope along an n grid.
struct WeakSlopePoint {
    double n;
    double kappa;
    double m_n;
    double theta_n;
    double slope;  ///< n theta_n^2 m_n^2 / 2
};

struct WeakSlopeReport {
    std::vector<WeakSlopePoint> points;
    bool strictly_increasing = false;
    /// True when A* vanishes at the ends, so m_n converges to m0.
    bool bounded = false;
    double m0 = 0.0;
};

WeakSlopeReport weak_slope_heavy_tail(const ShapeFunction& s, const RateRule& kappa_rule,
                                      const std::vector<double>& n_grid, const RateRule& theta_rule);

struct EfficiencyReport {
    std::string name;
    double theta = 0.0;
    SupResult sup_astar;
    double sup_A_inf = 0.0;
    IntegralResult l2_sq;
    IntegralResult rho_sq;
    double l2_Astar = 0.0;
    double rho_A = 0.0;
    std::vector<std::pair<double, double>> e_GK;  ///< (kappa, value)
    std::optional<double> e_EK;
    std::optional<double> e_IK;
    std::optional<double> e_MK;  ///< 0 when the power-decay condition holds
    std::optional<ConditionReport> conditions;
    bool e_EK_defined = false;
    bool e_IK_defined = false;
    std::string notes;

    /// Coefficients c in log(alpha_n) ~ -c * (c0^2 n^(1 - 2q)) for theta_n = c0 n^-q.
    double level_K = 0.0;
    double level_E = 0.0;
    double level_I = 0.0;
    std::vector<std::pair<double, double>> level_G;
};

EfficiencyReport efficiency_report(const ShapeFunction& s, const std::vector<double>& kappas);

}  // namespace wgof
