#include "wgof/efficiency.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "wgof/normal.hpp"

namespace wgof {

namespace {

constexpr int kGridPoints = 20001;
constexpr double kInvPhi = 0.61803398874989484820;

struct Evaluator {
    const ShapeFunction::Fn& f;
    double x_lo, x_hi;
    double t_lo, tc_hi;

    UnitPoint point(double x) const
    {
        if (x <= x_lo) {
            return {t_lo, 1.0 - t_lo, 0.0};
        }
        if (x >= x_hi) {
            return {1.0 - tc_hi, tc_hi, 0.0};
        }
        return map_to_unit(UnitMap::Logistic, x);
    }

    double operator()(double x) const
    {
        const UnitPoint p = point(x);
        return std::fabs(f(p.t, p.tc));
    }
};

double logit_lower(double t) { return std::log(t) - std::log1p(-t); }

// Values of |f| at t = 1e-16, 1e-32, ..., 1e-256 from one end.
std::vector<double> end_profile(const ShapeFunction::Fn& f, bool lower)
{
    std::vector<double> out;
    for (double s : {1e-12, 1e-16, 1e-32, 1e-64, 1e-128, 1e-256}) {
        out.push_back(std::fabs(lower ? f(s, 1.0 - s) : f(1.0 - s, s)));
    }
    return out;
}

}  // namespace

SupResult sup_abs(const ShapeFunction::Fn& f, Domain d)
{
    const double lo = std::max(d.lo, kEdge);
    const double hc = std::max(d.hi_c, kEdge);
    if (!(lo < 0.5 || hc < 0.5) || lo + hc > 1.0) {
        throw std::invalid_argument("sup_abs: empty domain");
    }
    const Evaluator ev{f, logit_lower(lo), -logit_lower(hc), lo, hc};

    std::vector<double> xs(kGridPoints), vs(kGridPoints);
    const double span = ev.x_hi - ev.x_lo;
    for (int k = 0; k < kGridPoints; ++k) {
        xs[k] = k == kGridPoints - 1 ? ev.x_hi : ev.x_lo + span * k / (kGridPoints - 1);
        vs[k] = ev(xs[k]);
    }

    std::vector<int> peaks;
    for (int k = 0; k < kGridPoints; ++k) {
        const bool left = k == 0 || vs[k] >= vs[k - 1];
        const bool right = k == kGridPoints - 1 || vs[k] >= vs[k + 1];
        if (left && right) {
            peaks.push_back(k);
        }
    }
    std::sort(peaks.begin(), peaks.end(), [&](int a, int b) { return vs[a] > vs[b]; });
    if (peaks.size() > 8) {
        peaks.resize(8);
    }

    double best_x = xs[peaks.empty() ? 0 : peaks.front()];
    double best_v = peaks.empty() ? vs[0] : vs[peaks.front()];
    for (int k : peaks) {
        double a = xs[std::max(k - 1, 0)];
        double b = xs[std::min(k + 1, kGridPoints - 1)];
        double c = b - kInvPhi * (b - a);
        double e = a + kInvPhi * (b - a);
        double fc = ev(c), fe = ev(e);
        for (int it = 0; it < 100 && b - a > 1e-12 * (1.0 + std::fabs(a)); ++it) {
            if (fc >= fe) {
                b = e;
                e = c;
                fe = fc;
                c = b - kInvPhi * (b - a);
                fc = ev(c);
            } else {
                a = c;
                c = e;
                fc = fe;
                e = a + kInvPhi * (b - a);
                fe = ev(e);
            }
        }
        for (double x : {c, e, xs[k]}) {
            const double v = ev(x);
            if (v > best_v) {
                best_v = v;
                best_x = x;
            }
        }
    }

    SupResult r;
    const UnitPoint p = ev.point(best_x);
    r.t0 = p.t;
    r.t0c = p.tc;
    r.m0 = best_v;

    // Behaviour beyond the grid at open ends.
    for (bool lower : {true, false}) {
        if ((lower ? d.lo : d.hi_c) != 0.0) {
            continue;
        }
        const std::vector<double> prof = end_profile(f, lower);
        bool rising = true;
        for (std::size_t i = 3; i < prof.size(); ++i) {
            rising = rising && prof[i] >= prof[i - 1];
        }
        if (rising && prof.back() > 1.01 * prof[3]) {
            r.diverges = true;
        } else if (!r.diverges && prof.back() > r.m0) {
            r.m0 = prof.back();
            r.edge_limit = true;
            r.t0 = lower ? 0.0 : 1.0;
            r.t0c = 1.0 - r.t0;
        }
    }
    if (r.diverges) {
        r.edge_limit = false;
        r.t0 = p.t;
        r.t0c = p.tc;
        r.m0 = best_v;
    }
    return r;
}

SupResult sup_abs_Astar(const ShapeFunction& s, Domain d)
{
    const ShapeFunction::Fn f = [&s](double t, double tc) { return s.A_star(t, tc); };
    return sup_abs(f, d);
}

double sup_norm_A(const ShapeFunction& s)
{
    const ShapeFunction::Fn f = [&s](double t, double tc) { return s.A(t, tc); };
    return sup_abs(f, Domain::full()).m0;
}

IntegralResult l2_Astar_squared(const ShapeFunction& s)
{
    const QuadratureResult q = integrate_unit(
        [&s](double t, double tc) {
            const double a = s.A(t, tc);
            return a * a / (t * tc);
        },
        s.map(), 1e-12);
    return {q.value, q.abs_error, q.converged};
}

namespace {

struct Gauss10 {
    std::array<double, 10> x;
    std::array<double, 10> w;

    Gauss10()
    {
        using G = boost::math::quadrature::gauss<double, 10>;
        const auto& ab = G::abscissa();
        const auto& wt = G::weights();
        for (std::size_t i = 0; i < 5; ++i) {
            x[i] = -ab[4 - i];
            w[i] = wt[4 - i];
            x[9 - i] = ab[4 - i];
            w[9 - i] = wt[4 - i];
        }
    }
};

const Gauss10& gauss10()
{
    static const Gauss10 g;
    return g;
}

// Half-width of the substituted range outside of which A is negligible.
double rho_range(const ShapeFunction& s, double amax, bool& truncated)
{
    const double cap = s.map() == UnitMap::Probit ? 38.0 : 740.0;
    double L = s.map() == UnitMap::Probit ? 4.0 : 16.0;
    auto tiny = [&](double x) {
        const UnitPoint lo = map_to_unit(s.map(), -x);
        const UnitPoint hi = map_to_unit(s.map(), x);
        const double env = std::max(std::fabs(s.A(lo.t, lo.tc)), std::fabs(s.A(hi.t, hi.tc))) * std::max(1.0, x);
        return env < 1e-13 * amax;
    };
    while (L < cap && !tiny(L)) {
        L = std::min(cap, 1.5 * L);
    }
    truncated = !tiny(L);
    return L;
}

double rho_sq_panels(const ShapeFunction& s, double L, std::size_t panels)
{
    const Gauss10& g = gauss10();
    const UnitMap map = s.map();
    auto f1 = [&](double x) {
        const UnitPoint p = map_to_unit(map, x);
        if (p.t <= 0.0 || p.tc <= 0.0) {
            return 0.0;
        }
        return s.A(p.t, p.tc) / p.tc * p.jacobian;
    };
    auto f2 = [&](double x) {
        const UnitPoint p = map_to_unit(map, x);
        if (p.t <= 0.0 || p.tc <= 0.0) {
            return 0.0;
        }
        return s.A(p.t, p.tc) / p.t * p.jacobian;
    };
    const double h = 2.0 * L / static_cast<double>(panels);
    double G_before = 0.0;
    double total = 0.0;
    for (std::size_t k = 0; k < panels; ++k) {
        const double a = -L + h * static_cast<double>(k);
        double panel = 0.0;
        for (std::size_t j = 0; j < 10; ++j) {
            const double y = a + 0.5 * h * (1.0 + g.x[j]);
            const double wy = 0.5 * h * g.w[j];
            // G(y) = G(a) + integral of f1 over [a, y].
            const double len = y - a;
            double partial = 0.0;
            for (std::size_t i = 0; i < 10; ++i) {
                partial += 0.5 * len * g.w[i] * f1(a + 0.5 * len * (1.0 + g.x[i]));
            }
            total += wy * f2(y) * (G_before + partial);
            panel += wy * f1(y);
        }
        G_before += panel;
    }
    return 2.0 * total;
}

}  // namespace

IntegralResult rho_A_squared(const ShapeFunction& s, std::size_t panels)
{
    bool truncated = false;
    const double amax = sup_norm_A(s);
    const double L = rho_range(s, amax, truncated);
    const double coarse = rho_sq_panels(s, L, panels);
    const double fine = rho_sq_panels(s, L, 2 * panels);
    IntegralResult r;
    r.value = fine;
    r.abs_error = std::fabs(fine - coarse);
    r.converged = !truncated && r.abs_error <= 1e-8 * std::max(1.0, std::fabs(fine)) * 1e3;
    return r;
}

double rho_A(const ShapeFunction& s)
{
    return std::sqrt(std::max(0.0, rho_A_squared(s).value));
}

double e_gk(const ShapeFunction& s, double kappa)
{
    if (!(kappa > 0.0 && kappa < 0.5)) {
        throw std::invalid_argument("e_gk: kappa must lie in (0, 1/2)");
    }
    const double m = sup_abs_Astar(s, Domain::symmetric(kappa)).m0;
    const double a = sup_norm_A(s);
    return m * m / (4.0 * a * a);
}

double e_ek(const ShapeFunction& s)
{
    if (s.conditions() && !s.conditions()->astar_vanishes) {
        throw UndefinedEfficiency("e_EK undefined for " + s.name() +
                                  ": A* does not vanish at the ends; see the weak slope report");
    }
    const SupResult sr = sup_abs_Astar(s);
    if (sr.diverges || sr.edge_limit) {
        throw UndefinedEfficiency("e_EK undefined for " + s.name() + ": sup |A*| is not attained inside (0,1)");
    }
    const double a = sup_norm_A(s);
    const double e = sr.m0 * sr.m0 / (4.0 * a * a);
    if (e < 1.0 - 1e-9) {
        throw std::logic_error("e_EK below 1 for " + s.name() + ": numerical failure");
    }
    return e;
}

double e_ik(const ShapeFunction& s)
{
    if (s.conditions() && !s.conditions()->integrable) {
        throw UndefinedEfficiency("e_IK undefined for " + s.name() + ": A fails the integrability condition");
    }
    const IntegralResult l2 = l2_Astar_squared(s);
    if (!l2.converged) {
        throw UndefinedEfficiency("e_IK for " + s.name() + ": integral of A^2/(t(1-t)) did not converge");
    }
    const double a = sup_norm_A(s);
    return l2.value / (2.0 * a * a);
}

double asymptotic_power_I(double l2_astar, double rho, double w)
{
    return normal_cdf(w * l2_astar / rho);
}

double asymptotic_power_I(const ShapeFunction& s, double w)
{
    return asymptotic_power_I(std::sqrt(l2_Astar_squared(s).value), rho_A(s), w);
}

WeakSlopeReport weak_slope_heavy_tail(const ShapeFunction& s, const RateRule& kappa_rule,
                                      const std::vector<double>& n_grid, const RateRule& theta_rule)
{
    WeakSlopeReport r;
    const SupResult global = sup_abs_Astar(s);
    r.bounded = s.conditions() ? s.conditions()->astar_vanishes : !(global.diverges || global.edge_limit);
    r.m0 = global.m0;
    for (double n : n_grid) {
        const double kappa = kappa_rule(n);
        if (!(kappa > 0.0 && kappa < 0.5)) {
            throw std::invalid_argument("kappa rule gives " + std::to_string(kappa) + " at n = " + std::to_string(n));
        }
        const double m = sup_abs_Astar(s, Domain::symmetric(kappa)).m0;
        const double th = theta_rule(n);
        r.points.push_back({n, kappa, m, th, n * th * th * m * m / 2.0});
    }
    r.strictly_increasing = r.points.size() > 1;
    for (std::size_t i = 1; i < r.points.size(); ++i) {
        r.strictly_increasing = r.strictly_increasing && r.points[i].m_n > r.points[i - 1].m_n;
    }
    return r;
}

EfficiencyReport efficiency_report(const ShapeFunction& s, const std::vector<double>& kappas)
{
    EfficiencyReport r;
    r.name = s.name();
    r.theta = s.theta();
    r.conditions = s.conditions();
    r.sup_astar = sup_abs_Astar(s);
    r.sup_A_inf = sup_norm_A(s);
    const double a2 = r.sup_A_inf * r.sup_A_inf;
    for (double k : kappas) {
        const double m = sup_abs_Astar(s, Domain::symmetric(k)).m0;
        r.e_GK.emplace_back(k, m * m / (4.0 * a2));
        r.level_G.emplace_back(k, m * m / 2.0);
    }
    r.level_K = 2.0 * a2;
    r.level_E = r.sup_astar.m0 * r.sup_astar.m0 / 2.0;

    try {
        r.e_EK = e_ek(s);
        r.e_EK_defined = true;
    } catch (const UndefinedEfficiency& e) {
        r.notes += std::string(e.what()) + "; ";
    }

    const bool integrable = !s.conditions() || s.conditions()->integrable.has_value();
    r.l2_sq = l2_Astar_squared(s);
    r.l2_Astar = std::sqrt(r.l2_sq.value);
    r.level_I = r.l2_sq.value;
    if (integrable) {
        try {
            r.e_IK = e_ik(s);
            r.e_IK_defined = true;
        } catch (const UndefinedEfficiency& e) {
            r.notes += std::string(e.what()) + "; ";
        }
        r.rho_sq = rho_A_squared(s);
        r.rho_A = std::sqrt(std::max(0.0, r.rho_sq.value));
        if (!r.rho_sq.converged) {
            r.notes += "rho_A accuracy not confirmed (truncated tail or panel mismatch); ";
        }
    } else {
        r.notes += "A fails the integrability condition: e_IK and rho_A undefined; ";
    }
    if (s.conditions() && s.conditions()->power_decay) {
        r.e_MK = 0.0;
    }
    if (s.conditions() && !s.conditions()->warning.empty()) {
        r.notes += s.conditions()->warning + "; ";
    }
    return r;
}

}  // namespace wgof
