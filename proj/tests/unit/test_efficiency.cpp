#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wgof/efficiency.hpp"
#include "wgof/models.hpp"
#include "wgof/shape.hpp"

namespace {

using namespace wgof;

const boost::math::normal_distribution<double> kStd;

ShapeFunction parabola()
{
    return ShapeFunction::synthetic("t(1-t)", [](double t, double tc) { return t * tc; },
                                    ShapeFunction::Fn([](double t, double tc) { return tc - t; }));
}

// Brute-force |A*| and |A| over a z grid for a Gaussian-null model with
// comparison CDF H(Phi(z)) = G(z).
struct GridFunctionals {
    double t0, m0, a_inf;
};

template <class G>
GridFunctionals z_grid(G cdf_alt, double theta, double zlo, double zhi, std::size_t points)
{
    GridFunctionals r{0, 0, 0};
    for (std::size_t k = 0; k < points; ++k) {
        const double z = zlo + (zhi - zlo) * static_cast<double>(k) / (points - 1);
        const double t = boost::math::cdf(kStd, z);
        const double tc = boost::math::cdf(boost::math::complement(kStd, z));
        const double A = (cdf_alt(z) - t) / theta;
        const double as = std::fabs(A) / std::sqrt(t * tc);
        if (as > r.m0) {
            r.m0 = as;
            r.t0 = t;
        }
        r.a_inf = std::max(r.a_inf, std::fabs(A));
    }
    return r;
}

TEST(Efficiency, AnalyticAnchors)
{
    const auto s = parabola();
    const auto sup = sup_abs_Astar(s);
    EXPECT_NEAR(sup.t0, 0.5, 1e-8);
    EXPECT_NEAR(sup.m0, 0.5, 1e-12);
    EXPECT_FALSE(sup.diverges);
    EXPECT_NEAR(sup_norm_A(s), 0.25, 1e-12);
    EXPECT_NEAR(e_ek(s), 1.0, 1e-10);
    EXPECT_NEAR(e_gk(s, 0.25), 1.0, 1e-10);
    EXPECT_NEAR(e_ik(s), 4.0 / 3.0, 1e-10);
    EXPECT_NEAR(rho_A(s), 1.0 / std::sqrt(12.0), 1e-10);
    EXPECT_NEAR(asymptotic_power_I(s, 0.0), 0.5, 1e-15);
    EXPECT_NEAR(asymptotic_power_I(s, 1.0), 0.921350, 1e-6);
    double prev = 0.0;
    for (double w : {0.1, 0.5, 1.0, 2.0}) {
        const double p = asymptotic_power_I(s, w);
        EXPECT_GT(p, prev);
        prev = p;
    }
}

TEST(Efficiency, ScaleInvariance)
{
    const auto s = shape(AlternativeModel::m2(0.75));
    const auto c = s.scaled(4.5);
    EXPECT_NEAR(e_ek(c) / e_ek(s), 1.0, 1e-10);
    EXPECT_NEAR(e_ik(c) / e_ik(s), 1.0, 1e-10);
    EXPECT_NEAR(e_gk(c, 0.1) / e_gk(s, 0.1), 1.0, 1e-10);
    EXPECT_NEAR(rho_A(c) / rho_A(s), 4.5, 1e-9);
}

TEST(Efficiency, ShiftSupMatchesTenMillionPointGrid)
{
    const double mu = 0.15;
    const auto s = shape(AlternativeModel::m1(mu));
    const double theta = 2.0 * (2.0 * boost::math::cdf(kStd, mu / 2.0) - 1.0);
    const auto g = z_grid([&](double z) { return boost::math::cdf(kStd, z - mu); }, theta, -9.0, 9.0, 10000000);
    const auto sup = sup_abs_Astar(s);
    EXPECT_NEAR(sup.m0 / g.m0, 1.0, 1e-6);
    EXPECT_NEAR(sup.t0, g.t0, 1e-5);
    EXPECT_NEAR(sup_norm_A(s) / g.a_inf, 1.0, 1e-6);
    EXPECT_GE(sup.m0, g.m0 * (1 - 1e-12));
}

TEST(Efficiency, ScaleModelEfficiencyMatchesGrid)
{
    for (double sigma : {0.75, 1.25}) {
        const auto s = shape(AlternativeModel::m2(sigma));
        const auto g = z_grid([&](double z) { return boost::math::cdf(kStd, z / sigma); }, s.theta(), -12.0, 12.0,
                              4000001);
        const double grid_e = g.m0 * g.m0 / (4.0 * g.a_inf * g.a_inf);
        EXPECT_NEAR(e_ek(s) / grid_e, 1.0, 1e-6) << sigma;
        EXPECT_GT(e_ek(s), 1.0);
    }
}

TEST(Efficiency, L2NormMatchesZSpaceQuadrature)
{
    using boost::math::quadrature::gauss_kronrod;
    for (double mu : {0.15, 2.0}) {
        const auto s = shape(AlternativeModel::m1(mu));
        const double theta = s.theta();
        auto f = [&](double z) {
            const double t = boost::math::cdf(kStd, z);
            const double tc = boost::math::cdf(boost::math::complement(kStd, z));
            const double d = z <= 0 ? boost::math::cdf(kStd, z - mu) - t
                                    : tc - boost::math::cdf(boost::math::complement(kStd, z - mu));
            const double A = d / theta;
            return A * A / (t * tc) * boost::math::pdf(kStd, z);
        };
        const double ref = gauss_kronrod<double, 61>::integrate(f, -37.0, 37.0, 25, 1e-14);
        EXPECT_NEAR(l2_Astar_squared(s).value, ref, 1e-6) << mu;
    }
}

TEST(Efficiency, RhoMatchesVarianceForm)
{
    const auto p = parabola();
    EXPECT_NEAR(rho_A_squared(p).value, oracle::rho_squared_variance([](double t) { return t * (1 - t); }), 1e-7);
    for (const auto& m : {AlternativeModel::m1(0.15), AlternativeModel::m2(0.75), AlternativeModel::m2(1.25),
                          AlternativeModel::m5(0.8, 0.2)}) {
        const auto s = shape(m);
        const double ref = oracle::rho_squared_variance([&](double t) { return s.A(t, 1.0 - t); });
        const auto r = rho_A_squared(s);
        EXPECT_TRUE(r.converged) << m.to_string();
        EXPECT_NEAR(std::sqrt(r.value), std::sqrt(ref), 1e-4) << m.to_string();
        EXPECT_LE(r.value, l2_Astar_squared(s).value * (1 + 1e-9)) << m.to_string();
    }
}

TEST(Efficiency, OrderingInequalities)
{
    for (const auto& m : {AlternativeModel::m1(0.15), AlternativeModel::m2(0.75), AlternativeModel::m2(1.25),
                          AlternativeModel::m3(0.05, 2.0), AlternativeModel::m4(1.5, 0.2),
                          AlternativeModel::m5(0.8, 0.1)}) {
        const auto s = shape(m);
        const double ee = e_ek(s);
        EXPECT_GE(ee, 1.0 - 1e-9) << m.to_string();
        double prev = INFINITY;
        for (double k : {0.01, 0.05, 0.1, 0.25}) {
            const double g = e_gk(s, k);
            EXPECT_GE(ee, g - 1e-9) << m.to_string();
            EXPECT_LE(g, prev + 1e-12);
            prev = g;
        }
        EXPECT_LE(e_ik(s), 2.0 * ee + 1e-9) << m.to_string();
    }
}

TEST(Efficiency, ContaminationEqualsShiftExactly)
{
    const std::vector<double> kappas{0.01, 0.05, 0.1, 0.25};
    const auto a = efficiency_report(shape(AlternativeModel::m3(0.05, 2.0)), kappas);
    const auto b = efficiency_report(shape(AlternativeModel::m1(2.0)), kappas);
    EXPECT_EQ(a.sup_astar.m0, b.sup_astar.m0);
    EXPECT_EQ(a.sup_astar.t0, b.sup_astar.t0);
    EXPECT_EQ(*a.e_EK, *b.e_EK);
    EXPECT_EQ(*a.e_IK, *b.e_IK);
    EXPECT_EQ(a.rho_A, b.rho_A);
    for (std::size_t i = 0; i < kappas.size(); ++i) {
        EXPECT_EQ(a.e_GK[i].second, b.e_GK[i].second);
    }
}

TEST(Efficiency, TruncatedStepShapeHasSmallRestrictedEfficiency)
{
    const double kappa = 0.1;
    double prev = INFINITY;
    for (double delta : {0.05, 0.01, 0.001}) {
        const double c = 0.5 * (kappa + delta);
        auto A = [c](double t, double) { return t <= c ? t : std::max(0.0, 2.0 * c - t); };
        const auto s = ShapeFunction::synthetic("step", A);
        const double g = e_gk(s, kappa);
        EXPECT_LT(g, prev);
        prev = g;
    }
    EXPECT_LT(prev, 0.01);
}

TEST(Efficiency, UndefinedWhenAStarDoesNotVanish)
{
    const auto s = shape(AlternativeModel::m5(0.3, 0.1));
    const auto sup = sup_abs_Astar(s);
    EXPECT_TRUE(sup.diverges);
    EXPECT_LT(sup.t0, 1e-6);
    EXPECT_THROW(e_ek(s), UndefinedEfficiency);
    EXPECT_THROW(e_ek(shape(AlternativeModel::m4(2.0, 0.1))), UndefinedEfficiency);
    EXPECT_THROW(e_ik(shape(AlternativeModel::m7(2.0, 0.1))), UndefinedEfficiency);
    EXPECT_NO_THROW(e_gk(s, 0.05));
    const auto edge = sup_abs_Astar(shape(AlternativeModel::m4(2.0, 0.1)));
    EXPECT_TRUE(edge.edge_limit);
    // A* tends to sqrt(pi)/theta with theta = 4 * pi / 4 for beta = 2.
    EXPECT_NEAR(edge.m0, std::sqrt(0.1) / 0.1, 1e-4);
}

TEST(WeakSlope, HeavyTailGrowsShiftStabilizes)
{
    const std::vector<double> grid{1e2, 1e3, 1e4, 1e5, 1e6};
    const auto theta = RateRule::parse("n^-0.5");
    const auto heavy = weak_slope_heavy_tail(shape(AlternativeModel::m5(0.3, 0.1)), RateRule::kappa_star(), grid, theta);
    EXPECT_TRUE(heavy.strictly_increasing);
    EXPECT_FALSE(heavy.bounded);
    const auto light = weak_slope_heavy_tail(shape(AlternativeModel::m1(0.15)), RateRule::kappa_star(), grid, theta);
    EXPECT_TRUE(light.bounded);
    EXPECT_NEAR(light.points.back().m_n, light.m0, 1e-6);
    EXPECT_NEAR(light.points[3].m_n, light.points[4].m_n, 1e-6);
}

TEST(WeakSlope, TailModelGrowthExponent)
{
    // Below pi the shape is (pi^(2/3) t^(1/3) - t)/theta, so m_n grows like kappa_n^(-1/6).
    const std::vector<double> grid{1e4, 1e5, 1e6, 1e7};
    const auto r = weak_slope_heavy_tail(shape(AlternativeModel::m4(3.0, 0.1)), RateRule::kappa_star(), grid,
                                         RateRule::parse("n^-0.5"));
    for (std::size_t i = 1; i < r.points.size(); ++i) {
        const double slope = std::log(r.points[i].m_n / r.points[i - 1].m_n) /
                             std::log(r.points[i].kappa / r.points[i - 1].kappa);
        EXPECT_NEAR(slope, -1.0 / 6.0, 0.01);
    }
}

TEST(EfficiencyReport, LevelsAndFlags)
{
    const auto s = parabola();
    const auto r = efficiency_report(s, {0.25});
    EXPECT_TRUE(r.e_EK_defined);
    EXPECT_NEAR(r.level_K, 2.0 * 0.0625, 1e-12);
    EXPECT_NEAR(r.level_E, 0.125, 1e-12);
    EXPECT_NEAR(r.level_I, 1.0 / 6.0, 1e-9);
    const auto h = efficiency_report(shape(AlternativeModel::m6(1.0, 0.1)), {0.05});
    EXPECT_FALSE(h.e_EK_defined);
    EXPECT_FALSE(h.notes.empty());
}

}  // namespace
