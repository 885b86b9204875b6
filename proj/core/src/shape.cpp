#include "wgof/shape.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "wgof/rng.hpp"

namespace wgof {

namespace {

// Grid half-width in the substituted variable: t = Phi(-38.5) and
// t = e^-740 are both near the bottom of the double range.
double grid_limit(UnitMap map) noexcept
{
    return map == UnitMap::Probit ? 38.0 : 740.0;
}

int sign_of(double v) noexcept
{
    if (std::isnan(v)) {
        return 0;
    }
    return (v > 0.0) - (v < 0.0);
}

}  // namespace

ShapeFunction::ShapeFunction(std::string name, Fn A, std::optional<Fn> a, double theta, UnitMap map,
                             std::optional<ConditionReport> conditions)
    : name_(std::move(name)), A_(std::move(A)), a_(std::move(a)), theta_(theta), map_(map),
      conditions_(std::move(conditions))
{
    if (!(theta_ > 0.0) || !std::isfinite(theta_)) {
        throw std::invalid_argument("shape " + name_ + ": theta must be positive and finite");
    }
}

ShapeFunction ShapeFunction::synthetic(std::string name, Fn A, std::optional<Fn> a, UnitMap map)
{
    constexpr int kPoints = 20001;
    const double lim = map == UnitMap::Probit ? 38.0 : 60.0;
    double tv = 0.0;
    double prev = 0.0;
    for (int k = 0; k < kPoints; ++k) {
        const double x = -lim + 2.0 * lim * k / (kPoints - 1);
        const UnitPoint p = map_to_unit(map, x);
        const double v = A(p.t, p.tc);
        tv += std::fabs(v - prev);
        prev = v;
    }
    tv += std::fabs(prev);
    if (!(tv > 0.0)) {
        throw std::invalid_argument("shape " + name + " is identically zero");
    }
    return ShapeFunction(std::move(name), std::move(A), std::move(a), tv, map);
}

double ShapeFunction::a(double t, double tc) const
{
    if (!a_) {
        throw std::logic_error("shape " + name_ + " has no density attached");
    }
    return (*a_)(t, tc);
}

ShapeFunction ShapeFunction::scaled(double c) const
{
    Fn A = [f = A_, c](double t, double tc) { return c * f(t, tc); };
    std::optional<Fn> a;
    if (a_) {
        a = [f = *a_, c](double t, double tc) { return c * f(t, tc); };
    }
    return ShapeFunction(name_, std::move(A), std::move(a), theta_ * std::fabs(c), map_, conditions_);
}

double theta_norm(const AlternativeModel& m)
{
    const UnitMap map = m.natural_map();
    const double lim = grid_limit(map);
    constexpr int kPoints = 16001;

    auto slope_sign = [&](double x) {
        const UnitPoint p = map_to_unit(map, x);
        return sign_of(m.density(p.t, p.tc) - 1.0);
    };
    auto dep = [&](double x) {
        const UnitPoint p = map_to_unit(map, x);
        return m.departure(p.t, p.tc);
    };

    // Breakpoints between which H - t is monotone.
    std::vector<double> breaks;
    double x_prev = -lim;
    int s_prev = slope_sign(x_prev);
    for (int k = 1; k < kPoints; ++k) {
        const double x = -lim + 2.0 * lim * k / (kPoints - 1);
        const int s = slope_sign(x);
        if (s != s_prev && s != 0 && s_prev != 0) {
            double lo = x_prev, hi = x;
            for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + std::fabs(lo)); ++it) {
                const double mid = 0.5 * (lo + hi);
                if (slope_sign(mid) == s_prev) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            breaks.push_back(lo);
            breaks.push_back(hi);
        } else if (s == 0 && s_prev != 0) {
            breaks.push_back(x);
        }
        if (s != 0) {
            s_prev = s;
        }
        x_prev = x;
    }

    double tv = 0.0;
    double prev = 0.0;  // H - t vanishes at both ends
    for (double x : breaks) {
        const double v = dep(x);
        tv += std::fabs(v - prev);
        prev = v;
    }
    tv += std::fabs(prev);
    return tv;
}

ShapeFunction shape(const AlternativeModel& m)
{
    if (m.is_null()) {
        throw std::invalid_argument("model " + m.to_string() + " equals the null; its shape is identically zero");
    }
    if (m.family() == Family::M3_CONTAM) {
        // The contamination weight cancels in the normalization: the shape is that of the shift model.
        const double p = m.params()[0].second;
        const ShapeFunction base = shape(AlternativeModel::m1(m.params()[1].second));
        return ShapeFunction(m.to_string(), [base](double t, double tc) { return base.A(t, tc); },
                             ShapeFunction::Fn([base](double t, double tc) { return base.a(t, tc); }),
                             p * base.theta(), base.map(), m.conditions());
    }
    const double theta = theta_norm(m);
    ShapeFunction::Fn A = [m, theta](double t, double tc) { return m.departure(t, tc) / theta; };
    ShapeFunction::Fn a = [m, theta](double t, double tc) { return (m.density(t, tc) - 1.0) / theta; };
    return ShapeFunction(m.to_string(), std::move(A), std::move(a), theta, m.natural_map(), m.conditions());
}

LocalPath::LocalPath(const AlternativeModel& model, double theta) : model_(model), theta_(theta), weight_(0.0)
{
    if (!(theta > 0.0 && theta < 1.0)) {
        throw std::invalid_argument("local path weight theta must lie in (0, 1)");
    }
    if (model.is_null()) {
        throw std::invalid_argument("local path needs a non-null model");
    }
    weight_ = theta / theta_norm(model);
    if (!(weight_ <= 1.0)) {
        throw std::invalid_argument("theta = " + std::to_string(theta) + " exceeds the L1 norm of " +
                                    model.to_string() + "; the path leaves the set of distributions");
    }
    constexpr int kPoints = 10001;
    double prev = 0.0;
    for (int k = 1; k < kPoints; ++k) {
        const double v = cdf(static_cast<double>(k) / kPoints);
        if (v < prev) {
            throw std::invalid_argument("local path CDF decreases near t = " + std::to_string(double(k) / kPoints));
        }
        prev = v;
    }
    if (cdf(1e-300) > 1e-6 || cdf(1.0 - 0x1.0p-53) < 1.0 - 1e-6) {
        throw std::invalid_argument("local path CDF does not run from 0 to 1");
    }
}

double LocalPath::cdf(double t) const
{
    return t + weight_ * model_.departure(t, 1.0 - t);
}

double LocalPath::draw(RandomStream& rng) const
{
    return rng.bernoulli(weight_) ? model_.draw(rng) : rng.uniform();
}

void LocalPath::sample_sorted(RandomStream& rng, std::size_t n, std::vector<double>& out) const
{
    out.resize(n);
    for (auto& x : out) {
        x = draw(rng);
    }
    std::sort(out.begin(), out.end());
}

}  // namespace wgof
