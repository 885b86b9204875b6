#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

namespace {

double logit(double t) { return std::log(t) - std::log1p(-t); }

struct Pt {
    double t, tc;
};

Pt sigmoid(double x)
{
    if (x >= 0) {
        const double e = std::exp(-x);
        return {1.0 / (1.0 + e), e / (1.0 + e)};
    }
    const double e = std::exp(x);
    return {e / (1.0 + e), 1.0 / (1.0 + e)};
}

double weighted(double F, Pt p, double tau, double rn)
{
    const double dev = F <= 0.5 ? std::fabs(F - p.t) : std::fabs((1.0 - F) - p.tc);
    return tau == 0.0 ? rn * dev : rn * dev / std::pow(p.t * p.tc, tau);
}

}  // namespace

GridSup weighted_sup(std::span<const double> u, double tau, double lo, std::size_t points, bool jumps)
{
    const std::size_t n = u.size();
    const double rn = std::sqrt(static_cast<double>(n));
    double x0, x1;
    if (lo > 0.0) {
        x0 = logit(lo);
        x1 = -x0;
    } else {
        // Below U_(1) the deviation is sqrt(n) t^(1-tau) (1-t)^(-tau), increasing in
        // t; above U_(n) it mirrors. One logit unit of margin covers both ends.
        x0 = logit(u.front()) - 1.0;
        x1 = logit(u.back()) + 1.0;
    }
    const double h = (x1 - x0) / static_cast<double>(points - 1);

    std::vector<double> g(points);
    std::size_t count = 0;  // observations <= t
    for (std::size_t k = 0; k < points; ++k) {
        const double x = k + 1 == points ? x1 : x0 + h * static_cast<double>(k);
        Pt p = sigmoid(x);
        if (lo > 0.0 && k == 0) {
            p = {lo, 1.0 - lo};
        } else if (lo > 0.0 && k + 1 == points) {
            p = {1.0 - lo, lo};
        }
        while (count < n && u[count] <= p.t) {
            ++count;
        }
        g[k] = weighted(static_cast<double>(count) / static_cast<double>(n), p, tau, rn);
    }
    GridSup out;
    out.value = *std::max_element(g.begin(), g.end());

    if (jumps) {
        for (std::size_t i = 0; i < n; ++i) {
            const double t = u[i];
            if (lo > 0.0 && (t < lo || t > 1.0 - lo)) {
                continue;
            }
            const Pt p{t, 1.0 - t};
            const auto below = std::lower_bound(u.begin(), u.end(), t) - u.begin();
            const auto upto = std::upper_bound(u.begin(), u.end(), t) - u.begin();
            out.value = std::max(out.value, weighted(static_cast<double>(below) / n, p, tau, rn));
            out.value = std::max(out.value, weighted(static_cast<double>(upto) / n, p, tau, rn));
        }
        return out;
    }

    double worst = out.value;
    for (std::size_t k = 0; k + 1 < points; ++k) {
        const double xa = x0 + h * static_cast<double>(k);
        const double xb = xa + h;
        double q;
        if (xa <= 0.0 && xb >= 0.0) {
            q = 0.25;
        } else {
            const Pt p = sigmoid(std::fabs(xa) < std::fabs(xb) ? xa : xb);
            q = p.t * p.tc;
        }
        const double slope = rn * std::pow(q, 1.0 - tau) + tau * out.value;
        const double err = h * slope / (1.0 - tau * h);
        worst = std::max(worst, std::max(g[k], g[k + 1]) + err);
    }
    out.bound = worst - out.value;
    return out;
}

double ad_integral(std::span<const double> u)
{
    using boost::math::quadrature::gauss_kronrod;
    const std::size_t n = u.size();
    double total = 0.0;
    // On a gap with F_n = c the integrand (c - t)^2 / (t(1-t)) has 1/t or
    // 1/(1-t) behaviour; s = log t below 1/2 and s = log(1-t) above make it smooth.
    auto lower = [&](double a, double b, double c) {
        auto f = [c](double s) {
            const double t = std::exp(s);
            return (c - t) * (c - t) / (1.0 - t);
        };
        const double la = a > 0.0 ? std::log(a) : -745.0;
        total += gauss_kronrod<double, 61>::integrate(f, la, std::log(b), 8, 1e-11);
    };
    auto upper = [&](double a, double b, double c) {
        auto f = [c](double s) {
            const double tc = std::exp(s);
            const double d = (c - 1.0) + tc;
            return d * d / (1.0 - tc);
        };
        const double lb = b < 1.0 ? std::log1p(-b) : -745.0;
        total += gauss_kronrod<double, 61>::integrate(f, lb, std::log1p(-a), 8, 1e-11);
    };
    auto piece = [&](double a, double b, double c) {
        if (!(b > a)) {
            return;
        }
        if (b <= 0.5) {
            lower(a, b, c);
        } else if (a >= 0.5) {
            upper(a, b, c);
        } else {
            lower(a, 0.5, c);
            upper(0.5, b, c);
        }
    };
    piece(0.0, u[0], 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        piece(u[i], u[i + 1], static_cast<double>(i + 1) / static_cast<double>(n));
    }
    piece(u[n - 1], 1.0, 1.0);
    return std::sqrt(static_cast<double>(n) * total);
}

double kolmogorov_cdf(double x)
{
    if (x <= 0.0) {
        return 0.0;
    }
    double s = 0.0;
    for (int j = 1; j <= 200; ++j) {
        const double term = std::exp(-2.0 * j * j * x * x);
        s += (j % 2 == 1 ? term : -term);
        if (term < 1e-300) {
            break;
        }
    }
    return 1.0 - 2.0 * s;
}

double kolmogorov_quantile(double p)
{
    double lo = 0.2, hi = 5.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (kolmogorov_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double rho_squared_variance(const std::function<double(double)>& A, double R, std::size_t steps)
{
    // Q(x) = integral from 0 to x of A(sigmoid(v)) dv, since dt/(t(1-t)) = dv.
    const double h = 2.0 * R / static_cast<double>(steps);
    std::vector<double> fa(steps + 1), w(steps + 1), Q(steps + 1, 0.0);
    for (std::size_t k = 0; k <= steps; ++k) {
        const Pt p = sigmoid(-R + h * static_cast<double>(k));
        fa[k] = A(p.t);
        w[k] = p.t * p.tc;
    }
    const std::size_t mid = steps / 2;
    for (std::size_t k = mid + 1; k <= steps; ++k) {
        Q[k] = Q[k - 1] + 0.5 * h * (fa[k - 1] + fa[k]);
    }
    for (std::size_t k = mid; k-- > 0;) {
        Q[k] = Q[k + 1] - 0.5 * h * (fa[k + 1] + fa[k]);
    }
    // Simpson for the moments against dt = w dx.
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t k = 0; k <= steps; ++k) {
        const double c = (k == 0 || k == steps) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        m1 += c * Q[k] * w[k];
        m2 += c * Q[k] * Q[k] * w[k];
    }
    m1 *= h / 3.0;
    m2 *= h / 3.0;
    return m2 - m1 * m1;
}

double l1_from_normal(const std::function<double(double)>& f, std::span<const double> breaks)
{
    using boost::math::quadrature::gauss_kronrod;
    const double inv = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    auto g = [&](double z) { return f(z) - inv * std::exp(-0.5 * z * z); };
    // Pieces on which f - phi keeps its sign: given breakpoints plus the
    // crossings found on a grid and bisected.
    std::vector<double> cuts(breaks.begin(), breaks.end());
    constexpr double kLim = 40.0;
    constexpr int kGrid = 80001;
    double prev_x = -kLim, prev_g = g(prev_x);
    for (int k = 1; k < kGrid; ++k) {
        const double x = -kLim + 2.0 * kLim * k / (kGrid - 1);
        const double gx = g(x);
        if ((gx > 0) != (prev_g > 0) && gx != 0.0 && prev_g != 0.0) {
            double lo = prev_x, hi = x;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (lo + hi);
                ((g(mid) > 0) == (prev_g > 0) ? lo : hi) = mid;
            }
            cuts.push_back(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_g = gx;
    }
    std::sort(cuts.begin(), cuts.end());
    const double inf = std::numeric_limits<double>::infinity();
    auto piece = [&](double a, double b) { return std::fabs(gauss_kronrod<double, 61>::integrate(g, a, b, 10, 1e-13)); };
    // Algebraic tails need a double-exponential rule.
    boost::math::quadrature::exp_sinh<double> tail;
    const double lo = cuts.front(), hi = cuts.back();
    double total = std::fabs(tail.integrate([&](double x) { return g(lo - x); }, 0.0, inf)) +
                   std::fabs(tail.integrate([&](double x) { return g(hi + x); }, 0.0, inf));
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        total += piece(cuts[i], cuts[i + 1]);
    }
    return total;
}

}  // namespace oracle
