#include "wgof/normal.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace wgof {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

// Central region, |p - 1/2| <= 0.425.
double ppnd16_central(double q) noexcept
{
    const double r = 0.180625 - q * q;
    const double num =
        ((((((r * 2509.0809287301226727 + 33430.575583588128105) * r + 67265.770927008700853) * r +
            45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
         133.14166789178437745) * r + 3.387132872796366608;
    const double den =
        ((((((r * 5226.495278852545925 + 28729.085735721942674) * r + 39307.89580009271061) * r +
            21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
         42.313330701600911252) * r + 1.0;
    return q * num / den;
}

// Tail region; tail is the smaller of p and 1 - p, returns a positive value.
double ppnd16_tail(double tail) noexcept
{
    double r = std::sqrt(-std::log(tail));
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            ((((((r * 7.7454501427834140764e-4 + 0.0227238449892691845833) * r + 0.24178072517745061177) * r +
                1.27045825245236838258) * r + 3.64784832476320460504) * r + 5.7694972214606914055) * r +
             4.6303378461565452959) * r + 1.42343711074968357734;
        const double den =
            ((((((r * 1.05075007164441684324e-9 + 5.475938084995344946e-4) * r + 0.0151986665636164571966) * r +
                0.14810397642748007459) * r + 0.68976733498510000455) * r + 1.6763848301838038494) * r +
             2.05319162663775882187) * r + 1.0;
        return num / den;
    }
    r -= 5.0;
    const double num =
        ((((((r * 2.01033439929228813265e-7 + 2.71155556874348757815e-5) * r + 0.0012426609473880784386) * r +
            0.026532189526576123093) * r + 0.29656057182850489123) * r + 1.7848265399172913358) * r +
         5.4637849111641143699) * r + 6.6579046435011037772;
    const double den =
        ((((((r * 2.04426310338993978564e-15 + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
            7.868691311456132591e-4) * r + 0.0148753612908506148525) * r + 0.13692988092273580531) * r +
         0.59983220655588793769) * r + 1.0;
    return num / den;
}

}  // namespace

double normal_pdf(double x) noexcept
{
    return std::exp(-0.5 * x * x - kLogSqrt2Pi);
}

double normal_log_pdf(double x) noexcept
{
    return -0.5 * x * x - kLogSqrt2Pi;
}

double normal_cdf(double x) noexcept
{
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

double normal_sf(double x) noexcept
{
    return 0.5 * std::erfc(x * kInvSqrt2);
}

double normal_quantile(double p) noexcept
{
    if (std::isnan(p) || p < 0.0 || p > 1.0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (p == 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    if (p == 1.0) {
        return std::numeric_limits<double>::infinity();
    }
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        return ppnd16_central(q);
    }
    return q < 0.0 ? -ppnd16_tail(p) : ppnd16_tail(1.0 - p);
}

double normal_quantile_upper(double q) noexcept
{
    if (std::isnan(q) || q < 0.0 || q > 1.0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (q == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    if (q == 1.0) {
        return -std::numeric_limits<double>::infinity();
    }
    const double d = 0.5 - q;
    if (std::fabs(d) <= 0.425) {
        return ppnd16_central(d);
    }
    return d < 0.0 ? -ppnd16_tail(1.0 - q) : ppnd16_tail(q);
}

double probit(double t, double tc) noexcept
{
    return t <= 0.5 ? normal_quantile(t) : normal_quantile_upper(tc);
}

}  // namespace wgof
