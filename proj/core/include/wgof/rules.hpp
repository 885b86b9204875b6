#pragma once

#include <string>

namespace wgof {

/// A sequence r(n) = c * n^a * (log n)^b * (log log n)^d.
///
/// Kept symbolic so that asymptotic comparisons between two rules reduce to
/// comparing exponents, which a finite n grid cannot do reliably.
struct RateRule {
    double c = 1.0;
    double a = 0.0;
    double b = 0.0;
    double d = 0.0;
    std::string name;  // short label such as "o" or "star"; empty for anonymous rules

    double operator()(double n) const;

    /// Canonical text form; parse(to_string()) round-trips.
    std::string to_string() const;

    /// Accepts "o", "star", or a product of factors separated by '*':
    /// a number, "n^x", "log(n)^x" and "loglog(n)^x". A bare factor without
    /// '^' has exponent 1, e.g. "1.2*n^-0.25".
    static RateRule parse(const std::string& text);

    /// 0.5 * n^(-1/2).
    static RateRule kappa_o();
    /// n^(-9/10).
    static RateRule kappa_star();

    /// Product and quotient, exponents add.
    RateRule operator*(const RateRule& other) const;
    RateRule operator/(const RateRule& other) const;
    RateRule pow(double e) const;
};

/// Sign of lim r(n) in the (log n) scale: +1 if r -> infinity, -1 if r -> 0,
/// 0 if r converges to a positive constant.
int limit_direction(const RateRule& r);

}  // namespace wgof
