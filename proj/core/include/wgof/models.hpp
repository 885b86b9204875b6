#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wgof/quadrature.hpp"

namespace wgof {

class RandomStream;

enum class Family {
    M1_SHIFT,     ///< N(mu, 1) against N(0, 1)
    M2_SCALE,     ///< N(0, sigma^2) against N(0, 1)
    M3_CONTAM,    ///< (1 - p) N(0, 1) + p N(mu, 1)
    M4_TAIL,      ///< mass moved into the tails of U(0, 1)
    M5_LEHMANN,   ///< (1 - p) t + p t^delta
    M6_SUBBOTIN,  ///< (1 - p) N(0, 1) + p Subbotin(gamma)
    M7_PARETO,    ///< (1 - p) N(0, 1) + p symmetric Pareto(zeta)
};

/// Interval of admissible exponents with open/closed ends.
struct ParamRange {
    double lo = 0.0;
    double hi = 0.5;
    bool lo_closed = false;
    bool hi_closed = false;

    bool contains(double x) const noexcept;
    std::string to_string() const;
};

/// Tail conditions on a shape function A.
struct ConditionReport {
    /// A*(t) = A(t)/sqrt(t(1-t)) tends to 0 at both ends.
    bool astar_vanishes = false;
    /// Exponents w with sup |A(t)| / [t(1-t)]^(1-w) finite; empty if none in [0, 1/2).
    std::optional<ParamRange> power_decay;
    /// Exponents l in (0, 1/2) with the integral of |A|^(2l) / (t(1-t)) finite.
    std::optional<ParamRange> integrable;
    /// Numerical endpoint check of A*, independent of the catalog.
    bool numeric_astar_vanishes = false;
    /// Set when the numerical check disagrees with the catalog (catalog wins).
    std::string warning;
};

/// One of the alternative families on (0,1), seen through the null
/// probability integral transform.
///
/// Points of (0,1) are passed as (t, 1 - t) so that both tails keep full
/// relative precision.
class AlternativeModel
{
  public:
    static AlternativeModel m1(double mu);
    static AlternativeModel m2(double sigma);
    static AlternativeModel m3(double p, double mu);
    static AlternativeModel m4(double beta, double pi);
    static AlternativeModel m5(double delta, double p);
    static AlternativeModel m6(double gamma, double p);
    static AlternativeModel m7(double zeta, double p);

    /// Parses "m3 p=0.05 mu=2.0" style specifications; parameter order is free.
    static AlternativeModel parse(const std::string& text);

    Family family() const noexcept { return family_; }
    /// "m1" ... "m7".
    std::string family_name() const;
    /// Named parameters in canonical order.
    std::vector<std::pair<std::string, double>> params() const;
    /// Canonical text, parse(to_string()) round-trips.
    std::string to_string() const;

    /// Comparison CDF H(t).
    double cdf(double t, double tc) const;
    double cdf(double t) const { return cdf(t, 1.0 - t); }
    /// 1 - H(t), evaluated without cancellation.
    double sf(double t, double tc) const;
    /// Density h = H'. May be +inf where a tail singularity overflows.
    double density(double t, double tc) const;

    /// Unnormalized shape H(t) - t, from whichever of H or 1 - H is accurate.
    double departure(double t, double tc) const;

    /// One draw from H, kept inside [DBL_MIN, 1 - 2^-53].
    double draw(RandomStream& rng) const;
    /// n sorted draws into `out`.
    void sample_sorted(RandomStream& rng, std::size_t n, std::vector<double>& out) const;

    /// True when H(t) = t identically.
    bool is_null() const noexcept;

    /// Substitution that suits this family's tails: Probit for families built
    /// on a Gaussian null, Logistic otherwise.
    UnitMap natural_map() const noexcept;

    /// Tail conditions of the shape function from the known catalog, with a
    /// numerical endpoint diagnostic.
    ConditionReport conditions() const;

  private:
    AlternativeModel(Family f, double p0, double p1) : family_(f), a_(p0), b_(p1) {}

    Family family_;
    double a_;  // mu, sigma, p (M3), beta, delta, gamma, zeta
    double b_;  // -, -, mu (M3), pi, p, p, p
};

/// Subbotin CDF with density C exp(-|x|^g / g).
double subbotin_cdf(double x, double g);
double subbotin_sf(double x, double g);
double subbotin_log_pdf(double x, double g);
/// log of C = g^(1 - 1/g) / (2 Gamma(1/g)).
double subbotin_log_norm(double g);

/// Symmetric Pareto CDF: |x|^-z / 2 below -1, 1/2 on [-1, 1], 1 - x^-z / 2 above 1.
double pareto_cdf(double x, double z) noexcept;
double pareto_sf(double x, double z) noexcept;

}  // namespace wgof
