#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "wgof/rules.hpp"
#include "wgof/sample.hpp"

namespace wgof {

enum class StatKind {
    KS,            ///< Kolmogorov-Smirnov, sup |F_n - t|
    BS,            ///< Borovkov-Sycheva, sup over a fixed [kappa, 1 - kappa]
    EJ,            ///< Eicker-Jaeschke, sup over [kappa_n, 1 - kappa_n]
    AD_SUP,        ///< sup-type Anderson-Darling
    AD_LOG,        ///< sqrt(log(1 + AD_SUP))
    WEIGHTED_TAU,  ///< weight [t(1-t)]^tau
    AD_INT,        ///< integral Anderson-Darling, square root of A^2
};

/// Which statistic to evaluate and its parameters.
struct StatisticSpec {
    StatKind kind = StatKind::KS;
    double kappa = 0.0;     // BS
    RateRule kappa_rule{};  // EJ
    double tau = 0.0;       // WEIGHTED_TAU

    static StatisticSpec ks();
    static StatisticSpec bs(double kappa);
    static StatisticSpec ej(RateRule rule);
    static StatisticSpec ad_sup();
    static StatisticSpec ad_log();
    static StatisticSpec weighted_tau(double tau);
    static StatisticSpec ad_int();

    /// Throws std::invalid_argument on out-of-range parameters.
    void validate() const;

    /// kappa_rule(n), checked to lie in (0, 1/2).
    double kappa_at(std::size_t n) const;

    /// Machine token: ks, bs:kappa=0.05, ej:rule=o, ad_sup, ad_log,
    /// wtau:tau=0.25, ad_int. parse(token()) round-trips.
    std::string token() const;

    /// Short display name: K, G(0.05), E^o, E*, S, M, C(0.25), I.
    std::string label() const;

    static StatisticSpec parse(const std::string& token);

    friend bool operator==(const StatisticSpec& a, const StatisticSpec& b) { return a.token() == b.token(); }
};

struct StatisticValue {
    double value;
    StatisticSpec spec;
    std::size_t n;
};

// Sup-type statistics are evaluated at the jump points of the empirical CDF.
// Let c be the constant value of F_n on a gap between order statistics and
// g(t) = (c - t) / [t(1-t)]^tau with tau in [0, 1/2]. Then
//
//   g'(t) [t(1-t)]^(tau+1) = -[ t(1-t) + tau (c - t)(1 - 2t) ].
//
// The bracket is linear in c, equals t(1-t)(1-tau) + tau t^2 >= 0 at c = 0 and
// t(1-t)(1-tau) + tau (1-t)^2 >= 0 at c = 1, hence is nonnegative for every
// c in [0,1]. So g is nonincreasing (and -g nondecreasing) on each gap, and
// |F_n - t| / weight attains its supremum over a gap at one of its ends:
// i/n - U_(i) just after a jump or U_(i) - (i-1)/n just before it. On a
// truncated domain [kappa, 1 - kappa] the truncation points join the list.

/// sqrt(n) max_i max{i/n - U_(i), U_(i) - (i-1)/n}.
double ks_statistic(std::span<const double> u) noexcept;
/// Same terms divided by sqrt(U(1-U)).
double s_statistic(std::span<const double> u) noexcept;
/// sqrt(log(1 + S_n)).
double m_statistic(std::span<const double> u) noexcept;
/// Same terms divided by [U(1-U)]^tau.
double c_statistic(std::span<const double> u, double tau) noexcept;
/// Supremum of sqrt(n)|F_n - t|/sqrt(t(1-t)) over [kappa, 1 - kappa].
double ej_statistic(std::span<const double> u, double kappa) noexcept;
/// Fixed truncation; identical to ej_statistic with a constant kappa.
double bs_statistic(std::span<const double> u, double kappa) noexcept;
/// Square root of the Anderson-Darling A^2 closed form.
double i_statistic(std::span<const double> u) noexcept;

/// Evaluate `spec` on sorted values strictly inside (0,1). No validation.
double evaluate(const StatisticSpec& spec, std::span<const double> u);

/// Validating front end.
StatisticValue evaluate(const StatisticSpec& spec, const NullSample& s);

}  // namespace wgof
