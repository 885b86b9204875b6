#include "wgof/statistics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace wgof {

namespace {

std::string fmt(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

double parse_double(const std::string& s)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::invalid_argument("bad number '" + s + "'");
    }
    return v;
}

// Largest one-sided jump discrepancy, each term divided by weight(U_(i)).
template <class Weight>
double weighted_jump_max(std::span<const double> u, Weight weight) noexcept
{
    const double n = static_cast<double>(u.size());
    const double inv_n = 1.0 / n;
    double best = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double x = u[i];
        const double above = (static_cast<double>(i + 1) * inv_n) - x;
        const double below = x - static_cast<double>(i) * inv_n;
        best = std::max(best, std::max(above, below) / weight(x));
    }
    return std::sqrt(n) * best;
}

inline double variance(double x) noexcept
{
    return x * (1.0 - x);
}

}  // namespace

double ks_statistic(std::span<const double> u) noexcept
{
    return weighted_jump_max(u, [](double) { return 1.0; });
}

double s_statistic(std::span<const double> u) noexcept
{
    return weighted_jump_max(u, [](double x) { return std::sqrt(variance(x)); });
}

double m_statistic(std::span<const double> u) noexcept
{
    return std::sqrt(std::log1p(s_statistic(u)));
}

double c_statistic(std::span<const double> u, double tau) noexcept
{
    return weighted_jump_max(u, [tau](double x) { return std::pow(variance(x), tau); });
}

double ej_statistic(std::span<const double> u, double kappa) noexcept
{
    const std::size_t n = u.size();
    const double nd = static_cast<double>(n);
    const double hi = 1.0 - kappa;

    // I1 = min{i : U_(i) > kappa} (U_(n+1) = 1), I2 = max{i : U_(i) < 1 - kappa} (U_(0) = 0).
    const auto first_in = std::upper_bound(u.begin(), u.end(), kappa);
    const auto first_above = std::lower_bound(u.begin(), u.end(), hi);
    const double i1 = static_cast<double>(first_in - u.begin()) + 1.0;
    const double i2 = static_cast<double>(first_above - u.begin());
    const double tn = std::max(std::fabs(i1 / nd - 1.0 / nd - kappa), std::fabs(i2 / nd - 1.0 + kappa));
    double best = tn / std::sqrt(kappa * hi);

    // Order statistics inside [kappa, 1 - kappa].
    const auto lo_it = std::lower_bound(u.begin(), u.end(), kappa);
    const auto hi_it = std::upper_bound(u.begin(), u.end(), hi);
    for (auto it = lo_it; it < hi_it; ++it) {
        const double x = *it;
        const double i = static_cast<double>(it - u.begin()) + 1.0;
        const double d = std::max(std::fabs(x - i / nd), std::fabs(x - (i - 1.0) / nd));
        best = std::max(best, d / std::sqrt(variance(x)));
    }
    return std::sqrt(nd) * best;
}

double bs_statistic(std::span<const double> u, double kappa) noexcept
{
    return ej_statistic(u, kappa);
}

double i_statistic(std::span<const double> u) noexcept
{
    const std::size_t n = u.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 2.0 * static_cast<double>(i) + 1.0;
        acc += w * (std::log(u[i]) + std::log1p(-u[n - 1 - i]));
    }
    const double nd = static_cast<double>(n);
    const double a2 = -nd - acc / nd;
    return std::sqrt(std::max(a2, 0.0));
}

StatisticSpec StatisticSpec::ks()
{
    return {StatKind::KS, 0.0, {}, 0.0};
}

StatisticSpec StatisticSpec::bs(double kappa)
{
    StatisticSpec s{StatKind::BS, kappa, {}, 0.0};
    s.validate();
    return s;
}

StatisticSpec StatisticSpec::ej(RateRule rule)
{
    return {StatKind::EJ, 0.0, std::move(rule), 0.0};
}

StatisticSpec StatisticSpec::ad_sup()
{
    return {StatKind::AD_SUP, 0.0, {}, 0.0};
}

StatisticSpec StatisticSpec::ad_log()
{
    return {StatKind::AD_LOG, 0.0, {}, 0.0};
}

StatisticSpec StatisticSpec::weighted_tau(double tau)
{
    StatisticSpec s{StatKind::WEIGHTED_TAU, 0.0, {}, tau};
    s.validate();
    return s;
}

StatisticSpec StatisticSpec::ad_int()
{
    return {StatKind::AD_INT, 0.0, {}, 0.0};
}

void StatisticSpec::validate() const
{
    if (kind == StatKind::BS && !(kappa > 0.0 && kappa < 0.5)) {
        throw std::invalid_argument("kappa must lie in (0, 1/2), got " + fmt(kappa));
    }
    if (kind == StatKind::WEIGHTED_TAU && !(tau > 0.0 && tau < 0.5)) {
        throw std::invalid_argument("tau must lie in (0, 1/2), got " + fmt(tau));
    }
}

double StatisticSpec::kappa_at(std::size_t n) const
{
    const double k = kind == StatKind::BS ? kappa : kappa_rule(static_cast<double>(n));
    if (!(k > 0.0 && k < 0.5)) {
        throw std::invalid_argument("kappa rule " + kappa_rule.to_string() + " gives " + fmt(k) +
                                    " at n = " + std::to_string(n) + ", outside (0, 1/2)");
    }
    return k;
}

std::string StatisticSpec::token() const
{
    switch (kind) {
    case StatKind::KS: return "ks";
    case StatKind::BS: return "bs:kappa=" + fmt(kappa);
    case StatKind::EJ: return "ej:rule=" + kappa_rule.to_string();
    case StatKind::AD_SUP: return "ad_sup";
    case StatKind::AD_LOG: return "ad_log";
    case StatKind::WEIGHTED_TAU: return "wtau:tau=" + fmt(tau);
    case StatKind::AD_INT: return "ad_int";
    }
    return {};
}

std::string StatisticSpec::label() const
{
    switch (kind) {
    case StatKind::KS: return "K";
    case StatKind::BS: return "G(" + fmt(kappa) + ")";
    case StatKind::EJ:
        if (kappa_rule.name == "o") {
            return "E^o";
        }
        if (kappa_rule.name == "star") {
            return "E*";
        }
        return "E(" + kappa_rule.to_string() + ")";
    case StatKind::AD_SUP: return "S";
    case StatKind::AD_LOG: return "M";
    case StatKind::WEIGHTED_TAU: return "C(" + fmt(tau) + ")";
    case StatKind::AD_INT: return "I";
    }
    return {};
}

StatisticSpec StatisticSpec::parse(const std::string& token)
{
    const std::size_t colon = token.find(':');
    const std::string head = token.substr(0, colon);
    std::string key, value;
    if (colon != std::string::npos) {
        const std::string rest = token.substr(colon + 1);
        const std::size_t eq = rest.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("expected key=value after ':' in '" + token + "'");
        }
        key = rest.substr(0, eq);
        value = rest.substr(eq + 1);
    }
    auto require = [&](const char* k) {
        if (key != k) {
            throw std::invalid_argument("statistic '" + head + "' needs parameter " + k + "=..., got '" +
                                        token + "'");
        }
    };
    auto no_params = [&] {
        if (colon != std::string::npos) {
            throw std::invalid_argument("statistic '" + head + "' takes no parameters");
        }
    };
    if (head == "ks") {
        no_params();
        return ks();
    }
    if (head == "bs") {
        require("kappa");
        return bs(parse_double(value));
    }
    if (head == "ej") {
        require("rule");
        return ej(RateRule::parse(value));
    }
    if (head == "ad_sup") {
        no_params();
        return ad_sup();
    }
    if (head == "ad_log") {
        no_params();
        return ad_log();
    }
    if (head == "wtau") {
        require("tau");
        return weighted_tau(parse_double(value));
    }
    if (head == "ad_int") {
        no_params();
        return ad_int();
    }
    throw std::invalid_argument("unknown statistic '" + token + "'");
}

double evaluate(const StatisticSpec& spec, std::span<const double> u)
{
    switch (spec.kind) {
    case StatKind::KS: return ks_statistic(u);
    case StatKind::BS: return ej_statistic(u, spec.kappa);
    case StatKind::EJ: return ej_statistic(u, spec.kappa_at(u.size()));
    case StatKind::AD_SUP: return s_statistic(u);
    case StatKind::AD_LOG: return m_statistic(u);
    case StatKind::WEIGHTED_TAU: return c_statistic(u, spec.tau);
    case StatKind::AD_INT: return i_statistic(u);
    }
    throw std::logic_error("unhandled statistic kind");
}

StatisticValue evaluate(const StatisticSpec& spec, const NullSample& s)
{
    spec.validate();
    return {evaluate(spec, std::span<const double>(s.values())), spec, s.size()};
}

}  // namespace wgof
