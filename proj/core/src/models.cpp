#include "wgof/models.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "wgof/normal.hpp"
#include "wgof/rng.hpp"

namespace wgof {

namespace {

constexpr double kTop = 1.0 - 0x1.0p-53;

std::string fmt(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

double clamp_unit(double t) noexcept
{
    return std::clamp(t, std::numeric_limits<double>::min(), kTop);
}

void require(bool ok, const std::string& msg)
{
    if (!ok) {
        throw std::invalid_argument(msg);
    }
}

bool is_sqrt2(double s) noexcept
{
    return std::fabs(s - std::numbers::sqrt2) < 1e-12;
}

}  // namespace

bool ParamRange::contains(double x) const noexcept
{
    const bool above = lo_closed ? x >= lo : x > lo;
    const bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
}

std::string ParamRange::to_string() const
{
    return std::string(lo_closed ? "[" : "(") + fmt(lo) + "," + fmt(hi) + (hi_closed ? "]" : ")");
}

double subbotin_log_norm(double g)
{
    return (1.0 - 1.0 / g) * std::log(g) - std::log(2.0) - std::lgamma(1.0 / g);
}

double subbotin_log_pdf(double x, double g)
{
    return subbotin_log_norm(g) - std::pow(std::fabs(x), g) / g;
}

double subbotin_cdf(double x, double g)
{
    const double y = std::pow(std::fabs(x), g) / g;
    if (x < 0.0) {
        return 0.5 * boost::math::gamma_q(1.0 / g, y);
    }
    return 0.5 + 0.5 * boost::math::gamma_p(1.0 / g, y);
}

double subbotin_sf(double x, double g)
{
    return subbotin_cdf(-x, g);
}

double pareto_cdf(double x, double z) noexcept
{
    if (x < -1.0) {
        return 0.5 * std::pow(-x, -z);
    }
    if (x <= 1.0) {
        return 0.5;
    }
    return 1.0 - 0.5 * std::pow(x, -z);
}

double pareto_sf(double x, double z) noexcept
{
    return pareto_cdf(-x, z);
}

AlternativeModel AlternativeModel::m1(double mu)
{
    require(std::isfinite(mu) && mu != 0.0, "m1: mu must be finite and nonzero");
    return {Family::M1_SHIFT, mu, 0.0};
}

AlternativeModel AlternativeModel::m2(double sigma)
{
    require(std::isfinite(sigma) && sigma > 0.0 && sigma != 1.0, "m2: sigma must be positive and != 1");
    return {Family::M2_SCALE, sigma, 0.0};
}

AlternativeModel AlternativeModel::m3(double p, double mu)
{
    require(p > 0.0 && p < 1.0, "m3: p must lie in (0,1)");
    require(std::isfinite(mu) && mu != 0.0, "m3: mu must be finite and nonzero");
    return {Family::M3_CONTAM, p, mu};
}

AlternativeModel AlternativeModel::m4(double beta, double pi)
{
    require(std::isfinite(beta) && beta > 0.0, "m4: beta must be positive");
    require(pi >= 0.0 && pi <= 0.5, "m4: pi must lie in [0, 0.5]");
    return {Family::M4_TAIL, beta, pi};
}

AlternativeModel AlternativeModel::m5(double delta, double p)
{
    require(std::isfinite(delta) && delta > 0.0, "m5: delta must be positive");
    require(p >= 0.0 && p <= 1.0, "m5: p must lie in [0,1]");
    return {Family::M5_LEHMANN, delta, p};
}

AlternativeModel AlternativeModel::m6(double gamma, double p)
{
    require(std::isfinite(gamma) && gamma > 0.0, "m6: gamma must be positive");
    require(p >= 0.0 && p <= 1.0, "m6: p must lie in [0,1]");
    return {Family::M6_SUBBOTIN, gamma, p};
}

AlternativeModel AlternativeModel::m7(double zeta, double p)
{
    require(std::isfinite(zeta) && zeta > 0.0, "m7: zeta must be positive");
    require(p >= 0.0 && p <= 1.0, "m7: p must lie in [0,1]");
    return {Family::M7_PARETO, zeta, p};
}

AlternativeModel AlternativeModel::parse(const std::string& text)
{
    std::string cleaned = text;
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    std::istringstream in(cleaned);
    std::string fam;
    in >> fam;
    std::transform(fam.begin(), fam.end(), fam.begin(), [](unsigned char c) { return std::tolower(c); });
    std::map<std::string, double> kv;
    std::string item;
    while (in >> item) {
        const std::size_t eq = item.find('=');
        require(eq != std::string::npos, "model parameter '" + item + "' is not key=value");
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
        require(ec == std::errc() && ptr == val.data() + val.size(),
                "bad value '" + val + "' for model parameter " + key);
        require(kv.emplace(key, v).second, "duplicate model parameter " + key);
    }
    auto take = [&](const char* key) {
        auto it = kv.find(key);
        require(it != kv.end(), "model " + fam + " needs parameter " + key);
        const double v = it->second;
        kv.erase(it);
        return v;
    };
    auto done = [&](AlternativeModel m) {
        require(kv.empty(), "unknown parameter " + (kv.empty() ? std::string() : kv.begin()->first) +
                                " for model " + fam);
        return m;
    };
    if (fam == "m1") {
        return done(m1(take("mu")));
    }
    if (fam == "m2") {
        return done(m2(take("sigma")));
    }
    if (fam == "m3") {
        const double p = take("p");
        return done(m3(p, take("mu")));
    }
    if (fam == "m4") {
        const double beta = take("beta");
        return done(m4(beta, take("pi")));
    }
    if (fam == "m5") {
        const double delta = take("delta");
        return done(m5(delta, take("p")));
    }
    if (fam == "m6") {
        const double gamma = take("gamma");
        return done(m6(gamma, take("p")));
    }
    if (fam == "m7") {
        const double zeta = take("zeta");
        return done(m7(zeta, take("p")));
    }
    throw std::invalid_argument("unknown model family '" + fam + "' (expected m1..m7)");
}

std::string AlternativeModel::family_name() const
{
    return "m" + std::to_string(static_cast<int>(family_) + 1);
}

std::vector<std::pair<std::string, double>> AlternativeModel::params() const
{
    switch (family_) {
    case Family::M1_SHIFT: return {{"mu", a_}};
    case Family::M2_SCALE: return {{"sigma", a_}};
    case Family::M3_CONTAM: return {{"p", a_}, {"mu", b_}};
    case Family::M4_TAIL: return {{"beta", a_}, {"pi", b_}};
    case Family::M5_LEHMANN: return {{"delta", a_}, {"p", b_}};
    case Family::M6_SUBBOTIN: return {{"gamma", a_}, {"p", b_}};
    case Family::M7_PARETO: return {{"zeta", a_}, {"p", b_}};
    }
    return {};
}

std::string AlternativeModel::to_string() const
{
    std::string out = family_name();
    for (const auto& [k, v] : params()) {
        out += " " + k + "=" + fmt(v);
    }
    return out;
}

bool AlternativeModel::is_null() const noexcept
{
    switch (family_) {
    case Family::M1_SHIFT:
    case Family::M2_SCALE:
    case Family::M3_CONTAM: return false;
    case Family::M4_TAIL: return b_ == 0.0 || a_ == 1.0;
    case Family::M5_LEHMANN: return b_ == 0.0 || a_ == 1.0;
    case Family::M6_SUBBOTIN: return b_ == 0.0 || a_ == 2.0;
    case Family::M7_PARETO: return b_ == 0.0;
    }
    return false;
}

UnitMap AlternativeModel::natural_map() const noexcept
{
    return family_ == Family::M4_TAIL || family_ == Family::M5_LEHMANN ? UnitMap::Logistic : UnitMap::Probit;
}

double AlternativeModel::cdf(double t, double tc) const
{
    if (family_ == Family::M4_TAIL) {
        const double beta = a_, pi = b_;
        if (t < pi) {
            return std::exp((beta - 1.0) / beta * std::log(pi) + std::log(t) / beta);
        }
        if (tc < pi) {
            return 1.0 - sf(t, tc);
        }
        return t;
    }
    if (family_ == Family::M5_LEHMANN) {
        const double delta = a_, p = b_;
        const double logt = t <= 0.5 ? std::log(t) : std::log1p(-tc);
        return (1.0 - p) * t + p * std::exp(delta * logt);
    }
    const double z = probit(t, tc);
    switch (family_) {
    case Family::M1_SHIFT: return normal_cdf(z - a_);
    case Family::M2_SCALE: return normal_cdf(z / a_);
    case Family::M3_CONTAM: return (1.0 - a_) * t + a_ * normal_cdf(z - b_);
    case Family::M6_SUBBOTIN: return (1.0 - b_) * t + b_ * subbotin_cdf(z, a_);
    case Family::M7_PARETO: return (1.0 - b_) * t + b_ * pareto_cdf(z, a_);
    default: break;
    }
    return t;
}

double AlternativeModel::sf(double t, double tc) const
{
    if (family_ == Family::M4_TAIL) {
        const double beta = a_, pi = b_;
        if (tc < pi) {
            return std::exp((beta - 1.0) / beta * std::log(pi) + std::log(tc) / beta);
        }
        if (t < pi) {
            return 1.0 - cdf(t, tc);
        }
        return tc;
    }
    if (family_ == Family::M5_LEHMANN) {
        const double delta = a_, p = b_;
        if (t <= 0.5) {
            return 1.0 - cdf(t, tc);
        }
        return (1.0 - p) * tc - p * std::expm1(delta * std::log1p(-tc));
    }
    const double z = probit(t, tc);
    switch (family_) {
    case Family::M1_SHIFT: return normal_sf(z - a_);
    case Family::M2_SCALE: return normal_sf(z / a_);
    case Family::M3_CONTAM: return (1.0 - a_) * tc + a_ * normal_sf(z - b_);
    case Family::M6_SUBBOTIN: return (1.0 - b_) * tc + b_ * subbotin_sf(z, a_);
    case Family::M7_PARETO: return (1.0 - b_) * tc + b_ * pareto_sf(z, a_);
    default: break;
    }
    return tc;
}

double AlternativeModel::departure(double t, double tc) const
{
    switch (family_) {
    case Family::M4_TAIL: {
        const double pi = b_;
        if (t < pi) {
            return cdf(t, tc) - t;
        }
        if (tc < pi) {
            return tc - sf(t, tc);
        }
        return 0.0;
    }
    case Family::M5_LEHMANN: {
        const double delta = a_, p = b_;
        if (t <= 0.5) {
            return p * (std::exp(delta * std::log(t)) - t);
        }
        return p * (tc + std::expm1(delta * std::log1p(-tc)));
    }
    default: break;
    }
    const double z = probit(t, tc);
    double w = 1.0, lo = 0.0, hi = 0.0;
    switch (family_) {
    case Family::M1_SHIFT:
        lo = normal_cdf(z - a_);
        hi = normal_sf(z - a_);
        break;
    case Family::M2_SCALE:
        lo = normal_cdf(z / a_);
        hi = normal_sf(z / a_);
        break;
    case Family::M3_CONTAM:
        w = a_;
        lo = normal_cdf(z - b_);
        hi = normal_sf(z - b_);
        break;
    case Family::M6_SUBBOTIN:
        w = b_;
        lo = subbotin_cdf(z, a_);
        hi = subbotin_sf(z, a_);
        break;
    case Family::M7_PARETO:
        w = b_;
        lo = pareto_cdf(z, a_);
        hi = pareto_sf(z, a_);
        break;
    default: break;
    }
    return t <= 0.5 ? w * (lo - t) : w * (tc - hi);
}

double AlternativeModel::density(double t, double tc) const
{
    switch (family_) {
    case Family::M4_TAIL: {
        const double beta = a_, pi = b_;
        const double s = std::min(t, tc);
        if (s < pi) {
            return std::exp((beta - 1.0) / beta * std::log(pi) + (1.0 / beta - 1.0) * std::log(s) - std::log(beta));
        }
        return 1.0;
    }
    case Family::M5_LEHMANN: {
        const double delta = a_, p = b_;
        const double logt = t <= 0.5 ? std::log(t) : std::log1p(-tc);
        return (1.0 - p) + p * delta * std::exp((delta - 1.0) * logt);
    }
    default: break;
    }
    const double z = probit(t, tc);
    switch (family_) {
    case Family::M1_SHIFT: return std::exp(a_ * z - 0.5 * a_ * a_);
    case Family::M2_SCALE: return std::exp(0.5 * z * z * (1.0 - 1.0 / (a_ * a_))) / a_;
    case Family::M3_CONTAM: return (1.0 - a_) + a_ * std::exp(b_ * z - 0.5 * b_ * b_);
    case Family::M6_SUBBOTIN:
        return (1.0 - b_) + b_ * std::exp(subbotin_log_pdf(z, a_) - normal_log_pdf(z));
    case Family::M7_PARETO: {
        if (std::fabs(z) <= 1.0) {
            return 1.0 - b_;
        }
        const double lf = std::log(0.5 * a_) - (a_ + 1.0) * std::log(std::fabs(z));
        return (1.0 - b_) + b_ * std::exp(lf - normal_log_pdf(z));
    }
    default: break;
    }
    return 1.0;
}

double AlternativeModel::draw(RandomStream& rng) const
{
    switch (family_) {
    case Family::M1_SHIFT: return clamp_unit(normal_cdf(rng.normal() + a_));
    case Family::M2_SCALE: return clamp_unit(normal_cdf(a_ * rng.normal()));
    case Family::M3_CONTAM:
        if (rng.bernoulli(a_)) {
            return clamp_unit(normal_cdf(rng.normal() + b_));
        }
        return rng.uniform();
    case Family::M4_TAIL: {
        const double beta = a_, pi = b_;
        const double u = rng.uniform();
        if (u < pi) {
            return clamp_unit(std::exp(beta * std::log(u) + (1.0 - beta) * std::log(pi)));
        }
        const double uc = 1.0 - u;
        if (uc < pi) {
            const double tc = std::exp(beta * std::log(uc) + (1.0 - beta) * std::log(pi));
            return clamp_unit(1.0 - tc);
        }
        return u;
    }
    case Family::M5_LEHMANN:
        if (rng.bernoulli(b_)) {
            return clamp_unit(std::exp(std::log(rng.uniform()) / a_));
        }
        return rng.uniform();
    case Family::M6_SUBBOTIN:
        if (rng.bernoulli(b_)) {
            const double g = rng.gamma(1.0 / a_);
            const double x = std::pow(a_ * g, 1.0 / a_);
            return clamp_unit(normal_cdf(rng.bernoulli(0.5) ? x : -x));
        }
        return rng.uniform();
    case Family::M7_PARETO:
        if (rng.bernoulli(b_)) {
            const double u = rng.uniform();
            const double x = u < 0.5 ? -std::pow(2.0 * u, -1.0 / a_) : std::pow(2.0 * (1.0 - u), -1.0 / a_);
            return clamp_unit(normal_cdf(x));
        }
        return rng.uniform();
    }
    return rng.uniform();
}

void AlternativeModel::sample_sorted(RandomStream& rng, std::size_t n, std::vector<double>& out) const
{
    out.resize(n);
    for (auto& x : out) {
        x = draw(rng);
    }
    std::sort(out.begin(), out.end());
}

ConditionReport AlternativeModel::conditions() const
{
    const ParamRange open{0.0, 0.5, false, false};
    const ParamRange from_zero{0.0, 0.5, true, false};
    ConditionReport r;
    r.integrable = open;

    if (is_null()) {
        r.astar_vanishes = true;
        r.power_decay = from_zero;
    } else {
        switch (family_) {
        case Family::M1_SHIFT:
        case Family::M3_CONTAM:
            r.astar_vanishes = true;
            r.power_decay = open;
            break;
        case Family::M2_SCALE: {
            const double s = a_;
            if (s < 1.0) {
                r.astar_vanishes = true;
                r.power_decay = from_zero;
            } else if (is_sqrt2(s)) {
                r.astar_vanishes = true;
            } else if (s < std::numbers::sqrt2) {
                r.astar_vanishes = true;
                r.power_decay = ParamRange{1.0 - 1.0 / (s * s), 0.5, true, false};
            }
            break;
        }
        case Family::M4_TAIL: {
            const double beta = a_;
            if (beta < 2.0) {
                r.astar_vanishes = true;
                r.power_decay = ParamRange{std::max(0.0, 1.0 - 1.0 / beta), 0.5, true, false};
            }
            break;
        }
        case Family::M5_LEHMANN: {
            // A behaves like p t^delta at 0 when delta < 1 and like -p t when delta > 1.
            const double delta = a_;
            if (delta > 0.5) {
                r.astar_vanishes = true;
                r.power_decay = ParamRange{std::max(0.0, 1.0 - delta), 0.5, true, false};
            }
            break;
        }
        case Family::M6_SUBBOTIN:
            if (a_ > 2.0) {
                r.astar_vanishes = true;
                r.power_decay = from_zero;
            }
            break;
        case Family::M7_PARETO:
            // |A| ~ (2 log 1/t)^(-zeta/2) at 0.
            r.integrable.reset();
            if (a_ > 2.0) {
                r.integrable = ParamRange{1.0 / a_, 0.5, false, false};
            }
            break;
        }
    }

    // Endpoint diagnostic: |A*| must shrink along t = 1e-8, 1e-32, 1e-128 at both ends.
    auto astar = [&](double t, double tc) { return std::fabs(departure(t, tc)) / std::sqrt(t * tc); };
    auto shrinks = [&](bool lower) {
        double prev = std::numeric_limits<double>::infinity();
        double first = 0.0;
        for (double s : {1e-8, 1e-32, 1e-128}) {
            const double v = lower ? astar(s, 1.0 - s) : astar(1.0 - s, s);
            if (s == 1e-8) {
                first = v;
            }
            if (v > prev) {
                return false;
            }
            prev = v;
        }
        return prev <= 0.75 * first;
    };
    r.numeric_astar_vanishes = is_null() || (shrinks(true) && shrinks(false));
    if (r.numeric_astar_vanishes != r.astar_vanishes) {
        r.warning = "numerical endpoint check of A* disagrees with the catalog for " + to_string();
    }
    return r;
}

}  // namespace wgof
