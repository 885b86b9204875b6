#include "wgof/mc.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "wgof/sample.hpp"

namespace wgof {

void McConfig::validate() const
{
    if (reps_critical < 1 || reps_power < 1) {
        throw std::invalid_argument("replicate counts must be at least 1");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must lie in (0,1)");
    }
}

unsigned McConfig::resolved_workers() const
{
    if (workers > 0) {
        return workers;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

Sampler null_sampler()
{
    return [](RandomStream& rng, std::size_t n, std::vector<double>& out) { sorted_uniforms(rng, n, out); };
}

Sampler model_sampler(const AlternativeModel& m)
{
    return [m](RandomStream& rng, std::size_t n, std::vector<double>& out) { m.sample_sorted(rng, n, out); };
}

std::vector<std::vector<double>> replicate_statistics(const std::vector<StatisticSpec>& specs, std::size_t n,
                                                      std::size_t reps, std::uint64_t seed, StreamPurpose purpose,
                                                      const Sampler& sampler, unsigned workers)
{
    if (n < 1) {
        throw std::invalid_argument("sample size must be at least 1");
    }
    for (const auto& s : specs) {
        s.validate();
        if (s.kind == StatKind::EJ) {
            s.kappa_at(n);
        }
    }
    std::vector<std::vector<double>> out(specs.size(), std::vector<double>(reps));
    const std::size_t w = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(reps, 1));

    std::exception_ptr error;
    std::mutex error_mu;
    auto run = [&](std::size_t begin, std::size_t end) {
        try {
            std::vector<double> u;
            u.reserve(n);
            for (std::size_t r = begin; r < end; ++r) {
                RandomStream rng(seed, stream_id(purpose, n, r));
                sampler(rng, n, u);
                for (std::size_t s = 0; s < specs.size(); ++s) {
                    out[s][r] = evaluate(specs[s], u);
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!error) {
                error = std::current_exception();
            }
        }
    };

    if (w == 1) {
        run(0, reps);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(w);
        for (std::size_t k = 0; k < w; ++k) {
            pool.emplace_back(run, reps * k / w, reps * (k + 1) / w);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return out;
}

CriticalValue upper_quantile(std::vector<double> values, double alpha)
{
    const std::size_t reps = values.size();
    if (reps == 0) {
        throw std::invalid_argument("no replicate values");
    }
    // ceil((1 - alpha) R) computed as R - floor(alpha R) to dodge rounding of 1 - alpha.
    const auto drop = static_cast<std::size_t>(std::floor(alpha * static_cast<double>(reps) + 1e-9));
    const std::size_t k = std::max<std::size_t>(1, reps - std::min(drop, reps - 1));
    std::sort(values.begin(), values.end());
    const auto d = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(reps) * alpha * (1.0 - alpha))));
    const std::size_t lo = k > d ? k - d : 1;
    const std::size_t hi = std::min(reps, k + d);
    CriticalValue cv;
    cv.value = values[k - 1];
    cv.stderr_ = 0.5 * (values[hi - 1] - values[lo - 1]);
    cv.reps = reps;
    return cv;
}

Proportion rejection_rate(const std::vector<double>& values, double critical)
{
    std::size_t hits = 0;
    for (double v : values) {
        hits += v >= critical ? 1 : 0;
    }
    const double reps = static_cast<double>(values.size());
    Proportion p;
    p.reps = values.size();
    p.p = reps > 0 ? static_cast<double>(hits) / reps : 0.0;
    p.stderr_ = reps > 0 ? std::sqrt(p.p * (1.0 - p.p) / reps) : 0.0;
    return p;
}

std::vector<CriticalValue> critical_values(const std::vector<StatisticSpec>& specs, std::size_t n,
                                           const McConfig& cfg)
{
    cfg.validate();
    auto vals = replicate_statistics(specs, n, cfg.reps_critical, cfg.seed, StreamPurpose::Calibration,
                                     null_sampler(), cfg.resolved_workers());
    std::vector<CriticalValue> out;
    out.reserve(specs.size());
    for (auto& v : vals) {
        CriticalValue cv = upper_quantile(std::move(v), cfg.alpha);
        cv.seed = cfg.seed;
        out.push_back(cv);
    }
    return out;
}

namespace {

std::vector<Proportion> rates(const std::vector<std::vector<double>>& vals, const std::vector<CriticalValue>& crit)
{
    if (vals.size() != crit.size()) {
        throw std::invalid_argument("one critical value per statistic is required");
    }
    std::vector<Proportion> out;
    out.reserve(vals.size());
    for (std::size_t s = 0; s < vals.size(); ++s) {
        out.push_back(rejection_rate(vals[s], crit[s].value));
    }
    return out;
}

}  // namespace

std::vector<Proportion> empirical_size(const std::vector<StatisticSpec>& specs, std::size_t n, const McConfig& cfg,
                                       const std::vector<CriticalValue>& crit)
{
    cfg.validate();
    const auto vals = replicate_statistics(specs, n, cfg.reps_critical, cfg.seed, StreamPurpose::Validation,
                                           null_sampler(), cfg.resolved_workers());
    return rates(vals, crit);
}

std::vector<Proportion> power(const std::vector<StatisticSpec>& specs, const AlternativeModel& model,
                              std::size_t n, const McConfig& cfg, const std::vector<CriticalValue>& crit)
{
    cfg.validate();
    const auto vals = replicate_statistics(specs, n, cfg.reps_power, cfg.seed, StreamPurpose::Power,
                                           model_sampler(model), cfg.resolved_workers());
    return rates(vals, crit);
}

std::vector<PowerCurve> power_curve_vs_n(const std::vector<StatisticSpec>& specs, const AlternativeModel& model,
                                         const std::vector<std::size_t>& n_grid, const McConfig& cfg,
                                         CriticalValueTable& table)
{
    std::vector<PowerCurve> curves;
    for (const auto& s : specs) {
        curves.push_back({s, model.to_string(), {}, cfg.alpha, cfg.seed});
    }
    for (std::size_t n : n_grid) {
        const auto crit = table.get_or_compute(specs, n, cfg);
        const auto pw = power(specs, model, n, cfg, crit);
        for (std::size_t s = 0; s < specs.size(); ++s) {
            curves[s].points.push_back({static_cast<double>(n), n, pw[s], crit[s].value});
        }
    }
    return curves;
}

std::vector<PowerCurve> power_curve_vs_param(const std::vector<StatisticSpec>& specs,
                                             const std::vector<AlternativeModel>& models, const std::string& param,
                                             std::size_t n, const McConfig& cfg, CriticalValueTable& table)
{
    std::vector<PowerCurve> curves;
    const std::string label = models.empty() ? std::string() : models.front().family_name();
    for (const auto& s : specs) {
        curves.push_back({s, label, {}, cfg.alpha, cfg.seed});
    }
    const auto crit = table.get_or_compute(specs, n, cfg);
    for (const auto& m : models) {
        double x = std::nan("");
        for (const auto& [k, v] : m.params()) {
            if (k == param) {
                x = v;
            }
        }
        if (std::isnan(x)) {
            throw std::invalid_argument("model " + m.to_string() + " has no parameter " + param);
        }
        const auto pw = power(specs, m, n, cfg, crit);
        for (std::size_t s = 0; s < specs.size(); ++s) {
            curves[s].points.push_back({x, n, pw[s], crit[s].value});
        }
    }
    return curves;
}

std::vector<std::size_t> log_grid(std::size_t lo, std::size_t hi, std::size_t steps)
{
    if (lo < 1 || hi < lo || steps < 1 || (steps == 1 && hi != lo)) {
        throw std::invalid_argument("log_grid needs 1 <= lo <= hi and at least two steps for lo < hi");
    }
    std::vector<std::size_t> out;
    const double a = std::log(static_cast<double>(lo));
    const double b = std::log(static_cast<double>(hi));
    for (std::size_t k = 0; k < steps; ++k) {
        std::size_t v;
        if (k == 0) {
            v = lo;
        } else if (k + 1 == steps) {
            v = hi;
        } else {
            v = static_cast<std::size_t>(std::llround(std::exp(a + (b - a) * k / static_cast<double>(steps - 1))));
        }
        if (out.empty() || v > out.back()) {
            out.push_back(v);
        }
    }
    return out;
}

std::size_t saturation_n(const StatisticSpec& spec, const AlternativeModel& model, const McConfig& cfg,
                         CriticalValueTable& table, double level, std::size_t start, std::size_t cap)
{
    if (start < 1) {
        throw std::invalid_argument("saturation_n: start must be at least 1");
    }
    for (std::size_t n = start; n <= cap; n *= 2) {
        const auto crit = table.get_or_compute({spec}, n, cfg);
        if (power({spec}, model, n, cfg, crit)[0].p >= level) {
            return n;
        }
    }
    throw std::runtime_error("power of " + spec.label() + " under " + model.to_string() + " stays below " +
                             std::to_string(level) + " up to n = " + std::to_string(cap));
}

std::size_t corrected_n(std::size_t n, double e, Rounding r)
{
    if (!(e > 0.0) || !std::isfinite(e)) {
        throw std::invalid_argument("efficiency must be positive and finite");
    }
    const double x = static_cast<double>(n) * e;
    const double v = r == Rounding::Ceiling ? std::ceil(x) : std::floor(x + 0.5);
    return std::max<std::size_t>(1, static_cast<std::size_t>(v));
}

PowerPoint corrected_sample_size_power(const AlternativeModel& model, std::size_t n, double e, const McConfig& cfg,
                                       CriticalValueTable& table, Rounding r)
{
    const std::size_t m = corrected_n(n, e, r);
    const std::vector<StatisticSpec> ks{StatisticSpec::ks()};
    const auto crit = table.get_or_compute(ks, m, cfg);
    const auto pw = power(ks, model, m, cfg, crit);
    return {static_cast<double>(n), m, pw[0], crit[0].value};
}

std::size_t monotone_violations(const PowerCurve& c, double tolerance)
{
    std::size_t v = 0;
    for (std::size_t i = 1; i < c.points.size(); ++i) {
        const auto& a = c.points[i - 1].power;
        const auto& b = c.points[i].power;
        const double se = std::sqrt(a.stderr_ * a.stderr_ + b.stderr_ * b.stderr_);
        if (a.p - b.p > tolerance * se && a.p - b.p > 0.0) {
            ++v;
        }
    }
    return v;
}

}  // namespace wgof
