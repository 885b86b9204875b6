#include "wgof/probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "wgof/mc.hpp"

namespace wgof {

namespace {

constexpr std::size_t kMinHits = 30;

const RateRule kN{1.0, 1.0, 0.0, 0.0, {}};
const RateRule kLogN{1.0, 0.0, 1.0, 0.0, {}};
const RateRule kLogLogN{1.0, 0.0, 0.0, 1.0, {}};

bool all_exponents_zero(const RateRule& r)
{
    return r.a == 0.0 && r.b == 0.0 && r.d == 0.0;
}

TailEstimate summarize(const std::vector<double>& values, std::size_t reps, double threshold)
{
    TailEstimate e;
    e.reps = reps;
    for (std::size_t r = 0; r < reps; ++r) {
        e.hits += values[r] >= threshold ? 1 : 0;
    }
    e.p_hat = static_cast<double>(e.hits) / static_cast<double>(reps);
    e.stderr_ = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(reps));
    e.reliable = e.hits >= kMinHits;
    if (!e.reliable) {
        e.warning = "only " + std::to_string(e.hits) + " of " + std::to_string(reps) +
                    " replicates reach the threshold; estimate unreliable";
    }
    return e;
}

IndexPoint make_point(const ProbeSpec& p, const RegimeReport& rr, std::size_t n, const std::vector<double>& values)
{
    IndexPoint pt;
    pt.n = n;
    pt.w = p.w_rule(static_cast<double>(n));
    pt.threshold = std::sqrt(static_cast<double>(n)) * pt.w;
    pt.tail = summarize(values, p.reps, pt.threshold);
    const double nw2 = static_cast<double>(n) * pt.w * pt.w;
    pt.index = pt.tail.p_hat > 0.0 ? -std::log(pt.tail.p_hat) / nw2 : std::numeric_limits<double>::infinity();
    pt.target = rr.target_index;
    pt.regime = rr.regime;
    return pt;
}

}  // namespace

TailEstimate tail_probability(const StatisticSpec& spec, std::size_t n, double threshold, std::size_t reps,
                              std::uint64_t seed, unsigned workers)
{
    if (!(threshold >= 0.0)) {
        throw std::invalid_argument("tail_probability: threshold must be nonnegative");
    }
    const auto vals =
        replicate_statistics({spec}, n, reps, seed, StreamPurpose::Probe, null_sampler(), workers);
    return summarize(vals[0], reps, threshold);
}

RegimeReport regime_check(const StatisticSpec& spec, const RateRule& w)
{
    RegimeReport r;
    const RateRule nw2 = kN * w.pow(2.0);
    if (limit_direction(w) >= 0 || limit_direction(nw2) <= 0) {
        r.regime = "undetermined";
        r.target_index = std::nan("");
        r.explanation = "requires w_n -> 0 and n w_n^2 -> infinity";
        return r;
    }
    auto set = [&](const char* regime, double target, std::string why) {
        r.regime = regime;
        r.target_index = target;
        r.explanation = std::move(why);
    };
    switch (spec.kind) {
    case StatKind::KS: set("non-degenerate", 2.0, "unweighted supremum"); break;
    case StatKind::BS: set("non-degenerate", 0.5, "fixed truncation"); break;
    case StatKind::AD_INT: set("non-degenerate", 1.0, "integral statistic"); break;
    case StatKind::AD_SUP: set("degenerate", 0.0, "full variance weighting"); break;
    case StatKind::AD_LOG: {
        const RateRule lead = nw2 / kLogLogN;
        if (limit_direction(lead) > 0) {
            set("non-degenerate", 2.0, "n w_n^2 / log log n -> infinity");
        } else {
            set("undetermined", std::nan(""), "needs n w_n^2 / log log n -> infinity");
            r.ambiguous = all_exponents_zero(lead);
        }
        break;
    }
    case StatKind::EJ: {
        const RateRule& k = spec.kappa_rule;
        const RateRule ratio = w / k.pow(0.5);
        const int dir = limit_direction(ratio);
        if (dir > 0) {
            if (limit_direction(kN * k) > 0) {
                set("degenerate", 0.0, "w_n / sqrt(kappa_n) -> infinity");
            } else {
                set("undetermined", std::nan(""), "w_n / sqrt(kappa_n) -> infinity but n kappa_n does not");
            }
        } else if (dir < 0) {
            const bool kappa_ok = limit_direction(kN * k / kLogN.pow(2.0)) >= 0;
            const bool nw2_ok = limit_direction(nw2 / kLogLogN) > 0;
            if (kappa_ok && nw2_ok) {
                set("non-degenerate", 0.5,
                    "w_n = o(sqrt(kappa_n)), liminf n kappa_n / log^2 n > 0, n w_n^2 / log log n -> infinity");
            } else {
                set("undetermined", std::nan(""),
                    std::string("w_n = o(sqrt(kappa_n)) but ") +
                        (kappa_ok ? "n w_n^2 / log log n is bounded" : "n kappa_n / log^2 n -> 0"));
            }
        } else {
            set("undetermined", std::nan(""), "w_n and sqrt(kappa_n) are of the same order");
            r.ambiguous = true;
        }
        break;
    }
    case StatKind::WEIGHTED_TAU: {
        const RateRule edge = kLogN / kN;  // log n / n
        const RateRule ratio = w / edge.pow(0.5);
        const int dir = limit_direction(ratio);
        if (dir < 0) {
            set("non-degenerate", std::pow(2.0, 1.0 - 4.0 * spec.tau), "w_n = o(sqrt(log n / n))");
        } else if (dir > 0) {
            set("degenerate", 0.0, "n w_n^2 / log n -> infinity");
        } else {
            set("undetermined", std::nan(""), "w_n is of the order sqrt(log n / n)");
            r.ambiguous = true;
        }
        break;
    }
    }
    return r;
}

void ProbeSpec::validate() const
{
    spec.validate();
    if (n_grid.empty()) {
        throw ProbeError("probe n grid is empty");
    }
    if (reps < 1) {
        throw ProbeError("probe needs at least one replicate");
    }
    for (std::size_t i = 1; i < n_grid.size(); ++i) {
        if (n_grid[i] <= n_grid[i - 1]) {
            throw ProbeError("probe n grid must be strictly increasing");
        }
    }
    const RateRule nw2 = kN * w_rule.pow(2.0);
    if (limit_direction(w_rule) >= 0) {
        throw ProbeError("w rule " + w_rule.to_string() + " does not tend to 0");
    }
    if (limit_direction(nw2) <= 0) {
        throw ProbeError("n w_n^2 does not tend to infinity for w rule " + w_rule.to_string());
    }
    for (std::size_t i = 1; i < n_grid.size(); ++i) {
        const double a = static_cast<double>(n_grid[i - 1]);
        const double b = static_cast<double>(n_grid[i]);
        if (!(w_rule(b) < w_rule(a)) || !(nw2(b) > nw2(a))) {
            throw ProbeError("w rule " + w_rule.to_string() + " is not yet monotone on the n grid");
        }
    }
    const RegimeReport rr = regime_check(spec, w_rule);
    if (rr.target_index > 0.0) {
        const double floor = static_cast<double>(kMinHits) / static_cast<double>(reps);
        for (std::size_t n : n_grid) {
            const double predicted = std::exp(-rr.target_index * nw2(static_cast<double>(n)));
            if (predicted < floor) {
                throw ProbeError("reliability guard: " + spec.label() + " at n = " + std::to_string(n) +
                                 " with w_n = " + w_rule.to_string() + " targets P ~ exp(-" +
                                 std::to_string(rr.target_index * nw2(static_cast<double>(n))) + "), below " +
                                 std::to_string(kMinHits) + "/" + std::to_string(reps));
            }
        }
    }
}

std::vector<IndexPoint> index_estimate(const ProbeSpec& probe, unsigned workers)
{
    return index_estimate_batch({probe}, workers).front();
}

std::vector<std::vector<IndexPoint>> index_estimate_batch(const std::vector<ProbeSpec>& probes, unsigned workers)
{
    for (const auto& p : probes) {
        p.validate();
    }
    std::vector<std::vector<IndexPoint>> out(probes.size());
    // n -> probes using it; probes are grouped by seed too, since the seed keys the stream.
    std::map<std::pair<std::uint64_t, std::size_t>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        for (std::size_t n : probes[i].n_grid) {
            groups[{probes[i].seed, n}].push_back(i);
        }
    }
    std::vector<std::map<std::size_t, IndexPoint>> by_n(probes.size());
    for (const auto& [key, members] : groups) {
        const auto [seed, n] = key;
        std::vector<StatisticSpec> specs;
        std::vector<std::size_t> slot(members.size());
        std::size_t reps = 0;
        for (std::size_t j = 0; j < members.size(); ++j) {
            const auto& p = probes[members[j]];
            reps = std::max(reps, p.reps);
            auto it = std::find(specs.begin(), specs.end(), p.spec);
            if (it == specs.end()) {
                specs.push_back(p.spec);
                it = specs.end() - 1;
            }
            slot[j] = static_cast<std::size_t>(it - specs.begin());
        }
        const auto vals = replicate_statistics(specs, n, reps, seed, StreamPurpose::Probe, null_sampler(), workers);
        for (std::size_t j = 0; j < members.size(); ++j) {
            const auto& p = probes[members[j]];
            by_n[members[j]].emplace(n, make_point(p, regime_check(p.spec, p.w_rule), n, vals[slot[j]]));
        }
    }
    for (std::size_t i = 0; i < probes.size(); ++i) {
        for (std::size_t n : probes[i].n_grid) {
            out[i].push_back(by_n[i].at(n));
        }
    }
    return out;
}

}  // namespace wgof
