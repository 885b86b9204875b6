#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wgof/rules.hpp"
#include "wgof/statistics.hpp"

namespace wgof {

/// Fraction of null replicates with statistic >= threshold.
struct TailEstimate {
    double p_hat = 0.0;
    double stderr_ = 0.0;
    std::size_t reps = 0;
    std::size_t hits = 0;
    /// hits >= 30; below that the estimate carries no acceptance weight.
    bool reliable = false;
    std::string warning;
};

TailEstimate tail_probability(const StatisticSpec& spec, std::size_t n, double threshold, std::size_t reps,
                              std::uint64_t seed, unsigned workers = 1);

/// Which moderate-deviation regime a (statistic, w_n) pair falls in.
struct RegimeReport {
    /// "non-degenerate", "degenerate" or "undetermined".
    std::string regime;
    /// Limit of -log P(T_n >= sqrt(n) w_n) / (n w_n^2); NaN when undetermined.
    double target_index = 0.0;
    /// The deciding comparison has equal exponents throughout, so the limit
    /// depends on constants the asymptotics do not cover.
    bool ambiguous = false;
    std::string explanation;
};

/// Decided by exact exponent arithmetic on the symbolic rules.
RegimeReport regime_check(const StatisticSpec& spec, const RateRule& w_rule);

/// Raised when a probe cannot give a reliable estimate at its replicate count.
class ProbeError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

struct ProbeSpec {
    StatisticSpec spec;
    RateRule w_rule;
    std::vector<std::size_t> n_grid;
    std::size_t reps = 1000000;
    std::uint64_t seed = 1;

    /// Checks w_n -> 0 and n w_n^2 -> infinity (symbolically and along the
    /// grid), a strictly increasing grid, and the reliability guard: with a
    /// positive target index c, exp(-c n w_n^2) >= 30 / reps at every grid
    /// point. Throws ProbeError.
    void validate() const;
};

struct IndexPoint {
    std::size_t n;
    double w;
    double threshold;  ///< sqrt(n) w_n
    TailEstimate tail;
    double index;  ///< -log(p_hat) / (n w_n^2), +inf when p_hat = 0
    double target;
    std::string regime;
};

std::vector<IndexPoint> index_estimate(const ProbeSpec& probe, unsigned workers = 1);

/// Several probes at once; probes sharing an n reuse the same null samples
/// (each probe uses the first `reps` of them), so results equal those of
/// separate runs.
std::vector<std::vector<IndexPoint>> index_estimate_batch(const std::vector<ProbeSpec>& probes,
                                                          unsigned workers = 1);

}  // namespace wgof
