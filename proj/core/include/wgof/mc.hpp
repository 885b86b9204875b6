#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "wgof/models.hpp"
#include "wgof/rng.hpp"
#include "wgof/statistics.hpp"

namespace wgof {

struct McConfig {
    std::size_t reps_critical = 100000;
    std::size_t reps_power = 10000;
    double alpha = 0.01;
    std::uint64_t seed = 1;
    unsigned workers = 0;  ///< 0 picks std::thread::hardware_concurrency()

    void validate() const;
    unsigned resolved_workers() const;
};

/// Fills the vector with a sorted sample of the requested size.
using Sampler = std::function<void(RandomStream&, std::size_t, std::vector<double>&)>;

Sampler null_sampler();
Sampler model_sampler(const AlternativeModel& m);

/// Values of every spec on `reps` replicates; result[s][r] is spec s on
/// replicate r. Replicate r draws from stream (seed, stream_id(purpose, n, r)),
/// so the output does not depend on the number of workers.
std::vector<std::vector<double>> replicate_statistics(const std::vector<StatisticSpec>& specs, std::size_t n,
                                                      std::size_t reps, std::uint64_t seed, StreamPurpose purpose,
                                                      const Sampler& sampler, unsigned workers);

/// A Monte Carlo critical value and its provenance.
struct CriticalValue {
    double value = 0.0;
    double stderr_ = 0.0;  ///< half the spread of the order statistics one binomial SD either side
    std::size_t reps = 0;
    std::uint64_t seed = 0;
};

/// Order statistic number ceil((1 - alpha) reps), 1-based, of the values.
CriticalValue upper_quantile(std::vector<double> values, double alpha);

/// A binomial proportion with its standard error sqrt(p(1-p)/reps).
struct Proportion {
    double p = 0.0;
    double stderr_ = 0.0;
    std::size_t reps = 0;
};

Proportion rejection_rate(const std::vector<double>& values, double critical);

/// Raised when a cached critical value would be reused or overwritten with a
/// different seed or replicate count.
class ProvenanceConflict : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Critical values keyed by (statistic token, n, alpha).
class CriticalValueTable
{
  public:
    using Key = std::tuple<std::string, std::size_t, double>;

    /// nullptr when absent.
    const CriticalValue* find(const StatisticSpec& spec, std::size_t n, double alpha) const;

    /// Stores an entry; throws ProvenanceConflict if a different entry is
    /// already present for the key.
    void insert(const StatisticSpec& spec, std::size_t n, double alpha, const CriticalValue& cv);

    /// Critical values for every spec at (n, cfg.alpha), computing the missing
    /// ones from cfg.reps_critical calibration replicates in a single pass.
    /// Cached entries made with another seed or replicate count raise
    /// ProvenanceConflict.
    std::vector<CriticalValue> get_or_compute(const std::vector<StatisticSpec>& specs, std::size_t n,
                                              const McConfig& cfg);

    std::size_t size() const noexcept { return entries_.size(); }
    const std::map<Key, CriticalValue>& entries() const noexcept { return entries_; }

    /// Versioned CSV: kind,params,n,alpha,reps,seed,value,stderr.
    void save(const std::string& path) const;
    std::string to_csv() const;
    static CriticalValueTable load(const std::string& path);
    static CriticalValueTable from_csv(const std::string& text);

  private:
    std::map<Key, CriticalValue> entries_;
};

/// Critical values from calibration replicates, no caching.
std::vector<CriticalValue> critical_values(const std::vector<StatisticSpec>& specs, std::size_t n,
                                           const McConfig& cfg);

/// Size estimated on validation replicates (independent of calibration), one
/// per spec, cfg.reps_critical replicates.
std::vector<Proportion> empirical_size(const std::vector<StatisticSpec>& specs, std::size_t n, const McConfig& cfg,
                                       const std::vector<CriticalValue>& crit);

/// Power over cfg.reps_power samples of the model. All models share the same
/// underlying streams for a given n (common random numbers).
std::vector<Proportion> power(const std::vector<StatisticSpec>& specs, const AlternativeModel& model,
                              std::size_t n, const McConfig& cfg, const std::vector<CriticalValue>& crit);

struct PowerPoint {
    double x;  ///< n or the swept parameter
    std::size_t n;
    Proportion power;
    double critical;
};

struct PowerCurve {
    StatisticSpec spec;
    std::string model;
    std::vector<PowerPoint> points;
    double alpha;
    std::uint64_t seed;
};

/// One curve per spec over an n grid, critical values from the table.
std::vector<PowerCurve> power_curve_vs_n(const std::vector<StatisticSpec>& specs, const AlternativeModel& model,
                                         const std::vector<std::size_t>& n_grid, const McConfig& cfg,
                                         CriticalValueTable& table);

/// One curve per spec over a list of models at a fixed n; x is `param`
/// of each model.
std::vector<PowerCurve> power_curve_vs_param(const std::vector<StatisticSpec>& specs,
                                             const std::vector<AlternativeModel>& models, const std::string& param,
                                             std::size_t n, const McConfig& cfg, CriticalValueTable& table);

/// steps sample sizes from lo to hi, equally spaced in log n and rounded to
/// the nearest integer; duplicates after rounding are dropped.
std::vector<std::size_t> log_grid(std::size_t lo, std::size_t hi, std::size_t steps);

/// First n in start, 2 start, 4 start, ... with power(spec) >= level, critical
/// values from the table. Throws std::runtime_error if n would exceed cap.
std::size_t saturation_n(const StatisticSpec& spec, const AlternativeModel& model, const McConfig& cfg,
                         CriticalValueTable& table, double level = 0.99, std::size_t start = 100,
                         std::size_t cap = std::size_t{1} << 20);

enum class Rounding {
    HalfUp,
    Ceiling,
};

/// n * e rounded half up (or up), at least 1.
std::size_t corrected_n(std::size_t n, double e, Rounding r = Rounding::HalfUp);

/// Power of KS at corrected_n(n, e, r) with its own critical value.
PowerPoint corrected_sample_size_power(const AlternativeModel& model, std::size_t n, double e, const McConfig& cfg,
                                       CriticalValueTable& table, Rounding r = Rounding::HalfUp);

/// Number of grid steps where the curve drops by more than `tolerance` joint
/// standard errors.
std::size_t monotone_violations(const PowerCurve& c, double tolerance = 2.0);

}  // namespace wgof
