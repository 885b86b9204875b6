#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace wgof {

class RandomStream;

/// Raised when a sample value is not strictly inside (0,1) or is not finite.
class InvalidSample : public std::invalid_argument
{
  public:
    InvalidSample(const std::string& what, std::size_t index)
        : std::invalid_argument(what), index_(index)
    {
    }

    /// Position of the offending value in the input as given.
    std::size_t index() const noexcept { return index_; }

  private:
    std::size_t index_;
};

/// Sorted observations on (0,1) after the probability integral transform.
///
/// Ties are allowed. Values at 0 or 1 are rejected rather than clamped: the
/// variance weights are singular there.
class NullSample
{
  public:
    /// Validates and sorts.
    static NullSample from_unsorted(std::vector<double> values);

    /// Validates; throws if `values` is not nondecreasing.
    static NullSample from_sorted(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<double>& values() const noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

  private:
    explicit NullSample(std::vector<double> v) : values_(std::move(v)) {}

    std::vector<double> values_;
};

/// Fills `out` with n sorted uniforms from normalized exponential spacings,
/// O(n) and without a sort.
void sorted_uniforms(RandomStream& rng, std::size_t n, std::vector<double>& out);

}  // namespace wgof
