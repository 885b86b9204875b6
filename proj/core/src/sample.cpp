#include "wgof/sample.hpp"

#include <algorithm>
#include <cmath>

#include "wgof/rng.hpp"

namespace wgof {

namespace {

void validate(const std::vector<double>& v)
{
    if (v.empty()) {
        throw InvalidSample("empty sample", 0);
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0 && v[i] < 1.0)) {
            throw InvalidSample("value " + std::to_string(v[i]) + " at index " + std::to_string(i) +
                                    " is not strictly inside (0,1)",
                                i);
        }
    }
}

}  // namespace

NullSample NullSample::from_unsorted(std::vector<double> values)
{
    validate(values);
    std::sort(values.begin(), values.end());
    return NullSample(std::move(values));
}

NullSample NullSample::from_sorted(std::vector<double> values)
{
    validate(values);
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] < values[i - 1]) {
            throw InvalidSample("sample is not sorted at index " + std::to_string(i), i);
        }
    }
    return NullSample(std::move(values));
}

void sorted_uniforms(RandomStream& rng, std::size_t n, std::vector<double>& out)
{
    out.resize(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += rng.exponential();
        out[i] = sum;
    }
    sum += rng.exponential();
    const double inv = 1.0 / sum;
    constexpr double kTop = 1.0 - 0x1.0p-53;
    for (auto& x : out) {
        x = std::min(x * inv, kTop);
    }
}

}  // namespace wgof
