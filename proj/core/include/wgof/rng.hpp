#pragma once

#include <array>
#include <cstdint>

namespace wgof {

/// Philox4x32-10 block function (Salmon et al. 2011).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// SplitMix64 finalizer, used to hash stream identifiers.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// What a replicate is used for. Calibration and validation draws never share
/// a stream, so a critical value and the size check against it are
/// independent.
enum class StreamPurpose : std::uint32_t {
    Calibration = 1,
    Validation = 2,
    Power = 3,
    Probe = 4,
};

/// Stream identifier for replicate `rep` of sample size `n`.
///
/// Power streams ignore the alternative model on purpose: every model and
/// statistic sees the same underlying uniforms (common random numbers).
std::uint64_t stream_id(StreamPurpose purpose, std::uint64_t n, std::uint64_t rep) noexcept;

/// Counter-based random stream.
///
/// The key is the user seed; the counter is (stream id, block index). Two
/// streams with different ids are independent, and the values a stream
/// produces depend only on (seed, id, draw index), never on scheduling.
class RandomStream
{
  public:
    RandomStream(std::uint64_t seed, std::uint64_t stream) noexcept;

    std::uint64_t next_u64() noexcept;

    /// Uniform on the open interval (0,1), 52-bit resolution.
    double uniform() noexcept;

    /// Standard exponential.
    double exponential() noexcept;

    /// Standard normal by inversion.
    double normal() noexcept;

    /// Gamma(shape, 1) (Marsaglia and Tsang; shape < 1 boosted by U^(1/shape)).
    double gamma(double shape) noexcept;

    bool bernoulli(double p) noexcept { return uniform() < p; }

  private:
    void refill() noexcept;

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int used_ = 4;
};

}  // namespace wgof
