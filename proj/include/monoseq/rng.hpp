#pragma once

#include <array>
#include <cstdint>

namespace monoseq {

/// Philox4x32-10 block function: 128-bit counter, 64-bit key.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Independent substreams inside one replicate.
enum class Substream : std::uint32_t { Observations = 0, Horizon = 1 };

/// Counter-based random stream keyed on (master_seed, replicate_index).
///
/// Every variate is a pure function of (master_seed, replicate_index,
/// substream, draw_index), so replicates can run in any order on any
/// worker and still reproduce bit for bit.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t replicate_index) noexcept
        : seed_(master_seed), replicate_(replicate_index) {}

    [[nodiscard]] std::uint64_t master_seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint64_t replicate_index() const noexcept { return replicate_; }

    /// Uniform on [0,1) with 53 random bits.
    [[nodiscard]] double uniform(std::uint64_t draw_index,
                                 Substream stream = Substream::Observations) const noexcept;

    /// Sequential draws; the cursor of each substream starts at 0.
    double next_uniform(Substream stream = Substream::Observations) noexcept;

    /// Rate-1 exponential by inversion of a sequential uniform draw.
    double next_exponential(Substream stream) noexcept;

private:
    std::uint64_t seed_;
    std::uint64_t replicate_;
    std::array<std::uint64_t, 2> cursor_{};
    std::array<double, 2> pending_{};
};

}  // namespace monoseq
