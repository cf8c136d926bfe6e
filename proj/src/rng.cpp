#include "monoseq/rng.hpp"

#include <cmath>

namespace monoseq {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

inline double to_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
    const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

namespace {

// Each block yields two doubles; the substream tag occupies the top byte of
// the block counter's high word.
std::array<std::uint32_t, 4> block_bits(std::uint64_t seed, std::uint64_t replicate,
                                        std::uint64_t block, Substream stream) noexcept {
    const std::array<std::uint32_t, 4> counter = {
        static_cast<std::uint32_t>(block),
        (static_cast<std::uint32_t>(block >> 32) & 0x00FFFFFFu) |
            (static_cast<std::uint32_t>(stream) << 24),
        static_cast<std::uint32_t>(replicate),
        static_cast<std::uint32_t>(replicate >> 32),
    };
    return philox4x32(counter, {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
}

}  // namespace

double RngStream::uniform(std::uint64_t draw_index, Substream stream) const noexcept {
    const auto out = block_bits(seed_, replicate_, draw_index >> 1, stream);
    return (draw_index & 1u) == 0 ? to_unit(out[0], out[1]) : to_unit(out[2], out[3]);
}

double RngStream::next_uniform(Substream stream) noexcept {
    const auto slot = static_cast<std::size_t>(stream);
    const std::uint64_t index = cursor_[slot]++;
    if ((index & 1u) != 0) return pending_[slot];
    const auto out = block_bits(seed_, replicate_, index >> 1, stream);
    pending_[slot] = to_unit(out[2], out[3]);
    return to_unit(out[0], out[1]);
}

double RngStream::next_exponential(Substream stream) noexcept {
    return -std::log1p(-next_uniform(stream));
}

}  // namespace monoseq
