#pragma once

#include <vector>

namespace monoseq {

/// One run of the optimal policy over n observations.
///
/// Per-step vectors (x, accepted, diffs, a_parts, b_parts) have n entries,
/// entry j-1 describing observation j. State vectors (running_max, length,
/// martingale) have n+1 entries starting at i = 0, so running_max[0] = 0,
/// length[0] = 0 and martingale[0] = v_n(0).
struct EpisodeTrace {
    int n = 0;
    std::vector<double> x;
    std::vector<bool> accepted;
    std::vector<double> running_max;
    std::vector<int> length;
    std::vector<double> martingale;
    std::vector<double> diffs;
    std::vector<double> a_parts;
    std::vector<double> b_parts;

    [[nodiscard]] int final_length() const { return length.empty() ? 0 : length.back(); }
};

}  // namespace monoseq
