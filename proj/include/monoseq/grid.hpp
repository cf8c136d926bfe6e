#pragma once

#include <cstddef>
#include <utility>

namespace monoseq {

/// Uniform grid on [0,1] in uniform coordinates, endpoints included.
struct GridSpec {
    std::size_t points = 4097;
    double root_tolerance = 1e-12;

    static constexpr std::size_t kMinPoints = 65;

    /// Throws std::invalid_argument when points < 65 or the tolerance is not in (0, spacing].
    void validate() const;

    [[nodiscard]] double spacing() const noexcept { return 1.0 / static_cast<double>(points - 1); }
    [[nodiscard]] double node(std::size_t j) const noexcept {
        return static_cast<double>(j) / static_cast<double>(points - 1);
    }

    /// Panel index j and local coordinate t in [0,1] with s = node(j) + t * spacing().
    /// j is at most points - 2, so (j, j+1) is always a valid panel.
    [[nodiscard]] std::pair<std::size_t, double> locate(double s) const noexcept;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

}  // namespace monoseq
