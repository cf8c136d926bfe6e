#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monoseq/value_table.hpp"
#include "monoseq/variance_table.hpp"

namespace monoseq {

/// One row of the mean/variance bound comparison.
struct BoundRow {
    int n = 0;
    double mean = 0.0;           ///< v_n(0)
    double sqrt_2n = 0.0;
    std::optional<double> gap_ratio;  ///< (sqrt(2n) - v_n(0)) / log n, absent for n = 1
    double variance = 0.0;       ///< w_n(0)
    double lower = 0.0;          ///< v_n(0)/3 - 2
    double upper = 0.0;          ///< v_n(0)/3 + (2/3)(1 + log n)

    [[nodiscard]] bool mean_ok() const noexcept { return mean < sqrt_2n; }
    [[nodiscard]] bool variance_ok() const noexcept { return lower <= variance && variance <= upper; }
    [[nodiscard]] bool passed() const noexcept { return mean_ok() && variance_ok(); }
};

struct BoundReport {
    std::vector<BoundRow> rows;
    [[nodiscard]] bool all_passed() const noexcept;
};

/// Throws std::out_of_range for any n beyond the table horizon or below 1.
BoundReport bound_report(const ValueTable& vt, const VarianceTable& wt, std::span<const int> n_list);

/// Outcome of one structural check. `worst` is the largest violation seen
/// (positive means the inequality failed by that much); the check passes
/// when worst <= tolerance, or worst < tolerance when `strict` is set.
struct PropertyRecord {
    std::string name;
    double worst = 0.0;
    double tolerance = 0.0;
    bool strict = false;
    std::int64_t checked = 0;

    [[nodiscard]] bool passed() const noexcept { return strict ? worst < tolerance : worst <= tolerance; }
};

/// Table-only properties of v, h, v', w.
std::vector<PropertyRecord> property_report(const ValueTable& vt, const VarianceTable& wt);

/// Martingale properties along `traces` simulated episodes from `seed`.
std::vector<PropertyRecord> trace_property_report(const ValueTable& vt, int traces, std::uint64_t seed);

[[nodiscard]] bool all_passed(std::span<const PropertyRecord> records) noexcept;

}  // namespace monoseq
