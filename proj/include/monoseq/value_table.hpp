#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "monoseq/grid.hpp"

namespace monoseq {

/// Gridded value functions v_k, thresholds h_k, critical values s_k* and
/// derivatives v_k' for k = 0..n, all in uniform coordinates.
///
/// v_k(s) is the expected number of future selections under the optimal
/// policy with k observations left and last selected value s. Rows are
/// stored k-major, one row of grid().points nodes per k. Row 0 of the
/// threshold and derivative arrays is filled with 1 and 0 respectively so
/// every k indexes directly.
///
/// A built table is immutable; concurrent readers need no synchronisation.
class ValueTable {
public:
    [[nodiscard]] int horizon() const noexcept { return horizon_; }
    [[nodiscard]] const GridSpec& grid() const noexcept { return grid_; }

    [[nodiscard]] std::span<const double> values(int k) const { return row(values_, k); }
    [[nodiscard]] std::span<const double> thresholds(int k) const { return row(thresholds_, k); }
    [[nodiscard]] std::span<const double> derivatives(int k) const { return row(derivatives_, k); }
    /// Cumulative integrals of the interpolated v_k from 0 to each node.
    [[nodiscard]] std::span<const double> value_integrals(int k) const { return row(integrals_, k); }

    /// Piecewise-linear v_k(s). Throws on k outside 0..n or s outside [0,1].
    [[nodiscard]] double value_at(int k, double s) const;

    /// Stored h_k interpolated between nodes, k in 1..n.
    [[nodiscard]] double threshold_at(int k, double s) const;

    /// h_k(s) re-solved at s from the interpolated v_{k-1}, no threshold interpolation.
    [[nodiscard]] double solve_threshold(int k, double s) const;

    /// s_k*, the root of v_k(s) = 1 (0 when v_k(0) <= 1), k in 1..n.
    [[nodiscard]] double critical_value(int k) const;

    /// v_k'(s) for s strictly inside (0,1), k in 1..n.
    [[nodiscard]] double derivative_at(int k, double s) const;

    /// Exact integral of the interpolated v_k over [a, b] with 0 <= a <= b <= 1.
    [[nodiscard]] double integral(int k, double a, double b) const;

    /// Unchecked interpolation used by the simulator's inner loops.
    [[nodiscard]] double value_fast(int k, double s) const noexcept;
    [[nodiscard]] double threshold_fast(int k, double s) const noexcept;

    friend ValueTable build_value_table(int n, const GridSpec& grid);

private:
    ValueTable(int n, const GridSpec& grid);

    [[nodiscard]] std::span<const double> row(const std::vector<double>& data, int k) const;
    [[nodiscard]] double primitive(int k, double x) const noexcept;
    void check_k(int k, int lowest) const;

    int horizon_;
    GridSpec grid_;
    std::vector<double> values_;
    std::vector<double> thresholds_;
    std::vector<double> derivatives_;
    std::vector<double> integrals_;
    std::vector<double> critical_;
};

/// Runs the Bellman recursion on the grid for k = 1..n.
/// Throws std::invalid_argument for n < 1 or an invalid grid.
ValueTable build_value_table(int n, const GridSpec& grid = {});

/// Linear interpolation of node samples at s in [0,1].
double interpolate(std::span<const double> nodes, const GridSpec& grid, double s) noexcept;

/// Root x in [lo_node, 1] of the interpolant of a strictly decreasing row
/// equal to target, given row[lo_node] > target >= row.back().
double decreasing_root(std::span<const double> row, const GridSpec& grid, std::size_t lo_node,
                       double target) noexcept;

/// Closed-form values of v_1, v_2, v_3 obtained by exact integration. Used
/// as an independent check of the grid recursion; shares no code with it.
/// Throws std::invalid_argument for k outside 1..3 or s outside [0,1].
double small_n_oracle(int k, double s);

}  // namespace monoseq
