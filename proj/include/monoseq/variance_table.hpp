#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "monoseq/grid.hpp"
#include "monoseq/trace.hpp"
#include "monoseq/value_table.hpp"

namespace monoseq {

/// Conditional variances w_k(s) of the remaining selection count, sampled
/// on the value table's grid for k = 0..n.
///
/// Also keeps the cumulative integrals of v_k^2 so per-step conditional
/// second moments of the martingale differences cost O(1).
class VarianceTable {
public:
    [[nodiscard]] int horizon() const noexcept { return horizon_; }
    [[nodiscard]] const GridSpec& grid() const noexcept { return grid_; }

    [[nodiscard]] std::span<const double> wvalues(int k) const;

    /// Piecewise-linear w_k(s). w_0 = 0; w_n(0) is Var of the final length.
    [[nodiscard]] double variance_at(int k, double s) const;

    /// Exact integral of the squared interpolant of v_k over [a, b]; vt must
    /// be the table this one was built from.
    [[nodiscard]] double value_square_integral(const ValueTable& vt, int k, double a,
                                               double b) const noexcept;

    /// True when vt has the same grid and horizon.
    [[nodiscard]] bool matches(const ValueTable& vt) const noexcept {
        return vt.grid() == grid_ && vt.horizon() == horizon_;
    }

    /// Nodes where rounding pushed w below zero and it was reset to 0.
    [[nodiscard]] std::size_t clamped_nodes() const noexcept { return clamped_; }

    friend VarianceTable build_variance_table(const ValueTable& vt);

private:
    VarianceTable(int n, const GridSpec& grid);

    int horizon_;
    GridSpec grid_;
    std::vector<double> w_;
    std::vector<double> square_integrals_;
    std::size_t clamped_ = 0;
};

/// One-step law of total variance over the next arrival:
///   w_k(s) = int_s^h [(1 + v_{k-1})^2 + w_{k-1}] dx
///            + (1 - h + s) [v_{k-1}(s)^2 + w_{k-1}(s)] - v_k(s)^2.
VarianceTable build_variance_table(const ValueTable& vt);

/// Martingale increment split d = A + B for an arrival x at state s with k left.
struct AbComponents {
    double a = 0.0;  ///< selection contribution, in [0,1]
    double b = 0.0;  ///< no-selection drift, in [-1,0]
    [[nodiscard]] double d() const noexcept { return a + b; }
};

AbComponents ab_components(const ValueTable& vt, int k, double s, double x);

/// int_s^{h_k(s)} A(x) dx + B: the conditional mean of d, zero up to
/// discretisation error.
double drift_at(const ValueTable& vt, int k, double s);

/// E[d^2 | state] = int_s^{h_k(s)} A(x)^2 dx - B^2.
double conditional_second_moment(const ValueTable& vt, const VarianceTable& wt, int k, double s);

/// V = sum_j E[d_j^2 | state before j] along a trace.
/// Throws std::invalid_argument when the tables do not match each other or the trace.
double conditional_variance_series(const ValueTable& vt, const VarianceTable& wt,
                                   const EpisodeTrace& trace);

}  // namespace monoseq
