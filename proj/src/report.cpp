#include "monoseq/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "monoseq/distribution.hpp"
#include "monoseq/simulator.hpp"

namespace monoseq {

bool BoundReport::all_passed() const noexcept {
    return std::all_of(rows.begin(), rows.end(), [](const BoundRow& r) { return r.passed(); });
}

bool all_passed(std::span<const PropertyRecord> records) noexcept {
    return std::all_of(records.begin(), records.end(), [](const PropertyRecord& r) { return r.passed(); });
}

BoundReport bound_report(const ValueTable& vt, const VarianceTable& wt, std::span<const int> n_list) {
    if (!wt.matches(vt)) throw std::invalid_argument("variance table built from a different value table");
    BoundReport report;
    for (int n : n_list) {
        if (n < 1 || n > vt.horizon())
            throw std::out_of_range("n = " + std::to_string(n) + " outside the table horizon 1.." +
                                    std::to_string(vt.horizon()));
        BoundRow row;
        row.n = n;
        row.mean = vt.values(n)[0];
        row.sqrt_2n = std::sqrt(2.0 * n);
        if (n > 1) row.gap_ratio = (row.sqrt_2n - row.mean) / std::log(static_cast<double>(n));
        row.variance = wt.wvalues(n)[0];
        row.lower = row.mean / 3.0 - 2.0;
        row.upper = row.mean / 3.0 + (2.0 / 3.0) * (1.0 + std::log(static_cast<double>(n)));
        report.rows.push_back(row);
    }
    return report;
}

namespace {

// Largest positive excess over a running set of checks.
struct Tracker {
    PropertyRecord record;
    Tracker(std::string name, double tolerance, bool strict = false) {
        record.name = std::move(name);
        record.tolerance = tolerance;
        record.strict = strict;
        record.worst = -std::numeric_limits<double>::infinity();
    }
    void see(double violation) {
        record.worst = std::max(record.worst, violation);
        ++record.checked;
    }
    PropertyRecord done() const {
        PropertyRecord out = record;
        if (out.checked == 0) out.worst = 0.0;
        return out;
    }
};

// Interior uniform-coordinate sub-grid for the exponential-model checks:
// nodes strictly inside (0, kExpUpper].
constexpr double kExpUpper = 0.99;

}  // namespace

std::vector<PropertyRecord> property_report(const ValueTable& vt, const VarianceTable& wt) {
    if (!wt.matches(vt)) throw std::invalid_argument("variance table built from a different value table");
    const int n = vt.horizon();
    const GridSpec& grid = vt.grid();
    const std::size_t g = grid.points;
    const double dx = grid.spacing();

    Tracker monotone("value_monotonicity", 1e-12);
    Tracker differences("difference_bounds", 1e-12);
    Tracker submodular("submodularity", 1e-10);
    Tracker thresholds_ordered("threshold_monotonicity", dx);
    Tracker threshold_range("threshold_range", 0.0);
    Tracker concave_k("concavity_in_k", 1e-10);
    Tracker concave_n("mean_concavity_in_n", 1e-10);
    Tracker concave_s("uniform_concavity", 1e-8);
    Tracker convex_exp("exponential_convexity", 1e-8);
    Tracker exp_derivative("exponential_derivative_bound", 1e-8);
    Tracker threshold_slope("threshold_derivative", 1e-3);
    Tracker threshold_lipschitz("threshold_slope_range", 1e-9);
    Tracker derivative_sign("derivative_nonpositive", 0.0);
    Tracker mean_bound("mean_upper_bound", 0.0, true);
    Tracker variance_nonneg("variance_nonnegative", 0.0);
    Tracker variance_lower("variance_lower_bound", 1e-10);
    Tracker variance_upper("variance_upper_bound", 1e-10);

    for (int k = 1; k <= n; ++k) {
        const auto v = vt.values(k);
        const auto prev = vt.values(k - 1);
        const auto h = vt.thresholds(k);
        const auto dv = vt.derivatives(k);
        const auto w = wt.wvalues(k);

        double running_min = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < g; ++j) {
            const double s = grid.node(j);
            if (j + 1 < g) monotone.see(v[j + 1] - v[j]);

            const double step = v[j] - prev[j];
            differences.see(std::max(-step, step - (h[j] - s)));

            // v_{k-1}(s) - v_{k-1}(t) <= v_k(s) - v_k(t) for all s <= t is the
            // same as step(t) <= min_{s <= t} step(s).
            running_min = std::min(running_min, step);
            submodular.see(step - running_min);

            threshold_range.see(std::max(s - h[j], h[j] - 1.0));
            if (k < n) thresholds_ordered.see(vt.thresholds(k + 1)[j] - h[j]);
            if (k < n) concave_k.see(vt.values(k + 1)[j] - 2.0 * v[j] + prev[j]);
            if (j > 0 && j + 1 < g) {
                concave_s.see(v[j + 1] - 2.0 * v[j] + v[j - 1]);
                derivative_sign.see(dv[j]);
            }

            const double lower = v[j] / 3.0 - 2.0;
            const double upper = v[j] / 3.0 + (2.0 / 3.0) * (1.0 + std::log(static_cast<double>(k)));
            variance_nonneg.see(-w[j]);
            variance_lower.see(lower - w[j]);
            variance_upper.see(w[j] - upper);
        }

        // Exponential model through the dictionary: v^e_k(e) = v_k(1 - exp(-e)).
        for (std::size_t j = 2; j + 1 < g && grid.node(j) <= kExpUpper; ++j) {
            const double e0 = to_exponential_coord(grid.node(j - 1));
            const double e1 = to_exponential_coord(grid.node(j));
            const double e2 = to_exponential_coord(grid.node(j + 1));
            const double left = (v[j] - v[j - 1]) / (e1 - e0);
            const double right = (v[j + 1] - v[j]) / (e2 - e1);
            convex_exp.see(-2.0 * (right - left) / (e2 - e0));
        }
        if (k < n) {
            const auto h_next = vt.thresholds(k + 1);
            for (std::size_t j = 1; j + 1 < g && grid.node(j) <= kExpUpper; ++j) {
                const double u = grid.node(j);
                // e^{-s} v_k'(1 - e^{-s}) with s = -log(1 - u), against
                // -(1 - e^{-h^e_{k+1}(s) + s})^{-1}; h^e = +inf when h_{k+1} = 1.
                const double scaled = (1.0 - u) * dv[j];
                const double ratio = h_next[j] >= 1.0 ? 0.0 : (1.0 - h_next[j]) / (1.0 - u);
                const double bound = -1.0 / (1.0 - ratio);
                exp_derivative.see(bound - scaled);
            }
        }

        if (k >= 2) {
            const double critical = vt.critical_value(k - 1);
            const auto prev_dv = vt.derivatives(k - 1);
            for (std::size_t j = 1; j + 1 < g && grid.node(j + 1) < critical; ++j) {
                const double slope = (h[j + 1] - h[j - 1]) / (2.0 * dx);
                const double predicted = prev_dv[j] / interpolate(prev_dv, grid, h[j]);
                threshold_slope.see(std::abs(slope - predicted));
                threshold_lipschitz.see(std::max(-slope, slope - 1.0));
            }
        }

        mean_bound.see(v[0] - std::sqrt(2.0 * k));
        if (k >= 2 && k < n)
            concave_n.see(vt.values(k + 1)[0] - 2.0 * v[0] + prev[0]);
    }

    return {monotone.done(),         differences.done(),     submodular.done(),
            thresholds_ordered.done(), threshold_range.done(), concave_k.done(),
            concave_n.done(),         concave_s.done(),       convex_exp.done(),
            exp_derivative.done(),    threshold_slope.done(), threshold_lipschitz.done(),
            derivative_sign.done(),   mean_bound.done(),      variance_nonneg.done(),
            variance_lower.done(),    variance_upper.done()};
}

std::vector<PropertyRecord> trace_property_report(const ValueTable& vt, int traces, std::uint64_t seed) {
    if (traces < 1) throw std::invalid_argument("need at least one trace");
    Tracker bounded("martingale_difference_bound", 1.0);
    Tracker drift("martingale_drift", 1e-8);
    Tracker split("difference_decomposition", 1e-12);
    Tracker endpoints("martingale_endpoints", 0.0);

    const int n = vt.horizon();
    for (int r = 0; r < traces; ++r) {
        const EpisodeTrace trace = simulate_episode(vt, RngStream(seed, static_cast<std::uint64_t>(r)));
        endpoints.see(std::abs(trace.martingale.front() - vt.value_at(n, 0.0)));
        endpoints.see(std::abs(trace.martingale.back() - trace.final_length()));
        for (int j = 1; j <= n; ++j) {
            const auto idx = static_cast<std::size_t>(j - 1);
            const double d = trace.diffs[idx];
            bounded.see(std::abs(d));
            const double state = trace.running_max[idx];
            drift.see(std::abs(drift_at(vt, n - j + 1, state)));
            const AbComponents parts = ab_components(vt, n - j + 1, state, trace.x[idx]);
            split.see(std::abs(trace.martingale[idx + 1] - trace.martingale[idx] - parts.d()));
            split.see(std::abs(d - parts.d()));
        }
    }
    return {bounded.done(), drift.done(), split.done(), endpoints.done()};
}

}  // namespace monoseq
