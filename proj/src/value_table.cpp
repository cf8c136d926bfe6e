#include "monoseq/value_table.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace monoseq {

void GridSpec::validate() const {
    if (points < kMinPoints)
        throw std::invalid_argument("grid needs at least 65 points, got " + std::to_string(points));
    if (!(root_tolerance > 0.0) || root_tolerance > spacing())
        throw std::invalid_argument("root tolerance must lie in (0, grid spacing]");
}

std::pair<std::size_t, double> GridSpec::locate(double s) const noexcept {
    const double x = s * static_cast<double>(points - 1);
    const double floor_x = std::floor(x);
    std::size_t j = floor_x <= 0.0 ? 0 : static_cast<std::size_t>(floor_x);
    if (j > points - 2) j = points - 2;
    return {j, x - static_cast<double>(j)};
}

double interpolate(std::span<const double> nodes, const GridSpec& grid, double s) noexcept {
    const auto [j, t] = grid.locate(s);
    return nodes[j] + t * (nodes[j + 1] - nodes[j]);
}

double decreasing_root(std::span<const double> row, const GridSpec& grid, std::size_t lo_node,
                       double target) noexcept {
    // First node past lo_node whose value has dropped to the target.
    auto first = row.begin() + static_cast<std::ptrdiff_t>(lo_node) + 1;
    auto it = std::partition_point(first, row.end(), [target](double v) { return v > target; });
    if (it == row.end()) return 1.0;
    const auto m = static_cast<std::size_t>(it - row.begin());
    const double left = row[m - 1];
    const double right = row[m];
    if (right == target) return grid.node(m);
    const double t = (left - target) / (left - right);
    return grid.node(m - 1) + t * grid.spacing();
}

ValueTable::ValueTable(int n, const GridSpec& grid)
    : horizon_(n),
      grid_(grid),
      values_(static_cast<std::size_t>(n + 1) * grid.points, 0.0),
      thresholds_(static_cast<std::size_t>(n + 1) * grid.points, 1.0),
      derivatives_(static_cast<std::size_t>(n + 1) * grid.points, 0.0),
      integrals_(static_cast<std::size_t>(n + 1) * grid.points, 0.0),
      critical_(static_cast<std::size_t>(n + 1), 0.0) {}

std::span<const double> ValueTable::row(const std::vector<double>& data, int k) const {
    check_k(k, 0);
    const std::size_t g = grid_.points;
    return {data.data() + static_cast<std::size_t>(k) * g, g};
}

void ValueTable::check_k(int k, int lowest) const {
    if (k < lowest || k > horizon_)
        throw std::out_of_range("k = " + std::to_string(k) + " outside " + std::to_string(lowest) +
                                ".." + std::to_string(horizon_));
}

namespace {

void check_state(double s) {
    if (!(s >= 0.0 && s <= 1.0))
        throw std::out_of_range("state " + std::to_string(s) + " outside [0,1]");
}

// Prefix integrals of the piecewise-linear interpolant of one row.
void fill_prefix(std::span<const double> v, std::span<double> prefix, double spacing) {
    long double acc = 0.0L;
    prefix[0] = 0.0;
    for (std::size_t j = 1; j < v.size(); ++j) {
        acc += 0.5L * static_cast<long double>(spacing) * (static_cast<long double>(v[j - 1]) + v[j]);
        prefix[j] = static_cast<double>(acc);
    }
}

}  // namespace

double ValueTable::primitive(int k, double x) const noexcept {
    const std::size_t g = grid_.points;
    const double* v = values_.data() + static_cast<std::size_t>(k) * g;
    const double* p = integrals_.data() + static_cast<std::size_t>(k) * g;
    const auto [j, t] = grid_.locate(x);
    return p[j] + grid_.spacing() * (t * v[j] + 0.5 * t * t * (v[j + 1] - v[j]));
}

double ValueTable::value_fast(int k, double s) const noexcept {
    const std::size_t g = grid_.points;
    return interpolate({values_.data() + static_cast<std::size_t>(k) * g, g}, grid_, s);
}

double ValueTable::threshold_fast(int k, double s) const noexcept {
    const std::size_t g = grid_.points;
    return interpolate({thresholds_.data() + static_cast<std::size_t>(k) * g, g}, grid_, s);
}

double ValueTable::value_at(int k, double s) const {
    check_k(k, 0);
    check_state(s);
    return value_fast(k, s);
}

double ValueTable::threshold_at(int k, double s) const {
    check_k(k, 1);
    check_state(s);
    return threshold_fast(k, s);
}

double ValueTable::solve_threshold(int k, double s) const {
    check_k(k, 1);
    check_state(s);
    const auto prev = values(k - 1);
    const double current = interpolate(prev, grid_, s);
    if (current <= 1.0 || s >= 1.0) return 1.0;
    return std::max(s, decreasing_root(prev, grid_, grid_.locate(s).first, current - 1.0));
}

double ValueTable::critical_value(int k) const {
    check_k(k, 1);
    return critical_[static_cast<std::size_t>(k)];
}

double ValueTable::derivative_at(int k, double s) const {
    check_k(k, 1);
    if (!(s > 0.0 && s < 1.0))
        throw std::out_of_range("derivative_at needs s strictly inside (0,1), got " + std::to_string(s));
    return interpolate(derivatives(k), grid_, s);
}

double ValueTable::integral(int k, double a, double b) const {
    check_k(k, 0);
    check_state(a);
    check_state(b);
    if (b < a) throw std::invalid_argument("integral bounds reversed");
    return primitive(k, b) - primitive(k, a);
}

ValueTable build_value_table(int n, const GridSpec& grid) {
    if (n < 1) throw std::invalid_argument("horizon must be at least 1, got " + std::to_string(n));
    grid.validate();

    ValueTable table(n, grid);
    const std::size_t g = grid.points;
    const double dx = grid.spacing();
    auto row_of = [g](std::vector<double>& data, int k) {
        return std::span<double>(data.data() + static_cast<std::size_t>(k) * g, g);
    };

    // v_0 = 0, its prefix integrals are 0 and its derivative is 0: already zero-filled.
    for (int k = 1; k <= n; ++k) {
        const auto prev = row_of(table.values_, k - 1);
        const auto prev_dv = row_of(table.derivatives_, k - 1);
        const auto prev_int = row_of(table.integrals_, k - 1);
        auto v = row_of(table.values_, k);
        auto h = row_of(table.thresholds_, k);
        auto dv = row_of(table.derivatives_, k);

        // The root of v_{k-1}(x) = v_{k-1}(s) - 1 moves right as s does, so one
        // forward sweep finds every bracketing panel.
        std::size_t m = 1;
        for (std::size_t j = 0; j < g; ++j) {
            const double s = grid.node(j);
            const double c = prev[j];
            double hk = 1.0;
            if (c > 1.0 && j + 1 < g) {
                const double target = c - 1.0;
                m = std::max(m, j + 1);
                while (m < g && prev[m] > target) ++m;
                if (m < g) {
                    const double left = prev[m - 1];
                    const double right = prev[m];
                    hk = right == target ? grid.node(m)
                                         : grid.node(m - 1) + dx * (left - target) / (left - right);
                    hk = std::clamp(hk, s, 1.0);
                }
            }
            h[j] = hk;
            const double keep = (1.0 - hk) + s;
            v[j] = keep * c + (hk - s) + (table.primitive(k - 1, hk) - prev_int[j]);
            dv[j] = -1.0 + keep * prev_dv[j];
        }
        fill_prefix(v, row_of(table.integrals_, k), dx);

        table.critical_[static_cast<std::size_t>(k)] =
            v[0] <= 1.0 ? 0.0 : decreasing_root(v, grid, 0, 1.0);
    }
    return table;
}

}  // namespace monoseq
