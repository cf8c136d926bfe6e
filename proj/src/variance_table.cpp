#include "monoseq/variance_table.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>

namespace monoseq {

namespace {

// Prefix integrals of y and y^2 for the piecewise-linear interpolant of one
// row, kept in extended precision while a row is being consumed.
struct RowMoments {
    std::span<const double> y;
    std::vector<long double> first;
    std::vector<long double> second;
    long double dx;

    RowMoments(std::span<const double> row, double spacing)
        : y(row), first(row.size(), 0.0L), second(row.size(), 0.0L), dx(spacing) {
        for (std::size_t j = 1; j < row.size(); ++j) {
            const long double y0 = row[j - 1];
            const long double y1 = row[j];
            first[j] = first[j - 1] + 0.5L * dx * (y0 + y1);
            second[j] = second[j - 1] + dx * (y0 * y0 + y0 * y1 + y1 * y1) / 3.0L;
        }
    }

    // Primitive values at x, first and second moments.
    [[nodiscard]] std::pair<long double, long double> at(const GridSpec& grid, double x) const {
        const auto [j, tt] = grid.locate(x);
        const long double t = tt;
        const long double y0 = y[j];
        const long double dy = static_cast<long double>(y[j + 1]) - y0;
        return {first[j] + dx * (t * y0 + 0.5L * t * t * dy),
                second[j] + dx * (t * y0 * y0 + t * t * y0 * dy + t * t * t * dy * dy / 3.0L)};
    }
};

double square_primitive(std::span<const double> v, std::span<const double> prefix,
                        const GridSpec& grid, double x) noexcept {
    const auto [j, t] = grid.locate(x);
    const double y0 = v[j];
    const double dy = v[j + 1] - y0;
    return prefix[j] + grid.spacing() * (t * y0 * y0 + t * t * y0 * dy + t * t * t * dy * dy / 3.0);
}

void check_state(double s) {
    if (!(s >= 0.0 && s <= 1.0))
        throw std::out_of_range("state " + std::to_string(s) + " outside [0,1]");
}

void check_k(const ValueTable& vt, int k) {
    if (k < 1 || k > vt.horizon())
        throw std::out_of_range("k = " + std::to_string(k) + " outside 1.." +
                                std::to_string(vt.horizon()));
}

constexpr double kNegativeWarning = -1e-8;

}  // namespace

VarianceTable::VarianceTable(int n, const GridSpec& grid)
    : horizon_(n),
      grid_(grid),
      w_(static_cast<std::size_t>(n + 1) * grid.points, 0.0),
      square_integrals_(static_cast<std::size_t>(n + 1) * grid.points, 0.0) {}

std::span<const double> VarianceTable::wvalues(int k) const {
    if (k < 0 || k > horizon_)
        throw std::out_of_range("k = " + std::to_string(k) + " outside 0.." + std::to_string(horizon_));
    return {w_.data() + static_cast<std::size_t>(k) * grid_.points, grid_.points};
}

double VarianceTable::variance_at(int k, double s) const {
    const auto row = wvalues(k);
    check_state(s);
    return interpolate(row, grid_, s);
}

double VarianceTable::value_square_integral(const ValueTable& vt, int k, double a,
                                            double b) const noexcept {
    const std::size_t g = grid_.points;
    const std::span<const double> prefix(square_integrals_.data() + static_cast<std::size_t>(k) * g, g);
    const auto v = vt.values(k);
    return square_primitive(v, prefix, grid_, b) - square_primitive(v, prefix, grid_, a);
}

VarianceTable build_variance_table(const ValueTable& vt) {
    const int n = vt.horizon();
    const GridSpec& grid = vt.grid();
    const std::size_t g = grid.points;
    VarianceTable wt(n, grid);

    auto w_row = [&](int k) {
        return std::span<double>(wt.w_.data() + static_cast<std::size_t>(k) * g, g);
    };
    auto store_squares = [&](int k, const RowMoments& moments) {
        auto dst = std::span<double>(wt.square_integrals_.data() + static_cast<std::size_t>(k) * g, g);
        for (std::size_t j = 0; j < g; ++j) dst[j] = static_cast<double>(moments.second[j]);
    };

    RowMoments prev_v(vt.values(0), grid.spacing());
    store_squares(0, prev_v);
    for (int k = 1; k <= n; ++k) {
        const auto prev_w_row = w_row(k - 1);
        const RowMoments prev_w(prev_w_row, grid.spacing());
        const auto v = vt.values(k);
        const auto h = vt.thresholds(k);
        auto w = w_row(k);

        for (std::size_t j = 0; j < g; ++j) {
            const double s = grid.node(j);
            const long double width = static_cast<long double>(h[j]) - s;
            const long double c = prev_v.y[j];
            const auto [v_hi, v2_hi] = prev_v.at(grid, h[j]);
            const long double int_v = v_hi - prev_v.first[j];
            const long double int_v2 = v2_hi - prev_v.second[j];
            const long double int_w = prev_w.at(grid, h[j]).first - prev_w.first[j];

            const long double accept_part = width + 2.0L * int_v + int_v2 + int_w;
            const long double reject_part = (1.0L - width) * (c * c + prev_w_row[j]);
            const long double mean = v[j];
            double value = static_cast<double>(accept_part + reject_part - mean * mean);
            if (value < 0.0) {
                if (value < kNegativeWarning)
                    std::clog << "warning: w_" << k << "(" << s << ") = " << value
                              << " clamped to 0\n";
                ++wt.clamped_;
                value = 0.0;
            }
            w[j] = value;
        }
        prev_v = RowMoments(v, grid.spacing());
        store_squares(k, prev_v);
    }
    return wt;
}

AbComponents ab_components(const ValueTable& vt, int k, double s, double x) {
    check_k(vt, k);
    check_state(s);
    check_state(x);
    const double stay = vt.value_fast(k - 1, s);
    AbComponents out;
    out.b = stay - vt.value_fast(k, s);
    if (x >= s && x <= vt.threshold_fast(k, s)) out.a = 1.0 + vt.value_fast(k - 1, x) - stay;
    return out;
}

double drift_at(const ValueTable& vt, int k, double s) {
    check_k(vt, k);
    check_state(s);
    const double h = vt.threshold_fast(k, s);
    const double stay = vt.value_fast(k - 1, s);
    const double b = stay - vt.value_fast(k, s);
    return (1.0 - stay) * (h - s) + vt.integral(k - 1, s, h) + b;
}

double conditional_second_moment(const ValueTable& vt, const VarianceTable& wt, int k, double s) {
    check_k(vt, k);
    check_state(s);
    if (!wt.matches(vt)) throw std::invalid_argument("variance table built from a different value table");
    const double h = vt.threshold_fast(k, s);
    const double stay = vt.value_fast(k - 1, s);
    const double b = stay - vt.value_fast(k, s);
    const double shift = 1.0 - stay;
    const double a_squared = shift * shift * (h - s) + 2.0 * shift * vt.integral(k - 1, s, h) +
                             wt.value_square_integral(vt, k - 1, s, h);
    return a_squared - b * b;
}

double conditional_variance_series(const ValueTable& vt, const VarianceTable& wt,
                                   const EpisodeTrace& trace) {
    if (!wt.matches(vt)) throw std::invalid_argument("variance table built from a different value table");
    if (trace.n != vt.horizon() || trace.running_max.size() != static_cast<std::size_t>(trace.n) + 1)
        throw std::invalid_argument("trace horizon does not match the tables");
    double total = 0.0;
    for (int j = 1; j <= trace.n; ++j)
        total += conditional_second_moment(vt, wt, trace.n - j + 1,
                                           trace.running_max[static_cast<std::size_t>(j - 1)]);
    return total;
}

}  // namespace monoseq
