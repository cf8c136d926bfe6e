#include <doctest.h>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "monoseq/value_table.hpp"

using namespace monoseq;

namespace {

// Exact polynomial pieces for small horizons, written out by hand.
double v2_exact(double s) { return 1.5 - s - 0.5 * s * s; }
double v2_primitive(double x) { return 2.5 * x - 0.5 * x * x - x * x * x / 6.0; }  // antiderivative of 1 + v2
double h3_exact(double s) { return s < std::sqrt(2.0) - 1.0 ? -1.0 + std::sqrt(3.0 + 2.0 * s + s * s) : 1.0; }
double v3_exact(double s) {
    const double h = h3_exact(s);
    return (1.0 - h + s) * v2_exact(s) + v2_primitive(h) - v2_primitive(s);
}

// Independent slow DP: Simpson quadrature of the previous stage's value function
// (evaluated recursively through memoised fine rows) and a plain bisection for h.
struct SlowOracle {
    int m;
    std::vector<std::vector<double>> rows;  // rows[k][i] = v_k(i/m)

    explicit SlowOracle(int horizon, int points) : m(points) {
        rows.assign(horizon + 1, std::vector<double>(m + 1, 0.0));
        for (int k = 1; k <= horizon; ++k) {
            auto prev = [&](double x) {
                const double p = x * m;
                const int i = std::min(static_cast<int>(p), m - 1);
                const double t = p - i;
                return (1 - t) * rows[k - 1][i] + t * rows[k - 1][i + 1];
            };
            for (int i = 0; i <= m; ++i) {
                const double s = static_cast<double>(i) / m;
                const double vs = prev(s);
                double h = 1.0;
                if (vs > 1.0) {
                    double lo = s, hi = 1.0;
                    for (int it = 0; it < 80; ++it) {
                        const double mid = 0.5 * (lo + hi);
                        (vs - 1.0 - prev(mid) > 0.0 ? hi : lo) = mid;
                    }
                    h = 0.5 * (lo + hi);
                }
                const int panels = 400;
                double integral = 0.0;
                const double step = (h - s) / panels;
                for (int q = 0; q < panels; ++q) {
                    const double a = s + q * step;
                    integral += step / 6.0 * ((1 + prev(a)) + 4 * (1 + prev(a + step / 2)) + (1 + prev(a + step)));
                }
                rows[k][i] = (1.0 - h + s) * vs + integral;
            }
        }
    }
};

}  // namespace

TEST_CASE("build rejects bad input") {
    CHECK_THROWS_AS(build_value_table(0), std::invalid_argument);
    CHECK_THROWS_AS(build_value_table(3, GridSpec{64, 1e-12}), std::invalid_argument);
    CHECK_THROWS_AS(build_value_table(3, GridSpec{65, 0.5}), std::invalid_argument);
    CHECK_NOTHROW(build_value_table(1, GridSpec{65, 1e-12}));
}

TEST_CASE("single step is exact") {
    const auto vt = build_value_table(1);
    const auto v = vt.values(1);
    for (std::size_t j = 0; j < v.size(); ++j) CHECK(v[j] == 1.0 - vt.grid().node(j));
    CHECK(vt.value_at(0, 0.37) == 0.0);
    CHECK(vt.value_at(1, 0.25) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("small horizons against the closed forms") {
    const auto vt = build_value_table(3);
    CHECK(std::abs(vt.value_at(2, 0.0) - 1.5) <= 1e-9);
    CHECK(vt.value_at(2, 0.5) == doctest::Approx(0.875).epsilon(1e-9));
    CHECK(std::abs(vt.value_at(3, 0.0) - 1.898717) <= 1e-5);
    CHECK(std::abs(vt.threshold_at(3, 0.0) - (std::sqrt(3.0) - 1.0)) <= 1e-6);
    CHECK(vt.threshold_at(3, 0.0) <= vt.threshold_at(2, 0.0));
    for (double s : {0.0, 0.13, 0.37, 0.5, 0.81, 1.0}) {
        CHECK(vt.threshold_at(2, s) == 1.0);
        CHECK(vt.value_at(2, s) == doctest::Approx(v2_exact(s)).epsilon(1e-7));
        CHECK(vt.value_at(3, s) == doctest::Approx(v3_exact(s)).epsilon(1e-7));
        CHECK(vt.threshold_at(3, s) == doctest::Approx(h3_exact(s)).epsilon(1e-6));
    }
}

TEST_CASE("critical values") {
    const auto vt = build_value_table(4);
    CHECK(vt.critical_value(1) == 0.0);
    CHECK(std::abs(vt.critical_value(2) - (std::sqrt(2.0) - 1.0)) <= 1e-6);
    CHECK(vt.critical_value(3) > vt.critical_value(2));
    CHECK(vt.value_at(3, vt.critical_value(3)) == doctest::Approx(1.0).epsilon(1e-9));
    // The closed form also pins s_3*: bisection on v3_exact.
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        (v3_exact(mid) > 1.0 ? lo : hi) = mid;
    }
    CHECK(vt.critical_value(3) == doctest::Approx(lo).epsilon(1e-6));
}

TEST_CASE("derivatives") {
    const auto vt = build_value_table(3);
    CHECK(vt.derivative_at(1, 0.5) == doctest::Approx(-1.0));
    CHECK(vt.derivative_at(2, 0.5) == doctest::Approx(-1.5).epsilon(1e-9));
    CHECK_THROWS((void)vt.derivative_at(2, 0.0));
    CHECK_THROWS((void)vt.derivative_at(2, 1.0));
    // Compare with centred finite differences of the value rows.
    const double eps = 1e-3;
    for (double s : {0.2, 0.3, 0.6, 0.8}) {
        const double fd = (vt.value_at(3, s + eps) - vt.value_at(3, s - eps)) / (2 * eps);
        CHECK(vt.derivative_at(3, s) == doctest::Approx(fd).epsilon(1e-4));
    }
}

TEST_CASE("small_n_oracle") {
    CHECK(small_n_oracle(2, 0.0) == 1.5);
    CHECK(small_n_oracle(1, 1.0) == 0.0);
    CHECK(small_n_oracle(3, 0.0) == doctest::Approx(1.898717).epsilon(1e-6));
    CHECK(small_n_oracle(3, 0.3) == doctest::Approx(v3_exact(0.3)).epsilon(1e-14));
    CHECK_THROWS(small_n_oracle(4, 0.0));
    CHECK_THROWS(small_n_oracle(2, 1.5));
}

TEST_CASE("independent slow dynamic program agrees") {
    const int horizon = 8;
    const SlowOracle slow(horizon, 1000);
    const auto vt = build_value_table(horizon, GridSpec{4097, 1e-12});
    for (int k = 1; k <= horizon; ++k)
        for (int i = 0; i <= 1000; i += 50)
            CHECK(vt.value_at(k, i / 1000.0) == doctest::Approx(slow.rows[k][i]).epsilon(2e-5));
}

TEST_CASE("solve_threshold agrees with the stored thresholds at nodes") {
    const auto vt = build_value_table(20, GridSpec{1025, 1e-12});
    for (int k = 1; k <= 20; ++k)
        for (std::size_t j = 0; j < 1025; j += 37) {
            const double s = vt.grid().node(j);
            CHECK(vt.solve_threshold(k, s) == doctest::Approx(vt.thresholds(k)[j]).epsilon(1e-10));
        }
}

TEST_CASE("table invariants") {
    const auto vt = build_value_table(60, GridSpec{1025, 1e-12});
    for (int k = 1; k <= 60; ++k) {
        const auto v = vt.values(k), prev = vt.values(k - 1), h = vt.thresholds(k);
        for (std::size_t j = 0; j < v.size(); ++j) {
            CHECK(v[j] >= prev[j] - 1e-12);
            CHECK(v[j] - prev[j] <= 1.0 + 1e-12);
            CHECK(h[j] >= vt.grid().node(j));
            CHECK(h[j] <= 1.0);
            if (j > 0) CHECK(v[j] <= v[j - 1] + 1e-12);
        }
        CHECK(vt.values(k).back() == doctest::Approx(0.0));
    }
}

TEST_CASE("integral of the interpolant") {
    const auto vt = build_value_table(2, GridSpec{65, 1e-12});
    CHECK(vt.integral(1, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(vt.integral(1, 0.25, 0.75) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(vt.integral(1, 0.3, 0.3) == 0.0);
}

TEST_CASE("grid helpers") {
    const GridSpec g{5, 1e-3 / 4};
    CHECK_THROWS(g.validate());
    const GridSpec ok{65, 1e-12};
    CHECK(ok.spacing() == 1.0 / 64);
    const auto [j, t] = ok.locate(1.0);
    CHECK(j == 63);
    CHECK(t == doctest::Approx(1.0));
    const auto [j2, t2] = ok.locate(0.5 + 0.5 / 64);
    CHECK(j2 == 32);
    CHECK(t2 == doctest::Approx(0.5));
}
