#include <doctest.h>

#include <cmath>
#include <vector>

#include "monoseq/simulator.hpp"
#include "monoseq/variance_table.hpp"

using namespace monoseq;

TEST_CASE("one and two steps") {
    const auto vt = build_value_table(3);
    const auto wt = build_variance_table(vt);
    CHECK(wt.variance_at(0, 0.4) == 0.0);
    CHECK(wt.variance_at(1, 0.0) == doctest::Approx(0.0));
    // One step from s: accepted with probability 1 - s, Bernoulli variance.
    for (double s : {0.1, 0.5, 0.9}) CHECK(wt.variance_at(1, s) == doctest::Approx(s * (1 - s)).epsilon(1e-7));
    CHECK(wt.variance_at(2, 0.0) == doctest::Approx(0.25).epsilon(1e-7));
    CHECK(wt.clamped_nodes() == 0);
}

// Exact law of L_2 from state s with both thresholds at 1:
// L = 1{X1 >= s} + 1{X2 >= max(s, X1 accepted ? X1 : s)}.
TEST_CASE("two-step variance by enumeration of the joint law") {
    const auto vt = build_value_table(2);
    const auto wt = build_variance_table(vt);
    for (double s : {0.0, 0.2, 0.6}) {
        // P(X1 >= s) = 1-s; given accepted at x, second accepted w.p. 1-x; else w.p. 1-s.
        const double p2 = (1 - s) * (1 - s) / 2.0;          // both accepted
        const double p0 = s * s;                            // neither
        const double p1 = 1.0 - p2 - p0;
        const double mean = p1 + 2 * p2;
        const double var = p1 + 4 * p2 - mean * mean;
        CHECK(vt.value_at(2, s) == doctest::Approx(mean).epsilon(1e-7));
        CHECK(wt.variance_at(2, s) == doctest::Approx(var).epsilon(1e-7));
    }
}

TEST_CASE("A/B components") {
    const auto vt = build_value_table(3);
    const auto one = ab_components(vt, 1, 0.0, 0.5);
    CHECK(one.a == doctest::Approx(1.0));
    CHECK(one.b == doctest::Approx(-1.0));
    CHECK(one.d() == doctest::Approx(0.0));

    const auto rej = ab_components(vt, 3, 0.0, 0.9);
    CHECK(rej.a == 0.0);
    CHECK(rej.b == doctest::Approx(1.5 - 1.898717).epsilon(1e-5));

    const auto below = ab_components(vt, 2, 0.5, 0.3);
    CHECK(below.a == 0.0);
}

TEST_CASE("martingale drift vanishes") {
    const auto vt = build_value_table(3);
    CHECK(std::abs(drift_at(vt, 1, 0.3)) <= 1e-10);
    CHECK(std::abs(drift_at(vt, 2, 0.0)) <= 1e-9);
    CHECK(std::abs(drift_at(vt, 3, 0.2)) <= 1e-8);
}

TEST_CASE("second moment of the increments") {
    const auto vt = build_value_table(2);
    const auto wt = build_variance_table(vt);
    // k = 1 from s: d = 1{X >= s} - (1 - s), so E d^2 = s(1-s).
    for (double s : {0.0, 0.3, 0.7})
        CHECK(conditional_second_moment(vt, wt, 1, s) == doctest::Approx(s * (1 - s)).epsilon(1e-7));
}

TEST_CASE("conditional variance of a trace") {
    const auto vt = build_value_table(2);
    const auto wt = build_variance_table(vt);
    const std::vector<double> one{0.4};
    const auto t1 = build_value_table(1);
    const auto w1 = build_variance_table(t1);
    CHECK(conditional_variance_series(t1, w1, simulate_episode(t1, one)) == doctest::Approx(0.0));

    // Averaging V over many traces recovers w_2(0).
    double sum = 0.0;
    const int m = 200000;
    for (int r = 0; r < m; ++r) {
        double v = 0.0;
        simulate_length(vt, RngStream(11, static_cast<std::uint64_t>(r)), &wt, &v);
        CHECK(v >= 0.0);
        sum += v;
    }
    CHECK(sum / m == doctest::Approx(0.25).epsilon(0.01));

    const auto other = build_value_table(3);
    CHECK_THROWS(conditional_variance_series(other, wt, simulate_episode(vt, RngStream(1, 0))));
}

TEST_CASE("variance rows stay non-negative and sandwich holds") {
    const auto vt = build_value_table(200, GridSpec{1025, 1e-12});
    const auto wt = build_variance_table(vt);
    for (int k = 0; k <= 200; ++k)
        for (double w : wt.wvalues(k)) CHECK(w >= 0.0);
    for (int n = 1; n <= 200; ++n) {
        const double v = vt.values(n)[0], w = wt.wvalues(n)[0];
        CHECK(w >= v / 3 - 2);
        CHECK(w <= v / 3 + 2.0 / 3 * (1 + std::log(n)));
    }
}
