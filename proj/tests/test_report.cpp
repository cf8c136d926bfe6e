#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "monoseq/report.hpp"

using namespace monoseq;

namespace {

const PropertyRecord& find(const std::vector<PropertyRecord>& records, const std::string& name) {
    for (const auto& r : records)
        if (r.name == name) return r;
    throw std::runtime_error("missing record " + name);
}

}  // namespace

TEST_CASE("bound report rows") {
    const auto vt = build_value_table(100, GridSpec{1025, 1e-12});
    const auto wt = build_variance_table(vt);
    const std::vector<int> ns{1, 2, 10, 100};
    const auto report = bound_report(vt, wt, ns);
    REQUIRE(report.rows.size() == 4);
    CHECK_FALSE(report.rows[0].gap_ratio.has_value());

    const auto& two = report.rows[1];
    CHECK(two.mean == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(two.sqrt_2n == 2.0);
    CHECK(two.variance == doctest::Approx(0.25).epsilon(1e-5));
    CHECK(two.lower == doctest::Approx(-1.5));
    CHECK(two.upper == doctest::Approx(0.5 + 2.0 / 3.0 * (1 + std::log(2.0))));
    CHECK(two.passed());

    CHECK(report.rows[3].mean < std::sqrt(200.0));
    CHECK(*report.rows[3].gap_ratio == doctest::Approx((std::sqrt(200.0) - report.rows[3].mean) / std::log(100.0)));
    CHECK(report.all_passed());

    const std::vector<int> too_far{101};
    CHECK_THROWS_AS(bound_report(vt, wt, too_far), std::out_of_range);
}

TEST_CASE("property report on a moderate table") {
    const auto vt = build_value_table(50, GridSpec{1025, 1e-12});
    const auto wt = build_variance_table(vt);
    const auto records = property_report(vt, wt);
    CHECK(records.size() == 17);
    CHECK(find(records, "submodularity").worst <= 1e-10);
    for (const auto& r : records) {
        INFO(r.name << " worst=" << r.worst << " tol=" << r.tolerance);
        CHECK(r.checked > 0);
        CHECK(r.passed());
    }
    CHECK(all_passed(records));
}

TEST_CASE("trace report") {
    const auto vt = build_value_table(30, GridSpec{16385, 1e-12});
    const auto records = trace_property_report(vt, 200, 1);
    REQUIRE(records.size() == 4);
    for (const auto& r : records) {
        INFO(r.name << " worst=" << r.worst);
        CHECK(r.passed());
    }
    CHECK(find(records, "martingale_difference_bound").worst <= 1.0);
}

TEST_CASE("a failing record is reported as failing") {
    PropertyRecord r{"x", 2.0, 1.0, false, 1};
    CHECK_FALSE(r.passed());
    r.worst = 1.0;
    CHECK(r.passed());
    r.strict = true;
    CHECK_FALSE(r.passed());
    const std::vector<PropertyRecord> mix{{"a", 0, 1, false, 1}, r};
    CHECK_FALSE(all_passed(mix));
}
