#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "monoseq/distribution.hpp"

using namespace monoseq;

namespace {
const DistributionModel uniform{Model::Uniform01};
const DistributionModel expo{Model::ExponentialMean1};
}  // namespace

TEST_CASE("cdf") {
    CHECK(cdf(uniform, 0.3) == doctest::Approx(0.3));
    CHECK(cdf(uniform, -2.0) == 0.0);
    CHECK(cdf(uniform, 7.0) == 1.0);
    CHECK(cdf(expo, 0.0) == 0.0);
    CHECK(cdf(expo, -1.0) == 0.0);
    CHECK(cdf(expo, std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("pdf") {
    CHECK(pdf(uniform, 0.5) == 1.0);
    CHECK(pdf(uniform, 1.5) == 0.0);
    CHECK(pdf(expo, 1.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(pdf(expo, -1.0) == 0.0);
}

TEST_CASE("quantile") {
    CHECK(quantile(uniform, 0.7) == doctest::Approx(0.7));
    CHECK(quantile(expo, 0.5) == doctest::Approx(0.693147).epsilon(1e-6));
    CHECK(quantile(expo, 0.0) == 0.0);
    CHECK_THROWS_AS(quantile(expo, 1.0), std::domain_error);
    CHECK_THROWS_AS(quantile(uniform, -0.1), std::domain_error);
}

TEST_CASE("coordinate dictionary") {
    CHECK(to_uniform_coord(expo, std::log(2.0)) == doctest::Approx(0.5));
    CHECK(to_uniform_coord(uniform, 0.42) == doctest::Approx(0.42));
    CHECK(to_uniform_coord(expo, 0.0) == 0.0);
    CHECK(to_exponential_coord(0.0) == 0.0);
    CHECK(to_exponential_coord(0.5) == doctest::Approx(std::log(2.0)));
    CHECK(to_exponential_coord(1.0 - std::exp(-3.0)) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK_THROWS(to_exponential_coord(1.0));
    CHECK_THROWS(to_exponential_coord(-0.01));
}

TEST_CASE("round trip over the unit interval") {
    for (int i = 0; i < 1000; ++i) {
        const double u = i / 1000.0;
        CHECK(cdf(expo, quantile(expo, u)) == doctest::Approx(u).epsilon(1e-13));
        CHECK(to_uniform_coord(expo, to_exponential_coord(u)) == doctest::Approx(u).epsilon(1e-13));
    }
}

TEST_CASE("cdf is monotone") {
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
        const double c = cdf(expo, i * 0.05);
        CHECK(c > prev);
        prev = c;
    }
    CHECK(to_string(Model::Uniform01) != to_string(Model::ExponentialMean1));
}
