#include <doctest.h>

#include <cmath>
#include <set>

#include "monoseq/rng.hpp"

using namespace monoseq;

// Known-answer vectors from the Random123 reference distribution.
TEST_CASE("philox known answers") {
    const auto zero = philox4x32({0, 0, 0, 0}, {0, 0});
    CHECK(zero[0] == 0x6627e8d5u);
    CHECK(zero[1] == 0xe169c58du);
    CHECK(zero[2] == 0xbc57ac4cu);
    CHECK(zero[3] == 0x9b00dbd8u);

    const auto ones = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                 {0xffffffffu, 0xffffffffu});
    CHECK(ones[0] == 0x408f276du);
    CHECK(ones[1] == 0x41c83b0eu);
    CHECK(ones[2] == 0xa20bc7c6u);
    CHECK(ones[3] == 0x6d5451fdu);

    const auto pi = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                               {0xa4093822u, 0x299f31d0u});
    CHECK(pi[0] == 0xd16cfe09u);
    CHECK(pi[1] == 0x94fdccebu);
    CHECK(pi[2] == 0x5001e420u);
    CHECK(pi[3] == 0x24126ea1u);
}

TEST_CASE("uniform draws are pure functions of (seed, replicate, index, stream)") {
    const RngStream a(7, 3), b(7, 3), c(7, 4), d(8, 3);
    for (std::uint64_t i = 0; i < 100; ++i) {
        CHECK(a.uniform(i) == b.uniform(i));
        CHECK(a.uniform(i) != c.uniform(i));
        CHECK(a.uniform(i) != d.uniform(i));
        CHECK(a.uniform(i, Substream::Observations) != a.uniform(i, Substream::Horizon));
    }
}

TEST_CASE("sequential draws match indexed draws") {
    RngStream seq(42, 9);
    const RngStream idx(42, 9);
    for (std::uint64_t i = 0; i < 257; ++i) CHECK(seq.next_uniform() == idx.uniform(i));
}

TEST_CASE("uniforms land in [0,1) with the right moments") {
    const RngStream r(1, 0);
    const int m = 200000;
    double sum = 0.0, sq = 0.0;
    std::set<double> seen;
    for (int i = 0; i < m; ++i) {
        const double u = r.uniform(static_cast<std::uint64_t>(i));
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sq += u * u;
        if (i < 1000) seen.insert(u);
    }
    CHECK(seen.size() == 1000);
    CHECK(std::abs(sum / m - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / m));
    CHECK(std::abs(sq / m - 1.0 / 3.0) < 0.005);
}

TEST_CASE("exponential draws have unit mean") {
    RngStream r(5, 1);
    const int m = 200000;
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
        const double e = r.next_exponential(Substream::Horizon);
        REQUIRE(e >= 0.0);
        sum += e;
    }
    CHECK(std::abs(sum / m - 1.0) < 4.0 / std::sqrt(static_cast<double>(m)));
}
