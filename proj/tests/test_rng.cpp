#include <cmath>

#include "doctest.h"
#include "slicing/rng.hpp"

using namespace slicing;

// Reference vectors for the Philox4x32-10 block function (Random123
// known-answer set).
TEST_CASE("philox4x32-10 known answers") {
    auto out = philox4x32({0, 0, 0, 0}, {0, 0});
    CHECK(out == std::array<uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});

    out = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                     {0xffffffffu, 0xffffffffu});
    CHECK(out == std::array<uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});

    out = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                     {0xa4093822u, 0x299f31d0u});
    CHECK(out == std::array<uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are reproducible and label-separated") {
    RngStream a(substream_key(42, kStreamTableCell, 7, 0));
    RngStream b(substream_key(42, kStreamTableCell, 7, 0));
    RngStream c(substream_key(42, kStreamTableCell, 8, 0));
    bool all_equal = true, any_diff = false;
    for (int k = 0; k < 1000; ++k) {
        const uint64_t va = a.next_u64(), vb = b.next_u64(), vc = c.next_u64();
        all_equal = all_equal && va == vb;
        any_diff = any_diff || va != vc;
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("uniform and exponential moments") {
    RngStream rng(substream_key(1234, kStreamGeneric));
    const int n = 200000;
    double su = 0, su2 = 0, se = 0, se2 = 0;
    for (int k = 0; k < n; ++k) {
        const double u = rng.next_uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        su += u;
        su2 += u * u;
        const double x = rng.next_exp();
        CHECK(x >= 0.0);
        CHECK(std::isfinite(x));
        se += x;
        se2 += x * x;
    }
    // 5-sigma bands
    CHECK(su / n == doctest::Approx(0.5).epsilon(5.0 * 0.2887 / std::sqrt(double(n)) / 0.5));
    CHECK(su2 / n == doctest::Approx(1.0 / 3.0).epsilon(0.01));
    CHECK(se / n == doctest::Approx(1.0).epsilon(5.0 / std::sqrt(double(n))));
    CHECK(se2 / n == doctest::Approx(2.0).epsilon(0.03));
}
