#include "doctest.h"
#include "slicing/domain.hpp"
#include "slicing/errors.hpp"

using namespace slicing;

TEST_CASE("dbm/mw conversions") {
    CHECK(dbm_to_mw(0.0) == doctest::Approx(1.0));
    CHECK(dbm_to_mw(10.0) == doctest::Approx(10.0));
    CHECK(dbm_to_mw(-92.0) == doctest::Approx(6.3096e-10).epsilon(1e-4));
    CHECK(mw_to_dbm(1.0) == doctest::Approx(0.0));
    CHECK(mw_to_dbm(100.0) == doctest::Approx(20.0));
    CHECK_THROWS_AS(mw_to_dbm(0.0), config_error);
    CHECK_THROWS_AS(mw_to_dbm(-1.0), config_error);
}

TEST_CASE("dbm/mw round-trip is identity to 1e-12 relative") {
    for (double x = 1e-10; x <= 1e4; x *= 10.0) {
        CHECK(dbm_to_mw(mw_to_dbm(x)) == doctest::Approx(x).epsilon(1e-12));
    }
}

TEST_CASE("validate: latency feasibility") {
    ServiceRequirements req{1.0, 1.0, 1e-3, 5, 1};
    ResourceGrid grid = ResourceGrid::noma(4, 4);

    SUBCASE("M_u = 4 <= l_max - delta_u = 4 is feasible") {
        CHECK(validate(grid, req).empty());
    }
    SUBCASE("M_u = 4 > l_max - delta_u = 3 is reported") {
        req.l_max = 4;
        const auto v = validate(grid, req);
        REQUIRE(v.size() == 1);
        CHECK(v[0].find("latency") != std::string::npos);
    }
}

TEST_CASE("validate: NOMA sharing violation") {
    ServiceRequirements req{1.0, 1.0, 1e-3, 2, 0};
    ResourceGrid grid = ResourceGrid::noma(4, 2);
    grid.urllc_frs = {0, 1};  // F_u != F_e
    const auto v = validate(grid, req);
    REQUIRE(!v.empty());
    bool found = false;
    for (const auto& s : v) found = found || s.find("sharing") != std::string::npos;
    CHECK(found);
}

TEST_CASE("validate: OMA overlap and orthogonality") {
    ServiceRequirements req{1.0, 1.0, 1e-3, 2, 0};
    ResourceGrid grid = ResourceGrid::oma(4, 2, {0, 1}, {1, 2});
    const auto v = validate(grid, req);
    REQUIRE(!v.empty());
    CHECK(v[0].find("disjoint") != std::string::npos);

    ResourceGrid ok = ResourceGrid::oma(4, 2, {0, 1, 2}, {3});
    CHECK(validate(ok, req).empty());

    PowerAllocation alloc{{1.0, 1.0, 1.0, 0.5}, {0.0, 0.0, 0.0, 0.2}};
    CHECK(!validate(alloc, ok).empty());  // eMBB power on URLLC's FR 3
    alloc.p_embb_mw[3] = 0.0;
    CHECK(validate(alloc, ok).empty());
}

TEST_CASE("validate is pure: same input, same report") {
    ServiceRequirements req{0.0, 1.0, 2.0, 0, -1};
    ResourceGrid grid = ResourceGrid::noma(0, 0);
    const auto a = validate(grid, req);
    const auto b = validate(grid, req);
    CHECK(a == b);
    CHECK(!a.empty());
}
