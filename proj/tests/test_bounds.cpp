#include <doctest.h>

#include <cmath>

#include "prodcode/bounds.hpp"

using namespace prodcode;

namespace {

// Plain 2-D scan with the same tie rule, written independently.
GridBound scan_grid(std::int64_t n, std::int64_t r, std::int64_t k) {
    GridBound best{std::int64_t{1} << 62, -1, -1};
    for (std::int64_t a = 0; a <= r; ++a)
        for (std::int64_t b = 0; b <= r; ++b)
            if (a * b >= r * r - k + 1 && (a + n - r) * (b + n - r) < best.value) best = {(a + n - r) * (b + n - r), a, b};
    return best;
}

const std::pair<int, int> kFigureParams[] = {{32, 8}, {32, 16}, {32, 25}, {128, 64}};

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("lrc_upper") {
    CHECK(lrc_upper(4, 2, 3) == 12);
    CHECK(lrc_upper(4, 2, 1) == 16);
    CHECK(lrc_upper(32, 8, 63) == 794);
    CHECK_THROWS_AS(lrc_upper(4, 2, 5), std::invalid_argument);
}

TEST_CASE("grid_upper") {
    const auto g = grid_upper(32, 8, 63);
    CHECK(g.value == 650);
    CHECK(g.a == 1);
    CHECK(g.b == 2);
    CHECK(g.value == 25 * 26);
    for (auto [n, r] : kFigureParams) {
        const auto top = grid_upper(n, r, std::int64_t{r} * r);
        CHECK(top.value == std::int64_t{n - r + 1} * (n - r + 1));
        CHECK(top.a == 1);
        CHECK(top.b == 1);
        CHECK(grid_upper(n, r, 1).value == std::int64_t{n} * n);
    }
    for (int n = 2; n <= 12; ++n)
        for (int r = 1; r <= n; ++r)
            for (int k = 1; k <= r * r; ++k) {
                const auto a = grid_upper(n, r, k);
                const auto b = scan_grid(n, r, k);
                REQUIRE(a.value == b.value);
                REQUIRE(a.a == b.a);
                REQUIRE(a.b == b.b);
            }
}

TEST_CASE("grid_upper one-dimensional scan above the threshold") {
    const std::int64_t n = 5000, r = 4500;
    for (std::int64_t k : std::vector<std::int64_t>{1, 2, 1000, 12345678, r * r - 2, r * r})
        CHECK(grid_upper(n, r, k).value == scan_grid(n, r, k).value);
}

TEST_CASE("gridv2_upper") {
    CHECK(gridv2_upper(4, 2, 4) == 9);
    CHECK_FALSE(gridv2_upper(4, 2, 1).has_value());
    CHECK(gridv2_upper(32, 8, 63) == 770);
    CHECK_FALSE(gridv2_upper(4, 4, 5).has_value());
    CHECK_FALSE(gridv2_upper(4, 1, 1).has_value());
}

TEST_CASE("lower_opt") {
    const auto p = degree_profile(128, 64);
    const auto lo = lower_opt(128, 64, p.partial(4032));
    CHECK(lo.value == 4940);
    CHECK(lo.n_rows == 75);
    CHECK(lo.n_cols == 76);
    for (auto [n, r] : kFigureParams) {
        const auto prof = degree_profile(n, r);
        const std::int64_t d = n - r + 1, r2 = std::int64_t{r} * r;
        CHECK(lower_opt(n, r, prof.partial(r2)).value == d * d);
        CHECK(lower_opt(n, r, prof.partial(r2 - 1)).value == d * (d + 1));
        CHECK(lower_opt(n, r, prof.partial(r2 - 2)).value == d * (d + 2));
    }
}

TEST_CASE("rs_degree_lower") {
    CHECK(rs_degree_lower(4, 1) == 15);
    CHECK(rs_degree_lower(4, 8) == 8);
    CHECK(rs_degree_lower(32, degree_profile(32, 8).partial(64)) == 576);
}

TEST_CASE("exact_distance") {
    CHECK(exact_distance(4, 2, 3) == 12);
    CHECK(exact_distance(4, 3, 7) == 8);
    CHECK(exact_distance(4, 3, 4) == 12);
    CHECK(exact_distance(4, 3, 9) == 4);
    CHECK(exact_distance(4, 3, 8) == 6);
    CHECK_FALSE(exact_distance(32, 8, 30).has_value());
    CHECK(exact_distance(128, 64, 64 * 64) == 4225);
}

TEST_CASE("profile_lower") {
    const auto p = degree_profile(32, 8);
    CHECK(profile_lower(p, 64) == doctest::Approx(32.0 * 32 - 2 * 8 * 32));
    const double v = profile_lower(p, 8);
    CHECK(v == doctest::Approx(990.9).epsilon(1e-3));
    CHECK(v <= rs_degree_lower(32, p.partial(8)));
    CHECK(rs_degree_lower(32, p.partial(8)) == 1017);
    CHECK_THROWS_AS(profile_lower(p, 9), std::invalid_argument);
    for (auto [n, r] : kFigureParams) {
        const auto prof = degree_profile(n, r);
        for (const auto& bp : prof.breakpoints)
            CHECK(static_cast<double>(rs_degree_lower(n, bp.degree)) >= profile_lower(prof, bp.k) - 1e-9);
    }
}

TEST_CASE("secondweight") {
    CHECK(secondweight(4, 3) == 12);
    CHECK(secondweight(4, 2) == 6);
    CHECK(secondweight(32, 8) == 72);
}

TEST_CASE("sweep invariants") {
    for (auto [n, r] : kFigureParams) {
        const auto prof = degree_profile(n, r);
        BoundReport prev{};
        for (std::int64_t k = 1; k <= std::int64_t{r} * r; ++k) {
            const auto rep = bound_report(prof, k);
            REQUIRE(rep.consistent());
            REQUIRE(rep.rs_degree_lower <= rep.lower.value);
            REQUIRE(rep.lower.value <= rep.grid.value);
            if (k > 1) {
                REQUIRE(rep.grid.value <= prev.grid.value);
                REQUIRE(rep.lower.value <= prev.lower.value);
                REQUIRE(rep.partial_k > prev.partial_k);
            }
            prev = rep;
        }
    }
}

TEST_CASE("ninety percent at low breakpoints") {
    for (auto [n, r] : {std::pair{32, 16}, std::pair{128, 64}, std::pair{32, 8}}) {
        const auto prof = degree_profile(n, r);
        int checked = 0;
        for (const auto& bp : prof.breakpoints) {
            if (100 * bp.k > 33 * std::int64_t{r} * r) continue;
            ++checked;
            CHECK(10 * rs_degree_lower(n, bp.degree) >= 9 * grid_upper(n, r, bp.k).value);
        }
        CHECK(checked > 0);
    }
}

}  // TEST_SUITE
