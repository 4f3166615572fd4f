#include <doctest.h>

#include <numeric>

#include "prodcode/random.hpp"
#include "support.hpp"

using namespace prodcode;
using testing::standard_code;
using testing::standard_pair;

namespace {

std::vector<Elem> random_msg(int k, std::uint64_t q, SplitMix64& rng) {
    std::vector<Elem> msg(static_cast<std::size_t>(k));
    for (auto& m : msg) m = static_cast<Elem>(rng.below(q));
    return msg;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("rank") {
    const Field F(4);
    Matrix A(3, 3);
    A << 1, 2, 3, 2, 4, 6, 0, 0, 1;  // row 1 = 2 * row 0
    CHECK(rank(F, A) == 2);
    A(1, 1) = 5;  // row 1 - 2 * row 0 = (0, 1, 0)
    CHECK(rank(F, A) == 3);
    Matrix B(2, 3);
    B << 1, 2, 3, 2, F.mul(2, 2), F.mul(2, 3);
    CHECK(rank(F, B) == 1);
}

TEST_CASE("exhaustive distances at q = 4, r = 2") {
    const std::vector<int> expect{16, 15, 12, 9};
    for (int k = 1; k <= 4; ++k) {
        const auto res = exhaustive_distance(standard_code(2, 2, k));
        CHECK(res.distance == expect[k - 1]);
        CHECK(res.spectrum.exact);
        CHECK(res.spectrum.counts.at(0) == 1);
        CHECK(res.spectrum.total() == (std::uint64_t{1} << (4 * k)));
    }
}

TEST_CASE("spectrum matches plain enumeration") {
    for (auto [e, r, k] : {std::tuple{1, 2, 4}, std::tuple{2, 2, 2}, std::tuple{2, 3, 2}, std::tuple{1, 1, 1}}) {
        const auto code = standard_code(e, r, k);
        CHECK(exhaustive_distance(code).spectrum.counts == testing::brute_spectrum(code));
    }
}

TEST_CASE("multi-word enumeration path") {
    // q = 8: 64 coordinates of 6 bits do not fit one machine word.
    auto pair = standard_pair(3);
    for (int k = 1; k <= 3; ++k) {
        const auto code = build_code(pair, 2, k);
        CHECK(exhaustive_distance(code).distance == *exact_distance(8, 2, k));
    }
    const auto code = build_code(pair, 3, 2);
    CHECK(exhaustive_distance(code).spectrum.counts == testing::brute_spectrum(code));
}

TEST_CASE("thread count does not change the spectrum") {
    const auto code = standard_code(2, 3, 5);
    const auto one = exhaustive_distance(code, kDefaultBudget, 1);
    const auto many = exhaustive_distance(code, kDefaultBudget, 3);
    CHECK(one.spectrum.counts == many.spectrum.counts);
    CHECK(one.distance == *exact_distance(4, 3, 5));
}

TEST_CASE("budget and sampling") {
    const auto code = standard_code(2, 2, 4);
    CHECK_THROWS_AS(exhaustive_distance(code, 1000), BudgetExceeded);
    CHECK_NOTHROW(exhaustive_distance(code, 1 << 16));
    CHECK_THROWS_AS(sampled_distance(code, 0), std::invalid_argument);
    CHECK(sampled_distance(code, 100) >= 9);
    CHECK(sampled_distance(code, 100000) == 9);
    CHECK(sampled_distance(code, 500, 3) == sampled_distance(code, 500, 3));
}

TEST_CASE("erasure recoverability by rank") {
    const auto code = standard_code(2, 2, 4);
    CHECK(erasure_recoverable(code, ErasureMask(4)));
    ErasureMask most(4);
    for (int c = 0; c < 13; ++c) most.erased[c] = 1;
    CHECK_FALSE(erasure_recoverable(code, most));

    // grid pattern at a = b = 1: the black part has 9 = d cells
    const auto black = grid_bound_pattern(4, 2, 1, 1, false);
    const auto both = grid_bound_pattern(4, 2, 1, 1, true);
    CHECK(black.count() == 9);
    CHECK(both.count() == 16 - (4 - 1));
    CHECK_FALSE(erasure_recoverable(code, black));
    CHECK_FALSE(erasure_recoverable(code, both));

    // anything below the distance is recoverable
    SplitMix64 rng(4);
    for (int t = 0; t < 200; ++t) CHECK(erasure_recoverable(code, draw_mask(RandomCells{8}, 4, 2, rng)));
}

TEST_CASE("pattern geometry") {
    for (auto [n, r] : {std::pair{4, 2}, std::pair{8, 3}, std::pair{8, 5}}) {
        for (int k = 1; k <= r * r; ++k) {
            const auto w = grid_upper(n, r, k);
            const int a = static_cast<int>(w.a), b = static_cast<int>(w.b);
            CHECK(grid_bound_pattern(n, r, a, b, false).count() == static_cast<std::size_t>(w.value));
            CHECK(grid_bound_pattern(n, r, a, b, true).count() == static_cast<std::size_t>(n * n - (r * r - a * b)));
            if (r >= 2 && k >= r + 1) {
                const auto [sa, sb] = strip_bound_parameters(n, r, k);
                const int delta = n - r + 1;
                CHECK(sa * (r - 1) + sb >= n * r - k + 1);
                CHECK(strip_bound_pattern(n, r, sa, sb, false).count() == static_cast<std::size_t>(sa * (n - 1) + sb));
                CHECK(strip_bound_pattern(n, r, sa, sb, true).count() ==
                      static_cast<std::size_t>(sa * (n - 1) + sb + (n - sa - 1) * (delta - 1) + delta - 1));
                CHECK(static_cast<std::int64_t>(sa) * (n - 1) + sb == *gridv2_upper(n, r, k));
            }
        }
    }
    CHECK_THROWS_AS(strip_bound_parameters(8, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(grid_bound_pattern(4, 2, 3, 1, true), std::invalid_argument);

    const auto m = grid_bound_pattern(8, 3, 1, 2, true);
    std::vector<int> rows(8), cols(8);
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.rbegin(), cols.rend(), 0);
    const auto p = permute(m, rows, cols);
    CHECK(p.count() == m.count());
    CHECK(p.at(0, 7) == m.at(0, 0));
}

TEST_CASE("peeling a full row") {
    const auto code = standard_code(2, 2, 4);
    SplitMix64 rng(8);
    const auto msg = random_msg(4, 16, rng);
    const RowVector word = encode(code, msg);
    ErasureMask mask(4);
    for (int j = 0; j < 4; ++j) mask.set(1, j);
    const auto res = peel_decode(code, word, mask);
    CHECK(res.success);
    CHECK_FALSE(res.used_global);
    CHECK(res.peeled == 4);
    CHECK(res.word == word);
}

TEST_CASE("peeling the gray part of the grid pattern") {
    const auto code = standard_code(3, 3, 9);
    const auto gray_only = [&] {
        auto both = grid_bound_pattern(8, 3, 1, 2, true);
        const auto black = grid_bound_pattern(8, 3, 1, 2, false);
        for (std::size_t i = 0; i < both.erased.size(); ++i)
            if (black.erased[i]) both.erased[i] = 0;
        return both;
    }();
    CHECK(gray_only.count() > 0);
    SplitMix64 rng(9);
    const RowVector word = encode(code, random_msg(9, 64, rng));
    const auto res = peel_decode(code, word, gray_only);
    CHECK(res.success);
    CHECK_FALSE(res.used_global);
    CHECK(res.word == word);
}

TEST_CASE("erasing a minimum-weight support defeats both stages") {
    const auto code = standard_code(2, 2, 4);
    SplitMix64 rng(10);
    const std::vector<int> rows{0}, cols{0};
    const auto msg = message_with_zero_lines(code, rows, cols, rng);
    const RowVector word = encode(code, msg);
    REQUIRE(testing::weight(word) == 9);
    ErasureMask support(4);
    for (int j = 0; j < 16; ++j) support.erased[j] = word(j) != 0;
    CHECK_FALSE(erasure_recoverable(code, support));
    const auto res = peel_decode(code, RowVector::Zero(16), support);
    CHECK_FALSE(res.success);
    CHECK(res.used_global);
    CHECK(res.residual.count() == 9);
}

TEST_CASE("inconsistent symbols are reported") {
    const auto code = standard_code(2, 2, 4);
    RowVector word = code.G.row(3);
    word(5) ^= 1;
    ErasureMask mask(4);
    mask.set(0, 0);
    CHECK_THROWS_AS(peel_decode(code, word, mask), InconsistentWord);

    // every line consistent, but no codeword of C_3 matches
    const auto c3 = standard_code(2, 2, 3);
    const RowVector outside = standard_code(2, 2, 4).G.row(3);
    CHECK_THROWS_AS(peel_decode(c3, outside, ErasureMask(4)), InconsistentWord);
}

TEST_CASE("decoder agrees with the rank oracle") {
    for (auto [e, r] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
        auto pair = standard_pair(e);
        const int n = pair->n();
        for (int k : {1, r * r - 1, r * r}) {
            const auto code = build_code(pair, r, k);
            SplitMix64 rng(static_cast<std::uint64_t>(100 * e + k));
            int agree = 0;
            for (int t = 0; t < 300; ++t) {
                const RowVector word = encode(code, random_msg(k, code.field().order(), rng));
                const int erase = static_cast<int>(rng.below(static_cast<std::uint64_t>(n * n - k) + 1));
                const auto mask = draw_mask(RandomCells{erase}, n, r, rng);
                const auto res = peel_decode(code, word, mask);
                REQUIRE(res.success == erasure_recoverable(code, mask));
                if (res.success) REQUIRE(res.word == word);
                else REQUIRE(res.residual.count() > 0);
                ++agree;
            }
            CHECK(agree == 300);
        }
    }
}

TEST_CASE("double roots at vanishing crossings") {
    const auto code = standard_code(2, 2, 4);
    CHECK_THROWS_AS(double_root_check(code, std::vector<Elem>{0, 0, 0, 0}), std::invalid_argument);
    // constant word: no zero lines at all
    CHECK(double_root_check(code, std::vector<Elem>{1, 0, 0, 0}));
    SplitMix64 rng(12);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const std::vector<int> rows{i}, cols{j};
            const auto msg = message_with_zero_lines(code, rows, cols, rng);
            const GridWord grid = relabel(*code.pair, encode(code, msg));
            CHECK((grid.row(i).array() == 0).all());
            CHECK((grid.col(j).array() == 0).all());
            CHECK(double_root_check(code, msg));
        }
    for (int r = 1; r <= 4; ++r)
        for (int k = 1; k <= r * r; ++k) {
            const auto c = standard_code(2, r, k);
            for (int t = 0; t < 20; ++t) {
                auto msg = random_msg(k, 16, rng);
                msg[0] |= 1;
                CHECK(double_root_check(c, msg));
            }
        }
}

TEST_CASE("simulation") {
    const auto code = standard_code(2, 2, 3);
    const auto a = simulate_erasures(code, UniformErasures{0.3}, 300, 42, 1);
    const auto b = simulate_erasures(code, UniformErasures{0.3}, 300, 42, 3);
    CHECK(a.recoverable == b.recoverable);
    CHECK(a.total_erasures == b.total_erasures);
    CHECK(simulate_erasures(code, RandomCells{0}, 50, 1).rate() == 1.0);
    const auto w = grid_upper(4, 2, 3);
    CHECK(simulate_erasures(code, GridPattern{int(w.a), int(w.b)}, 50, 1).recoverable == 0);
    const auto [sa, sb] = strip_bound_parameters(4, 2, 3);
    CHECK(simulate_erasures(code, StripPattern{sa, sb}, 50, 1).recoverable == 0);
    CHECK_THROWS_AS(simulate_erasures(code, UniformErasures{1.5}, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulate_erasures(code, RandomCells{17}, 10, 1), std::invalid_argument);
}

TEST_CASE("subcode recovers at least as often as the full code") {
    auto pair = standard_pair(3);
    const auto full = build_code(pair, 3, 9);
    const auto sub = build_code(pair, 3, 8);
    for (double p : {0.3, 0.5, 0.7}) {
        const auto a = simulate_erasures(full, UniformErasures{p}, 200, 5);
        const auto b = simulate_erasures(sub, UniformErasures{p}, 200, 5);
        CHECK(b.recoverable >= a.recoverable);
    }
}

TEST_CASE("random streams are reproducible") {
    SplitMix64 a(123), b(123);
    for (int i = 0; i < 10; ++i) CHECK(a() == b());
    CHECK(SplitMix64(0)() == 0xe220a8397b1dcdafULL);
    auto s1 = SplitMix64::stream(9, 4), s2 = SplitMix64::stream(9, 4);
    CHECK(s1() == s2());
    for (int i = 0; i < 1000; ++i) {
        const auto v = a.below(7);
        CHECK(v < 7);
        const double u = a.unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

}  // TEST_SUITE
