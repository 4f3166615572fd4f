#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "prodcode/degrees.hpp"

namespace prodcode {

// Minimum-distance bounds for k-dimensional subcodes of the product of two
// [n, r, n - r + 1] codes. All integer arithmetic; n is the local length.

/// Singleton-type bound for (r, delta)-locality:
/// n^2 - k + 1 - floor((k - 1) / r) (delta - 1).
std::int64_t lrc_upper(std::int64_t n, std::int64_t r, std::int64_t k);

struct GridBound {
    std::int64_t value;
    std::int64_t a;
    std::int64_t b;
};

/// min (a + n - r)(b + n - r) over 0 <= a, b <= r with ab >= r^2 - k + 1.
/// Ties go to the smallest a, then the smallest b. Full scan for
/// r <= kGridScanLimit, one-dimensional scan over a above that.
GridBound grid_upper(std::int64_t n, std::int64_t r, std::int64_t k);
inline constexpr std::int64_t kGridScanLimit = std::int64_t{1} << 12;

/// n^2 - k + 1 - floor((k - 2) / (r - 1)) (delta - 1); only defined for
/// k >= 2 and 2 <= r <= n - 1.
std::optional<std::int64_t> gridv2_upper(std::int64_t n, std::int64_t r, std::int64_t k);

struct LowerBound {
    std::int64_t value;
    std::int64_t n_rows;  // nonzero rows of the minimizing configuration
    std::int64_t n_cols;
};

/// min over delta <= n_r, n_c <= n of
/// max{ n^2 - partial + (n - n_r)(n - n_c), n_r delta, n_c delta }.
/// Lexicographically smallest (n_r, n_c) among minimizers.
LowerBound lower_opt(std::int64_t n_frak, std::int64_t r, std::int64_t partial_k);

/// n^2 - partial_k.
std::int64_t rs_degree_lower(std::int64_t n_frak, std::int64_t partial_k);

/// Known minimum distance of C_k: k = r^2, r^2 - 1, r^2 - 2 (r >= 3), or
/// k <= 2r - 1. nullopt elsewhere.
std::optional<std::int64_t> exact_distance(std::int64_t n_frak, std::int64_t r, std::int64_t k);

/// Closed-form floor on the RS-type degree bound at a breakpoint k_t:
/// (n - (r - sqrt(r^2 - k_t)))^2 - (r - sqrt(r^2 - k_t))^2.
/// Throws std::invalid_argument when k_t is not a breakpoint.
double profile_lower(const DegreeProfile& profile, std::int64_t k_t);

/// Next-to-minimum weight delta (delta + 1) of a product of MDS codes.
std::int64_t secondweight(std::int64_t n, std::int64_t delta);

/// One row of a bound sweep.
struct BoundReport {
    std::int64_t n_frak;
    std::int64_t r;
    std::int64_t k;
    std::int64_t delta;
    std::int64_t partial_k;
    std::int64_t lrc_upper;
    GridBound grid;
    std::optional<std::int64_t> gridv2_upper;
    LowerBound lower;
    std::int64_t rs_degree_lower;
    std::optional<std::int64_t> exact;

    /// min of the applicable upper bounds.
    std::int64_t best_upper() const;
    /// rs_degree_lower <= lower_opt <= best_upper, and exact (if any)
    /// equals lower_opt.
    bool consistent() const;
};

BoundReport bound_report(const DegreeProfile& profile, std::int64_t k);

}  // namespace prodcode
