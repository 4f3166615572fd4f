#pragma once

#include <cstdint>
#include <vector>

#include "prodcode/linearized.hpp"
#include "prodcode/poly.hpp"

namespace prodcode {

struct Breakpoint {
    int t;
    std::int64_t k;       // k_t = (t+1) r - floor((t+1)/2) ceil((t+1)/2)
    std::int64_t degree;  // partial_{k_t} = t n + r - 1 - floor((t+1)/2)
};

/// I_t = { t n + l : 0 <= l <= r - 1 - ceil(t/2) }.
struct DegreeInterval {
    int t;
    std::int64_t first;
    std::int64_t last;
    std::int64_t size() const noexcept { return last - first + 1; }
};

/// Attainable degrees of span{g^i f^j : 0 <= i, j < r}.
struct DegreeProfile {
    int n_frak = 0;
    int r = 0;
    std::vector<std::int64_t> D;         // from the interval description
    std::vector<std::int64_t> partials;  // from breakpoints; equals D
    std::vector<Breakpoint> breakpoints;
    std::vector<DegreeInterval> intervals;

    /// partial_k for 1 <= k <= r^2.
    std::int64_t partial(std::int64_t k) const;
    std::int64_t max_degree() const { return partials.back(); }
    /// True iff the largest degree reaches the code length n^2 (r >= n/2 + 1).
    bool reaches_length() const {
        return max_degree() >= static_cast<std::int64_t>(n_frak) * n_frak;
    }
    /// True iff k equals some k_t.
    bool is_breakpoint(std::int64_t k) const;
};

/// Throws std::invalid_argument unless 1 <= r <= n_frak.
DegreeProfile degree_profile(int n_frak, int r);

/// Row-echelon basis of span(B_{r^2}): monic rows, pairwise distinct
/// degrees, sorted ascending by degree.
struct RefBasis {
    std::vector<Poly> rows;
    std::vector<std::int64_t> degrees() const;
};

/// Largest r * n accepted by the symbolic elimination.
inline constexpr std::int64_t kRefCap = std::int64_t{1} << 13;

/// Expands every g^i f^j, stacks them by descending degree and eliminates
/// column by column from the highest degree down (first row wins the
/// pivot, pivots normalized monic). Throws std::length_error when
/// r * n exceeds kRefCap.
RefBasis ref_basis(const LinearizedPair& pair, int r);

/// Pivot degrees of the elimination above.
std::vector<std::int64_t> ref_degree_oracle(const LinearizedPair& pair, int r);

/// Rank of the B_{r^2} coefficient matrix.
int rank_check_B(const LinearizedPair& pair, int r);

}  // namespace prodcode
