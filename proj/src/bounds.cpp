#include "prodcode/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace prodcode {

namespace {

void check_k(std::int64_t r, std::int64_t k) {
    if (k < 1 || k > r * r)
        throw std::invalid_argument("k=" + std::to_string(k) + " outside [1, r^2] for r=" + std::to_string(r));
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace

std::int64_t lrc_upper(std::int64_t n, std::int64_t r, std::int64_t k) {
    check_k(r, k);
    const std::int64_t delta = n - r + 1;
    return n * n - k + 1 - ((k - 1) / r) * (delta - 1);
}

GridBound grid_upper(std::int64_t n, std::int64_t r, std::int64_t k) {
    check_k(r, k);
    const std::int64_t need = r * r - k + 1;
    GridBound best{-1, 0, 0};
    auto consider = [&](std::int64_t a, std::int64_t b) {
        const std::int64_t v = (a + n - r) * (b + n - r);
        if (best.value < 0 || v < best.value) best = {v, a, b};
    };
    if (r <= kGridScanLimit) {
        for (std::int64_t a = 0; a <= r; ++a)
            for (std::int64_t b = 0; b <= r; ++b)
                if (a * b >= need) consider(a, b);
    } else {
        // For fixed a the best b is ceil(need / a); a >= ceil(need / r).
        for (std::int64_t a = ceil_div(need, r); a <= r; ++a) consider(a, ceil_div(need, a));
    }
    return best;
}

std::optional<std::int64_t> gridv2_upper(std::int64_t n, std::int64_t r, std::int64_t k) {
    check_k(r, k);
    if (k < 2 || r < 2 || r > n - 1) return std::nullopt;
    const std::int64_t delta = n - r + 1;
    return n * n - k + 1 - ((k - 2) / (r - 1)) * (delta - 1);
}

LowerBound lower_opt(std::int64_t n_frak, std::int64_t r, std::int64_t partial_k) {
    const std::int64_t n = n_frak;
    const std::int64_t delta = n - r + 1;
    LowerBound best{-1, 0, 0};
    for (std::int64_t nr = delta; nr <= n; ++nr) {
        for (std::int64_t nc = delta; nc <= n; ++nc) {
            const std::int64_t v =
                std::max({n * n - partial_k + (n - nr) * (n - nc), nr * delta, nc * delta});
            if (best.value < 0 || v < best.value) best = {v, nr, nc};
        }
    }
    return best;
}

std::int64_t rs_degree_lower(std::int64_t n_frak, std::int64_t partial_k) { return n_frak * n_frak - partial_k; }

std::optional<std::int64_t> exact_distance(std::int64_t n_frak, std::int64_t r, std::int64_t k) {
    check_k(r, k);
    const std::int64_t delta = n_frak - r + 1;
    if (k == r * r) return delta * delta;
    if (k == r * r - 1) return delta * (delta + 1);
    if (k == r * r - 2 && r >= 3) return delta * (delta + 2);
    if (k <= 2 * r - 1) return n_frak * n_frak - k + 1 - ((k - 1) / r) * (n_frak - r);
    return std::nullopt;
}

double profile_lower(const DegreeProfile& profile, std::int64_t k_t) {
    if (!profile.is_breakpoint(k_t))
        throw std::invalid_argument("k=" + std::to_string(k_t) + " is not a breakpoint dimension");
    const double n = profile.n_frak;
    const double r = profile.r;
    const double s = r - std::sqrt(r * r - static_cast<double>(k_t));
    return (n - s) * (n - s) - s * s;
}

std::int64_t secondweight(std::int64_t /*n*/, std::int64_t delta) { return delta * (delta + 1); }

std::int64_t BoundReport::best_upper() const {
    std::int64_t best = std::min(lrc_upper, grid.value);
    if (gridv2_upper) best = std::min(best, *gridv2_upper);
    return best;
}

bool BoundReport::consistent() const {
    if (rs_degree_lower > lower.value) return false;
    if (lower.value > best_upper()) return false;
    if (exact && *exact != lower.value) return false;
    return true;
}

BoundReport bound_report(const DegreeProfile& profile, std::int64_t k) {
    const std::int64_t n = profile.n_frak;
    const std::int64_t r = profile.r;
    BoundReport rep;
    rep.n_frak = n;
    rep.r = r;
    rep.k = k;
    rep.delta = n - r + 1;
    rep.partial_k = profile.partial(k);
    rep.lrc_upper = lrc_upper(n, r, k);
    rep.grid = grid_upper(n, r, k);
    rep.gridv2_upper = gridv2_upper(n, r, k);
    rep.lower = lower_opt(n, r, rep.partial_k);
    rep.rs_degree_lower = rs_degree_lower(n, rep.partial_k);
    rep.exact = exact_distance(n, r, k);
    return rep;
}

}  // namespace prodcode
