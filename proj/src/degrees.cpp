#include "prodcode/degrees.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace prodcode {

std::int64_t DegreeProfile::partial(std::int64_t k) const {
    if (k < 1 || k > static_cast<std::int64_t>(partials.size()))
        throw std::out_of_range("k=" + std::to_string(k) + " outside [1, r^2]");
    return partials[static_cast<std::size_t>(k - 1)];
}

bool DegreeProfile::is_breakpoint(std::int64_t k) const {
    return std::any_of(breakpoints.begin(), breakpoints.end(), [k](const Breakpoint& b) { return b.k == k; });
}

DegreeProfile degree_profile(int n_frak, int r) {
    if (r < 1 || r > n_frak)
        throw std::invalid_argument("degree profile needs 1 <= r <= n, got n=" + std::to_string(n_frak) +
                                    " r=" + std::to_string(r));
    DegreeProfile p;
    p.n_frak = n_frak;
    p.r = r;
    const std::int64_t n = n_frak;

    for (int t = 0; t <= 2 * r - 2; ++t) {
        const std::int64_t width = r - 1 - (t + 1) / 2;  // r - 1 - ceil(t/2)
        p.intervals.push_back({t, t * n, t * n + width});
        for (std::int64_t l = 0; l <= width; ++l) p.D.push_back(t * n + l);

        const std::int64_t lo = (t + 1) / 2;
        const std::int64_t hi = (t + 2) / 2;
        p.breakpoints.push_back({t, (t + 1) * std::int64_t{r} - lo * hi, t * n + r - 1 - lo});
    }
    std::sort(p.D.begin(), p.D.end());

    std::int64_t prev_k = 0;
    for (const auto& b : p.breakpoints) {
        for (std::int64_t k = prev_k + 1; k <= b.k; ++k) p.partials.push_back(b.degree - (b.k - k));
        prev_k = b.k;
    }
    return p;
}

std::vector<std::int64_t> RefBasis::degrees() const {
    std::vector<std::int64_t> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row.degree());
    return out;
}

namespace {

struct Generator {
    int i;
    int j;
};

}  // namespace

RefBasis ref_basis(const LinearizedPair& pair, int r) {
    const int n = pair.n();
    if (r < 1 || r > n) throw std::invalid_argument("REF needs 1 <= r <= n");
    if (static_cast<std::int64_t>(r) * n > kRefCap)
        throw std::length_error("r * n = " + std::to_string(std::int64_t{r} * n) + " exceeds the REF cap " +
                                std::to_string(kRefCap));
    const Field& F = pair.field();

    std::vector<Poly> fpow{Poly::constant(1)}, gpow{Poly::constant(1)};
    for (int e = 1; e < r; ++e) {
        fpow.push_back(mul(F, fpow.back(), pair.f_poly));
        gpow.push_back(mul(F, gpow.back(), pair.g_poly));
    }

    // Rows by descending degree (i + j) n, ties broken by ascending i.
    std::vector<Generator> order;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) order.push_back({i, j});
    std::stable_sort(order.begin(), order.end(),
                     [](const Generator& a, const Generator& b) { return a.i + a.j > b.i + b.j; });

    const Eigen::Index rows = static_cast<Eigen::Index>(order.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(2 * (r - 1)) * n + 1;
    Matrix A = Matrix::Zero(rows, cols);
    for (Eigen::Index row = 0; row < rows; ++row) {
        const Poly p = mul(F, gpow[order[row].i], fpow[order[row].j]);
        const auto& c = p.coeffs();
        for (std::size_t d = 0; d < c.size(); ++d) A(row, static_cast<Eigen::Index>(d)) = c[d];
    }

    std::vector<bool> used(static_cast<std::size_t>(rows), false);
    RefBasis basis;
    for (Eigen::Index col = cols; col-- > 0;) {
        Eigen::Index piv = -1;
        for (Eigen::Index row = 0; row < rows; ++row) {
            if (!used[row] && A(row, col) != 0) {
                piv = row;
                break;
            }
        }
        if (piv < 0) continue;
        used[piv] = true;

        const Elem lead_inv = F.inv(A(piv, col));
        Elem* prow = A.row(piv).data();
        for (Eigen::Index c = 0; c <= col; ++c) prow[c] = F.mul(prow[c], lead_inv);

        for (Eigen::Index row = 0; row < rows; ++row) {
            if (used[row]) continue;
            const Elem factor = A(row, col);
            if (factor == 0) continue;
            Elem* dst = A.row(row).data();
            for (Eigen::Index c = 0; c <= col; ++c)
                if (prow[c]) dst[c] ^= F.mul(factor, prow[c]);
        }
        basis.rows.emplace_back(std::vector<Elem>(prow, prow + col + 1));
    }
    std::reverse(basis.rows.begin(), basis.rows.end());
    return basis;
}

std::vector<std::int64_t> ref_degree_oracle(const LinearizedPair& pair, int r) {
    return ref_basis(pair, r).degrees();
}

int rank_check_B(const LinearizedPair& pair, int r) {
    return static_cast<int>(ref_basis(pair, r).rows.size());
}

}  // namespace prodcode
