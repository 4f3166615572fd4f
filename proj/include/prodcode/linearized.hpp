#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "prodcode/field.hpp"
#include "prodcode/poly.hpp"

namespace prodcode {

/// sum_i a_i x^(q^i) with q = 2^q_log, over the field `ctx`.
struct LinearizedPoly {
    std::shared_ptr<const Field> ctx;
    int q_log = 1;
    std::vector<Elem> coeffs;  // a_0, a_1, ..., a_n

    std::uint64_t q() const noexcept { return std::uint64_t{1} << q_log; }
    /// Index of the highest nonzero coefficient; -1 if all vanish.
    int top() const noexcept;
    /// q^top, the ordinary degree.
    std::uint64_t degree() const;

    Elem operator()(Elem x) const;
    /// Dense expansion as an ordinary polynomial.
    Poly to_poly() const;
};

/// f, g = x - f, and the coordinates of Z_f (+) Z_g.
///
/// eval_points[i * n + j] = Zf[i] + Zg[j], with Zf and Zg sorted by value.
struct LinearizedPair {
    LinearizedPoly f;
    LinearizedPoly g;
    std::vector<Elem> Zf;
    std::vector<Elem> Zg;
    std::vector<Elem> eval_points;
    Poly f_poly;
    Poly g_poly;

    const Field& field() const noexcept { return *f.ctx; }
    /// Local length: deg f = deg g = |Zf| = |Zg|.
    int n() const noexcept { return static_cast<int>(Zf.size()); }
};

/// All roots of p inside its field, ascending. Computed as the kernel of the
/// GF(2)-linear map a -> p(a). Throws std::runtime_error("splitting field
/// too small") when fewer than deg(p) roots exist.
std::vector<Elem> root_space(const LinearizedPoly& p);

/// Throws std::invalid_argument when a_0 is 0 or 1 or deg f < 2, and
/// propagates root_space errors.
LinearizedPair build_pair(const LinearizedPoly& f);

/// f = (x^q - x) / (c^(q-1) - 1) over GF(q^2), default reduction polynomial
/// unless overridden. c defaults to the smallest element outside GF(q).
LinearizedPair instantiate_standard(int q_log, std::optional<std::uint64_t> field_poly = std::nullopt,
                                    std::optional<Elem> c = std::nullopt);

}  // namespace prodcode
