#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "prodcode/degrees.hpp"
#include "prodcode/field.hpp"
#include "prodcode/linearized.hpp"
#include "prodcode/poly.hpp"

namespace prodcode {

/// A word relabeled to the n x n grid: entry (i, j) sits at Zf[i] + Zg[j].
using GridWord = Matrix;

/// The subcode C_k: evaluations on Z_f (+) Z_g of the span of the k
/// lowest-degree REF basis polynomials of span{g^i f^j}.
struct CodeInstance {
    std::shared_ptr<const LinearizedPair> pair;
    int r = 0;
    int k = 0;
    DegreeProfile profile;
    std::vector<Poly> basis_polys;  // monic, degrees partial_1 < ... < partial_k
    Matrix G;                       // k x n^2, columns in eval_points order

    const Field& field() const noexcept { return pair->field(); }
    int n() const noexcept { return pair->n(); }
    int length() const noexcept { return n() * n(); }
    int heavy_parities() const noexcept { return r * r - k; }
};

/// Throws std::invalid_argument unless 1 <= k <= r^2 and r <= n.
CodeInstance build_code(std::shared_ptr<const LinearizedPair> pair, int r, int k);

/// msg[i] multiplies basis_polys[i]; returns msg * G.
RowVector encode(const CodeInstance& code, std::span<const Elem> msg);

/// sum_i msg[i] * basis_polys[i].
Poly message_polynomial(const CodeInstance& code, std::span<const Elem> msg);

/// Inverse of message_polynomial by leading-term reduction against the
/// basis; nullopt when h is not in the span of the k basis polynomials.
std::optional<std::vector<Elem>> message_for(const CodeInstance& code, const Poly& h);

GridWord relabel(const LinearizedPair& pair, const RowVector& word);
RowVector unrelabel(const LinearizedPair& pair, const GridWord& grid);

/// Checks a word of length |points| against RS(r, points) through the dual
/// (generalized RS) parity checks built from barycentric weights.
class LocalCode {
public:
    LocalCode(std::shared_ptr<const Field> F, std::vector<Elem> points, int r);

    bool contains(std::span<const Elem> values) const;

    /// Value at points[target] of the degree < r interpolant through the
    /// given known positions (exactly r of them are used).
    Elem interpolate_at(std::span<const int> known, std::span<const Elem> values, int target) const;

    const std::vector<Elem>& points() const noexcept { return points_; }
    int dimension() const noexcept { return r_; }

private:
    std::shared_ptr<const Field> F_;
    std::vector<Elem> points_;
    std::vector<Elem> weights_;  // 1 / prod_{l != j} (x_j - x_l)
    int r_;
};

/// True iff every grid row lies in RS(r, Zg) and every grid column in
/// RS(r, Zf).
bool local_membership(const LinearizedPair& pair, int r, const GridWord& grid);

}  // namespace prodcode
