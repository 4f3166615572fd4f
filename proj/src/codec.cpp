#include "prodcode/codec.hpp"

#include <stdexcept>
#include <string>

namespace prodcode {

CodeInstance build_code(std::shared_ptr<const LinearizedPair> pair, int r, int k) {
    if (!pair) throw std::invalid_argument("build_code: null pair");
    const int n = pair->n();
    if (r < 1 || r > n)
        throw std::invalid_argument("build_code: need 1 <= r <= n, got r=" + std::to_string(r) +
                                    " n=" + std::to_string(n));
    if (k < 1 || k > r * r)
        throw std::invalid_argument("build_code: need 1 <= k <= r^2, got k=" + std::to_string(k));

    CodeInstance code;
    code.pair = pair;
    code.r = r;
    code.k = k;
    code.profile = degree_profile(n, r);

    RefBasis ref = ref_basis(*pair, r);
    if (ref.degrees() != code.profile.partials)
        throw std::logic_error("REF degrees disagree with the closed-form degree profile");
    code.basis_polys.assign(ref.rows.begin(), ref.rows.begin() + k);

    const Field& F = pair->field();
    const auto& pts = pair->eval_points;
    code.G.resize(k, static_cast<Eigen::Index>(pts.size()));
    for (int i = 0; i < k; ++i)
        for (std::size_t j = 0; j < pts.size(); ++j)
            code.G(i, static_cast<Eigen::Index>(j)) = eval(F, code.basis_polys[i], pts[j]);
    return code;
}

RowVector encode(const CodeInstance& code, std::span<const Elem> msg) {
    if (static_cast<int>(msg.size()) != code.k)
        throw std::invalid_argument("encode: message length " + std::to_string(msg.size()) + " != k=" +
                                    std::to_string(code.k));
    const Field& F = code.field();
    RowVector word = RowVector::Zero(code.G.cols());
    for (int i = 0; i < code.k; ++i) {
        const Elem m = msg[i];
        if (m == 0) continue;
        word = word.binaryExpr(code.G.row(i), [&F, m](Elem acc, Elem g) { return acc ^ F.mul(m, g); });
    }
    return word;
}

Poly message_polynomial(const CodeInstance& code, std::span<const Elem> msg) {
    if (static_cast<int>(msg.size()) != code.k) throw std::invalid_argument("message length != k");
    Poly h;
    for (int i = 0; i < code.k; ++i) h = add(h, scale(code.field(), code.basis_polys[i], msg[i]));
    return h;
}

std::optional<std::vector<Elem>> message_for(const CodeInstance& code, const Poly& h) {
    std::vector<Elem> msg(code.k, 0);
    Poly rest = h;
    for (int i = code.k; i-- > 0 && !rest.is_zero();) {
        const auto& b = code.basis_polys[i];
        if (rest.degree() > b.degree()) return std::nullopt;
        if (rest.degree() < b.degree()) continue;
        msg[i] = rest.leading();  // basis rows are monic
        rest = add(rest, scale(code.field(), b, msg[i]));
    }
    if (!rest.is_zero()) return std::nullopt;
    return msg;
}

GridWord relabel(const LinearizedPair& pair, const RowVector& word) {
    const int n = pair.n();
    if (word.size() != static_cast<Eigen::Index>(n) * n) throw std::invalid_argument("relabel: size mismatch");
    return Eigen::Map<const Matrix>(word.data(), n, n);
}

RowVector unrelabel(const LinearizedPair& pair, const GridWord& grid) {
    const int n = pair.n();
    if (grid.rows() != n || grid.cols() != n) throw std::invalid_argument("unrelabel: size mismatch");
    return Eigen::Map<const RowVector>(grid.data(), static_cast<Eigen::Index>(n) * n);
}

LocalCode::LocalCode(std::shared_ptr<const Field> F, std::vector<Elem> points, int r)
    : F_(std::move(F)), points_(std::move(points)), r_(r) {
    const std::size_t n = points_.size();
    weights_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        Elem prod = 1;
        for (std::size_t l = 0; l < n; ++l)
            if (l != j) prod = F_->mul(prod, points_[j] ^ points_[l]);
        weights_[j] = F_->inv(prod);
    }
}

bool LocalCode::contains(std::span<const Elem> values) const {
    const std::size_t n = points_.size();
    if (values.size() != n) throw std::invalid_argument("LocalCode::contains: size mismatch");
    // v is in RS(r) iff sum_j w_j v_j x_j^m = 0 for 0 <= m < n - r.
    std::vector<Elem> term(n);
    for (std::size_t j = 0; j < n; ++j) term[j] = F_->mul(weights_[j], values[j]);
    for (int m = 0; m < static_cast<int>(n) - r_; ++m) {
        Elem acc = 0;
        for (std::size_t j = 0; j < n; ++j) {
            acc ^= term[j];
            term[j] = F_->mul(term[j], points_[j]);
        }
        if (acc != 0) return false;
    }
    return true;
}

Elem LocalCode::interpolate_at(std::span<const int> known, std::span<const Elem> values, int target) const {
    if (static_cast<int>(known.size()) < r_) throw std::invalid_argument("interpolate_at: fewer than r points");
    const Elem x = points_[target];
    Elem acc = 0;
    for (int a = 0; a < r_; ++a) {
        const Elem xa = points_[known[a]];
        Elem num = 1, den = 1;
        for (int b = 0; b < r_; ++b) {
            if (b == a) continue;
            const Elem xb = points_[known[b]];
            num = F_->mul(num, x ^ xb);
            den = F_->mul(den, xa ^ xb);
        }
        acc ^= F_->mul(values[known[a]], F_->div(num, den));
    }
    return acc;
}

bool local_membership(const LinearizedPair& pair, int r, const GridWord& grid) {
    const int n = pair.n();
    if (grid.rows() != n || grid.cols() != n) throw std::invalid_argument("local_membership: size mismatch");
    const LocalCode rows(pair.f.ctx, pair.Zg, r);
    const LocalCode cols(pair.f.ctx, pair.Zf, r);
    std::vector<Elem> buf(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) buf[j] = grid(i, j);
        if (!rows.contains(buf)) return false;
    }
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) buf[i] = grid(i, j);
        if (!cols.contains(buf)) return false;
    }
    return true;
}

}  // namespace prodcode
