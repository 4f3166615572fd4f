#include "prodcode/poly.hpp"

#include <algorithm>

namespace prodcode {

Poly Poly::monomial(std::size_t degree, Elem c) {
    std::vector<Elem> v(degree + 1, 0);
    v[degree] = c;
    return Poly(std::move(v));
}

Poly add(const Poly& a, const Poly& b) {
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<Elem> out(std::max(x.size(), y.size()), 0);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i];
    for (std::size_t i = 0; i < y.size(); ++i) out[i] ^= y[i];
    return Poly(std::move(out));
}

Poly scale(const Field& F, const Poly& p, Elem s) {
    std::vector<Elem> out(p.coeffs());
    for (auto& c : out) c = F.mul(c, s);
    return Poly(std::move(out));
}

Poly mul(const Field& F, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<Elem> out(x.size() + y.size() - 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < y.size(); ++j) out[i + j] ^= F.mul(x[i], y[j]);
    }
    return Poly(std::move(out));
}

Elem eval(const Field& F, const Poly& p, Elem x) {
    Elem acc = 0;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = F.mul(acc, x) ^ *it;
    return acc;
}

Poly derivative(const Poly& p) {
    const auto& c = p.coeffs();
    if (c.size() <= 1) return {};
    std::vector<Elem> out(c.size() - 1, 0);
    for (std::size_t i = 1; i < c.size(); i += 2) out[i - 1] = c[i];
    return Poly(std::move(out));
}

std::pair<Poly, Elem> divide_linear(const Field& F, const Poly& p, Elem root) {
    const auto& c = p.coeffs();
    if (c.empty()) return {Poly{}, 0};
    std::vector<Elem> q(c.size() - 1, 0);
    Elem carry = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        const Elem v = c[i] ^ F.mul(carry, root);
        if (i == 0) return {Poly(std::move(q)), v};
        q[i - 1] = v;
        carry = v;
    }
    return {Poly(std::move(q)), 0};
}

Elem eval(const Field& F, const BiPoly& s, Elem x, Elem y) {
    Elem acc = 0;
    for (Eigen::Index i = s.rows(); i-- > 0;) {
        Elem row = 0;
        for (Eigen::Index j = s.cols(); j-- > 0;) row = F.mul(row, y) ^ s(i, j);
        acc = F.mul(acc, x) ^ row;
    }
    return acc;
}

Poly compose(const Field& F, const BiPoly& s, const Poly& gx, const Poly& fx) {
    // Horner in both variables: sum_i g^i * (sum_j s_ij f^j).
    Poly acc;
    for (Eigen::Index i = s.rows(); i-- > 0;) {
        Poly inner;
        for (Eigen::Index j = s.cols(); j-- > 0;) inner = add(mul(F, inner, fx), Poly::constant(s(i, j)));
        acc = add(mul(F, acc, gx), inner);
    }
    return acc;
}

BiPoly multiply_linear_factors(const Field& F, const BiPoly& rest, Elem b, Elem c) {
    // (x + b)(y + c) in characteristic 2.
    BiPoly out = BiPoly::Zero(rest.rows() + 1, rest.cols() + 1);
    for (Eigen::Index i = 0; i < rest.rows(); ++i) {
        for (Eigen::Index j = 0; j < rest.cols(); ++j) {
            const Elem v = rest(i, j);
            if (v == 0) continue;
            out(i + 1, j + 1) ^= v;
            out(i, j + 1) ^= F.mul(b, v);
            out(i + 1, j) ^= F.mul(c, v);
            out(i, j) ^= F.mul(F.mul(b, c), v);
        }
    }
    return out;
}

}  // namespace prodcode
