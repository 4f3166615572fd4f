#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "prodcode/field.hpp"

namespace prodcode {

/// Dense univariate polynomial over GF(2^M), lowest degree first.
/// Trailing zeros are always stripped, so the zero polynomial is empty.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Elem> coeffs) : c_(std::move(coeffs)) { normalize(); }
    Poly(std::initializer_list<Elem> coeffs) : c_(coeffs) { normalize(); }

    static Poly constant(Elem c) { return Poly({c}); }
    static Poly monomial(std::size_t degree, Elem c = 1);

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    Elem operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    Elem leading() const noexcept { return c_.empty() ? 0 : c_.back(); }
    const std::vector<Elem>& coeffs() const noexcept { return c_; }

    bool operator==(const Poly&) const = default;

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Elem> c_;
};

Poly add(const Poly& a, const Poly& b);
Poly scale(const Field& F, const Poly& p, Elem s);
Poly mul(const Field& F, const Poly& a, const Poly& b);
Elem eval(const Field& F, const Poly& p, Elem x);

/// Formal derivative. In characteristic 2 only odd-degree terms survive.
Poly derivative(const Poly& p);

/// Synthetic division by (x - root): returns (quotient, remainder).
std::pair<Poly, Elem> divide_linear(const Field& F, const Poly& p, Elem root);

/// Bivariate polynomial s(x, y) with coefficient (i, j) on x^i y^j. The
/// matrix shape is the (r1, r2) degree box.
using BiPoly = Matrix;

Elem eval(const Field& F, const BiPoly& s, Elem x, Elem y);

/// s(gx(x), fx(x)) expanded as a univariate polynomial.
Poly compose(const Field& F, const BiPoly& s, const Poly& gx, const Poly& fx);

/// (x - b) * (y - c) * rest, growing the box by one in each direction.
BiPoly multiply_linear_factors(const Field& F, const BiPoly& rest, Elem b, Elem c);

}  // namespace prodcode
