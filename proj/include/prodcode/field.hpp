#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace prodcode {

/// A field element of GF(2^M): the bits are polynomial-basis coordinates.
using Elem = std::uint32_t;

/// Dense storage for matrices over GF(2^M). Eigen arithmetic operators must
/// not be used on these (they would add integers); field ops go through Field.
using Matrix = Eigen::Matrix<Elem, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowVector = Eigen::Matrix<Elem, 1, Eigen::Dynamic>;

/// Carry-less product of two binary polynomials (inputs must fit in 32 bits).
std::uint64_t clmul(std::uint64_t a, std::uint64_t b);

/// Degree of a binary polynomial given as a bit mask; -1 for zero.
int gf2_degree(std::uint64_t p);

/// Remainder of a modulo b over GF(2)[x]; b nonzero.
std::uint64_t gf2_mod(std::uint64_t a, std::uint64_t b);

/// Trial division against every polynomial of degree 1..deg/2.
bool is_irreducible_gf2(std::uint64_t poly);

/// Lexicographically smallest monic irreducible of the given degree.
std::uint64_t smallest_irreducible(int degree);

/// GF(2^M) with a fixed reduction polynomial. Immutable after construction.
///
/// For M <= 16 multiplication uses log/antilog tables built from a primitive
/// element; larger fields fall back to carry-less multiply plus reduction.
class Field {
public:
    static constexpr int kMaxDegree = 24;

    /// Throws std::invalid_argument for M out of [1, kMaxDegree] or a
    /// reduction polynomial that is not monic of degree M or is reducible.
    explicit Field(int degree, std::optional<std::uint64_t> reduction_poly = std::nullopt);

    /// Builds a context without the irreducibility check. Only meant for
    /// fault-injection runs of the verification suite.
    static Field unchecked(int degree, std::uint64_t reduction_poly);

    int degree() const noexcept { return degree_; }
    std::uint64_t reduction_poly() const noexcept { return poly_; }
    std::uint64_t order() const noexcept { return std::uint64_t{1} << degree_; }
    bool contains(std::uint64_t a) const noexcept { return a < order(); }

    static Elem add(Elem a, Elem b) noexcept { return a ^ b; }

    Elem mul(Elem a, Elem b) const noexcept {
        if (a == 0 || b == 0) return 0;
        if (!log_.empty()) return exp_[log_[a] + log_[b]];
        return mul_reference(a, b);
    }

    /// Shift-and-add product with bitwise reduction; never uses the tables.
    Elem mul_reference(Elem a, Elem b) const noexcept;

    Elem sqr(Elem a) const noexcept { return mul(a, a); }
    Elem pow(Elem a, std::uint64_t e) const noexcept;

    /// a^(2^M - 2). Throws std::domain_error for a == 0.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    /// Smallest element of multiplicative order 2^M - 1, or 0 if none was
    /// found (only possible for unchecked, reducible moduli).
    Elem generator() const noexcept { return generator_; }

    bool operator==(const Field& other) const noexcept {
        return degree_ == other.degree_ && poly_ == other.poly_;
    }

private:
    Field(int degree, std::uint64_t poly, bool check);
    void build_tables();

    int degree_;
    std::uint64_t poly_;
    Elem generator_ = 0;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> exp_;
};

/// Lowercase hex without prefix ("0" for zero).
std::string to_hex(std::uint64_t v);
/// Accepts an optional 0x prefix. Throws std::invalid_argument on bad input.
std::uint64_t from_hex(const std::string& s);

}  // namespace prodcode
