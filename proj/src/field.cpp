#include "prodcode/field.hpp"

#include <bit>
#include <cstdio>
#include <stdexcept>

namespace prodcode {

std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

int gf2_degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t gf2_mod(std::uint64_t a, std::uint64_t b) {
    const int db = gf2_degree(b);
    for (int da = gf2_degree(a); da >= db; da = gf2_degree(a)) a ^= b << (da - db);
    return a;
}

bool is_irreducible_gf2(std::uint64_t poly) {
    const int d = gf2_degree(poly);
    if (d < 1) return false;
    for (int k = 1; 2 * k <= d; ++k) {
        for (std::uint64_t div = std::uint64_t{1} << k; div < (std::uint64_t{2} << k); ++div) {
            if (gf2_mod(poly, div) == 0) return false;
        }
    }
    return true;
}

std::uint64_t smallest_irreducible(int degree) {
    for (std::uint64_t p = std::uint64_t{1} << degree; p < (std::uint64_t{2} << degree); ++p) {
        if (is_irreducible_gf2(p)) return p;
    }
    throw std::logic_error("no irreducible polynomial found");
}

Field::Field(int degree, std::optional<std::uint64_t> reduction_poly)
    : Field(degree,
            reduction_poly ? *reduction_poly
                           : (degree >= 1 && degree <= kMaxDegree ? smallest_irreducible(degree) : 0),
            true) {}

Field Field::unchecked(int degree, std::uint64_t reduction_poly) {
    return Field(degree, reduction_poly, false);
}

Field::Field(int degree, std::uint64_t poly, bool check) : degree_(degree), poly_(poly) {
    if (degree < 1 || degree > kMaxDegree)
        throw std::invalid_argument("field degree must be in [1, 24], got " + std::to_string(degree));
    if (gf2_degree(poly) != degree)
        throw std::invalid_argument("reduction polynomial 0x" + to_hex(poly) + " does not have degree " +
                                    std::to_string(degree));
    if (check && !is_irreducible_gf2(poly))
        throw std::invalid_argument("reduction polynomial 0x" + to_hex(poly) + " is reducible");
    build_tables();
}

Elem Field::mul_reference(Elem a, Elem b) const noexcept {
    std::uint64_t p = clmul(a, b);
    for (int d = gf2_degree(p); d >= degree_; d = gf2_degree(p)) p ^= poly_ << (d - degree_);
    return static_cast<Elem>(p);
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
    Elem result = 1;
    while (e) {
        if (e & 1) result = mul(result, a);
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return pow(a, order() - 2);
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

void Field::build_tables() {
    if (!is_irreducible_gf2(poly_)) return;
    const std::uint64_t group = order() - 1;
    const auto factors = prime_factors(group);
    auto slow_pow = [this](Elem a, std::uint64_t e) {
        Elem r = 1;
        while (e) {
            if (e & 1) r = mul_reference(r, a);
            a = mul_reference(a, a);
            e >>= 1;
        }
        return r;
    };
    for (Elem g = 1; g < order(); ++g) {
        bool primitive = slow_pow(g, group) == 1;
        for (auto p : factors) {
            if (!primitive) break;
            primitive = slow_pow(g, group / p) != 1;
        }
        if (primitive) {
            generator_ = g;
            break;
        }
    }
    if (generator_ == 0 || degree_ > 16) return;

    log_.assign(order(), 0);
    exp_.assign(2 * group, 0);
    Elem x = 1;
    for (std::uint64_t i = 0; i < group; ++i) {
        exp_[i] = exp_[i + group] = x;
        log_[x] = static_cast<std::uint32_t>(i);
        x = mul_reference(x, generator_);
    }
}

std::string to_hex(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(v));
    return buf;
}

std::uint64_t from_hex(const std::string& s) {
    std::size_t start = (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) ? 2 : 0;
    if (start == s.size()) throw std::invalid_argument("empty hex string");
    std::uint64_t v = 0;
    for (std::size_t i = start; i < s.size(); ++i) {
        const char c = s[i];
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw std::invalid_argument("invalid hex string '" + s + "'");
        if (v >> 60) throw std::invalid_argument("hex value too large '" + s + "'");
        v = (v << 4) | static_cast<std::uint64_t>(d);
    }
    return v;
}

}  // namespace prodcode
