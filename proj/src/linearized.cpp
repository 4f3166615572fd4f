#include "prodcode/linearized.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace prodcode {

int LinearizedPoly::top() const noexcept {
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
        if (coeffs[i] != 0) return i;
    return -1;
}

std::uint64_t LinearizedPoly::degree() const {
    const int t = top();
    if (t < 0) throw std::invalid_argument("zero linearized polynomial has no degree");
    if (static_cast<long>(t) * q_log >= 63) throw std::overflow_error("linearized degree overflows");
    return std::uint64_t{1} << (t * q_log);
}

Elem LinearizedPoly::operator()(Elem x) const {
    Elem acc = 0;
    Elem frob = x;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        acc ^= ctx->mul(coeffs[i], frob);
        for (int s = 0; s < q_log; ++s) frob = ctx->sqr(frob);
    }
    return acc;
}

Poly LinearizedPoly::to_poly() const {
    const int t = top();
    if (t < 0) return {};
    std::vector<Elem> dense(degree() + 1, 0);
    for (int i = 0; i <= t; ++i) dense[std::size_t{1} << (i * q_log)] = coeffs[i];
    return Poly(std::move(dense));
}

std::vector<Elem> root_space(const LinearizedPoly& p) {
    const int M = p.ctx->degree();
    // Pivot rows keyed by leading bit: (image vector, preimage combination).
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pivot(M, {0, 0});
    std::vector<std::uint64_t> kernel_basis;
    for (int b = 0; b < M; ++b) {
        std::uint64_t v = p(static_cast<Elem>(std::uint64_t{1} << b));
        std::uint64_t combo = std::uint64_t{1} << b;
        while (v) {
            const int lead = gf2_degree(v);
            if (pivot[lead].first == 0) {
                pivot[lead] = {v, combo};
                break;
            }
            v ^= pivot[lead].first;
            combo ^= pivot[lead].second;
        }
        if (v == 0) kernel_basis.push_back(combo);
    }

    const std::uint64_t expected = p.degree();
    const std::uint64_t found = std::uint64_t{1} << kernel_basis.size();
    if (found < expected)
        throw std::runtime_error("splitting field too small: " + std::to_string(found) + " roots of a degree-" +
                                 std::to_string(expected) + " linearized polynomial in GF(2^" +
                                 std::to_string(M) + ")");

    std::vector<Elem> roots(found, 0);
    for (std::uint64_t mask = 1; mask < found; ++mask) {
        // Subset sums of the kernel basis, one new basis vector per step.
        const int low = __builtin_ctzll(mask);
        roots[mask] = roots[mask & (mask - 1)] ^ static_cast<Elem>(kernel_basis[low]);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

LinearizedPair build_pair(const LinearizedPoly& f) {
    if (!f.ctx) throw std::invalid_argument("linearized polynomial has no field");
    if (f.coeffs.empty() || f.coeffs[0] == 0 || f.coeffs[0] == 1)
        throw std::invalid_argument("a_0 must differ from 0 and 1 so that f and x - f are separable");
    if (f.top() < 1) throw std::invalid_argument("deg f must exceed 1");

    LinearizedPair pair;
    pair.f = f;
    pair.g = f;
    pair.g.coeffs[0] ^= 1;  // x - f in characteristic 2
    pair.Zf = root_space(pair.f);
    pair.Zg = root_space(pair.g);
    pair.f_poly = pair.f.to_poly();
    pair.g_poly = pair.g.to_poly();

    const std::size_t n = pair.Zf.size();
    pair.eval_points.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) pair.eval_points[i * n + j] = pair.Zf[i] ^ pair.Zg[j];
    return pair;
}

LinearizedPair instantiate_standard(int q_log, std::optional<std::uint64_t> field_poly, std::optional<Elem> c) {
    if (q_log < 1 || 2 * q_log > Field::kMaxDegree)
        throw std::invalid_argument("q_log must be in [1, 12], got " + std::to_string(q_log));
    auto F = std::make_shared<const Field>(2 * q_log, field_poly);
    const std::uint64_t q = std::uint64_t{1} << q_log;

    auto in_subfield = [&](Elem a) { return F->pow(a, q) == a; };
    Elem chosen = 0;
    if (c) {
        if (!F->contains(*c) || in_subfield(*c))
            throw std::invalid_argument("c must lie in GF(q^2) outside GF(q)");
        chosen = *c;
    } else {
        for (Elem a = 2; a < F->order(); ++a) {
            if (!in_subfield(a)) {
                chosen = a;
                break;
            }
        }
    }

    // f = (x^q - x) / (c^(q-1) - 1); signs vanish in characteristic 2.
    const Elem scale_inv = F->inv(F->pow(chosen, q - 1) ^ 1);
    LinearizedPoly f{F, q_log, {scale_inv, scale_inv}};
    return build_pair(f);
}

}  // namespace prodcode
