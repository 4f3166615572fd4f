// Invariant suites behind `prodcode verify`.

#include <memory>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "prodcode/analysis.hpp"
#include "prodcode/bounds.hpp"

namespace prodcode::cli {

namespace {

template <class A, class B>
std::string expect_msg(const std::string& what, const A& expected, const B& actual) {
    std::ostringstream os;
    os << what << ": expected " << expected << ", got " << actual;
    return os.str();
}

std::string join(const std::vector<std::int64_t>& v) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << '}';
    return os.str();
}

CheckResult field_axioms(const Field& F) {
    const Elem q = static_cast<Elem>(F.order());
    for (Elem a = 0; a < q; ++a) {
        if (a != 0) {
            const Elem ai = F.inv(a);
            if (F.mul(a, ai) != 1)
                return "field axiom violated in GF(2^" + std::to_string(F.degree()) + ") mod 0x" +
                       to_hex(F.reduction_poly()) + ": " + to_hex(a) + " * inv(" + to_hex(a) + ") = " +
                       to_hex(F.mul(a, ai)) + ", expected 1";
        }
        for (Elem b = 0; b < q; ++b) {
            if (F.mul(a, b) != F.mul(b, a)) return "field axiom violated: multiplication not commutative at " + to_hex(a) + ", " + to_hex(b);
            if (F.mul(a, b) != F.mul_reference(a, b))
                return expect_msg("table product " + to_hex(a) + "*" + to_hex(b), to_hex(F.mul_reference(a, b)), to_hex(F.mul(a, b)));
            if (a != 0 && b != 0 && F.mul(a, b) == 0)
                return "field axiom violated: zero divisors " + to_hex(a) + " * " + to_hex(b) + " = 0";
            for (Elem c = 0; c < q; ++c) {
                if (F.mul(a, F.add(b, c)) != F.add(F.mul(a, b), F.mul(a, c)))
                    return "field axiom violated: distributivity fails at " + to_hex(a) + ", " + to_hex(b) + ", " + to_hex(c);
                if (F.mul(F.mul(a, b), c) != F.mul(a, F.mul(b, c)))
                    return "field axiom violated: associativity fails at " + to_hex(a) + ", " + to_hex(b) + ", " + to_hex(c);
            }
        }
    }
    return std::nullopt;
}

CheckResult pair_invariants(int q_log) {
    const auto pair = instantiate_standard(q_log);
    const int n = pair.n();
    std::set<Elem> seen(pair.eval_points.begin(), pair.eval_points.end());
    if (static_cast<int>(seen.size()) != n * n) return expect_msg("distinct evaluation points", n * n, seen.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Elem a = pair.eval_points[static_cast<std::size_t>(i * n + j)];
            if (pair.g(a) != pair.Zf[i] || pair.f(a) != pair.Zg[j])
                return "g(b+c) = b or f(b+c) = c fails at cell (" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
    }
    for (const auto* Z : {&pair.Zf, &pair.Zg}) {
        const std::set<Elem> s(Z->begin(), Z->end());
        for (Elem x : *Z)
            for (Elem y : *Z)
                if (!s.count(x ^ y)) return "root space not closed under addition";
    }
    return std::nullopt;
}

CheckResult degree_theorem(int q_log) {
    const auto pair = instantiate_standard(q_log);
    for (int r = 1; r <= pair.n(); ++r) {
        const auto formula = degree_profile(pair.n(), r).D;
        const auto oracle = ref_degree_oracle(pair, r);
        if (oracle != formula) return "n=" + std::to_string(pair.n()) + " r=" + std::to_string(r) + ": " + expect_msg("degree set", join(formula), join(oracle));
        if (static_cast<int>(formula.size()) != r * r) return expect_msg("|D|", r * r, formula.size());
    }
    return std::nullopt;
}

CheckResult diagram(int q_log, int polys, std::uint64_t seed) {
    auto pair = instantiate_standard(q_log);
    const Field& F = pair.field();
    const int n = pair.n();
    SplitMix64 rng(seed);
    for (int r = 1; r <= n; ++r) {
        for (int t = 0; t < polys; ++t) {
            BiPoly s(r, r);
            for (Eigen::Index i = 0; i < r; ++i)
                for (Eigen::Index j = 0; j < r; ++j) s(i, j) = static_cast<Elem>(rng.below(F.order()));
            const Poly h = compose(F, s, pair.g_poly, pair.f_poly);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (eval(F, h, pair.eval_points[static_cast<std::size_t>(i * n + j)]) != eval(F, s, pair.Zf[i], pair.Zg[j]))
                        return "composition disagrees with bivariate evaluation at q_log=" + std::to_string(q_log) +
                               " r=" + std::to_string(r) + " cell (" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
    }
    return std::nullopt;
}

CheckResult distances(int q_log, int r, std::int64_t k_lo, std::int64_t k_hi, std::uint64_t budget, unsigned threads) {
    auto pair = std::make_shared<const LinearizedPair>(instantiate_standard(q_log));
    const int n = pair->n();
    for (auto k = k_lo; k <= k_hi; ++k) {
        const auto code = build_code(pair, r, static_cast<int>(k));
        const int d = exhaustive_distance(code, budget, threads).distance;
        const auto rep = bound_report(code.profile, k);
        const std::string where = "n=" + std::to_string(n) + " r=" + std::to_string(r) + " k=" + std::to_string(k);
        if (rep.exact && *rep.exact != d) return where + ": " + expect_msg("distance", *rep.exact, d);
        if (d < rep.lower.value) return where + ": distance " + std::to_string(d) + " below lower_opt " + std::to_string(rep.lower.value);
        if (d > rep.best_upper()) return where + ": distance " + std::to_string(d) + " above upper bound " + std::to_string(rep.best_upper());
    }
    return std::nullopt;
}

CheckResult bound_sweep(int n, int r) {
    const auto profile = degree_profile(n, r);
    const std::int64_t delta = n - r + 1;
    const std::int64_t kmax = std::int64_t{r} * r;
    std::int64_t prev_grid = -1, prev_lower = -1;
    for (std::int64_t k = 1; k <= kmax; ++k) {
        const auto rep = bound_report(profile, k);
        const std::string where = "(" + std::to_string(n) + "," + std::to_string(r) + ") k=" + std::to_string(k);
        if (!rep.consistent())
            return where + ": ordering rs_degree_lower <= lower_opt <= upper fails (" + std::to_string(rep.rs_degree_lower) + ", " +
                   std::to_string(rep.lower.value) + ", " + std::to_string(rep.best_upper()) + ")";
        if (prev_grid >= 0 && (rep.grid.value > prev_grid || rep.lower.value > prev_lower)) return where + ": bound increased with k";
        prev_grid = rep.grid.value;
        prev_lower = rep.lower.value;
    }
    const auto at = [&](std::int64_t k) { return bound_report(profile, k).lower.value; };
    if (at(kmax) != delta * delta) return expect_msg("lower_opt at k=r^2", delta * delta, at(kmax));
    if (r >= 2 && at(kmax - 1) != delta * (delta + 1)) return expect_msg("lower_opt at k=r^2-1", delta * (delta + 1), at(kmax - 1));
    if (r >= 3 && at(kmax - 2) != delta * (delta + 2)) return expect_msg("lower_opt at k=r^2-2", delta * (delta + 2), at(kmax - 2));
    return std::nullopt;
}

CheckResult double_roots(int q_log, int words, std::uint64_t seed) {
    auto pair = std::make_shared<const LinearizedPair>(instantiate_standard(q_log));
    const int n = pair->n();
    for (int r = 2; r <= n; ++r) {
        const auto code = build_code(pair, r, r * r);
        for (int w = 0; w < words; ++w) {
            SplitMix64 rng = SplitMix64::stream(seed + static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(w));
            std::vector<int> rows(static_cast<std::size_t>(1 + rng.below(static_cast<std::uint64_t>(r - 1))));
            std::vector<int> cols(static_cast<std::size_t>(1 + rng.below(static_cast<std::uint64_t>(r - 1))));
            std::vector<int> perm(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
            for (int i = n - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
            std::copy_n(perm.begin(), rows.size(), rows.begin());
            for (int i = n - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
            std::copy_n(perm.begin(), cols.size(), cols.begin());
            const auto msg = message_with_zero_lines(code, rows, cols, rng);
            if (!double_root_check(code, msg))
                return "h or h' nonzero at a crossing point for q_log=" + std::to_string(q_log) + " r=" + std::to_string(r);
        }
    }
    return std::nullopt;
}

CheckResult peel_consistency(int q_log, int r, int masks, std::uint64_t seed) {
    auto pair = std::make_shared<const LinearizedPair>(instantiate_standard(q_log));
    const int n = pair->n();
    for (int k = 1; k <= r * r; ++k) {
        const auto code = build_code(pair, r, k);
        for (int m = 0; m < masks; ++m) {
            SplitMix64 rng = SplitMix64::stream(seed + static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(m));
            std::vector<Elem> msg(static_cast<std::size_t>(k));
            for (auto& v : msg) v = static_cast<Elem>(rng.below(code.field().order()));
            const RowVector word = encode(code, msg);
            const int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(n * n - k) + 1));
            const auto mask = draw_mask(RandomCells{t}, n, r, rng);
            const bool rank_ok = erasure_recoverable(code, mask);
            const auto res = peel_decode(code, word, mask);
            if (res.success != rank_ok)
                return "k=" + std::to_string(k) + " mask " + std::to_string(m) + ": " + expect_msg("decoder success", rank_ok, res.success);
            if (res.success && res.word != word) return "k=" + std::to_string(k) + ": decoder returned a different codeword";
        }
    }
    return std::nullopt;
}

CheckResult second_weight(int q_log, int r, std::uint64_t budget, unsigned threads) {
    auto pair = std::make_shared<const LinearizedPair>(instantiate_standard(q_log));
    const auto code = build_code(pair, r, r * r);
    const auto res = exhaustive_distance(code, budget, threads);
    const std::int64_t delta = pair->n() - r + 1;
    if (res.distance != delta * delta) return expect_msg("minimum distance", delta * delta, res.distance);
    if (res.spectrum.second_nonzero() != secondweight(pair->n(), delta))
        return expect_msg("next-to-minimum weight", secondweight(pair->n(), delta), res.spectrum.second_nonzero());
    return std::nullopt;
}

}  // namespace

std::vector<Check> verify_checks(const VerifyOptions& o) {
    std::vector<Check> checks;
    const Field gf16 = o.injected_poly ? Field::unchecked(gf2_degree(*o.injected_poly), *o.injected_poly) : Field(4);
    checks.push_back({"field axioms GF(4)", [] { return field_axioms(Field(2)); }});
    checks.push_back({"field axioms GF(2^" + std::to_string(gf16.degree()) + ") mod 0x" + to_hex(gf16.reduction_poly()),
                      [gf16] { return field_axioms(gf16); }});
    const std::vector<int> q_logs = o.full ? std::vector<int>{1, 2, 3} : std::vector<int>{1, 2};
    for (int e : q_logs) {
        const std::string q = "q=" + std::to_string(1 << e);
        checks.push_back({"pair invariants " + q, [e] { return pair_invariants(e); }});
        checks.push_back({"degree set equals REF oracle " + q, [e] { return degree_theorem(e); }});
        checks.push_back({"composition diagram " + q, [e, o] { return diagram(e, o.full ? 100 : 10, o.seed); }});
    }
    for (auto [n, r] : std::vector<std::pair<int, int>>{{32, 8}, {32, 16}, {32, 25}, {128, 64}})
        checks.push_back({"bound ordering (" + std::to_string(n) + "," + std::to_string(r) + ")", [n, r] { return bound_sweep(n, r); }});
    checks.push_back({"lower_opt(128,64,4032) = 4940", []() -> CheckResult {
                          const auto v = lower_opt(128, 64, degree_profile(128, 64).partial(4032)).value;
                          return v == 4940 ? CheckResult{} : expect_msg("lower_opt", 4940, v);
                      }});
    checks.push_back({"distances q=2", [o]() -> CheckResult {
                          for (int r = 1; r <= 2; ++r)
                              if (auto f = distances(1, r, 1, r * r, kDefaultBudget, o.threads)) return f;
                          return std::nullopt;
                      }});
    checks.push_back({"distances q=4 r=2", [o] { return distances(2, 2, 1, 4, kDefaultBudget, o.threads); }});
    checks.push_back({"distances q=4 r=3 k<=6", [o] { return distances(2, 3, 1, 6, kDefaultBudget, o.threads); }});
    checks.push_back({"double roots q=4", [o] { return double_roots(2, o.full ? 1000 : 100, o.seed); }});
    checks.push_back({"peeling agrees with rank q=4 r=2", [o] { return peel_consistency(2, 2, o.full ? 250 : 50, o.seed); }});
    checks.push_back({"peeling agrees with rank q=4 r=3", [o] { return peel_consistency(2, 3, o.full ? 120 : 25, o.seed); }});
    checks.push_back({"next-to-minimum weight q=4 r=2", [o] { return second_weight(2, 2, kDefaultBudget, o.threads); }});
    if (o.full) {
        checks.push_back({"distances q=4 r=3 k=7,8", [o] { return distances(2, 3, 7, 8, kLargeBudget, o.threads); }});
        checks.push_back({"distances q=8 r=2", [o] { return distances(3, 2, 1, 4, kDefaultBudget, o.threads); }});
        checks.push_back({"double roots q=8", [o] { return double_roots(3, 1000, o.seed); }});
        checks.push_back({"next-to-minimum weight q=4 r=3", [o] { return second_weight(2, 3, std::uint64_t{1} << 36, o.threads); }});
    }
    return checks;
}

}  // namespace prodcode::cli
