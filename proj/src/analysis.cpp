#include "prodcode/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <numeric>
#include <string>
#include <thread>

namespace prodcode {

namespace {

unsigned resolve_threads(unsigned threads) {
    if (threads == 0) threads = std::thread::hardware_concurrency();
    return std::max(1u, threads);
}

/// Runs body(index) for index in [0, count) on a small worker pool.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
    threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(count, 1)));
    std::atomic<std::size_t> next{0};
    auto worker = [&](unsigned id) {
        for (std::size_t i = next++; i < count; i = next++) body(i, id);
    };
    if (threads == 1) {
        worker(0);
        return;
    }
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
}

// Bit-sliced codeword layout: plane b holds bit b of every symbol.
struct Slicing {
    int length;           // symbols per word
    int bits;             // M
    int words_per_plane;  // ceil(length / 64)

    int words() const { return bits * words_per_plane; }

    std::vector<std::uint64_t> pack(const RowVector& word) const {
        std::vector<std::uint64_t> out(static_cast<std::size_t>(words()), 0);
        for (int j = 0; j < length; ++j) {
            for (int b = 0; b < bits; ++b) {
                if ((word(j) >> b) & 1u) {
                    const int bit = j;
                    out[static_cast<std::size_t>(b * words_per_plane + bit / 64)] |= std::uint64_t{1} << (bit % 64);
                }
            }
        }
        return out;
    }
};

struct WorkItem {
    int lead;                 // message symbol fixed to 1
    int low_bits;             // Gray-walked bits below the fixed prefix
    std::uint64_t prefix;     // plain value of the fixed top free bits
};

/// Single-word kernel: all planes packed into one uint64 at offsets b * N.
template <int Bits>
void walk_single(const std::vector<std::uint64_t>& vecs, int lead, int low_bits, std::uint64_t prefix, int length,
                 std::vector<std::uint64_t>& hist) {
    const std::uint64_t low_mask = length == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << length) - 1;
    auto weight = [&](std::uint64_t w) {
        std::uint64_t t = w;
        for (int b = 1; b < Bits; ++b) t |= w >> (b * length);
        return std::popcount(t & low_mask);
    };
    std::uint64_t w = vecs[static_cast<std::size_t>(lead) * Bits];
    const std::size_t base = static_cast<std::size_t>(low_bits);
    for (std::uint64_t p = prefix, bit = 0; p; p >>= 1, ++bit)
        if (p & 1) w ^= vecs[base + bit];
    ++hist[weight(w)];
    const std::uint64_t steps = std::uint64_t{1} << low_bits;
    for (std::uint64_t s = 1; s < steps; ++s) {
        w ^= vecs[std::countr_zero(s)];
        ++hist[weight(w)];
    }
}

void walk_single_dispatch(int bits, const std::vector<std::uint64_t>& vecs, const WorkItem& item, int length,
                          std::vector<std::uint64_t>& hist) {
    switch (bits) {
#define PRODCODE_CASE(B) \
    case B: return walk_single<B>(vecs, item.lead, item.low_bits, item.prefix, length, hist);
        PRODCODE_CASE(1) PRODCODE_CASE(2) PRODCODE_CASE(3) PRODCODE_CASE(4) PRODCODE_CASE(5)
        PRODCODE_CASE(6) PRODCODE_CASE(7) PRODCODE_CASE(8)
#undef PRODCODE_CASE
        default: break;
    }
    throw std::logic_error("single-word walk needs at most 8 bits per symbol");
}

void walk_multi(const Slicing& sl, const std::vector<std::vector<std::uint64_t>>& vecs, const WorkItem& item,
                std::vector<std::uint64_t>& hist) {
    const int W = sl.words();
    std::vector<std::uint64_t> w = vecs[static_cast<std::size_t>(item.lead) * sl.bits];
    auto xor_in = [&](const std::vector<std::uint64_t>& v) {
        for (int i = 0; i < W; ++i) w[i] ^= v[i];
    };
    auto weight = [&]() {
        int total = 0;
        for (int p = 0; p < sl.words_per_plane; ++p) {
            std::uint64_t t = 0;
            for (int b = 0; b < sl.bits; ++b) t |= w[static_cast<std::size_t>(b * sl.words_per_plane + p)];
            total += std::popcount(t);
        }
        return total;
    };
    for (std::uint64_t p = item.prefix, bit = 0; p; p >>= 1, ++bit)
        if (p & 1) xor_in(vecs[static_cast<std::size_t>(item.low_bits) + bit]);
    ++hist[weight()];
    const std::uint64_t steps = std::uint64_t{1} << item.low_bits;
    for (std::uint64_t s = 1; s < steps; ++s) {
        xor_in(vecs[std::countr_zero(s)]);
        ++hist[weight()];
    }
}

}  // namespace

int rank(const Field& F, Matrix A) {
    int rk = 0;
    const Eigen::Index rows = A.rows();
    const Eigen::Index cols = A.cols();
    for (Eigen::Index c = 0; c < cols && rk < rows; ++c) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = rk; i < rows; ++i) {
            if (A(i, c) != 0) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        A.row(piv).swap(A.row(rk));
        const Elem inv = F.inv(A(rk, c));
        for (Eigen::Index j = c; j < cols; ++j) A(rk, j) = F.mul(A(rk, j), inv);
        for (Eigen::Index i = rk + 1; i < rows; ++i) {
            const Elem factor = A(i, c);
            if (factor == 0) continue;
            for (Eigen::Index j = c; j < cols; ++j) A(i, j) ^= F.mul(factor, A(rk, j));
        }
        ++rk;
    }
    return rk;
}

std::uint64_t WeightSpectrum::total() const {
    std::uint64_t t = 0;
    for (const auto& [w, c] : counts) t += c;
    return t;
}

int WeightSpectrum::min_nonzero() const {
    for (const auto& [w, c] : counts)
        if (w > 0 && c > 0) return w;
    return -1;
}

int WeightSpectrum::second_nonzero() const {
    bool seen = false;
    for (const auto& [w, c] : counts) {
        if (w == 0 || c == 0) continue;
        if (seen) return w;
        seen = true;
    }
    return -1;
}

DistanceResult exhaustive_distance(const CodeInstance& code, std::uint64_t budget, unsigned threads) {
    const int M = code.field().degree();
    const int k = code.k;
    const int N = code.length();
    const int message_bits = M * k;
    if (message_bits >= 64 || (std::uint64_t{1} << message_bits) > budget)
        throw BudgetExceeded("exhaustive enumeration of |F|^k = 2^" + std::to_string(message_bits) +
                             " messages exceeds the budget of " + std::to_string(budget));

    const Field& F = code.field();
    const Slicing sl{N, M, (N + 63) / 64};
    // Message bit (i, b) contributes alpha^b * row i.
    std::vector<std::vector<std::uint64_t>> vecs;
    for (int i = 0; i < k; ++i) {
        for (int b = 0; b < M; ++b) {
            const Elem s = Elem{1} << b;
            RowVector row = code.G.row(i).unaryExpr([&F, s](Elem g) { return F.mul(s, g); });
            vecs.push_back(sl.pack(row));
        }
    }

    std::vector<WorkItem> items;
    for (int lead = 0; lead < k; ++lead) {
        const int free_bits = lead * M;
        const int fixed = free_bits > 20 ? std::min(free_bits - 16, 10) : 0;
        for (std::uint64_t p = 0; p < (std::uint64_t{1} << fixed); ++p) items.push_back({lead, free_bits - fixed, p});
    }

    const bool single = M * N <= 64 && M <= 8;
    std::vector<std::uint64_t> flat;
    if (single) {
        for (const auto& v : vecs) {
            std::uint64_t packed = 0;
            for (int b = 0; b < M; ++b) packed |= v[static_cast<std::size_t>(b)] << (b * N);
            flat.push_back(packed);
        }
    }

    const unsigned workers = resolve_threads(threads);
    std::vector<std::vector<std::uint64_t>> hists(workers, std::vector<std::uint64_t>(N + 1, 0));
    parallel_for(items.size(), workers, [&](std::size_t idx, unsigned id) {
        if (single) walk_single_dispatch(M, flat, items[idx], N, hists[id]);
        else walk_multi(sl, vecs, items[idx], hists[id]);
    });

    std::vector<std::uint64_t> hist(N + 1, 0);
    for (const auto& h : hists)
        for (int w = 0; w <= N; ++w) hist[w] += h[w];

    DistanceResult res{-1, {}};
    res.spectrum.exact = true;
    const std::uint64_t multiples = F.order() - 1;
    res.spectrum.counts[0] = 1 + hist[0] * multiples;
    for (int w = 1; w <= N; ++w)
        if (hist[w]) res.spectrum.counts[w] = hist[w] * multiples;
    res.distance = res.spectrum.min_nonzero();
    return res;
}

int sampled_distance(const CodeInstance& code, std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("sampled_distance: trials must be positive");
    SplitMix64 rng(seed);
    const std::uint64_t q = code.field().order();
    int best = code.length() + 1;
    std::vector<Elem> msg(code.k);
    for (std::uint64_t t = 0; t < trials; ++t) {
        bool nonzero = false;
        while (!nonzero) {
            for (auto& m : msg) {
                m = static_cast<Elem>(rng.below(q));
                nonzero |= m != 0;
            }
        }
        const RowVector w = encode(code, msg);
        best = std::min(best, static_cast<int>((w.array() != 0).count()));
    }
    return best;
}

std::size_t ErasureMask::count() const {
    return static_cast<std::size_t>(std::count(erased.begin(), erased.end(), std::uint8_t{1}));
}

bool erasure_recoverable(const CodeInstance& code, const ErasureMask& mask) {
    if (mask.n != code.n()) throw std::invalid_argument("erasure mask size does not match the code");
    std::vector<Eigen::Index> keep;
    for (std::size_t j = 0; j < mask.erased.size(); ++j)
        if (!mask.erased[j]) keep.push_back(static_cast<Eigen::Index>(j));
    if (static_cast<int>(keep.size()) < code.k) return false;
    Matrix sub(code.k, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) sub.col(static_cast<Eigen::Index>(c)) = code.G.col(keep[c]);
    return rank(code.field(), std::move(sub)) == code.k;
}

PeelResult peel_decode(const CodeInstance& code, const RowVector& received, const ErasureMask& mask) {
    const int n = code.n();
    const int r = code.r;
    if (mask.n != n || received.size() != code.length())
        throw std::invalid_argument("peel_decode: word or mask size does not match the code");
    const LinearizedPair& pair = *code.pair;
    const Field& F = code.field();
    const LocalCode row_code(pair.f.ctx, pair.Zg, r);
    const LocalCode col_code(pair.f.ctx, pair.Zf, r);

    PeelResult res;
    res.word = received;
    res.residual = mask;
    for (std::size_t j = 0; j < mask.erased.size(); ++j)
        if (mask.erased[j]) res.word(static_cast<Eigen::Index>(j)) = 0;

    // Fills line `line` (a row if by_row) when it has at least r known cells.
    std::vector<Elem> vals(n);
    std::vector<int> known, missing;
    auto repair_line = [&](int line, bool by_row) {
        known.clear();
        missing.clear();
        for (int p = 0; p < n; ++p) {
            const int i = by_row ? line : p;
            const int j = by_row ? p : line;
            vals[p] = res.word(static_cast<Eigen::Index>(i) * n + j);
            (res.residual.at(i, j) ? missing : known).push_back(p);
        }
        if (missing.empty() || static_cast<int>(known.size()) < r) return false;
        const LocalCode& lc = by_row ? row_code : col_code;
        for (std::size_t extra = r; extra < known.size(); ++extra) {
            if (lc.interpolate_at(known, vals, known[extra]) != vals[known[extra]])
                throw InconsistentWord(std::string("known symbols of grid ") + (by_row ? "row " : "column ") +
                                       std::to_string(line) + " do not lie in the local code");
        }
        for (int p : missing) {
            const int i = by_row ? line : p;
            const int j = by_row ? p : line;
            res.word(static_cast<Eigen::Index>(i) * n + j) = lc.interpolate_at(known, vals, p);
            res.residual.set(i, j, false);
            ++res.peeled;
        }
        return true;
    };

    for (bool changed = true; changed;) {
        changed = false;
        for (int i = 0; i < n; ++i) changed |= repair_line(i, true);
        for (int j = 0; j < n; ++j) changed |= repair_line(j, false);
    }
    // Global solve: msg * G = word on the known coordinates. It also runs
    // when peeling finished, as the check that the word lies in C_k.
    res.used_global = res.residual.count() > 0;
    const int k = code.k;
    std::vector<Eigen::Index> known_cols;
    for (std::size_t j = 0; j < res.residual.erased.size(); ++j)
        if (!res.residual.erased[j]) known_cols.push_back(static_cast<Eigen::Index>(j));
    const Eigen::Index rows = static_cast<Eigen::Index>(known_cols.size());
    Matrix E(rows, k + 1);
    for (Eigen::Index e = 0; e < rows; ++e) {
        for (int i = 0; i < k; ++i) E(e, i) = code.G(i, known_cols[e]);
        E(e, k) = res.word(known_cols[e]);
    }
    std::vector<Eigen::Index> pivot_row(k, -1);
    Eigen::Index rk = 0;
    for (int c = 0; c < k && rk < rows; ++c) {
        Eigen::Index piv = -1;
        for (Eigen::Index e = rk; e < rows; ++e)
            if (E(e, c) != 0) {
                piv = e;
                break;
            }
        if (piv < 0) continue;
        E.row(piv).swap(E.row(rk));
        const Elem inv = F.inv(E(rk, c));
        for (int j = c; j <= k; ++j) E(rk, j) = F.mul(E(rk, j), inv);
        for (Eigen::Index e = 0; e < rows; ++e) {
            if (e == rk || E(e, c) == 0) continue;
            const Elem factor = E(e, c);
            for (int j = c; j <= k; ++j) E(e, j) ^= F.mul(factor, E(rk, j));
        }
        pivot_row[c] = rk++;
    }
    for (Eigen::Index e = rk; e < rows; ++e)
        if (E(e, k) != 0) throw InconsistentWord("known symbols are not consistent with any codeword of C_k");
    if (rk < k) return res;
    if (!res.used_global) {
        res.success = true;
        return res;
    }

    std::vector<Elem> msg(k);
    for (int c = 0; c < k; ++c) msg[c] = E(pivot_row[c], k);
    res.word = encode(code, msg);
    res.residual = ErasureMask(n);
    res.success = true;
    return res;
}

bool double_root_check(const CodeInstance& code, std::span<const Elem> msg) {
    if (std::all_of(msg.begin(), msg.end(), [](Elem m) { return m == 0; }))
        throw std::invalid_argument("double_root_check needs a nonzero message");
    const Field& F = code.field();
    const LinearizedPair& pair = *code.pair;
    const int n = code.n();
    const Poly h = message_polynomial(code, msg);
    const Poly dh = derivative(h);
    const GridWord grid = relabel(pair, encode(code, msg));

    std::vector<int> zero_rows, zero_cols;
    for (int i = 0; i < n; ++i)
        if ((grid.row(i).array() == 0).all()) zero_rows.push_back(i);
    for (int j = 0; j < n; ++j)
        if ((grid.col(j).array() == 0).all()) zero_cols.push_back(j);

    for (int i : zero_rows) {
        for (int j : zero_cols) {
            const Elem alpha = pair.Zf[i] ^ pair.Zg[j];
            if (eval(F, h, alpha) != 0 || eval(F, dh, alpha) != 0) return false;
            if (h.degree() <= 1024) {
                const auto [q1, rem1] = divide_linear(F, h, alpha);
                const auto [q2, rem2] = divide_linear(F, q1, alpha);
                if (rem1 != 0 || rem2 != 0) return false;
            }
        }
    }
    return true;
}

std::vector<Elem> message_with_zero_lines(const CodeInstance& code, std::span<const int> rows,
                                          std::span<const int> cols, SplitMix64& rng) {
    const int r = code.r;
    if (code.k != r * r) throw std::invalid_argument("message_with_zero_lines needs the full product code");
    if (static_cast<int>(rows.size()) > r - 1 || static_cast<int>(cols.size()) > r - 1)
        throw std::invalid_argument("at most r - 1 zero rows and columns fit the degree box");
    const Field& F = code.field();
    const LinearizedPair& pair = *code.pair;
    const Eigen::Index rx = r - static_cast<Eigen::Index>(rows.size());
    const Eigen::Index ry = r - static_cast<Eigen::Index>(cols.size());
    BiPoly s(rx, ry);
    bool nonzero = false;
    while (!nonzero) {
        for (Eigen::Index i = 0; i < rx; ++i)
            for (Eigen::Index j = 0; j < ry; ++j) {
                s(i, j) = static_cast<Elem>(rng.below(F.order()));
                nonzero |= s(i, j) != 0;
            }
    }
    // Multiply by (x + beta) and (y + gamma) one factor at a time.
    for (int i : rows) {
        BiPoly t = BiPoly::Zero(s.rows() + 1, s.cols());
        t.bottomRows(s.rows()) = s;
        const Elem beta = pair.Zf.at(static_cast<std::size_t>(i));
        t.topRows(s.rows()) = t.topRows(s.rows()).binaryExpr(s, [&F, beta](Elem a, Elem v) { return a ^ F.mul(beta, v); });
        s = std::move(t);
    }
    for (int j : cols) {
        BiPoly t = BiPoly::Zero(s.rows(), s.cols() + 1);
        t.rightCols(s.cols()) = s;
        const Elem gamma = pair.Zg.at(static_cast<std::size_t>(j));
        t.leftCols(s.cols()) = t.leftCols(s.cols()).binaryExpr(s, [&F, gamma](Elem a, Elem v) { return a ^ F.mul(gamma, v); });
        s = std::move(t);
    }
    const Poly h = compose(F, s, pair.g_poly, pair.f_poly);
    auto msg = message_for(code, h);
    if (!msg) throw std::logic_error("composed polynomial fell outside the span of the basis");
    return *msg;
}

ErasureMask grid_bound_pattern(int n, int r, int a, int b, bool with_gray) {
    if (r < 1 || r > n || a < 0 || b < 0 || a > r || b > r)
        throw std::invalid_argument("grid pattern needs 0 <= a, b <= r <= n");
    ErasureMask m(n);
    auto black_row = [&](int i) { return i < b || i >= r; };
    auto black_col = [&](int j) { return j < a || j >= r; };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            bool e = black_row(i) && black_col(j);
            if (with_gray) e = e || (i >= r && j >= a && j < r) || (i >= b && i < r && j >= r);
            m.set(i, j, e);
        }
    }
    return m;
}

ErasureMask strip_bound_pattern(int n, int r, int a, int b, bool with_gray) {
    if (r < 1 || r > n || a < 0 || b < 0 || a > n - 1 || b > n - 1)
        throw std::invalid_argument("strip pattern needs 0 <= a, b <= n - 1");
    const int delta = n - r + 1;
    ErasureMask m(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            bool e = (i < a && j < n - 1) || (i == a && j < b);
            if (with_gray) e = e || (i > a && j < delta - 1) || (j == n - 1 && i >= n - (delta - 1));
            m.set(i, j, e);
        }
    }
    return m;
}

std::pair<int, int> strip_bound_parameters(int n, int r, int k) {
    if (r < 2 || k < r + 1 || k > r * r) throw std::invalid_argument("strip pattern parameters need 2 <= r < k <= r^2");
    const int a = n - (k - 2) / (r - 1);
    const int b = n * r - k + 1 - a * (r - 1);
    return {a, b};
}

ErasureMask permute(const ErasureMask& mask, std::span<const int> row_perm, std::span<const int> col_perm) {
    ErasureMask out(mask.n);
    for (int i = 0; i < mask.n; ++i)
        for (int j = 0; j < mask.n; ++j) out.set(row_perm[i], col_perm[j], mask.at(i, j));
    return out;
}

namespace {

std::vector<int> random_permutation(int n, SplitMix64& rng) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(p[i], p[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    return p;
}

}  // namespace

ErasureMask draw_mask(const MaskModel& model, int n, int r, SplitMix64& rng) {
    struct Visitor {
        int n;
        int r;
        SplitMix64& rng;

        ErasureMask operator()(const UniformErasures& m) const {
            if (!(m.p >= 0.0 && m.p <= 1.0)) throw std::invalid_argument("uniform erasure probability outside [0, 1]");
            ErasureMask mask(n);
            for (auto& e : mask.erased) e = rng.unit() < m.p ? 1 : 0;
            return mask;
        }
        ErasureMask operator()(const RandomCells& m) const {
            const int cells = n * n;
            if (m.t < 0 || m.t > cells) throw std::invalid_argument("erasure count outside [0, n^2]");
            std::vector<int> idx(cells);
            std::iota(idx.begin(), idx.end(), 0);
            ErasureMask mask(n);
            for (int i = 0; i < m.t; ++i) {
                const int pick = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(cells - i)));
                std::swap(idx[i], idx[pick]);
                mask.erased[idx[i]] = 1;
            }
            return mask;
        }
        ErasureMask operator()(const GridPattern& m) const {
            const ErasureMask base = grid_bound_pattern(n, r, m.a, m.b, true);
            const auto rows = random_permutation(n, rng);
            const auto cols = random_permutation(n, rng);
            return permute(base, rows, cols);
        }
        ErasureMask operator()(const StripPattern& m) const {
            const ErasureMask base = strip_bound_pattern(n, r, m.a, m.b, true);
            const auto rows = random_permutation(n, rng);
            const auto cols = random_permutation(n, rng);
            return permute(base, rows, cols);
        }
    };
    return std::visit(Visitor{n, r, rng}, model);
}

SimStats simulate_erasures(const CodeInstance& code, const MaskModel& model, std::uint64_t trials,
                           std::uint64_t seed, unsigned threads) {
    // Validate the model once up front so errors surface before any work.
    {
        SplitMix64 probe(seed);
        (void)draw_mask(model, code.n(), code.r, probe);
    }
    std::vector<std::uint8_t> ok(trials, 0);
    std::vector<std::uint32_t> sizes(trials, 0);
    parallel_for(trials, threads, [&](std::size_t t, unsigned) {
        SplitMix64 rng = SplitMix64::stream(seed, t);
        const ErasureMask mask = draw_mask(model, code.n(), code.r, rng);
        sizes[t] = static_cast<std::uint32_t>(mask.count());
        ok[t] = erasure_recoverable(code, mask) ? 1 : 0;
    });
    SimStats stats;
    stats.trials = trials;
    for (std::uint64_t t = 0; t < trials; ++t) {
        stats.recoverable += ok[t];
        stats.total_erasures += sizes[t];
    }
    return stats;
}

}  // namespace prodcode
