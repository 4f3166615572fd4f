#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "prodcode/codec.hpp"
#include "prodcode/random.hpp"

namespace prodcode {

/// Rank of a matrix over F (Gaussian elimination on a copy).
int rank(const Field& F, Matrix A);

// ---------------------------------------------------------------------------
// Minimum distance and weight spectrum

struct WeightSpectrum {
    std::map<int, std::uint64_t> counts;  // weight -> number of codewords
    bool exact = false;

    std::uint64_t total() const;
    /// Smallest nonzero weight with a nonzero count; -1 if none.
    int min_nonzero() const;
    /// Second-smallest nonzero weight present; -1 if none.
    int second_nonzero() const;
};

struct DistanceResult {
    int distance;
    WeightSpectrum spectrum;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 28;
inline constexpr std::uint64_t kLargeBudget = std::uint64_t{1} << 32;

/// Enumerates the whole code and returns its minimum distance and weight
/// spectrum. Throws BudgetExceeded when |F|^k > budget.
///
/// Messages are visited as (leading symbol = 1, lower symbols free) so every
/// visited word stands for |F| - 1 scalar multiples; the free part is walked
/// in binary reflected Gray order over its k*M bits, so consecutive words
/// differ by alpha^b times one generator row. Codewords are held bit-sliced
/// (one bit plane per field bit) so weight is a popcount of the OR of planes.
/// Work is split over `threads` workers by fixing the top message bits.
DistanceResult exhaustive_distance(const CodeInstance& code, std::uint64_t budget = kDefaultBudget,
                                   unsigned threads = 0);

/// Minimum weight over `trials` random nonzero messages: an upper estimate
/// of the true distance. Throws std::invalid_argument for trials == 0.
int sampled_distance(const CodeInstance& code, std::uint64_t trials, std::uint64_t seed = 1);

// ---------------------------------------------------------------------------
// Erasures

/// Erasure flags in eval_points order; (i, j) maps to i * n + j.
struct ErasureMask {
    int n = 0;
    std::vector<std::uint8_t> erased;

    ErasureMask() = default;
    explicit ErasureMask(int n_frak) : n(n_frak), erased(static_cast<std::size_t>(n_frak) * n_frak, 0) {}

    bool at(int i, int j) const { return erased[static_cast<std::size_t>(i) * n + j] != 0; }
    void set(int i, int j, bool v = true) { erased[static_cast<std::size_t>(i) * n + j] = v ? 1 : 0; }
    std::size_t count() const;
    bool operator==(const ErasureMask&) const = default;
};

/// True iff G restricted to the surviving coordinates has rank k.
bool erasure_recoverable(const CodeInstance& code, const ErasureMask& mask);

class InconsistentWord : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PeelResult {
    bool success = false;
    RowVector word;         // known and recovered symbols (erased ones left 0)
    ErasureMask residual;   // still-unknown coordinates
    std::size_t peeled = 0; // symbols filled by row/column interpolation
    bool used_global = false;
};

/// Row/column peeling to a fixpoint, then a global linear solve against G
/// (which also confirms a fully peeled word lies in C_k). used_global is
/// set when erasures survived peeling. Throws InconsistentWord when known
/// symbols contradict each other.
PeelResult peel_decode(const CodeInstance& code, const RowVector& received, const ErasureMask& mask);

/// For the word of `msg`, checks h(a) = h'(a) = 0 at every a = Zf[i] + Zg[j]
/// where grid row i and grid column j vanish. For deg h <= 1024 the double
/// root is also confirmed by two synthetic divisions.
bool double_root_check(const CodeInstance& code, std::span<const Elem> msg);

/// Random message of C_{r^2} (code.k must equal r^2) whose grid word
/// vanishes on the given rows and columns: s(x, y) = prod (x - Zf[i])
/// prod (y - Zg[j]) times a random factor filling the (r, r) box. At most
/// r - 1 rows and r - 1 columns.
std::vector<Elem> message_with_zero_lines(const CodeInstance& code, std::span<const int> rows,
                                          std::span<const int> cols, SplitMix64& rng);

/// Erasure pattern of the grid upper bound: rows [0,b) u [r,n) x columns
/// [0,a) u [r,n) ("black"), optionally with the locally recoverable
/// strips [r,n) x [a,r) and [b,r) x [r,n) ("gray").
ErasureMask grid_bound_pattern(int n, int r, int a, int b, bool with_gray);

/// Erasure pattern of the second grid bound: rows [0,a) x columns [0,n-1)
/// plus b cells of row a ("black"), optionally with rows (a,n) x columns
/// [0,delta-1) and the bottom delta-1 cells of column n-1 ("gray").
ErasureMask strip_bound_pattern(int n, int r, int a, int b, bool with_gray);

/// (a, b) for strip_bound_pattern meeting the size condition at dimension
/// k; requires r + 1 <= k.
std::pair<int, int> strip_bound_parameters(int n, int r, int k);

/// Same pattern with rows and columns relabeled by the permutations.
ErasureMask permute(const ErasureMask& mask, std::span<const int> row_perm, std::span<const int> col_perm);

// ---------------------------------------------------------------------------
// Monte-Carlo recoverability

struct UniformErasures { double p; };
struct RandomCells { int t; };
struct GridPattern { int a; int b; };
struct StripPattern { int a; int b; };
using MaskModel = std::variant<UniformErasures, RandomCells, GridPattern, StripPattern>;

struct SimStats {
    std::uint64_t trials = 0;
    std::uint64_t recoverable = 0;
    std::uint64_t total_erasures = 0;
    double rate() const { return trials ? static_cast<double>(recoverable) / static_cast<double>(trials) : 0.0; }
};

/// Trial t draws its mask from SplitMix64::stream(seed, t); pattern models
/// apply a random row and column permutation.
ErasureMask draw_mask(const MaskModel& model, int n, int r, SplitMix64& rng);

SimStats simulate_erasures(const CodeInstance& code, const MaskModel& model, std::uint64_t trials,
                           std::uint64_t seed, unsigned threads = 0);

}  // namespace prodcode
