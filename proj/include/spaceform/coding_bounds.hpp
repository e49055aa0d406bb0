#pragma once

// The binary Griesmer bound, the involution-existence inequality built on
// it, and the logarithmic / square-root rank thresholds that feed it.
// Every decision is made in exact integer arithmetic.

#include <cstdint>
#include <string>
#include <vector>

namespace spaceform::coding_bounds {

struct GriesmerQuery {
    std::int64_t n;  // manifold dimension
    std::int64_t s;  // rank of the 2-torus
    std::int64_t c;  // codimension shift
    std::int64_t j;  // number of involutions sought

    /// n >= 1, s >= j >= 1, c >= 1. Throws std::invalid_argument.
    void validate() const;
};

struct GriesmerEvaluation {
    std::int64_t lhs;  // floor(n/2) - (j-1)
    std::int64_t rhs;  // sum_{i=0}^{s-j} ceil(ceil((n-c+1)/2) / 2^(i+1))
    bool holds;        // lhs < rhs
    bool even_n;       // the inequality is only ever applied to odd n
};

GriesmerEvaluation evaluate_griesmer(const GriesmerQuery& q);
inline bool griesmer_inequality(const GriesmerQuery& q) { return evaluate_griesmer(q).holds; }

/// s + 2 > log2(n+1) + B - log2(B+1) with B = floor(log2(n-1)) - 2, decided as
/// 2^(s+2) (B+1) > (n+1) 2^B. Requires n >= 5 and s >= 0.
bool log_threshold_inequality(std::int64_t n, std::int64_t s);

/// s >= log_(num/den)(x), i.e. num^s >= x den^s. Requires num > den >= 1, x >= 1.
bool exact_log_ge(std::int64_t base_num, std::int64_t base_den, std::int64_t s, std::int64_t x);

/// s >= sqrt(x) - 2, i.e. s + 2 >= 0 and (s+2)^2 >= x.
bool sqrt_ge(std::int64_t s, std::int64_t x);

/// Least s >= 0 with s >= log_(4/3)(n+3) - 8.
std::int64_t minimal_rank_log(std::int64_t n);
/// Least s >= 0 with s >= sqrt(n) - 2.
std::int64_t minimal_rank_sqrt(std::int64_t n);

/// floor(log2(n-1)) - 2, which equals floor(log2(n/4)) for odd n.
std::int64_t involution_count(std::int64_t n);

enum class RankVariant { Log, Sqrt };

std::string to_string(RankVariant v);

struct SweepRow {
    std::int64_t n;
    std::int64_t s_min;
    std::int64_t j;
    std::int64_t lhs;
    std::int64_t rhs;
    bool griesmer;
    bool log_threshold;
    bool pass;  // log variant: log_threshold; sqrt variant: griesmer
};

/// Every odd n in [n_lo, n_hi] (only n = 1 mod 4 when requested), at the
/// minimal rank of the variant, with c = 1 and j = involution_count(n).
/// Throws std::invalid_argument on an empty range or n_lo < 5.
std::vector<SweepRow> cor_ak_sweep(std::int64_t n_lo, std::int64_t n_hi, RankVariant variant,
                                   bool only_one_mod_four = false);

/// sum_{i<k} ceil(d / 2^i): the least length of a binary [*, k, d] code.
std::int64_t griesmer_bound(std::int64_t k, std::int64_t d);

/// Largest d with griesmer_bound(k, d) <= length.
std::int64_t griesmer_max_distance(std::int64_t length, std::int64_t k);

/// Minimum nonzero codeword weight of the code spanned by `rows`, each a
/// bitmask of `length` bits. Rank-deficient generators give 0.
std::int64_t min_distance(const std::vector<std::uint32_t>& rows, int length);

struct CodeSearchResult {
    int length;
    int dimension;
    int best_distance;
    /// Columns of an optimal generator matrix, each a bitmask of `dimension` bits.
    std::vector<std::uint32_t> columns;
};

inline constexpr int kMaxOracleLength = 14;
inline constexpr int kMaxOracleDimension = 4;

/// Exhaustive search over systematic generators [I | A] (every full-rank
/// code is equivalent to one) with branch and bound. Throws
/// std::invalid_argument beyond length 14 or dimension 4.
CodeSearchResult brute_force_code_oracle(int length, int dimension);

}  // namespace spaceform::coding_bounds
