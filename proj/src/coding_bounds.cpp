#include "spaceform/coding_bounds.hpp"

#include "spaceform/arith.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace spaceform::coding_bounds {

namespace {

std::int64_t ceil_div(std::int64_t x, std::int64_t y) { return (x + y - 1) / y; }

}  // namespace

void GriesmerQuery::validate() const
{
    if (n < 1 || c < 1 || j < 1 || s < j)
        throw std::invalid_argument("Griesmer query needs n >= 1, c >= 1 and s >= j >= 1; got n=" + std::to_string(n) +
                                    " s=" + std::to_string(s) + " c=" + std::to_string(c) + " j=" + std::to_string(j));
}

GriesmerEvaluation evaluate_griesmer(const GriesmerQuery& q)
{
    q.validate();
    const std::int64_t m = ceil_div(std::max<std::int64_t>(q.n - q.c + 1, 0), 2);
    std::int64_t rhs = 0;
    for (std::int64_t i = 0; i <= q.s - q.j; ++i) {
        if (i + 1 >= 62) {
            rhs += m > 0 ? 1 : 0;  // ceil(m / 2^(i+1)) = 1 for any 0 < m < 2^62
            continue;
        }
        rhs += ceil_div(m, std::int64_t{1} << (i + 1));
    }
    const std::int64_t lhs = q.n / 2 - (q.j - 1);
    return {lhs, rhs, lhs < rhs, q.n % 2 == 0};
}

bool log_threshold_inequality(std::int64_t n, std::int64_t s)
{
    if (n < 5 || s < 0)
        throw std::invalid_argument("log threshold needs n >= 5 and s >= 0");
    const int b = floor_log2(static_cast<std::uint64_t>(n - 1)) - 2;
    const BigInt lhs = pow(BigInt(2), static_cast<std::uint64_t>(s + 2)) * (b + 1);
    const BigInt rhs = BigInt(n + 1) * pow(BigInt(2), static_cast<std::uint64_t>(b));
    return lhs > rhs;
}

bool exact_log_ge(std::int64_t base_num, std::int64_t base_den, std::int64_t s, std::int64_t x)
{
    if (base_den < 1 || base_num <= base_den || x < 1)
        throw std::invalid_argument("exact_log_ge needs base > 1 and x >= 1");
    if (s >= 0)
        return pow(BigInt(base_num), static_cast<std::uint64_t>(s)) >=
               BigInt(x) * pow(BigInt(base_den), static_cast<std::uint64_t>(s));
    // base^s = (den/num)^|s| <= 1 <= x; equality only when x = 1 and s = 0.
    return false;
}

bool sqrt_ge(std::int64_t s, std::int64_t x)
{
    if (s + 2 < 0)
        return false;
    return static_cast<__int128>(s + 2) * (s + 2) >= x;
}

std::int64_t minimal_rank_log(std::int64_t n)
{
    std::int64_t s = 0;
    while (!exact_log_ge(4, 3, s + 8, n + 3))
        ++s;
    return s;
}

std::int64_t minimal_rank_sqrt(std::int64_t n)
{
    std::int64_t s = 0;
    while (!sqrt_ge(s, n))
        ++s;
    return s;
}

std::int64_t involution_count(std::int64_t n)
{
    if (n < 5)
        throw std::invalid_argument("involution_count needs n >= 5");
    return floor_log2(static_cast<std::uint64_t>(n - 1)) - 2;
}

std::string to_string(RankVariant v) { return v == RankVariant::Log ? "log" : "sqrt"; }

std::vector<SweepRow> cor_ak_sweep(std::int64_t n_lo, std::int64_t n_hi, RankVariant variant, bool only_one_mod_four)
{
    if (n_lo < 5)
        throw std::invalid_argument("sweep range must start at n >= 5");
    std::vector<SweepRow> rows;
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
        if (n % 2 == 0 || (only_one_mod_four && n % 4 != 1))
            continue;
        const std::int64_t s = variant == RankVariant::Log ? minimal_rank_log(n) : minimal_rank_sqrt(n);
        const std::int64_t j = involution_count(n);
        SweepRow row{n, s, j, 0, 0, false, false, false};
        if (s >= j && j >= 1) {
            const auto e = evaluate_griesmer({n, s, 1, j});
            row.lhs = e.lhs;
            row.rhs = e.rhs;
            row.griesmer = e.holds;
        }
        row.log_threshold = log_threshold_inequality(n, s);
        row.pass = variant == RankVariant::Log ? row.log_threshold : row.griesmer;
        rows.push_back(row);
    }
    if (rows.empty())
        throw std::invalid_argument("sweep range contains no admissible n");
    return rows;
}

std::int64_t griesmer_bound(std::int64_t k, std::int64_t d)
{
    if (k < 1 || d < 1)
        throw std::invalid_argument("griesmer_bound needs k >= 1 and d >= 1");
    std::int64_t total = 0;
    for (std::int64_t i = 0; i < k; ++i)
        total += i >= 62 ? 1 : ceil_div(d, std::int64_t{1} << i);
    return total;
}

std::int64_t griesmer_max_distance(std::int64_t length, std::int64_t k)
{
    std::int64_t d = 0;
    while (griesmer_bound(k, d + 1) <= length)
        ++d;
    return d;
}

std::int64_t min_distance(const std::vector<std::uint32_t>& rows, int length)
{
    if (rows.empty() || rows.size() > 20 || length < 1 || length > 32)
        throw std::invalid_argument("min_distance: unsupported generator size");
    const std::uint32_t mask = length == 32 ? ~0u : ((1u << length) - 1);
    std::int64_t best = length + 1;
    for (std::uint32_t msg = 1; msg < (1u << rows.size()); ++msg) {
        std::uint32_t word = 0;
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (msg >> r & 1)
                word ^= rows[r];
        best = std::min<std::int64_t>(best, std::popcount(word & mask));
    }
    return best;
}

namespace {

// Columns are added in nondecreasing order, so each multiset is visited once.
// weight[m] is the weight of the codeword for message m so far.
struct Search {
    int k;
    int remaining;
    int best = 0;
    std::vector<int> weight;
    std::vector<std::uint32_t> chosen, best_cols;

    void run(std::uint32_t min_col)
    {
        const int messages = 1 << k;
        int bound = 1 << 30;
        for (int m = 1; m < messages; ++m)
            bound = std::min(bound, weight[m] + remaining);
        if (bound <= best)
            return;
        if (remaining == 0) {
            best = bound;
            best_cols = chosen;
            return;
        }
        for (std::uint32_t col = min_col; col < static_cast<std::uint32_t>(messages); ++col) {
            for (int m = 1; m < messages; ++m)
                weight[m] += std::popcount(static_cast<std::uint32_t>(m) & col) & 1;
            chosen.push_back(col);
            --remaining;
            run(col);
            ++remaining;
            chosen.pop_back();
            for (int m = 1; m < messages; ++m)
                weight[m] -= std::popcount(static_cast<std::uint32_t>(m) & col) & 1;
        }
    }
};

}  // namespace

CodeSearchResult brute_force_code_oracle(int length, int dimension)
{
    if (dimension < 1 || length < dimension || length > kMaxOracleLength || dimension > kMaxOracleDimension)
        throw std::invalid_argument("code oracle is limited to 1 <= dimension <= length, length <= " +
                                    std::to_string(kMaxOracleLength) + ", dimension <= " +
                                    std::to_string(kMaxOracleDimension));
    // Zero columns never raise a weight, so only nonzero columns are tried.
    Search search{dimension, length - dimension, 0, std::vector<int>(1u << dimension, 0), {}, {}};
    for (int u = 0; u < dimension; ++u) {
        const std::uint32_t e = 1u << u;
        search.chosen.push_back(e);
        for (int m = 1; m < (1 << dimension); ++m)
            search.weight[m] += (m >> u) & 1;
    }
    search.run(1);
    return {length, dimension, search.best, search.best_cols};
}

}  // namespace spaceform::coding_bounds
