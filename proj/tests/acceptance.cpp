// One PASS/FAIL line per acceptance criterion, with wall time against its
// budget. Exit status is nonzero if any criterion fails or overruns.

#include "spaceform/arith.hpp"
#include "spaceform/coding_bounds.hpp"
#include "spaceform/groups.hpp"
#include "spaceform/linear_actions.hpp"
#include "spaceform/obstruction.hpp"
#include "spaceform/steenrod.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace spaceform;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int number, const char* title, double budget_s, const std::function<Outcome()>& body)
{
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = elapsed < budget_s;
    const bool pass = o.pass && in_budget;
    failures += !pass;
    std::printf("%s criterion %d: %s (%.2f s, budget %.0f s)%s%s\n", pass ? "PASS" : "FAIL", number, title, elapsed,
                budget_s, o.detail.empty() ? "" : "; ", o.detail.c_str());
    if (!in_budget)
        std::printf("     over budget\n");
    std::fflush(stdout);
}

// C(n, k) mod p through exact factorials.
int exact_binomial_mod(std::int64_t n, std::int64_t k, int p)
{
    if (k < 0 || k > n)
        return 0;
    BigInt num = 1, den = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return static_cast<int>(static_cast<BigInt>(num / den) % p);
}

// Least length of a binary [*, k, d] code, written out directly.
std::int64_t griesmer_length(std::int64_t k, std::int64_t d)
{
    std::int64_t total = 0;
    for (std::int64_t i = 0; i < k; ++i)
        total += (d + (std::int64_t{1} << i) - 1) >> i;
    return total;
}

bool numeric_eigenvalue_one(const linear_actions::MonomialRotationMatrix& x, double tol)
{
    const auto flat = linear_actions::to_dense(x);
    const auto dim = static_cast<Eigen::Index>(2 * x.blocks());
    Eigen::MatrixXd m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c)
            m(r, c) = flat[static_cast<std::size_t>(r * dim + c)];
    const auto ev = Eigen::EigenSolver<Eigen::MatrixXd>(m, false).eigenvalues();
    for (Eigen::Index k = 0; k < ev.size(); ++k)
        if (std::abs(ev[k] - std::complex<double>(1.0, 0.0)) < tol)
            return true;
    return false;
}

Outcome steenrod_identities()
{
    using steenrod::parse_word;
    std::size_t checked = 0;
    for (int p : {3, 5, 7, 11}) {
        const std::string ps = std::to_string(p);
        const auto diff = steenrod::normalize_combination({{1, parse_word("P" + ps + " b", p)},
                                                           {-1, parse_word("P1 b P" + std::to_string(p - 1), p)},
                                                           {-1, parse_word("b P" + ps, p)}},
                                                          p);
        if (!diff.is_zero())
            return {false, "P^p b identity fails at p=" + ps};
        ++checked;
        std::string ones;
        std::int64_t factorial = 1;
        for (int i = 1; i < p; ++i) {
            ones += i > 1 ? " P1" : "P1";
            factorial *= i;
            const auto d = steenrod::normalize_combination(
                {{1, parse_word(ones, p)}, {-factorial, parse_word("P" + std::to_string(i), p)}}, p);
            if (!d.is_zero())
                return {false, "(P1)^" + std::to_string(i) + " fails at p=" + ps};
            ++checked;
        }
    }
    return {true, std::to_string(checked) + " identities"};
}

Outcome model_oracle()
{
    std::size_t compared = 0;
    for (int p : {3, 5}) {
        steenrod::Normalizer norm(p);
        std::vector<steenrod::Letter> alphabet{steenrod::Letter::beta()};
        for (int i = 1; i <= p + 1; ++i)
            alphabet.push_back(steenrod::Letter::P(i));
        std::vector<steenrod::SteenrodWord> words{{p, {}}};
        for (std::size_t start = 0, len = 0; len < 3; ++len) {
            const std::size_t end = words.size();
            for (std::size_t w = start; w < end; ++w)
                for (const auto& l : alphabet) {
                    auto next = words[w];
                    next.letters.push_back(l);
                    words.push_back(next);
                }
            start = end;
        }
        for (const auto& w : words) {
            const auto normal = norm.normalize(w);
            for (std::uint64_t k = 0; k <= 20; ++k) {
                ++compared;
                if (!(steenrod::act_word(w, steenrod::ModelSum(p, {k, 1})) ==
                      steenrod::act_on_model(normal, steenrod::ModelClass{k, 1})))
                    return {false, "word action differs at p=" + std::to_string(p) + " k=" + std::to_string(k)};
            }
        }
        for (std::uint64_t j = 0; j <= 20; ++j)
            for (std::uint64_t k = 0; k <= 20; ++k) {
                const auto image = steenrod::apply_letter(steenrod::Letter::P(static_cast<int>(j)),
                                                          steenrod::ModelSum(p, {k, 1}));
                steenrod::ModelSum want(p);
                want.add(k + j * static_cast<std::uint64_t>(p - 1),
                         exact_binomial_mod(static_cast<std::int64_t>(k), static_cast<std::int64_t>(j), p));
                ++compared;
                if (!(image == want))
                    return {false, "P^" + std::to_string(j) + "(x^" + std::to_string(k) + ") wrong"};
            }
    }
    return {true, std::to_string(compared) + " comparisons"};
}

Outcome group_suite()
{
    const auto all = groups::enumerate_by_order(10'000);
    for (const auto& g : all) {
        const groups::MetacyclicTable t(g);
        if (t.size() != static_cast<std::size_t>(g.order()))
            return {false, g.name() + " has the wrong order"};
        if (!groups::audit_structure(t).ok(static_cast<std::uint64_t>(g.d())))
            return {false, g.name() + " fails the structure audit"};
    }
    return {true, std::to_string(all.size()) + " groups"};
}

Outcome representation_freeness()
{
    std::mt19937_64 rng(17);
    std::size_t sampled = 0;
    for (auto [p, n] : {std::pair{3, 5}, std::pair{3, 17}, std::pair{3, 29}, std::pair{5, 9}, std::pair{5, 29},
                        std::pair{7, 13}}) {
        const auto bundle = linear_actions::build_sphere_action(p, n);
        const std::string where = " at p=" + std::to_string(p) + " n=" + std::to_string(n);
        if (!linear_actions::is_free_representation(bundle))
            return {false, "not free" + where};
        if (!linear_actions::diagonal_circle_is_free(bundle))
            return {false, "diagonal circle not free" + where};
        const auto a = static_cast<std::uint64_t>(bundle.group.a()), b = static_cast<std::uint64_t>(bundle.group.b());
        for (int t = 0; t < 200; ++t) {
            const std::uint64_t i = rng() % a, j = rng() % b;
            const auto x = bundle.rep(i, j);
            ++sampled;
            if (linear_actions::eigen_angle_zero(x) != numeric_eigenvalue_one(x, 1e-9))
                return {false, "numeric eigenvalues disagree" + where};
            if ((i != 0 || j != 0) && linear_actions::eigen_angle_zero(x))
                return {false, "fixed vector" + where};
        }
    }
    return {true, std::to_string(sampled) + " numeric samples"};
}

Outcome griesmer_reproduction()
{
    using namespace coding_bounds;
    if (!griesmer_inequality({49, 5, 1, 3}))
        return {false, "n=49 fails"};
    for (std::int64_t n = 37; n <= 45; n += 2) {
        const std::int64_t s = minimal_rank_sqrt(n);
        if (!griesmer_inequality({n, s, 1, involution_count(n)}))
            return {false, "n=" + std::to_string(n) + " fails"};
    }
    std::size_t count = 0;
    for (std::int64_t n = 37; n <= 10'000; n += 4) {
        ++count;
        if (!log_threshold_inequality(n, minimal_rank_log(n)))
            return {false, "log threshold fails at n=" + std::to_string(n)};
    }
    return {true, std::to_string(count) + " log-range values"};
}

Outcome code_oracle()
{
    std::size_t pairs = 0;
    for (int k = 1; k <= coding_bounds::kMaxOracleDimension; ++k)
        for (int len = k; len <= coding_bounds::kMaxOracleLength; ++len) {
            const int d = coding_bounds::brute_force_code_oracle(len, k).best_distance;
            ++pairs;
            if (griesmer_length(k, d) > len)
                return {false, "[" + std::to_string(len) + "," + std::to_string(k) + "," + std::to_string(d) +
                                   "] beats the bound"};
        }
    const int d73 = coding_bounds::brute_force_code_oracle(7, 3).best_distance;
    if (d73 != 4)
        return {false, "[7,3] optimum is " + std::to_string(d73)};
    return {true, std::to_string(pairs) + " (length, dimension) pairs"};
}

Outcome proof_sweeps()
{
    const auto ccs = obstruction::proof_sweep_ccs_cases(obstruction::default_q_grid(), 10'000);
    if (!ccs.pass)
        return {false, ccs.first_failure};
    const auto scc5 = obstruction::proof_sweep_scc5(100'000);
    if (!scc5.holds_from_261)
        return {false, "large-n inequality fails above 261"};
    if (!scc5.closing_inequality || !scc5.reduction_identities)
        return {false, "closing inequality fails"};
    return {true, std::to_string(ccs.checks) + " band checks, first holding n=" + std::to_string(scc5.first_holding_n)};
}

Outcome engine_sharpness()
{
    using obstruction::Flag;
    std::size_t pairs = 0;
    for (std::int64_t p : primes_between(3, 101))
        for (std::int64_t n = 2 * p - 1; n <= 200; n += 2 * p) {
            const std::int64_t r = (n + 1) / (2 * p);
            ++pairs;
            if (obstruction::excludes_cd(obstruction::apply_all({n, r, {Flag::RationalSphereCover}}), p))
                return {false, "C_p excluded at the sharp rank, p=" + std::to_string(p) + " n=" + std::to_string(n)};
            if (!obstruction::excludes_cd(obstruction::apply_all({n, r + 1, {Flag::RationalSphereCover}}), p))
                return {false, "C_p survives above the sharp rank, p=" + std::to_string(p) + " n=" + std::to_string(n)};
        }
    return {true, std::to_string(pairs) + " (p, n) pairs"};
}

Outcome engine_fixtures()
{
    using obstruction::Flag;
    using obstruction::Kind;
    auto cyclic = [](const obstruction::ObstructionReport& r) {
        return std::any_of(r.applied.begin(), r.applied.end(), [](const auto& c) { return c.kind == Kind::Cyclic; });
    };
    const auto dim7 = obstruction::apply_all({7, 1, {Flag::RationalSphereCover, Flag::CircleActionOnly}});
    for (std::int64_t d = 3; d <= 199; d += 2)
        if (!obstruction::excludes_cd(dim7, d))
            return {false, "n=7 admits odd C_d with d=" + std::to_string(d)};
    for (std::int64_t p : primes_between(3, 199))
        if (!obstruction::excludes_zpzp(dim7, p))
            return {false, "n=7 admits Z_p x Z_p with p=" + std::to_string(p)};
    if (!cyclic(obstruction::apply_all({13, 2, {Flag::RationalSphereCover}})))
        return {false, "n=13 r=2 not cyclic"};
    if (!cyclic(obstruction::apply_all({25, 5, {}})))
        return {false, "n=25 r=5 not cyclic"};
    return {true, ""};
}

}  // namespace

int main()
{
    criterion(1, "Steenrod identity suite, p in {3,5,7,11}", 1, steenrod_identities);
    criterion(2, "model-algebra oracle, k, j <= 20, p in {3,5}", 5, model_oracle);
    criterion(3, "every admissible group with ab <= 10^4", 60, group_suite);
    criterion(4, "free and Hopf-free sphere actions", 10, representation_freeness);
    criterion(5, "Griesmer reproduction", 30, griesmer_reproduction);
    criterion(6, "brute-force code oracle, length <= 14, dim <= 4", 120, code_oracle);
    criterion(7, "three-band chain, large-n and closing inequalities", 60, proof_sweeps);
    criterion(8, "rational sphere bound is sharp for n <= 200", 10, engine_sharpness);
    criterion(9, "engine regression fixtures", 1, engine_fixtures);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
