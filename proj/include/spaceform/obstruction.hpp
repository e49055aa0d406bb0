#pragma once

// Rank-versus-fundamental-group obstructions for positively curved manifolds
// with torus symmetry, encoded as exact predicates over (n, r, flags), and
// the finite inequality chains their proofs rest on.
//
// Geometric hypotheses (curvature, effectiveness, isometry) cannot be
// checked here; they are taken as asserted and echoed in every report.

#include "spaceform/arith.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace spaceform::obstruction {

using Json = nlohmann::ordered_json;

enum class Flag { RationalSphereCover, IntegralSphereCover, TorusFixedPointFree, CircleActionOnly };

std::string to_string(Flag f);
Flag flag_from_string(const std::string& s);

struct Hypotheses {
    std::int64_t n = 3;
    std::int64_t r = 0;
    std::set<Flag> flags;

    bool has(Flag f) const { return flags.count(f) != 0; }
    /// n odd and >= 3, r >= 0, a circle means r = 1. An integral sphere cover
    /// is also a rational one; that flag is added here.
    void normalize();
};

enum class Kind { Cyclic, NoZpZp, FactorZ2eGamma, GammaInCdBound, DividesCod, DividesDim, NormalCyclicIndex };

std::string to_string(Kind k);
Kind kind_from_string(const std::string& s);

/// Params by kind:
///   NoZpZp            {"scope": "all"|"odd", "allowed": [primes not excluded]}
///   GammaInCdBound    {"max_d": int}            odd part lies in C_d, d <= max_d
///   DividesCod        {"max_p": int, "max_d": int}
///   DividesDim        {"value": int}            2p | value and 2d | value
///   NormalCyclicIndex {"allowed_d": [int]}
///   Cyclic, FactorZ2eGamma: free-form notes only.
struct Constraint {
    Kind kind;
    Json params = Json::object();
    std::string source;
    std::string anchor;

    bool operator==(const Constraint&) const = default;
};

struct NotApplicable {
    std::string source;
    std::string failed;

    bool operator==(const NotApplicable&) const = default;
};

struct ObstructionReport {
    Hypotheses hypotheses;
    std::vector<Constraint> applied;
    std::vector<NotApplicable> non_applicable;

    bool operator==(const ObstructionReport& o) const;
};

/// Every registered source tag, in evaluation order.
const std::vector<std::string>& registry();

/// Runs every registered predicate. The quadratic abelian-rank entry uses
/// the best q unless ccs_q fixes one.
ObstructionReport apply_all(Hypotheses h, std::optional<Fraction> ccs_q = std::nullopt);

/// True when some applied constraint rules out a group in C_d (d >= 2).
bool excludes_cd(const ObstructionReport& report, std::int64_t d);
/// True when some applied constraint rules out Z_p x Z_p in pi_1.
bool excludes_zpzp(const ObstructionReport& report, std::int64_t p);

Json to_json(const ObstructionReport& report);
ObstructionReport report_from_json(const Json& j);

// ------------------------------------------------------- single predicates

std::optional<Constraint> pred_wilking(std::int64_t n, std::int64_t r);
std::optional<Constraint> pred_frw(std::int64_t n, std::int64_t r);
std::optional<Constraint> pred_wang(std::int64_t n, std::int64_t r);
/// 4qr >= n + 4q^2 with n = 1 mod 4: only 2 < p < q survive.
std::optional<Constraint> pred_ccs(std::int64_t n, std::int64_t r, const Fraction& q);
/// q = sqrt(n)/2: fires iff r^2 >= n, survivors 2 < p with 4p^2 < n.
std::optional<Constraint> pred_ccs_sqrt(std::int64_t n, std::int64_t r);
/// Best q: fires iff r^2 >= n, survivors 2 < p < r/2 with 4p^2 - 4rp + n > 0.
std::optional<Constraint> pred_ccs_optimal(std::int64_t n, std::int64_t r);
/// r >= log_(4/3) n with n = 1 mod 4: survivors 2 < p <= (n+1)/(2r).
std::optional<Constraint> pred_ccslog(std::int64_t n, std::int64_t r);
std::vector<Constraint> pred_room(const Hypotheses& h);
std::optional<Constraint> pred_davis_weinberger(const Hypotheses& h);

enum class GroupKind { ZpZp, Cd };

/// Consistency of 2*order | cod for the codimension of a circle's fixed set
/// (cod = n + 1 when empty). A fixed circle (cod = n - 1) cannot carry a free
/// non-cyclic action. Requires cod even with 2 <= cod <= n + 1.
bool pred_sunwang(std::int64_t n, std::int64_t cod, GroupKind kind, std::int64_t order);

/// Whether a chain M > M^(T^1) > ... > M^(T^length) of strict inclusions can
/// satisfy the divisibility above at every step without ever fixing a circle.
bool sunwang_chain_feasible(std::int64_t n, std::int64_t order, std::int64_t length);

enum class SccVariant { Dim49Mod60, IntegralCover, FixedPointFree };

std::optional<Constraint> pred_scc(const Hypotheses& h, SccVariant variant);

// ------------------------------------------------------------ proof sweeps

struct SweepReport {
    bool pass = true;
    std::uint64_t checks = 0;
    std::string first_failure;
};

/// The three prime bands p >= 2q, 3q/2 <= p < 2q, q <= p < 3q/2 each give
/// r < n/(4q) + q from the rank bounds, for every odd prime p <= (n+1)/2.
SweepReport proof_sweep_ccs_cases(const std::vector<Fraction>& q_grid, std::int64_t n_max);

/// {1, 3/2, 2, ..., 50}.
std::vector<Fraction> default_q_grid();

struct Scc5Report {
    bool pass = true;
    /// Least n >= 1 at which (n+1)/10 > log2((n+1)/5) + (n+1)/15 + 3 holds.
    std::int64_t first_holding_n = 0;
    bool holds_from_261 = true;
    bool reduction_identities = true;  // the affine algebra behind the closing step
    bool closing_inequality = true;    // 11n/960 + j/16 >= 5 - 35/64 - 1/10 at n = 400, j = 0
    std::int64_t n_max = 0;
};

Scc5Report proof_sweep_scc5(std::int64_t n_max);

/// Exact form of the rank inequality above at a single n.
bool scc5_inequality(std::int64_t n);

/// Induction step for the log-rank bound over n = 1 mod 4 in (49, n_max].
SweepReport proof_sweep_ccslog_induction(std::int64_t n_max);

}  // namespace spaceform::obstruction
