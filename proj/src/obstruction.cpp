#include "spaceform/obstruction.hpp"

#include "spaceform/coding_bounds.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace spaceform::obstruction {

// ------------------------------------------------------------------- names

std::string to_string(Flag f)
{
    switch (f) {
    case Flag::RationalSphereCover:
        return "rational_sphere_cover";
    case Flag::IntegralSphereCover:
        return "integral_sphere_cover";
    case Flag::TorusFixedPointFree:
        return "torus_fixed_point_free";
    case Flag::CircleActionOnly:
        return "circle_action_only";
    }
    return "unknown";
}

Flag flag_from_string(const std::string& s)
{
    for (Flag f : {Flag::RationalSphereCover, Flag::IntegralSphereCover, Flag::TorusFixedPointFree,
                   Flag::CircleActionOnly})
        if (to_string(f) == s)
            return f;
    throw std::invalid_argument("unknown hypothesis flag '" + s + "'");
}

std::string to_string(Kind k)
{
    switch (k) {
    case Kind::Cyclic:
        return "Cyclic";
    case Kind::NoZpZp:
        return "NoZpZp";
    case Kind::FactorZ2eGamma:
        return "FactorZ2eGamma";
    case Kind::GammaInCdBound:
        return "GammaInCdBound";
    case Kind::DividesCod:
        return "DividesCod";
    case Kind::DividesDim:
        return "DividesDim";
    case Kind::NormalCyclicIndex:
        return "NormalCyclicIndex";
    }
    return "unknown";
}

Kind kind_from_string(const std::string& s)
{
    for (Kind k : {Kind::Cyclic, Kind::NoZpZp, Kind::FactorZ2eGamma, Kind::GammaInCdBound, Kind::DividesCod,
                   Kind::DividesDim, Kind::NormalCyclicIndex})
        if (to_string(k) == s)
            return k;
    throw std::invalid_argument("unknown constraint kind '" + s + "'");
}

void Hypotheses::normalize()
{
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("dimension n must be odd and at least 3, got " + std::to_string(n));
    if (r < 0)
        throw std::invalid_argument("torus rank r must be nonnegative");
    if (has(Flag::CircleActionOnly) && r != 1)
        throw std::invalid_argument("circle_action_only requires r = 1");
    if (has(Flag::IntegralSphereCover))
        flags.insert(Flag::RationalSphereCover);
}

bool ObstructionReport::operator==(const ObstructionReport& o) const
{
    return hypotheses.n == o.hypotheses.n && hypotheses.r == o.hypotheses.r && hypotheses.flags == o.hypotheses.flags &&
           applied == o.applied && non_applicable == o.non_applicable;
}

// ------------------------------------------------------------------ helpers

namespace {

constexpr const char* kWilking = "wilking";
constexpr const char* kFrw = "frank_rong_wang";
constexpr const char* kWang = "wang";
constexpr const char* kQuadratic = "abelian_rank_quadratic";
constexpr const char* kLog = "abelian_rank_log";
constexpr const char* kLogRefined = "abelian_rank_log_refined";
constexpr const char* kRationalSphere = "rational_sphere_rank";
constexpr const char* kCircleCod = "circle_codimension";
constexpr const char* kDavisWeinberger = "davis_weinberger";
constexpr const char* kSmith = "smith";
constexpr const char* kDim7 = "dimension_7";
constexpr const char* kDim9And13 = "dimensions_9_13";
constexpr const char* kScc49 = "sharp_cyclic_49_mod_60";
constexpr const char* kSccIntegral = "sharp_cyclic_integral_cover";
constexpr const char* kSccFree = "sharp_cyclic_fixed_point_free";
constexpr const char* kSccAtFive = "sharp_cyclic_at_five";

Constraint make(Kind kind, const char* source, std::string anchor, Json params = Json::object())
{
    return {kind, std::move(params), source, std::move(anchor)};
}

Constraint no_zpzp(const char* source, std::string anchor, const std::vector<std::int64_t>& allowed, bool odd_only)
{
    return make(Kind::NoZpZp, source, std::move(anchor), Json{{"scope", odd_only ? "odd" : "all"}, {"allowed", allowed}});
}

std::vector<std::int64_t> odd_primes_upto(std::int64_t hi) { return primes_between(3, hi); }

/// Odd primes p with 2pr <= n + 1 and 4pr <= n + 1 + 2p^2 (r >= 1).
std::vector<std::int64_t> rank_bound_survivors(std::int64_t n, std::int64_t r)
{
    std::vector<std::int64_t> out;
    for (std::int64_t p : odd_primes_upto((n + 1) / (2 * r)))
        if (4 * p * r <= n + 1 + 2 * p * p)
            out.push_back(p);
    return out;
}

struct Outcome {
    std::vector<Constraint> constraints;
    std::string failed;
};

Outcome fail(std::string why) { return {{}, std::move(why)}; }

Outcome fire(std::vector<Constraint> cs) { return {std::move(cs), {}}; }

Outcome from_optional(std::optional<Constraint> c, std::string why)
{
    if (c)
        return fire({*c});
    return fail(std::move(why));
}

std::int64_t scc_prime(std::int64_t n) { return least_prime_divisor((n + 1) / 2); }

bool scc_rank(std::int64_t n, std::int64_t r, std::int64_t q) { return 2 * q * (r - 1) >= n + 1; }

Outcome eval_chain(const Hypotheses& h, const char* source, std::int64_t length)
{
    // Feasible odd orders for Z_p x Z_p and for C_d.
    std::vector<std::int64_t> primes;
    for (std::int64_t p : odd_primes_upto(h.n + 1))
        if (sunwang_chain_feasible(h.n, p, length))
            primes.push_back(p);
    std::int64_t max_d = 1;
    for (std::int64_t d = 3; d <= h.n + 1; d += 2)
        if (sunwang_chain_feasible(h.n, d, length))
            max_d = d;
    const std::string lead = "circle fixed-set codimensions in dimension " + std::to_string(h.n) + " with rank " +
                             std::to_string(length);
    if (length >= 2 && primes.empty() && max_d == 1)
        return fire({make(Kind::Cyclic, source, lead + " leave no room for a non-cyclic odd part")});
    return fire({no_zpzp(source, lead + " rule out Z_p x Z_p for odd p outside the allowed list", primes, true),
                 make(Kind::GammaInCdBound, source,
                      max_d == 1 ? "every odd-order subgroup is cyclic"
                                 : lead + " bound the C_d class of odd-order subgroups",
                      Json{{"max_d", max_d}})});
}

}  // namespace

// ------------------------------------------------------- single predicates

std::optional<Constraint> pred_wilking(std::int64_t n, std::int64_t r)
{
    if (4 * r < n + 5)
        return std::nullopt;
    return make(Kind::Cyclic, kWilking, "r >= (n+1)/4 + 1 forces a cyclic fundamental group");
}

std::optional<Constraint> pred_frw(std::int64_t n, std::int64_t r)
{
    if (6 * r < n + 7)
        return std::nullopt;
    if (n % 4 == 1)
        return make(Kind::Cyclic, kFrw, "r >= (n+1)/6 + 1 and n = 1 mod 4 force a cyclic fundamental group");
    auto c = no_zpzp(kFrw, "r >= (n+1)/6 + 1 makes pi_1 a three-dimensional space form group", {}, false);
    c.params["three_dimensional_space_form_group"] = true;
    return c;
}

std::optional<Constraint> pred_wang(std::int64_t n, std::int64_t r)
{
    if (n < 25)
        return std::nullopt;
    if (n % 12 == 1 && 8 * r >= n + 9)
        return make(Kind::Cyclic, kWang, "n >= 25, n = 1 mod 12 and r >= (n+1)/8 + 1 force a cyclic fundamental group");
    if (n % 24 == 1 && 10 * r >= n + 21)
        return make(Kind::Cyclic, kWang, "n >= 25, n = 1 mod 24 and r >= (n+1)/10 + 2 force a cyclic fundamental group");
    return std::nullopt;
}

std::optional<Constraint> pred_ccs(std::int64_t n, std::int64_t r, const Fraction& q)
{
    if (n % 4 != 1 || q <= Fraction(0))
        return std::nullopt;
    if (Fraction(4) * q * Fraction(r) < Fraction(n) + Fraction(4) * q * q)
        return std::nullopt;
    std::vector<std::int64_t> allowed;
    for (std::int64_t p : odd_primes_upto(q.ceil()))
        if (Fraction(p) < q)
            allowed.push_back(p);
    auto c = no_zpzp(kQuadratic, "r >= n/(4q) + q leaves only primes 2 < p < q for Z_p x Z_p", allowed, false);
    c.params["q"] = q.str();
    return c;
}

std::optional<Constraint> pred_ccs_sqrt(std::int64_t n, std::int64_t r)
{
    if (n % 4 != 1 || r < 0 || r * r < n)
        return std::nullopt;
    std::vector<std::int64_t> allowed;
    for (std::int64_t p : odd_primes_upto(n))
        if (4 * p * p < n)
            allowed.push_back(p);
    auto c = no_zpzp(kQuadratic, "r >= sqrt(n) leaves only primes 2 < p < sqrt(n)/2 for Z_p x Z_p", allowed, false);
    c.params["q"] = "sqrt(n)/2";
    return c;
}

// p is excluded by some admissible q iff the smaller root q- of
// 4q^2 - 4rq + n lies at or below p, i.e. iff p >= r/2 or 4p^2 - 4rp + n <= 0.
std::optional<Constraint> pred_ccs_optimal(std::int64_t n, std::int64_t r)
{
    if (n % 4 != 1 || r < 0 || r * r < n)
        return std::nullopt;
    std::vector<std::int64_t> allowed;
    for (std::int64_t p : odd_primes_upto(r))
        if (2 * p < r && 4 * p * p - 4 * r * p + n > 0)
            allowed.push_back(p);
    auto c = no_zpzp(kQuadratic, "r >= n/(4q) + q for some q > 0 leaves only primes 2 < p < q for Z_p x Z_p", allowed,
                     false);
    c.params["q"] = "optimal";
    return c;
}

std::optional<Constraint> pred_ccslog(std::int64_t n, std::int64_t r)
{
    if (n % 4 != 1 || r < 1 || !coding_bounds::exact_log_ge(4, 3, r, n))
        return std::nullopt;
    std::vector<std::int64_t> allowed = odd_primes_upto((n + 1) / (2 * r));
    return no_zpzp(kLog, "r >= log_{4/3}(n) leaves only primes 2 < p <= (n+1)/(2r) for Z_p x Z_p", allowed, false);
}

std::vector<Constraint> pred_room(const Hypotheses& h)
{
    std::vector<Constraint> out;
    if (!h.has(Flag::RationalSphereCover) || h.r < 1)
        return out;
    const std::int64_t n = h.n, r = h.r;
    out.push_back(no_zpzp(kRationalSphere,
                          "on a rational sphere, Z_p x Z_p with odd p needs r <= (n+1)/(2p) and r <= (n+1)/(4p) + p/2",
                          rank_bound_survivors(n, r), true));
    out.push_back(make(Kind::GammaInCdBound, kRationalSphere,
                       "on a rational sphere, an odd-order subgroup in C_d needs r <= (n+1)/(2d)",
                       Json{{"max_d", (n + 1) / (2 * r)}}));
    if (h.has(Flag::TorusFixedPointFree))
        out.push_back(make(Kind::DividesDim, kRationalSphere,
                           "a fixed-point-free torus on a rational sphere needs 2p | n+1 and 2d | n+1",
                           Json{{"value", n + 1}}));
    return out;
}

std::optional<Constraint> pred_davis_weinberger(const Hypotheses& h)
{
    if (h.n % 4 != 1 || !h.has(Flag::RationalSphereCover))
        return std::nullopt;
    return make(Kind::FactorZ2eGamma, kDavisWeinberger,
                "a free action on a rational (4k+1)-sphere factors as Z_{2^e} x Gamma with Gamma of odd order",
                Json{{"milnor", "the involution, if any, is unique and central"}});
}

bool pred_sunwang(std::int64_t n, std::int64_t cod, GroupKind kind, std::int64_t order)
{
    if (cod < 2 || cod > n + 1 || cod % 2 != 0)
        throw std::invalid_argument("codimension must be even with 2 <= cod <= n+1");
    if (order < 1 || (kind == GroupKind::ZpZp && !is_prime(static_cast<std::uint64_t>(order))))
        throw std::invalid_argument("pred_sunwang: invalid group order");
    if (cod % (2 * order) != 0)
        return false;
    const bool non_cyclic = kind == GroupKind::ZpZp || order > 1;
    return !(non_cyclic && cod == n - 1);
}

bool sunwang_chain_feasible(std::int64_t n, std::int64_t order, std::int64_t length)
{
    if (length <= 0)
        return true;
    const GroupKind kind = order > 1 ? GroupKind::Cd : GroupKind::ZpZp;
    // The shortest chain uses the minimal step 2*order each time; only its
    // end can be the empty set (cod = n + 1).
    const std::int64_t step = 2 * order;
    for (std::int64_t i = 1; i <= length; ++i) {
        const std::int64_t cod = step * i;
        if (cod > n + 1 || (i < length && cod == n + 1))
            return false;
        if (!pred_sunwang(n, cod, kind, order))
            break;
        if (i == length)
            return true;
    }
    // Some minimal step hit a circle; any longer steps reach it later or overshoot.
    std::function<bool(std::int64_t, std::int64_t)> search = [&](std::int64_t cod, std::int64_t left) {
        if (left == 0)
            return true;
        for (std::int64_t next = cod + step; next <= n + 1; next += step) {
            if (left > 1 && next == n + 1)
                continue;
            if (pred_sunwang(n, next, kind, order) && search(next, left - 1))
                return true;
        }
        return false;
    };
    return search(0, length);
}

std::optional<Constraint> pred_scc(const Hypotheses& h, SccVariant variant)
{
    const std::int64_t n = h.n, r = h.r;
    const std::int64_t q = scc_prime(n);
    if (!scc_rank(n, r, q))
        return std::nullopt;
    Json params{{"q", q}};
    switch (variant) {
    case SccVariant::Dim49Mod60:
        if (n % 60 != 49 || n < 409)
            return std::nullopt;
        return make(Kind::Cyclic, kScc49, "n = 49 + 60k with k >= 6 and r >= (n+1)/(2q) + 1 force a cyclic group",
                    params);
    case SccVariant::IntegralCover:
        if (!h.has(Flag::IntegralSphereCover))
            return std::nullopt;
        return make(Kind::Cyclic, kSccIntegral,
                    "a homotopy-sphere universal cover and r >= (n+1)/(2q) + 1 force a cyclic group", params);
    case SccVariant::FixedPointFree:
        if (n < 16 * q * q || !h.has(Flag::TorusFixedPointFree))
            return std::nullopt;
        return make(Kind::Cyclic, kSccFree,
                    "n >= 16q^2, a fixed-point-free torus and r >= (n+1)/(2q) + 1 force a cyclic group", params);
    }
    return std::nullopt;
}

// ----------------------------------------------------------------- registry

namespace {

using Evaluator = std::function<Outcome(const Hypotheses&)>;

const std::vector<std::pair<std::string, Evaluator>>& evaluators()
{
    static const std::vector<std::pair<std::string, Evaluator>> table = {
        {kWilking, [](const Hypotheses& h) { return from_optional(pred_wilking(h.n, h.r), "4r >= n + 5"); }},
        {kFrw, [](const Hypotheses& h) { return from_optional(pred_frw(h.n, h.r), "6r >= n + 7"); }},
        {kWang,
         [](const Hypotheses& h) {
             if (h.n < 25)
                 return fail("n >= 25");
             return from_optional(pred_wang(h.n, h.r),
                                  "n = 1 mod 12 with 8r >= n + 9, or n = 1 mod 24 with 10r >= n + 21");
         }},
        {kQuadratic,
         [](const Hypotheses& h) {
             if (h.n % 4 != 1)
                 return fail("n = 1 mod 4");
             return from_optional(pred_ccs_optimal(h.n, h.r), "r^2 >= n");
         }},
        {kLog,
         [](const Hypotheses& h) {
             if (h.n % 4 != 1)
                 return fail("n = 1 mod 4");
             return from_optional(pred_ccslog(h.n, h.r), "r >= log_{4/3}(n)");
         }},
        {kLogRefined,
         [](const Hypotheses& h) {
             if (h.n % 4 != 1)
                 return fail("n = 1 mod 4");
             if (h.r < 1 || !coding_bounds::exact_log_ge(4, 3, h.r + 6, h.n + 3))
                 return fail("r >= log_{4/3}(n+3) - 6");
             const std::int64_t n = h.n, r = h.r;
             return fire({make(Kind::FactorZ2eGamma, kLogRefined,
                               "r >= log_{4/3}(n+3) - 6 splits pi_1 as Z_{2^e} x Gamma with Gamma of odd order"),
                          no_zpzp(kLogRefined,
                                  "r >= log_{4/3}(n+3) - 6: Z_p x Z_p needs r <= (n+1)/(2p) and r <= (n+1)/(4p) + p/2",
                                  rank_bound_survivors(n, r), false),
                          make(Kind::GammaInCdBound, kLogRefined,
                               "r >= log_{4/3}(n+3) - 6: Gamma in C_d needs r <= (n+1)/(2d)",
                               Json{{"max_d", (n + 1) / (2 * r)}})});
         }},
        {kRationalSphere,
         [](const Hypotheses& h) {
             if (!h.has(Flag::RationalSphereCover))
                 return fail("rational_sphere_cover");
             if (h.r < 1)
                 return fail("r >= 1");
             return fire(pred_room(h));
         }},
        {kCircleCod,
         [](const Hypotheses& h) {
             if (!h.has(Flag::RationalSphereCover))
                 return fail("rational_sphere_cover");
             if (h.r < 1)
                 return fail("r >= 1");
             const std::int64_t half = (h.n + 1) / 2;
             return fire({make(Kind::DividesCod, kCircleCod,
                               "a circle on a rational sphere: 2p and 2d divide the fixed-set codimension <= n+1",
                               Json{{"max_p", half}, {"max_d", half}})});
         }},
        {kDavisWeinberger,
         [](const Hypotheses& h) {
             if (h.n % 4 != 1)
                 return fail("n = 1 mod 4");
             return from_optional(pred_davis_weinberger(h), "rational_sphere_cover");
         }},
        {kSmith,
         [](const Hypotheses& h) {
             if (h.n != 3 && !h.has(Flag::IntegralSphereCover))
                 return fail("n = 3 or integral_sphere_cover");
             return fire({no_zpzp(kSmith, "Z_p x Z_p cannot act freely on a mod p homology sphere", {}, false)});
         }},
        {kDim7,
         [](const Hypotheses& h) {
             if (h.n != 7)
                 return fail("n = 7");
             if (!h.has(Flag::RationalSphereCover))
                 return fail("rational_sphere_cover");
             if (h.r < 1)
                 return fail("r >= 1");
             return eval_chain(h, kDim7, 1);
         }},
        {kDim9And13,
         [](const Hypotheses& h) {
             if (h.n != 9 && h.n != 13)
                 return fail("n in {9, 13}");
             if (!h.has(Flag::RationalSphereCover))
                 return fail("rational_sphere_cover");
             if (h.r < 2)
                 return fail("r >= 2");
             return eval_chain(h, kDim9And13, 2);
         }},
        {kScc49,
         [](const Hypotheses& h) {
             if (h.n % 60 != 49 || h.n < 409)
                 return fail("n = 49 + 60k with k >= 6");
             return from_optional(pred_scc(h, SccVariant::Dim49Mod60), "r >= (n+1)/(2q) + 1");
         }},
        {kSccIntegral,
         [](const Hypotheses& h) {
             if (!h.has(Flag::IntegralSphereCover))
                 return fail("integral_sphere_cover");
             return from_optional(pred_scc(h, SccVariant::IntegralCover), "r >= (n+1)/(2q) + 1");
         }},
        {kSccFree,
         [](const Hypotheses& h) {
             if (!h.has(Flag::TorusFixedPointFree))
                 return fail("torus_fixed_point_free");
             const std::int64_t q = scc_prime(h.n);
             if (h.n < 16 * q * q)
                 return fail("n >= 16q^2");
             return from_optional(pred_scc(h, SccVariant::FixedPointFree), "r >= (n+1)/(2q) + 1");
         }},
        {kSccAtFive,
         [](const Hypotheses& h) {
             if (h.n < 81)
                 return fail("n >= 81");
             if (h.n % 4 != 1)
                 return fail("n = 1 mod 4");
             if (10 * h.r < h.n + 11)
                 return fail("r >= (n+1)/10 + 1");
             return fire({no_zpzp(kSccAtFive, "r >= (n+1)/10 + 1 makes every abelian subgroup cyclic", {}, false),
                          make(Kind::FactorZ2eGamma, kSccAtFive,
                               "r >= (n+1)/10 + 1 splits pi_1 as Z_{2^e} x Gamma with Gamma in C_1 or C_3"),
                          make(Kind::NormalCyclicIndex, kSccAtFive,
                               "a non-cyclic pi_1 has a normal cyclic subgroup of index three",
                               Json{{"allowed_d", {1, 3}}})});
         }},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& registry()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, eval] : evaluators())
            v.push_back(name);
        return v;
    }();
    return names;
}

ObstructionReport apply_all(Hypotheses h, std::optional<Fraction> ccs_q)
{
    h.normalize();
    if (ccs_q && *ccs_q <= Fraction(0))
        throw std::invalid_argument("q must be positive");
    ObstructionReport report{h, {}, {}};
    for (const auto& [name, eval] : evaluators()) {
        Outcome o;
        if (ccs_q && name == kQuadratic)
            o = h.n % 4 != 1 ? fail("n = 1 mod 4")
                             : from_optional(pred_ccs(h.n, h.r, *ccs_q), "4qr >= n + 4q^2 at q = " + ccs_q->str());
        else
            o = eval(h);
        if (o.constraints.empty())
            report.non_applicable.push_back({name, o.failed.empty() ? "no conclusion" : o.failed});
        else
            for (auto& c : o.constraints)
                report.applied.push_back(std::move(c));
    }
    return report;
}

namespace {

bool contains(const Json& list, std::int64_t v)
{
    return std::any_of(list.begin(), list.end(), [&](const Json& x) { return x.get<std::int64_t>() == v; });
}

}  // namespace

bool excludes_cd(const ObstructionReport& report, std::int64_t d)
{
    if (d < 2)
        return false;
    for (const auto& c : report.applied) {
        switch (c.kind) {
        case Kind::Cyclic:
            return true;
        case Kind::GammaInCdBound:
        case Kind::DividesCod:
            if (d > c.params.at("max_d").get<std::int64_t>())
                return true;
            break;
        case Kind::DividesDim:
            if (c.params.at("value").get<std::int64_t>() % (2 * d) != 0)
                return true;
            break;
        case Kind::NormalCyclicIndex:
            if (!contains(c.params.at("allowed_d"), d))
                return true;
            break;
        default:
            break;
        }
    }
    return false;
}

bool excludes_zpzp(const ObstructionReport& report, std::int64_t p)
{
    for (const auto& c : report.applied) {
        switch (c.kind) {
        case Kind::Cyclic:
            return true;
        case Kind::NoZpZp:
            if (p == 2 && c.params.at("scope") == "odd")
                break;
            if (!contains(c.params.at("allowed"), p))
                return true;
            break;
        case Kind::FactorZ2eGamma:
            if (p == 2)
                return true;
            break;
        case Kind::DividesCod:
            if (p != 2 && p > c.params.at("max_p").get<std::int64_t>())
                return true;
            break;
        case Kind::DividesDim:
            if (p != 2 && c.params.at("value").get<std::int64_t>() % (2 * p) != 0)
                return true;
            break;
        default:
            break;
        }
    }
    return false;
}

// --------------------------------------------------------------------- JSON

Json to_json(const ObstructionReport& report)
{
    Json flags = Json::array();
    for (Flag f : report.hypotheses.flags)
        flags.push_back(to_string(f));
    Json applied = Json::array();
    for (const auto& c : report.applied)
        applied.push_back({{"kind", to_string(c.kind)}, {"params", c.params}, {"source", c.source}, {"anchor", c.anchor}});
    Json skipped = Json::array();
    for (const auto& na : report.non_applicable)
        skipped.push_back({{"source", na.source}, {"failed", na.failed}});
    return {{"hypotheses", {{"n", report.hypotheses.n}, {"r", report.hypotheses.r}, {"flags", flags}}},
            {"applied", applied},
            {"non_applicable", skipped}};
}

ObstructionReport report_from_json(const Json& j)
{
    ObstructionReport r;
    const auto& h = j.at("hypotheses");
    r.hypotheses.n = h.at("n").get<std::int64_t>();
    r.hypotheses.r = h.at("r").get<std::int64_t>();
    for (const auto& f : h.at("flags"))
        r.hypotheses.flags.insert(flag_from_string(f.get<std::string>()));
    for (const auto& c : j.at("applied"))
        r.applied.push_back({kind_from_string(c.at("kind").get<std::string>()), c.at("params"),
                             c.at("source").get<std::string>(), c.at("anchor").get<std::string>()});
    for (const auto& na : j.at("non_applicable"))
        r.non_applicable.push_back({na.at("source").get<std::string>(), na.at("failed").get<std::string>()});
    return r;
}

// ------------------------------------------------------------ proof sweeps

namespace {

// Unreduced exact rational for hot loops; all magnitudes stay far below 2^100.
struct Q {
    __int128 num;
    __int128 den;  // > 0
};

Q q(std::int64_t num, std::int64_t den = 1) { return {num, den}; }
Q q(const Fraction& f) { return {f.num(), f.den()}; }
Q operator+(Q a, Q b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
Q operator-(Q a, Q b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
Q operator*(Q a, Q b) { return {a.num * b.num, a.den * b.den}; }
Q operator/(Q a, Q b)
{
    Q r{a.num * b.den, a.den * b.num};
    if (r.den < 0) {
        r.num = -r.num;
        r.den = -r.den;
    }
    return r;
}
bool operator<(Q a, Q b) { return a.num * b.den < b.num * a.den; }
bool operator<=(Q a, Q b) { return a.num * b.den <= b.num * a.den; }

// `what` describes the check and is only evaluated on the first failure.
template <typename Describe>
void record(SweepReport& rep, bool ok, Describe&& what)
{
    ++rep.checks;
    if (!ok && rep.pass) {
        rep.pass = false;
        rep.first_failure = what();
    }
}

std::string at(const Fraction& q, std::int64_t n, std::int64_t p)
{
    return "q=" + q.str() + " n=" + std::to_string(n) + " p=" + std::to_string(p);
}

}  // namespace

std::vector<Fraction> default_q_grid()
{
    std::vector<Fraction> grid;
    for (std::int64_t twice = 2; twice <= 100; ++twice)
        grid.emplace_back(twice, 2);
    return grid;
}

SweepReport proof_sweep_ccs_cases(const std::vector<Fraction>& q_grid, std::int64_t n_max)
{
    SweepReport rep;
    const auto primes = odd_primes_upto((n_max + 1) / 2);
    for (const Fraction& qf : q_grid) {
        if (qf < Fraction(1))
            throw std::invalid_argument("q grid values must be >= 1");
        const Q qq = q(qf);
        const Q two_q = q(2) * qq, three_half_q = q(3, 2) * qq;
        for (std::int64_t n = 5; n <= n_max; ++n) {
            const Q np1 = q(n + 1);
            const Q target = q(n) / (q(4) * qq) + qq;  // n/(4q) + q
            const Q a_mid = np1 / (q(4) * qq);          // (n+1)/(4q)
            const Q b_mid = np1 / (q(6) * qq) + qq;     // (n+1)/(6q) + q
            const Q c_mid = a_mid + q(3, 4) * qq;       // (n+1)/(4q) + 3q/4
            const bool a_tail = a_mid < target, b_tail = b_mid <= target, c_tail = c_mid <= target;
            for (std::int64_t p : primes) {
                if (2 * p > n + 1)
                    break;
                const Q pp = q(p);
                if (pp < qq)
                    continue;
                if (two_q <= pp) {
                    record(rep, np1 / (q(2) * pp) <= a_mid && a_tail, [&] { return "band p >= 2q at " + at(qf, n, p); });
                } else {
                    const Q rank = np1 / (q(4) * pp) + pp / q(2);  // (n+1)/(4p) + p/2
                    if (three_half_q <= pp)
                        record(rep, rank < b_mid && b_tail, [&] { return "band 3q/2 <= p < 2q at " + at(qf, n, p); });
                    else
                        record(rep, rank < c_mid && c_tail, [&] { return "band q <= p < 3q/2 at " + at(qf, n, p); });
                }
            }
        }
    }
    return rep;
}

bool scc5_inequality(std::int64_t n)
{
    // (n+1)/10 > log2(n + 1 - 12 (n+1)/15) + (n+1)/15 + 3
    const Fraction m(n + 1);
    const Fraction inner = m - Fraction(12) * m / Fraction(15);
    const Fraction exponent = m / Fraction(10) - m / Fraction(15) - Fraction(3);
    return pow2_greater(exponent, inner);
}

Scc5Report proof_sweep_scc5(std::int64_t n_max)
{
    if (n_max < 400)
        throw std::invalid_argument("proof_sweep_scc5 needs n_max >= 400");
    Scc5Report rep;
    rep.n_max = n_max;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        const bool holds = scc5_inequality(n);
        if (holds && rep.first_holding_n == 0)
            rep.first_holding_n = n;
        if (n >= 261 && !holds)
            rep.holds_from_261 = false;
    }

    // Affine identities checked at three affinely independent points (n, j).
    auto lhs = [](Fraction nj) {  // (1/6)(17 n_j/32 - 105/32) + 1
        return Fraction(1, 6) * (Fraction(17, 32) * nj - Fraction(105, 32)) + Fraction(1);
    };
    auto rhs = [](Fraction n, Fraction j) { return (n + Fraction(1)) / Fraction(10) + Fraction(1) - j - Fraction(5); };
    auto closing = [](Fraction n, Fraction j) {
        return Fraction(11, 960) * n + j / Fraction(16) - (Fraction(5) - Fraction(35, 64) - Fraction(1, 10));
    };
    for (auto [n, j] : {std::pair{0, 0}, std::pair{1, 0}, std::pair{0, 1}}) {
        const Fraction fn(n), fj(j);
        const Fraction nj = fn - Fraction(12) * fj;
        if (rhs(fn, fj) - lhs(nj) != closing(fn, fj))
            rep.reduction_identities = false;
    }
    // dim N4 <= n_j - k(1 + 1/2 + 1/4 + 1/8) with k = (n_j + 7)/4 equals 17 n_j/32 - 105/32.
    for (std::int64_t nj : {0, 1}) {
        const Fraction k = (Fraction(nj) + Fraction(7)) / Fraction(4);
        if (Fraction(nj) - k * Fraction(15, 8) != Fraction(17, 32) * Fraction(nj) - Fraction(105, 32))
            rep.reduction_identities = false;
    }
    rep.closing_inequality = closing(Fraction(400), Fraction(0)) >= Fraction(0);
    rep.pass = rep.holds_from_261 && rep.reduction_identities && rep.closing_inequality;
    return rep;
}

SweepReport proof_sweep_ccslog_induction(std::int64_t n_max)
{
    if (n_max < 49)
        throw std::invalid_argument("proof_sweep_ccslog_induction needs n_max >= 49");
    SweepReport rep;
    const auto primes = odd_primes_upto((n_max + 1) / 2);
    for (std::int64_t n = 53; n <= n_max; n += 4) {
        std::int64_t r = -6;
        while (!coding_bounds::exact_log_ge(4, 3, r + 6, n + 3))
            ++r;
        auto at_n = [&] { return "n=" + std::to_string(n) + " r=" + std::to_string(r); };
        record(rep, r >= 4, [&] { return "r >= 4 at " + at_n(); });
        const Q np1 = q(n + 1), rr = q(r);
        for (std::int64_t p : primes) {
            if (2 * p > n + 1)
                break;
            const Q pp = q(p), half_p = q(p, 2);
            auto where = [&] { return at_n() + " p=" + std::to_string(p); };
            if (p <= 7) {
                const Q x = rr - half_p;
                record(rep, q(4) + half_p <= rr && q(3, 4) * x <= x - q(1), [&] { return "branch p <= 7 at " + where(); });
            }
            if (n + 1 <= 2 * p * p)
                record(rep, np1 / (q(2) * pp) <= np1 / (q(4) * pp) + half_p, [&] { return "branch n+1 <= 2p^2 at " + where(); });
            if (p > 7 && 2 * p * p <= n + 1) {
                const Q y = np1 / (q(4) * pp);
                record(rep, n + 1 >= 16 * p && q(3, 4) * y + half_p <= y + half_p - q(1),
                       [&] { return "branch p > 7, 2p^2 <= n+1 at " + where(); });
            }
        }
    }
    return rep;
}

}  // namespace spaceform::obstruction
