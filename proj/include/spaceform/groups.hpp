#pragma once

// Metacyclic groups Gamma(a, b, c) = < alpha, beta | alpha^a = beta^b = 1,
// beta alpha beta^-1 = alpha^c >, their families C_d, and the periodicity
// arithmetic of their integral cohomology.

#include "spaceform/arith.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spaceform::groups {

/// Default bound on |Gamma| for anything that enumerates group elements.
inline constexpr std::uint64_t kDefaultMaxGroupOrder = 1'000'000;

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotAdmissible : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// gcd(a,b) = 1, gcd(a,c-1) = 1 and c^b = 1 mod a.
bool is_admissible(const BigInt& a, const BigInt& b, const BigInt& c);

struct AdmissibleTriple {
    BigInt a;
    BigInt b;
    BigInt c;

    /// Throws NotAdmissible unless the triple satisfies is_admissible.
    static AdmissibleTriple make(const BigInt& a, const BigInt& b, const BigInt& c);

    bool operator==(const AdmissibleTriple&) const = default;
};

class SpaceFormGroup {
public:
    const AdmissibleTriple& triple() const { return triple_; }
    const BigInt& a() const { return triple_.a; }
    const BigInt& b() const { return triple_.b; }
    const BigInt& c() const { return triple_.c; }
    /// Order of c in the units mod a (1 when a = 1): Gamma lies in C_d.
    const BigInt& d() const { return d_; }
    BigInt order() const { return triple_.a * triple_.b; }
    bool is_cyclic() const { return d_ == 1; }

    std::string name() const;

    bool operator==(const SpaceFormGroup&) const = default;

private:
    friend SpaceFormGroup classify(const AdmissibleTriple& triple);
    SpaceFormGroup(AdmissibleTriple triple, BigInt d) : triple_(std::move(triple)), d_(std::move(d)) {}

    AdmissibleTriple triple_;
    BigInt d_;
};

/// Computes d. Re-validates admissibility and throws NotAdmissible.
SpaceFormGroup classify(const AdmissibleTriple& triple);

/// Normal form alpha^i beta^j with 0 <= i < a, 0 <= j < b.
struct GroupElement {
    BigInt i;
    BigInt j;

    bool operator==(const GroupElement&) const = default;
};

GroupElement reduce(const GroupElement& g, const SpaceFormGroup& group);
GroupElement multiply(const GroupElement& g, const GroupElement& h, const SpaceFormGroup& group);
GroupElement inverse(const GroupElement& g, const SpaceFormGroup& group);
GroupElement power(const GroupElement& g, BigInt exponent, const SpaceFormGroup& group);
inline GroupElement alpha() { return {1, 0}; }
inline GroupElement beta() { return {0, 1}; }

struct CyclicSubgroup {
    BigInt index;                              // = d
    std::pair<GroupElement, GroupElement> generators;  // (alpha, beta^d)
    BigInt order;                              // = a*b/d
};

/// The normal cyclic subgroup <alpha, beta^d> of index d.
CyclicSubgroup cyclic_subgroup_index(const SpaceFormGroup& group);

// ------------------------------------------------------------------ tables
//
// Enumerable groups expose elements as indices 0..size()-1 with
// identity(), mul() and inv(). Both table types below model this.

/// Gamma(a,b,c) with element alpha^i beta^j stored as index i*b + j.
class MetacyclicTable {
public:
    /// Throws CapExceeded when a*b > max_order.
    explicit MetacyclicTable(const SpaceFormGroup& group, std::uint64_t max_order = kDefaultMaxGroupOrder);

    std::size_t size() const { return static_cast<std::size_t>(a_ * b_); }
    std::size_t identity() const { return 0; }
    std::size_t mul(std::size_t x, std::size_t y) const
    {
        if (narrow_) {
            // Same formula in 32-bit words; a*b < 2^16 keeps every product in range.
            const auto b = static_cast<std::uint32_t>(b_), a = static_cast<std::uint32_t>(a_);
            const auto xs = static_cast<std::uint32_t>(x), ys = static_cast<std::uint32_t>(y);
            const std::uint32_t i1 = xs / b, j1 = xs - i1 * b, i2 = ys / b, j2 = ys - i2 * b;
            const std::uint32_t i = (i1 + static_cast<std::uint32_t>(c_pow_[j1]) * i2) % a;
            std::uint32_t j = j1 + j2;
            if (j >= b)
                j -= b;
            return i * b + j;
        }
        const std::uint64_t i1 = x / b_, j1 = x - i1 * b_, i2 = y / b_, j2 = y - i2 * b_;
        const std::uint64_t i = (i1 + c_pow_[j1] * i2) % a_;
        std::uint64_t j = j1 + j2;
        if (j >= b_)
            j -= b_;
        return static_cast<std::size_t>(i * b_ + j);
    }
    std::size_t inv(std::size_t x) const;

    std::size_t index(std::uint64_t i, std::uint64_t j) const { return static_cast<std::size_t>((i % a_) * b_ + j % b_); }
    std::pair<std::uint64_t, std::uint64_t> coords(std::size_t x) const { return {x / b_, x % b_}; }
    std::vector<std::size_t> generators() const { return {index(1, 0), index(0, 1)}; }

    std::uint64_t a() const { return a_; }
    std::uint64_t b() const { return b_; }
    std::uint64_t c() const { return c_pow_.size() > 1 ? c_pow_[1] : 1; }
    std::uint64_t d() const { return d_; }
    /// c^j mod a for 0 <= j < b.
    std::uint64_t c_pow(std::uint64_t j) const { return c_pow_[j % b_]; }

    /// Elements whose image in Gamma/<alpha> = Z_b is killed by p: the only
    /// ones that can satisfy x^p = 1.
    std::vector<std::size_t> torsion_candidates(std::uint64_t p) const;

private:
    std::uint64_t a_, b_, d_;
    bool narrow_ = false;
    std::vector<std::uint64_t> c_pow_;
};

/// A finite group given by its full multiplication table (test fixtures).
class CayleyTable {
public:
    /// Validates closure, identity and inverses. Throws std::invalid_argument.
    explicit CayleyTable(std::vector<std::vector<std::size_t>> table);

    std::size_t size() const { return table_.size(); }
    std::size_t identity() const { return identity_; }
    std::size_t mul(std::size_t x, std::size_t y) const { return table_[x][y]; }
    std::size_t inv(std::size_t x) const { return inverse_[x]; }
    /// Every element; tables here are small.
    std::vector<std::size_t> generators() const;

private:
    std::vector<std::vector<std::size_t>> table_;
    std::size_t identity_ = 0;
    std::vector<std::size_t> inverse_;
};

/// Z_m x Z_n as an explicit table, element (u, v) at index u*n + v.
CayleyTable direct_product_table(std::size_t m, std::size_t n);

template <typename Group>
std::size_t element_power(const Group& g, std::size_t x, std::uint64_t e)
{
    std::size_t result = g.identity();
    while (e) {
        if (e & 1)
            result = g.mul(result, x);
        e >>= 1;
        if (e)
            x = g.mul(x, x);
    }
    return result;
}

template <typename Group>
std::uint64_t element_order(const Group& g, std::size_t x)
{
    std::uint64_t k = 1;
    for (std::size_t y = x; y != g.identity(); y = g.mul(y, x))
        ++k;
    return k;
}

/// Exhaustive search for two commuting elements of the same prime order p
/// generating distinct subgroups, i.e. a copy of Z_p x Z_p. Returns the
/// offending prime, or nullopt when none exists.
///
/// Every element of order p is visited. Any such pair can be conjugated so
/// that its first element generates a fixed representative of its subgroup's
/// conjugacy class, so only those representatives are paired against all
/// order-p elements.
template <typename Group>
std::optional<std::uint64_t> find_noncyclic_abelian_subgroup(const Group& g)
{
    const std::size_t n = g.size();
    const std::vector<std::size_t> gens = g.generators();
    std::vector<std::size_t> gens_inv;
    for (std::size_t s : gens)
        gens_inv.push_back(g.inv(s));

    for (const auto& [prime, mult] : factorize(BigInt(n))) {
        (void)mult;
        const auto p = static_cast<std::uint64_t>(prime);
        std::vector<std::size_t> candidates;
        if constexpr (requires { g.torsion_candidates(p); }) {
            candidates = g.torsion_candidates(p);
        } else {
            candidates.resize(n);
            for (std::size_t x = 0; x < n; ++x)
                candidates[x] = x;
        }
        std::vector<std::size_t> order_p;
        for (std::size_t x : candidates)
            if (x != g.identity() && element_power(g, x, p) == g.identity())
                order_p.push_back(x);

        std::vector<bool> classified(n, false), in_span(n, false);
        for (std::size_t x : order_p) {
            if (classified[x])
                continue;
            std::vector<std::size_t> span;
            for (std::size_t y = x; y != g.identity(); y = g.mul(y, x))
                span.push_back(y);
            // Conjugates of every generator of <x>: the class of the subgroup.
            std::vector<std::size_t> orbit;
            for (std::size_t y : span)
                if (!classified[y]) {
                    classified[y] = true;
                    orbit.push_back(y);
                }
            for (std::size_t k = 0; k < orbit.size(); ++k)
                for (std::size_t s = 0; s < gens.size(); ++s) {
                    const std::size_t y = g.mul(g.mul(gens[s], orbit[k]), gens_inv[s]);
                    if (!classified[y]) {
                        classified[y] = true;
                        orbit.push_back(y);
                    }
                }
            for (std::size_t y : span)
                in_span[y] = true;
            bool found = false;
            for (std::size_t y : order_p)
                if (!in_span[y] && g.mul(x, y) == g.mul(y, x)) {
                    found = true;
                    break;
                }
            for (std::size_t y : span)
                in_span[y] = false;
            if (found)
                return p;
        }
    }
    return std::nullopt;
}

template <typename Group>
bool has_noncyclic_abelian_subgroup(const Group& g)
{
    return find_noncyclic_abelian_subgroup(g).has_value();
}

/// Builds the table (subject to max_order) and runs the pair search.
bool has_noncyclic_abelian_subgroup(const SpaceFormGroup& group, std::uint64_t max_order = kDefaultMaxGroupOrder);

/// Closure of a generating set, by breadth-first multiplication.
template <typename Group>
std::vector<std::size_t> generated_subgroup(const Group& g, const std::vector<std::size_t>& gens)
{
    std::vector<bool> in(g.size(), false);
    std::vector<std::size_t> elems{g.identity()};
    in[g.identity()] = true;
    for (std::size_t k = 0; k < elems.size(); ++k)
        for (std::size_t s : gens) {
            std::size_t y = g.mul(elems[k], s);
            if (!in[y]) {
                in[y] = true;
                elems.push_back(y);
            }
        }
    return elems;
}

/// g H g^-1 = H for every generator g of the ambient group.
template <typename Group>
bool is_normalized_by(const Group& g, const std::vector<std::size_t>& subgroup, const std::vector<std::size_t>& ambient_gens)
{
    std::vector<bool> in(g.size(), false);
    for (std::size_t h : subgroup)
        in[h] = true;
    for (std::size_t s : ambient_gens) {
        const std::size_t s_inv = g.inv(s);
        for (std::size_t h : subgroup)
            if (!in[g.mul(g.mul(s, h), s_inv)])
                return false;
    }
    return true;
}

struct StructureReport {
    bool relations_hold = false;      // alpha^a = beta^b = 1, beta alpha beta^-1 = alpha^c
    bool generates_all = false;       // <alpha, beta> has a*b elements
    bool subgroup_cyclic = false;     // <alpha, beta^d> has an element of full order
    bool subgroup_normal = false;
    std::uint64_t subgroup_index = 0;
    bool noncyclic_abelian = true;    // result of the Z_p x Z_p search

    bool ok(std::uint64_t d) const
    {
        return relations_hold && generates_all && subgroup_cyclic && subgroup_normal && subgroup_index == d &&
               !noncyclic_abelian;
    }
};

/// Exhaustive structural audit of an enumerable Gamma(a,b,c).
StructureReport audit_structure(const MetacyclicTable& table);

// ------------------------------------------------------------- periodicity

enum class PeriodSource { FreeSphereAction, CdMembership, GcdCombination };

std::string to_string(PeriodSource source);

struct PeriodicityRecord {
    BigInt period;
    PeriodSource source;

    /// 2-periodic cohomology forces Gamma to be cyclic.
    bool forces_cyclic() const { return period == 2; }
};

/// Gamma in C_d has 2d-periodic cohomology.
PeriodicityRecord cohomology_period(const SpaceFormGroup& group);

/// Periods d1 and d2 combine to gcd(d1, d2). Both must be even and >= 2.
PeriodicityRecord combine_periods(const BigInt& d1, const BigInt& d2);

/// All admissible triples with 1 <= a <= a_max, 1 <= b <= b_max, taking c
/// among the residues 1 <= c < a (c = 1 when a = 1), in (a, b, c) order.
std::vector<SpaceFormGroup> enumerate_admissible(std::uint64_t a_max, std::uint64_t b_max,
                                                 std::optional<std::uint64_t> d_filter = std::nullopt);

/// Same residue convention, restricted to a*b <= max_order.
std::vector<SpaceFormGroup> enumerate_by_order(std::uint64_t max_order,
                                               std::optional<std::uint64_t> d_filter = std::nullopt);

}  // namespace spaceform::groups
