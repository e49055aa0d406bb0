#include "spaceform/groups.hpp"

#include <numeric>
#include <sstream>

namespace spaceform::groups {

namespace {

BigInt mod(const BigInt& x, const BigInt& m)
{
    BigInt r = x % m;
    if (r < 0)
        r += m;
    return r;
}

std::string triple_str(const BigInt& a, const BigInt& b, const BigInt& c)
{
    std::ostringstream os;
    os << "(" << a << ", " << b << ", " << c << ")";
    return os.str();
}

}  // namespace

bool is_admissible(const BigInt& a, const BigInt& b, const BigInt& c)
{
    if (a < 1 || b < 1 || c < 1)
        return false;
    return gcd(a, b) == 1 && gcd(a, c - 1) == 1 && pow_mod(c, b, a) == mod(BigInt(1), a);
}

AdmissibleTriple AdmissibleTriple::make(const BigInt& a, const BigInt& b, const BigInt& c)
{
    if (a < 1 || b < 1 || c < 1)
        throw NotAdmissible("triple " + triple_str(a, b, c) + " must consist of positive integers");
    if (gcd(a, b) != 1)
        throw NotAdmissible("triple " + triple_str(a, b, c) + ": gcd(a, b) != 1");
    if (gcd(a, c - 1) != 1)
        throw NotAdmissible("triple " + triple_str(a, b, c) + ": gcd(a, c - 1) != 1");
    if (pow_mod(c, b, a) != mod(BigInt(1), a))
        throw NotAdmissible("triple " + triple_str(a, b, c) + ": c^b != 1 mod a");
    return {a, b, c};
}

std::string SpaceFormGroup::name() const
{
    std::ostringstream os;
    os << "Gamma" << triple_str(a(), b(), c());
    return os.str();
}

SpaceFormGroup classify(const AdmissibleTriple& triple)
{
    const auto checked = AdmissibleTriple::make(triple.a, triple.b, triple.c);
    return SpaceFormGroup(checked, multiplicative_order(checked.c, checked.a));
}

GroupElement reduce(const GroupElement& g, const SpaceFormGroup& group)
{
    return {mod(g.i, group.a()), mod(g.j, group.b())};
}

// alpha^i1 beta^j1 alpha^i2 beta^j2 = alpha^(i1 + c^j1 i2) beta^(j1 + j2)
GroupElement multiply(const GroupElement& g, const GroupElement& h, const SpaceFormGroup& group)
{
    const auto x = reduce(g, group);
    const auto y = reduce(h, group);
    return {mod(x.i + pow_mod(group.c(), x.j, group.a()) * y.i, group.a()), mod(x.j + y.j, group.b())};
}

// (alpha^i beta^j)^-1 = alpha^(-c^(-j) i) beta^(-j), and c^(-j) = c^(b-j).
GroupElement inverse(const GroupElement& g, const SpaceFormGroup& group)
{
    const auto x = reduce(g, group);
    const BigInt back = mod(-x.j, group.b());
    return {mod(-pow_mod(group.c(), back, group.a()) * x.i, group.a()), back};
}

GroupElement power(const GroupElement& g, BigInt exponent, const SpaceFormGroup& group)
{
    GroupElement base = reduce(g, group);
    if (exponent < 0) {
        base = inverse(base, group);
        exponent = -exponent;
    }
    GroupElement result{0, 0};
    while (exponent > 0) {
        if ((exponent & 1) != 0)
            result = multiply(result, base, group);
        exponent >>= 1;
        if (exponent > 0)
            base = multiply(base, base, group);
    }
    return result;
}

CyclicSubgroup cyclic_subgroup_index(const SpaceFormGroup& group)
{
    GroupElement gen_alpha = reduce(alpha(), group);
    GroupElement gen_beta_d = reduce({0, group.d()}, group);
    return {group.d(), {gen_alpha, gen_beta_d}, group.order() / group.d()};
}

// ------------------------------------------------------------------ tables

MetacyclicTable::MetacyclicTable(const SpaceFormGroup& group, std::uint64_t max_order)
{
    if (group.order() > max_order)
        throw CapExceeded(group.name() + " has order " + group.order().str() + " above the cap " +
                          std::to_string(max_order));
    a_ = static_cast<std::uint64_t>(group.a());
    b_ = static_cast<std::uint64_t>(group.b());
    d_ = static_cast<std::uint64_t>(group.d());
    narrow_ = a_ * b_ < (1u << 16);
    const std::uint64_t c = static_cast<std::uint64_t>(mod(group.c(), group.a()));
    c_pow_.resize(b_);
    std::uint64_t cur = 1 % a_;
    for (std::uint64_t j = 0; j < b_; ++j) {
        c_pow_[j] = cur;
        cur = static_cast<std::uint64_t>(static_cast<unsigned __int128>(cur) * c % a_);
    }
}

std::size_t MetacyclicTable::inv(std::size_t x) const
{
    const auto [i, j] = coords(x);
    const std::uint64_t back = (b_ - j) % b_;
    const std::uint64_t t = static_cast<std::uint64_t>(static_cast<unsigned __int128>(c_pow_[back]) * i % a_);
    return index((a_ - t) % a_, back);
}

std::vector<std::size_t> MetacyclicTable::torsion_candidates(std::uint64_t p) const
{
    const std::uint64_t step = b_ / std::gcd(b_, p);
    std::vector<std::size_t> out;
    for (std::uint64_t i = 0; i < a_; ++i)
        for (std::uint64_t j = 0; j < b_; j += step)
            out.push_back(index(i, j));
    return out;
}

CayleyTable::CayleyTable(std::vector<std::vector<std::size_t>> table) : table_(std::move(table))
{
    const std::size_t n = table_.size();
    if (n == 0)
        throw std::invalid_argument("CayleyTable: empty table");
    for (const auto& row : table_) {
        if (row.size() != n)
            throw std::invalid_argument("CayleyTable: table is not square");
        for (std::size_t v : row)
            if (v >= n)
                throw std::invalid_argument("CayleyTable: entry out of range");
    }
    bool found = false;
    for (std::size_t e = 0; e < n && !found; ++e) {
        bool is_identity = true;
        for (std::size_t x = 0; x < n && is_identity; ++x)
            is_identity = table_[e][x] == x && table_[x][e] == x;
        if (is_identity) {
            identity_ = e;
            found = true;
        }
    }
    if (!found)
        throw std::invalid_argument("CayleyTable: no identity element");
    inverse_.assign(n, n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (table_[x][y] == identity_ && table_[y][x] == identity_)
                inverse_[x] = y;
    for (std::size_t v : inverse_)
        if (v == n)
            throw std::invalid_argument("CayleyTable: element without inverse");
}

std::vector<std::size_t> CayleyTable::generators() const
{
    std::vector<std::size_t> all(size());
    for (std::size_t x = 0; x < all.size(); ++x)
        all[x] = x;
    return all;
}

CayleyTable direct_product_table(std::size_t m, std::size_t n)
{
    std::vector<std::vector<std::size_t>> t(m * n, std::vector<std::size_t>(m * n));
    for (std::size_t x = 0; x < m * n; ++x)
        for (std::size_t y = 0; y < m * n; ++y)
            t[x][y] = ((x / n + y / n) % m) * n + (x % n + y % n) % n;
    return CayleyTable(std::move(t));
}

bool has_noncyclic_abelian_subgroup(const SpaceFormGroup& group, std::uint64_t max_order)
{
    return has_noncyclic_abelian_subgroup(MetacyclicTable(group, max_order));
}

StructureReport audit_structure(const MetacyclicTable& g)
{
    StructureReport r;
    const std::size_t al = g.index(1, 0);
    const std::size_t be = g.index(0, 1);
    const std::size_t e = g.identity();

    r.relations_hold = element_power(g, al, g.a()) == e && element_power(g, be, g.b()) == e &&
                       g.mul(g.mul(be, al), g.inv(be)) == element_power(g, al, g.c());
    r.generates_all = generated_subgroup(g, {al, be}).size() == g.size();

    const std::size_t be_d = element_power(g, be, g.d());
    const auto sub = generated_subgroup(g, {al, be_d});
    r.subgroup_cyclic = element_order(g, g.mul(al, be_d)) == sub.size();
    r.subgroup_normal = is_normalized_by(g, sub, {al, be});
    r.subgroup_index = sub.empty() ? 0 : g.size() / sub.size();
    r.noncyclic_abelian = has_noncyclic_abelian_subgroup(g);
    return r;
}

// ------------------------------------------------------------- periodicity

std::string to_string(PeriodSource source)
{
    switch (source) {
    case PeriodSource::FreeSphereAction:
        return "free_sphere_action";
    case PeriodSource::CdMembership:
        return "cd_membership";
    case PeriodSource::GcdCombination:
        return "gcd_combination";
    }
    return "unknown";
}

PeriodicityRecord cohomology_period(const SpaceFormGroup& group) { return {2 * group.d(), PeriodSource::CdMembership}; }

PeriodicityRecord combine_periods(const BigInt& d1, const BigInt& d2)
{
    for (const BigInt* d : {&d1, &d2})
        if (*d < 2 || (*d % 2) != 0)
            throw std::invalid_argument("combine_periods: periods must be even and >= 2, got " + d->str());
    return {gcd(d1, d2), PeriodSource::GcdCombination};
}

namespace {

struct Residue {
    std::uint64_t c;
    std::uint64_t order;  // multiplicative order of c mod a
};

// Residues 1 <= c < a with gcd(a, c) = gcd(a, c - 1) = 1 (c = 1 when a = 1)
// whose multiplicative order is at most max_order, so that c^b = 1 mod a
// for some b <= max_order reduces to order | b.
std::vector<Residue> residues_for(std::uint64_t a, std::uint64_t max_order)
{
    if (a == 1)
        return {{1, 1}};
    std::vector<std::uint64_t> primes;
    for (std::uint64_t m = a, q = 2; m > 1; ++q) {
        if (q * q > m)
            q = m;
        if (m % q == 0) {
            primes.push_back(q);
            while (m % q == 0)
                m /= q;
        }
    }
    std::vector<Residue> out;
    for (std::uint64_t c = 2; c < a; ++c) {
        bool unit = true;
        for (std::uint64_t q : primes)
            if (c % q <= 1) {
                unit = false;
                break;
            }
        if (!unit)
            continue;
        unsigned __int128 x = c;
        for (std::uint64_t k = 1; k <= max_order; ++k) {
            if (x == 1) {
                out.push_back({c, k});
                break;
            }
            x = x * c % a;
        }
    }
    return out;
}

template <typename Emit>
void for_each_residue(std::uint64_t a, std::uint64_t b, const std::vector<Residue>& residues,
                      std::optional<std::uint64_t> d_filter, Emit&& emit)
{
    if (std::gcd(a, b) != 1)
        return;
    for (const auto& [c, order] : residues) {
        if (b % order != 0 || (d_filter && order != *d_filter))
            continue;
        emit(classify({a, b, c}));
    }
}

}  // namespace

std::vector<SpaceFormGroup> enumerate_admissible(std::uint64_t a_max, std::uint64_t b_max,
                                                 std::optional<std::uint64_t> d_filter)
{
    std::vector<SpaceFormGroup> out;
    for (std::uint64_t a = 1; a <= a_max; ++a) {
        const auto residues = residues_for(a, b_max);
        for (std::uint64_t b = 1; b <= b_max; ++b)
            for_each_residue(a, b, residues, d_filter, [&](SpaceFormGroup g) { out.push_back(std::move(g)); });
    }
    return out;
}

std::vector<SpaceFormGroup> enumerate_by_order(std::uint64_t max_order, std::optional<std::uint64_t> d_filter)
{
    std::vector<SpaceFormGroup> out;
    for (std::uint64_t a = 1; a <= max_order; ++a) {
        const auto residues = residues_for(a, max_order / a);
        for (std::uint64_t b = 1; a * b <= max_order; ++b)
            for_each_residue(a, b, residues, d_filter, [&](SpaceFormGroup g) { out.push_back(std::move(g)); });
    }
    return out;
}

}  // namespace spaceform::groups
