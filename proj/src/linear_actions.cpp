#include "spaceform/linear_actions.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace spaceform::linear_actions {

// ------------------------------------------------------------ RationalAngle

RationalAngle::RationalAngle(std::int64_t num, std::int64_t den)
{
    if (den <= 0)
        throw std::invalid_argument("RationalAngle: denominator must be positive");
    num %= den;
    if (num < 0)
        num += den;
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

RationalAngle RationalAngle::operator+(const RationalAngle& o) const
{
    const std::int64_t g = std::gcd(den_, o.den_);
    const __int128 den = static_cast<__int128>(den_ / g) * o.den_;
    const __int128 num = static_cast<__int128>(num_) * (o.den_ / g) + static_cast<__int128>(o.num_) * (den_ / g);
    if (den > INT64_MAX)
        throw std::overflow_error("RationalAngle: denominator overflow");
    return RationalAngle(static_cast<std::int64_t>(num % den), static_cast<std::int64_t>(den));
}

RationalAngle RationalAngle::operator-() const { return RationalAngle(-num_, den_); }

RationalAngle RationalAngle::times(std::int64_t k) const
{
    const __int128 num = static_cast<__int128>(num_) * k % den_;
    return RationalAngle(static_cast<std::int64_t>(num), den_);
}

std::string RationalAngle::str() const
{
    if (num_ == 0)
        return "0";
    return std::to_string(num_) + "/" + std::to_string(den_);
}

// ---------------------------------------------------- MonomialRotationMatrix

namespace {

void require_same_size(const MonomialRotationMatrix& x, const MonomialRotationMatrix& y)
{
    if (x.blocks() != y.blocks())
        throw std::invalid_argument("monomial matrices of different sizes: " + std::to_string(x.blocks()) + " vs " +
                                    std::to_string(y.blocks()));
}

}  // namespace

MonomialRotationMatrix identity_matrix(std::size_t blocks)
{
    MonomialRotationMatrix m;
    m.perm.resize(blocks);
    std::iota(m.perm.begin(), m.perm.end(), std::size_t{0});
    m.angle.assign(blocks, RationalAngle{});
    return m;
}

MonomialRotationMatrix diagonal_matrix(std::vector<RationalAngle> angles)
{
    auto m = identity_matrix(angles.size());
    m.angle = std::move(angles);
    return m;
}

// Plane k goes to y.perm[k] (rotated there by y.angle), then on to
// x.perm[y.perm[k]] where x adds its own rotation.
MonomialRotationMatrix multiply_matrices(const MonomialRotationMatrix& x, const MonomialRotationMatrix& y)
{
    require_same_size(x, y);
    const std::size_t m = x.blocks();
    MonomialRotationMatrix r;
    r.perm.resize(m);
    r.angle.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t mid = y.perm[k];
        const std::size_t dst = x.perm[mid];
        r.perm[k] = dst;
        r.angle[dst] = x.angle[dst] + y.angle[mid];
    }
    return r;
}

MonomialRotationMatrix inverse(const MonomialRotationMatrix& x)
{
    const std::size_t m = x.blocks();
    MonomialRotationMatrix r;
    r.perm.resize(m);
    r.angle.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        r.perm[x.perm[k]] = k;
        r.angle[k] = -x.angle[x.perm[k]];
    }
    return r;
}

MonomialRotationMatrix power(const MonomialRotationMatrix& x, std::uint64_t e)
{
    auto result = identity_matrix(x.blocks());
    auto base = x;
    while (e) {
        if (e & 1)
            result = multiply_matrices(result, base);
        e >>= 1;
        if (e)
            base = multiply_matrices(base, base);
    }
    return result;
}

MonomialRotationMatrix block_sum(const MonomialRotationMatrix& x, const MonomialRotationMatrix& y)
{
    MonomialRotationMatrix r = x;
    for (std::size_t k = 0; k < y.blocks(); ++k) {
        r.perm.push_back(y.perm[k] + x.blocks());
        r.angle.push_back(y.angle[k]);
    }
    return r;
}

bool commute(const MonomialRotationMatrix& x, const MonomialRotationMatrix& y)
{
    return multiply_matrices(x, y) == multiply_matrices(y, x);
}

bool eigen_angle_zero(const MonomialRotationMatrix& x)
{
    const std::size_t m = x.blocks();
    std::vector<bool> seen(m, false);
    for (std::size_t start = 0; start < m; ++start) {
        if (seen[start])
            continue;
        RationalAngle total;
        std::size_t k = start;
        do {
            seen[k] = true;
            k = x.perm[k];
            total = total + x.angle[k];
        } while (k != start);
        if (total.is_zero())
            return true;
    }
    return false;
}

std::vector<double> to_dense(const MonomialRotationMatrix& x)
{
    const std::size_t m = x.blocks();
    const std::size_t dim = 2 * m;
    std::vector<double> out(dim * dim, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t s = x.perm[k];
        const double t = 2.0 * std::numbers::pi * static_cast<double>(x.angle[s].num()) /
                         static_cast<double>(x.angle[s].den());
        const double c = std::cos(t), sn = std::sin(t);
        out[(2 * s) * dim + 2 * k] = c;
        out[(2 * s) * dim + 2 * k + 1] = -sn;
        out[(2 * s + 1) * dim + 2 * k] = sn;
        out[(2 * s + 1) * dim + 2 * k + 1] = c;
    }
    return out;
}

// ------------------------------------------------------------ construction

groups::AdmissibleTriple construct_scc_params(std::int64_t p, std::int64_t ceiling)
{
    if (p < 3 || !is_prime(static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("construct_scc_params: p must be an odd prime, got " + std::to_string(p));
    for (std::int64_t a = p + 1; a <= ceiling; a += p) {
        if (!is_prime(static_cast<std::uint64_t>(a)))
            continue;
        // p is prime, so any c != 1 with c^p = 1 has order exactly p.
        for (std::int64_t c = 2; c < a; ++c)
            if (pow_mod(c, p, a) == 1)
                return groups::AdmissibleTriple::make(a, p * p, c);
    }
    throw std::runtime_error("construct_scc_params: no prime = 1 mod " + std::to_string(p) + " below " +
                             std::to_string(ceiling));
}

std::pair<MonomialRotationMatrix, MonomialRotationMatrix> rep_generators(const groups::SpaceFormGroup& group,
                                                                          BetaConvention convention)
{
    if (group.d() < 2 || group.a() > INT64_MAX)
        throw std::invalid_argument("rep_generators: need a non-cyclic group with a < 2^63, got " + group.name());
    const auto p = static_cast<std::size_t>(group.d());
    const auto a = static_cast<std::int64_t>(group.a());
    const auto c = static_cast<std::int64_t>(group.c() % group.a());

    std::vector<RationalAngle> alpha_angles;
    std::int64_t ck = 1;
    for (std::size_t k = 0; k < p; ++k) {
        alpha_angles.emplace_back(ck, a);
        ck = static_cast<std::int64_t>(static_cast<__int128>(ck) * c % a);
    }

    MonomialRotationMatrix beta = identity_matrix(p);
    const RationalAngle corner(1, static_cast<std::int64_t>(p));
    for (std::size_t k = 0; k < p; ++k)
        beta.perm[k] = convention == BetaConvention::Standard ? (k + p - 1) % p : (k + 1) % p;
    beta.angle[convention == BetaConvention::Standard ? p - 1 : 0] = corner;
    return {diagonal_matrix(std::move(alpha_angles)), beta};
}

MonomialRotationMatrix SphereActionBundle::rep(std::uint64_t i, std::uint64_t j) const
{
    return multiply_matrices(power(alpha, i), power(beta, j));
}

SphereActionBundle build_sphere_action(std::int64_t p, std::int64_t n, BetaConvention convention)
{
    if (n < 1 || (n + 1) % (2 * p) != 0)
        throw std::invalid_argument("build_sphere_action: 2p must divide n+1 (p=" + std::to_string(p) +
                                    ", n=" + std::to_string(n) + ")");
    auto group = groups::classify(construct_scc_params(p));
    const auto [a_img, b_img] = rep_generators(group, convention);
    const std::int64_t r = (n + 1) / (2 * p);

    SphereActionBundle bundle{group, p, n, r, a_img, b_img, {}};
    for (std::int64_t k = 1; k < r; ++k) {
        bundle.alpha = block_sum(bundle.alpha, a_img);
        bundle.beta = block_sum(bundle.beta, b_img);
    }
    for (std::size_t s = 0; s < bundle.blocks(); ++s) {
        std::vector<std::int64_t> w(static_cast<std::size_t>(r), 0);
        w[s / static_cast<std::size_t>(p)] = 1;
        bundle.torus_weights.push_back(std::move(w));
    }
    return bundle;
}

MonomialRotationMatrix torus_matrix(const SphereActionBundle& bundle, const std::vector<RationalAngle>& theta)
{
    if (theta.size() != static_cast<std::size_t>(bundle.torus_rank))
        throw std::invalid_argument("torus element has " + std::to_string(theta.size()) + " coordinates, rank is " +
                                    std::to_string(bundle.torus_rank));
    std::vector<RationalAngle> angles(bundle.blocks());
    for (std::size_t s = 0; s < angles.size(); ++s)
        for (std::size_t k = 0; k < theta.size(); ++k)
            angles[s] = angles[s] + theta[k].times(bundle.torus_weights[s][k]);
    return diagonal_matrix(std::move(angles));
}

bool is_free_representation(const SphereActionBundle& bundle, std::uint64_t max_order)
{
    const groups::MetacyclicTable table(bundle.group, max_order);  // enforces the cap
    const std::uint64_t a = table.a(), b = table.b();
    std::vector<MonomialRotationMatrix> beta_pow{identity_matrix(bundle.blocks())};
    for (std::uint64_t j = 1; j < b; ++j)
        beta_pow.push_back(multiply_matrices(beta_pow.back(), bundle.beta));
    MonomialRotationMatrix alpha_i = identity_matrix(bundle.blocks());
    for (std::uint64_t i = 0; i < a; ++i) {
        for (std::uint64_t j = 0; j < b; ++j)
            if ((i != 0 || j != 0) && eigen_angle_zero(multiply_matrices(alpha_i, beta_pow[j])))
                return false;
        alpha_i = multiply_matrices(alpha_i, bundle.alpha);
    }
    return true;
}

bool commutes_with_torus(const SphereActionBundle& bundle, const std::vector<RationalAngle>& theta)
{
    const auto t = torus_matrix(bundle, theta);
    return commute(bundle.alpha, t) && commute(bundle.beta, t);
}

bool diagonal_circle_is_free(const SphereActionBundle& bundle)
{
    for (const auto& w : bundle.torus_weights) {
        const std::int64_t total = std::accumulate(w.begin(), w.end(), std::int64_t{0});
        if (total != 1 && total != -1)
            return false;
    }
    return !bundle.torus_weights.empty();
}

groups::PeriodicityRecord sphere_action_period(const SphereActionBundle& bundle, std::uint64_t max_order)
{
    if (!is_free_representation(bundle, max_order))
        throw std::logic_error("sphere_action_period: the action of " + bundle.group.name() + " is not free");
    return {bundle.n + 1, groups::PeriodSource::FreeSphereAction};
}

}  // namespace spaceform::linear_actions
