#pragma once

// Free linear actions of Gamma(a, p, c) on S^n built from block monomial
// rotation matrices, together with the commuting torus T^r.
//
// A MonomialRotationMatrix on R^(2m) is a permutation of m planes followed
// by a rotation inside each destination plane. Every entry is exact: angles
// are rationals mod 1, measured in full turns.

#include "spaceform/arith.hpp"
#include "spaceform/groups.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace spaceform::linear_actions {

/// A rational number of full turns, reduced into [0, 1).
class RationalAngle {
public:
    RationalAngle() = default;
    RationalAngle(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    RationalAngle operator+(const RationalAngle& o) const;
    RationalAngle operator-() const;
    RationalAngle times(std::int64_t k) const;

    bool operator==(const RationalAngle&) const = default;
    std::string str() const;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

struct MonomialRotationMatrix {
    /// perm[k] is the plane that plane k is sent to.
    std::vector<std::size_t> perm;
    /// angle[s] is the rotation applied inside destination plane s.
    std::vector<RationalAngle> angle;

    std::size_t blocks() const { return perm.size(); }
    bool operator==(const MonomialRotationMatrix&) const = default;
};

MonomialRotationMatrix identity_matrix(std::size_t blocks);
MonomialRotationMatrix diagonal_matrix(std::vector<RationalAngle> angles);

/// x * y, i.e. y applied first.
MonomialRotationMatrix multiply_matrices(const MonomialRotationMatrix& x, const MonomialRotationMatrix& y);
MonomialRotationMatrix inverse(const MonomialRotationMatrix& x);
MonomialRotationMatrix power(const MonomialRotationMatrix& x, std::uint64_t e);
MonomialRotationMatrix block_sum(const MonomialRotationMatrix& x, const MonomialRotationMatrix& y);
bool commute(const MonomialRotationMatrix& x, const MonomialRotationMatrix& y);

/// Exact test for eigenvalue 1. On a permutation cycle of length l whose
/// angles sum to Theta, the eigenvalues are exp(2 pi i (+-Theta + t) / l) for
/// t = 0..l-1, so 1 occurs iff Theta is an integer.
bool eigen_angle_zero(const MonomialRotationMatrix& x);

/// Dense real matrix (row-major, 2m x 2m). Plane k spans coordinates 2k, 2k+1.
std::vector<double> to_dense(const MonomialRotationMatrix& x);

// ------------------------------------------------------------ construction

/// Smallest prime a = 1 mod p and the least c in (1, a) of order p mod a.
/// Searches a up to `ceiling` and throws std::runtime_error past it.
groups::AdmissibleTriple construct_scc_params(std::int64_t p, std::int64_t ceiling = 1'000'000);

enum class BetaConvention {
    /// beta sends plane k to plane k-1 and rotates plane p-1 by 1/p.
    /// This realizes beta alpha beta^-1 = alpha^c.
    Standard,
    /// The transpose layout: plane k to plane k+1, plane 0 rotated by 1/p.
    /// This realizes beta alpha beta^-1 = alpha^(c^-1) instead.
    Transposed,
};

/// The 2p-dimensional representation: alpha = diag(R(c^k / a)), k < p.
std::pair<MonomialRotationMatrix, MonomialRotationMatrix> rep_generators(
    const groups::SpaceFormGroup& group, BetaConvention convention = BetaConvention::Standard);

struct SphereActionBundle {
    groups::SpaceFormGroup group;
    std::int64_t p = 0;
    std::int64_t n = 0;
    std::int64_t torus_rank = 0;
    MonomialRotationMatrix alpha;
    MonomialRotationMatrix beta;
    /// weights[s][k]: coordinate k of T^r rotates plane s by weights[s][k] * theta_k.
    std::vector<std::vector<std::int64_t>> torus_weights;

    std::size_t blocks() const { return alpha.blocks(); }
    /// rho(alpha^i beta^j) = A^i B^j.
    MonomialRotationMatrix rep(std::uint64_t i, std::uint64_t j) const;
};

/// Sphere S^n with 2p | n + 1: r = (n+1)/(2p) copies of the representation,
/// and T^r acting on the k-th copy through its k-th coordinate.
SphereActionBundle build_sphere_action(std::int64_t p, std::int64_t n,
                                       BetaConvention convention = BetaConvention::Standard);

/// rho(theta_1, ..., theta_r).
MonomialRotationMatrix torus_matrix(const SphereActionBundle& bundle, const std::vector<RationalAngle>& theta);

/// Every nontrivial element acts without eigenvalue 1. Enumerates all
/// |Gamma| elements, subject to max_order.
bool is_free_representation(const SphereActionBundle& bundle,
                            std::uint64_t max_order = groups::kDefaultMaxGroupOrder);

/// rho(gamma) commutes with rho(theta) for the generators and the given theta.
bool commutes_with_torus(const SphereActionBundle& bundle, const std::vector<RationalAngle>& theta);

/// The diagonal circle theta -> (theta, ..., theta) acts freely iff every
/// plane turns with total weight +-1.
bool diagonal_circle_is_free(const SphereActionBundle& bundle);

/// Period n + 1 from the free action. Throws std::logic_error if the action
/// is not verified free.
groups::PeriodicityRecord sphere_action_period(const SphereActionBundle& bundle,
                                               std::uint64_t max_order = groups::kDefaultMaxGroupOrder);

}  // namespace spaceform::linear_actions
