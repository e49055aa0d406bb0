#include "spaceform/linear_actions.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <numeric>
#include <random>

using namespace spaceform;
using namespace spaceform::linear_actions;

namespace {

Eigen::MatrixXd dense(const MonomialRotationMatrix& x)
{
    const auto flat = to_dense(x);
    const auto dim = static_cast<Eigen::Index>(2 * x.blocks());
    Eigen::MatrixXd m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c)
            m(r, c) = flat[static_cast<std::size_t>(r * dim + c)];
    return m;
}

// Numeric eigenvalue test: some eigenvalue within tol of 1.
bool numeric_eigenvalue_one(const MonomialRotationMatrix& x, double tol = 1e-9)
{
    Eigen::EigenSolver<Eigen::MatrixXd> solver(dense(x), false);
    const auto ev = solver.eigenvalues();
    for (Eigen::Index k = 0; k < ev.size(); ++k)
        if (std::abs(ev[k] - std::complex<double>(1.0, 0.0)) < tol)
            return true;
    return false;
}

MonomialRotationMatrix random_matrix(std::mt19937& rng, std::size_t blocks)
{
    MonomialRotationMatrix m;
    m.perm.resize(blocks);
    std::iota(m.perm.begin(), m.perm.end(), std::size_t{0});
    std::shuffle(m.perm.begin(), m.perm.end(), rng);
    for (std::size_t k = 0; k < blocks; ++k)
        m.angle.emplace_back(static_cast<std::int64_t>(rng() % 12), 12);
    return m;
}

}  // namespace

TEST_CASE("rational angles reduce into [0, 1)")
{
    CHECK(RationalAngle(5, 4) == RationalAngle(1, 4));
    CHECK(RationalAngle(-1, 3) == RationalAngle(2, 3));
    CHECK((RationalAngle(1, 2) + RationalAngle(3, 4)) == RationalAngle(1, 4));
    CHECK((-RationalAngle(1, 3)) == RationalAngle(2, 3));
    CHECK(RationalAngle(2, 7).times(7).is_zero());
    CHECK(RationalAngle(3, 6).str() == "1/2");
    CHECK_THROWS(RationalAngle(1, 0));
}

TEST_CASE("monomial matrix algebra agrees with dense products")
{
    std::mt19937 rng(11);
    for (int t = 0; t < 60; ++t) {
        const std::size_t blocks = 1 + rng() % 4;
        const auto x = random_matrix(rng, blocks), y = random_matrix(rng, blocks);
        CHECK((dense(multiply_matrices(x, y)) - dense(x) * dense(y)).norm() < 1e-9);
        CHECK((dense(inverse(x)) * dense(x) - Eigen::MatrixXd::Identity(2 * blocks, 2 * blocks)).norm() < 1e-9);
        CHECK((dense(x).transpose() * dense(x) - Eigen::MatrixXd::Identity(2 * blocks, 2 * blocks)).norm() < 1e-9);
        CHECK(multiply_matrices(power(x, 5), x) == power(x, 6));
        CHECK(commute(x, y) == ((dense(x) * dense(y) - dense(y) * dense(x)).norm() < 1e-9));
    }
}

TEST_CASE("exact eigenvalue-one test agrees with numeric eigenvalues")
{
    std::mt19937 rng(3);
    int with_one = 0;
    for (int t = 0; t < 300; ++t) {
        const auto x = random_matrix(rng, 1 + rng() % 5);
        const bool exact = eigen_angle_zero(x);
        with_one += exact;
        CHECK(exact == numeric_eigenvalue_one(x, 1e-6));
    }
    CHECK(with_one > 20);
    CHECK(with_one < 280);
}

TEST_CASE("construction parameters")
{
    CHECK(construct_scc_params(3) == groups::AdmissibleTriple{7, 9, 2});
    CHECK(construct_scc_params(5) == groups::AdmissibleTriple{11, 25, 3});
    CHECK(construct_scc_params(7) == groups::AdmissibleTriple{29, 49, 7});
    CHECK_THROWS(construct_scc_params(4));
    CHECK_THROWS(construct_scc_params(7, 20));
}

TEST_CASE("the standard beta realizes beta alpha beta^-1 = alpha^c")
{
    const auto g = groups::classify(construct_scc_params(5));
    const auto [a, b] = rep_generators(g);
    const auto c = static_cast<std::uint64_t>(g.c());
    CHECK(multiply_matrices(multiply_matrices(b, a), inverse(b)) == power(a, c));
    CHECK(power(b, 25) == identity_matrix(5));
    CHECK(power(a, 11) == identity_matrix(5));
    CHECK_FALSE(power(b, 5) == identity_matrix(5));

    const auto [at, bt] = rep_generators(g, BetaConvention::Transposed);
    CHECK_FALSE(multiply_matrices(multiply_matrices(bt, at), inverse(bt)) == power(at, c));
    // c^-1 mod 11 = 4
    CHECK(multiply_matrices(multiply_matrices(bt, at), inverse(bt)) == power(at, 4));
}

TEST_CASE("sphere actions are free and commute with the torus")
{
    for (auto [p, n] : {std::pair{3, 5}, std::pair{3, 17}, std::pair{5, 9}, std::pair{7, 13}}) {
        const auto bundle = build_sphere_action(p, n);
        CHECK(bundle.torus_rank == (n + 1) / (2 * p));
        CHECK(static_cast<std::int64_t>(2 * bundle.blocks()) == n + 1);
        CHECK(is_free_representation(bundle));
        CHECK(diagonal_circle_is_free(bundle));
        std::vector<RationalAngle> theta;
        for (std::int64_t k = 0; k < bundle.torus_rank; ++k)
            theta.emplace_back(2 * k + 1, 9);
        CHECK(commutes_with_torus(bundle, theta));
        CHECK(sphere_action_period(bundle).period == n + 1);

        // Sampled numeric cross-check of freeness.
        std::mt19937 rng(static_cast<unsigned>(n));
        const auto a = static_cast<std::uint64_t>(bundle.group.a()), b = static_cast<std::uint64_t>(bundle.group.b());
        for (int t = 0; t < 40; ++t) {
            const std::uint64_t i = rng() % a, j = rng() % b;
            if (i == 0 && j == 0)
                continue;
            CHECK_FALSE(numeric_eigenvalue_one(bundle.rep(i, j)));
        }
    }
    CHECK_THROWS(build_sphere_action(3, 16));
    CHECK_THROWS(build_sphere_action(4, 7));
}

TEST_CASE("a mutated action is caught")
{
    auto bundle = build_sphere_action(3, 5);
    bundle.alpha.angle[0] = RationalAngle(0, 1);
    CHECK_FALSE(is_free_representation(bundle));
    CHECK_THROWS_AS(sphere_action_period(bundle), std::logic_error);

    auto heavy = build_sphere_action(3, 11);
    heavy.torus_weights[0][0] = 2;
    CHECK_FALSE(diagonal_circle_is_free(heavy));
}

TEST_CASE("block sums and diagonal matrices")
{
    const auto x = diagonal_matrix({RationalAngle(1, 3), RationalAngle(0, 1)});
    CHECK(eigen_angle_zero(x));
    const auto y = diagonal_matrix({RationalAngle(1, 3)});
    CHECK_FALSE(eigen_angle_zero(y));
    CHECK(block_sum(y, y).blocks() == 2);
    CHECK_FALSE(eigen_angle_zero(block_sum(y, y)));
}
