#include "spaceform/arith.hpp"
#include "spaceform/steenrod.hpp"

#include <doctest.h>

#include <random>

using namespace spaceform;
using namespace spaceform::steenrod;

namespace {

// Exact binomial through factorials, reduced mod p. Negative top gives 0 here;
// the callers never need the extended convention.
int exact_binomial_mod(std::int64_t n, std::int64_t k, int p)
{
    if (n < 0 || k < 0 || k > n)
        return 0;
    BigInt num = 1, den = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return static_cast<int>(static_cast<BigInt>(num / den) % p);
}

Monomial mono(std::vector<int> s, std::vector<std::uint8_t> eps)
{
    Monomial m;
    m.s = std::move(s);
    m.eps = std::move(eps);
    return m;
}

// P^a P^b for 0 < a < pb, written out from the Adem sum.
SteenrodElement adem_pp(int a, int b, int p)
{
    SteenrodElement out(p);
    for (int i = 0; p * i <= a; ++i) {
        const int sign = (a + i) % 2 ? -1 : 1;
        const int coeff = exact_binomial_mod((p - 1) * (b - i) - 1, a - p * i, p);
        out.add(i ? mono({a + b - i, i}, {0, 0, 0}) : mono({a + b}, {0, 0}), sign * coeff);
    }
    return out;
}

// P^a b P^b for 0 < a <= pb.
SteenrodElement adem_pbp(int a, int b, int p)
{
    SteenrodElement out(p);
    for (int i = 0; p * i <= a; ++i) {
        const int sign = (a + i) % 2 ? -1 : 1;
        const int first = exact_binomial_mod((p - 1) * (b - i), a - p * i, p);
        out.add(i ? mono({a + b - i, i}, {1, 0, 0}) : mono({a + b}, {1, 0}), sign * first);
        const int second = exact_binomial_mod((p - 1) * (b - i) - 1, a - p * i - 1, p);
        out.add(i ? mono({a + b - i, i}, {0, 1, 0}) : mono({a + b}, {0, 1}), -sign * second);
    }
    return out;
}

int word_degree(const SteenrodWord& w)
{
    int d = 0;
    for (const auto& l : w.letters)
        d += l.bockstein ? 1 : 2 * l.power * (w.p - 1);
    return d;
}

SteenrodWord random_word(std::mt19937& rng, int p, int max_len, int max_power)
{
    SteenrodWord w{p, {}};
    const int len = static_cast<int>(rng() % static_cast<unsigned>(max_len + 1));
    for (int k = 0; k < len; ++k) {
        if (rng() % 4 == 0)
            w.letters.push_back(Letter::beta());
        else
            w.letters.push_back(Letter::P(1 + static_cast<int>(rng() % static_cast<unsigned>(max_power))));
    }
    return w;
}

}  // namespace

TEST_CASE("binomials mod p agree with exact factorials")
{
    for (int p : {3, 5, 7, 11})
        for (std::int64_t n = 0; n <= 60; ++n)
            for (std::int64_t k = 0; k <= n; ++k)
                CHECK(binomial_mod_p(n, k, p) == exact_binomial_mod(n, k, p));
    CHECK(binomial_mod_p(4, 7, 3) == 0);
    CHECK(binomial_mod_p(4, -1, 3) == 0);
}

TEST_CASE("parsing words")
{
    const auto w = parse_word("P3 b P1", 5);
    REQUIRE(w.letters.size() == 3);
    CHECK(w.letters[0] == Letter::P(3));
    CHECK(w.letters[1] == Letter::beta());
    CHECK(parse_word("P1P1", 3).letters.size() == 2);
    CHECK(parse_word("", 3).letters.empty());
    CHECK_THROWS_AS(parse_word("x", 3), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("P", 3), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("P1", 4), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("P1", 2), std::invalid_argument);
}

TEST_CASE("normalization examples")
{
    CHECK(adem_normalize(parse_word("P1 P1", 3)).str() == "2*P2");
    CHECK(adem_normalize(parse_word("b b", 3)).is_zero());
    CHECK(adem_normalize(parse_word("", 3)).str() == "1");
    CHECK(adem_normalize(parse_word("P0", 3)).str() == "1");
    CHECK(adem_normalize(parse_word("P1 P1 P1", 3)).is_zero());  // 3! = 0 mod 3
    CHECK(adem_normalize(parse_word("P3 P1", 3)).str() == "P3 P1");
}

TEST_CASE("standard identities hold for small primes")
{
    for (int p : {3, 5, 7, 11}) {
        const auto ids = standard_identities(p);
        CHECK(ids.size() == static_cast<std::size_t>(p + 2));
        for (const auto& id : ids)
            CHECK_MESSAGE(id.holds, "p=" << p << " " << id.label);
    }
    CHECK_THROWS(standard_identities(9));
}

TEST_CASE("two-letter words match the Adem sums written out independently")
{
    for (int p : {3, 5, 7})
        for (int b = 1; b <= 4; ++b)
            for (int a = 1; a <= p * b; ++a) {
                if (a < p * b) {
                    const SteenrodWord w{p, {Letter::P(a), Letter::P(b)}};
                    CHECK_MESSAGE(adem_normalize(w) == adem_pp(a, b, p), "P" << a << " P" << b << " p=" << p);
                }
                const SteenrodWord wb{p, {Letter::P(a), Letter::beta(), Letter::P(b)}};
                CHECK_MESSAGE(adem_normalize(wb) == adem_pbp(a, b, p), "P" << a << " b P" << b << " p=" << p);
            }
}

TEST_CASE("normal forms are admissible, degree-homogeneous and order independent")
{
    std::mt19937 rng(2024);
    for (int p : {3, 5}) {
        Normalizer left(p, RewriteOrder::Leftmost), right(p, RewriteOrder::Rightmost);
        for (int t = 0; t < 400; ++t) {
            const auto w = random_word(rng, p, 5, 2 * p + 1);
            const auto l = left.normalize(w);
            CHECK(l == right.normalize(w));
            for (const auto& [m, coeff] : l.terms()) {
                CHECK(m.is_admissible(p));
                CHECK(m.degree(p) == word_degree(w));
                CHECK(coeff > 0);
                CHECK(coeff < p);
            }
            // Already normal: idempotent.
            for (const auto& [m, coeff] : l.terms()) {
                SteenrodElement single(p);
                single.add(m, 1);
                CHECK(left.normalize(m) == single);
            }
        }
    }
}

TEST_CASE("the model action factors through the normal form")
{
    std::mt19937 rng(99);
    for (int p : {3, 5}) {
        Normalizer norm(p);
        for (int t = 0; t < 150; ++t) {
            const auto w = random_word(rng, p, 4, p + 2);
            const auto normal = norm.normalize(w);
            for (std::uint64_t k = 1; k <= 12; ++k)
                CHECK(act_word(w, ModelSum(p, {k, 1})) == act_on_model(normal, ModelClass{k, 1}));
        }
    }
}

TEST_CASE("P^j on x^k is the binomial coefficient")
{
    for (int p : {3, 5, 7})
        for (std::uint64_t k = 0; k <= 25; ++k)
            for (std::uint64_t j = 0; j <= 25; ++j) {
                const int want = exact_binomial_mod(static_cast<std::int64_t>(k), static_cast<std::int64_t>(j), p);
                CHECK(cartan_coefficient(k, j, p) == want);
                const auto image = apply_letter(Letter::P(static_cast<int>(j)), ModelSum(p, {k, 1}));
                CHECK(image.coefficient(k + j * static_cast<std::uint64_t>(p - 1)) == want);
            }
    CHECK(apply_letter(Letter::beta(), ModelSum(3, {4, 1})).is_zero());
}

TEST_CASE("the Cartan formula holds on products")
{
    for (int p : {3, 5})
        for (std::uint64_t u = 0; u <= 8; ++u)
            for (std::uint64_t v = 0; v <= 8; ++v)
                for (int j = 0; j <= 8; ++j) {
                    const ModelSum xu(p, {u, 1}), xv(p, {v, 2});
                    ModelSum rhs(p);
                    for (int i = 0; i <= j; ++i) {
                        const auto term = apply_letter(Letter::P(i), xu) * apply_letter(Letter::P(j - i), xv);
                        for (const auto& [e, c] : term.terms())
                            rhs.add(e, c);
                    }
                    CHECK(apply_letter(Letter::P(j), xu * xv) == rhs);
                }
}

TEST_CASE("secondary decomposition schema is degree bookkeeping")
{
    const auto s = secondary_decomposition_schema(3, 3);
    CHECK(s.target_degree == 3 + 12);
    CHECK(s.deg_w0 == 14);
    CHECK(s.deg_w1 == 11);
    CHECK(s.degrees_consistent());
    CHECK_FALSE(s.hypotheses.empty());
    CHECK_THROWS(secondary_decomposition_schema(0, 3));
    CHECK_THROWS(secondary_decomposition_schema(5, 2));
}
