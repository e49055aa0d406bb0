#pragma once

// The mod-p Steenrod algebra (p odd) in the admissible basis, reduced by the
// Adem relations, and its unstable action on the model algebra F_p[x] with
// deg x = 2.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace spaceform::steenrod {

/// C(n, k) mod p by Lucas' theorem. Zero when k < 0 or k > n.
int binomial_mod_p(std::int64_t n, std::int64_t k, int p);

struct Letter {
    bool bockstein = false;
    int power = 0;  // exponent of P when !bockstein

    static Letter beta() { return {true, 0}; }
    static Letter P(int i) { return {false, i}; }
    bool operator==(const Letter&) const = default;
};

/// A free word; the rightmost letter acts first. Empty word = identity.
struct SteenrodWord {
    int p = 3;
    std::vector<Letter> letters;
};

/// Grammar: letters `b` and `P<k>`, optionally separated by whitespace.
/// Throws std::invalid_argument on anything else or if p is not an odd prime.
SteenrodWord parse_word(const std::string& text, int p);

/// b^e0 P^s1 b^e1 ... P^sk b^ek with every s_i >= 1. Not necessarily
/// admissible; normalize() only emits admissible ones.
struct Monomial {
    std::vector<int> s;
    std::vector<std::uint8_t> eps{0};  // always s.size() + 1 entries

    /// s_i >= p s_(i+1) + e_i for consecutive powers.
    bool is_admissible(int p) const;
    int degree(int p) const;
    std::vector<Letter> letters() const;
    std::string str() const;

    bool operator==(const Monomial&) const = default;
    /// Length first, then exponents, then the Bockstein pattern.
    std::strong_ordering operator<=>(const Monomial& o) const;
};

/// Applies P^0 = 1. Returns false when two Bocksteins meet (b b = 0).
bool to_monomial(const std::vector<Letter>& letters, Monomial& out);

class SteenrodElement {
public:
    explicit SteenrodElement(int p = 3) : p_(p) {}

    int p() const { return p_; }
    const std::map<Monomial, int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Monomial& m, std::int64_t coeff);
    SteenrodElement& operator+=(const SteenrodElement& o);
    SteenrodElement scaled(std::int64_t k) const;

    bool operator==(const SteenrodElement&) const = default;
    /// `c*mono + mono`, with coefficient 1 omitted, "0" for zero, "1" for the unit.
    std::string str() const;

private:
    int p_;
    std::map<Monomial, int> terms_;  // coefficients in [1, p)
};

enum class RewriteOrder { Leftmost, Rightmost };

/// Reduces words to the admissible basis. Memoizes per instance, so an
/// instance must stay on one thread.
class Normalizer {
public:
    explicit Normalizer(int p, RewriteOrder order = RewriteOrder::Leftmost);

    SteenrodElement normalize(const SteenrodWord& w);
    SteenrodElement normalize(const Monomial& m);

    int p() const { return p_; }

private:
    SteenrodElement expand_pair(const Monomial& m, std::size_t t);

    int p_;
    RewriteOrder order_;
    std::map<Monomial, SteenrodElement> memo_;
};

SteenrodElement adem_normalize(const SteenrodWord& w, RewriteOrder order = RewriteOrder::Leftmost);

/// sum of coeff * word, normalized.
SteenrodElement normalize_combination(const std::vector<std::pair<std::int64_t, SteenrodWord>>& combo, int p);

bool verify_identity(const std::vector<std::pair<std::int64_t, SteenrodWord>>& lhs,
                     const std::vector<std::pair<std::int64_t, SteenrodWord>>& rhs, int p);

struct IdentityCheck {
    std::string label;
    bool holds;
};

/// The identities the periodicity argument relies on, checked at p.
std::vector<IdentityCheck> standard_identities(int p);

// ------------------------------------------------------------- model algebra

struct ModelClass {
    std::uint64_t exponent = 0;  // x^exponent, degree 2 * exponent
    std::int64_t coefficient = 1;
};

/// A polynomial in F_p[x], exponent -> coefficient in [1, p).
class ModelSum {
public:
    explicit ModelSum(int p) : p_(p) {}
    ModelSum(int p, const ModelClass& cls);

    int p() const { return p_; }
    const std::map<std::uint64_t, int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(std::uint64_t exponent, std::int64_t coeff);
    int coefficient(std::uint64_t exponent) const;

    ModelSum operator*(const ModelSum& o) const;
    bool operator==(const ModelSum&) const = default;
    std::string str() const;

private:
    int p_;
    std::map<std::uint64_t, int> terms_;
};

/// Coefficient c with P^j(x^k) = c x^(k + j(p-1)), computed by the Cartan
/// recursion P^j(x x^(k-1)) = x P^j(x^(k-1)) + x^p P^(j-1)(x^(k-1)).
int cartan_coefficient(std::uint64_t k, std::uint64_t j, int p);

ModelSum apply_letter(const Letter& l, const ModelSum& v);
/// Letter by letter, rightmost first.
ModelSum act_word(const SteenrodWord& w, const ModelSum& v);
ModelSum act_on_model(const SteenrodElement& op, const ModelClass& cls);
ModelSum act_on_model(const SteenrodElement& op, const ModelSum& v);

// --------------------------------------------------- secondary decomposition

/// Degree bookkeeping for P^p(x) = b(w0) + P^1(w1), valid when b(x) = 0 and
/// P^1(x) = 0 for a class x of degree k > 0. Nothing is computed beyond degrees.
struct SecondaryObligation {
    std::int64_t k;
    int p;
    std::int64_t target_degree;  // |P^p(x)| = k + 2p(p-1)
    std::int64_t deg_w0;         // target - 1
    std::int64_t deg_w1;         // target - 2(p-1)
    std::vector<std::string> hypotheses;

    /// Each summand lands in the target degree.
    bool degrees_consistent() const;
};

SecondaryObligation secondary_decomposition_schema(std::int64_t k, int p);

}  // namespace spaceform::steenrod
