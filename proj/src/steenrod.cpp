#include "spaceform/steenrod.hpp"

#include "spaceform/arith.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace spaceform::steenrod {

namespace {

int mod_p(std::int64_t x, int p)
{
    std::int64_t r = x % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

std::int64_t inverse_mod_p(std::int64_t x, int p)
{
    return static_cast<std::int64_t>(pow_mod(BigInt(x), BigInt(p - 2), BigInt(p)));
}

void require_odd_prime(int p)
{
    if (p < 3 || !is_prime(static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("p must be an odd prime, got " + std::to_string(p));
}

}  // namespace

int binomial_mod_p(std::int64_t n, std::int64_t k, int p)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    std::int64_t result = 1;
    while (n > 0 || k > 0) {
        const std::int64_t ni = n % p, ki = k % p;
        if (ki > ni)
            return 0;
        // C(ni, ki) with ni < p: every factorial involved is a unit.
        std::int64_t num = 1, den = 1;
        for (std::int64_t t = 0; t < ki; ++t) {
            num = num * (ni - t) % p;
            den = den * (t + 1) % p;
        }
        result = result * num % p * inverse_mod_p(den, p) % p;
        n /= p;
        k /= p;
    }
    return static_cast<int>(result);
}

SteenrodWord parse_word(const std::string& text, int p)
{
    require_odd_prime(p);
    SteenrodWord w{p, {}};
    std::size_t i = 0;
    while (i < text.size()) {
        const char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
        } else if (ch == 'b') {
            w.letters.push_back(Letter::beta());
            ++i;
        } else if (ch == 'P') {
            std::size_t j = i + 1;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            if (j == i + 1 || j - i - 1 > 9)
                throw std::invalid_argument("expected an exponent after 'P' at position " + std::to_string(i) +
                                            " in '" + text + "'");
            w.letters.push_back(Letter::P(std::stoi(text.substr(i + 1, j - i - 1))));
            i = j;
        } else {
            throw std::invalid_argument(std::string("unexpected character '") + ch + "' at position " +
                                        std::to_string(i) + " in '" + text + "'");
        }
    }
    return w;
}

// ---------------------------------------------------------------- Monomial

bool Monomial::is_admissible(int p) const
{
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] < p * s[i + 1] + eps[i + 1])
            return false;
    return true;
}

int Monomial::degree(int p) const
{
    int deg = 0;
    for (int si : s)
        deg += 2 * (p - 1) * si;
    for (auto e : eps)
        deg += e;
    return deg;
}

std::vector<Letter> Monomial::letters() const
{
    std::vector<Letter> out;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (eps[i])
            out.push_back(Letter::beta());
        if (i < s.size())
            out.push_back(Letter::P(s[i]));
    }
    return out;
}

std::string Monomial::str() const
{
    std::string out;
    for (const auto& l : letters()) {
        if (!out.empty())
            out += ' ';
        out += l.bockstein ? "b" : "P" + std::to_string(l.power);
    }
    return out.empty() ? "1" : out;
}

std::strong_ordering Monomial::operator<=>(const Monomial& o) const
{
    if (auto c = s.size() <=> o.s.size(); c != 0)
        return c;
    if (auto c = s <=> o.s; c != 0)
        return c;
    return eps <=> o.eps;
}

bool to_monomial(const std::vector<Letter>& letters, Monomial& out)
{
    out = Monomial{};
    for (const auto& l : letters) {
        if (l.bockstein) {
            if (out.eps.back())
                return false;
            out.eps.back() = 1;
        } else if (l.power < 0) {
            throw std::invalid_argument("negative Steenrod power");
        } else if (l.power > 0) {
            out.s.push_back(l.power);
            out.eps.push_back(0);
        }
    }
    return true;
}

// --------------------------------------------------------- SteenrodElement

void SteenrodElement::add(const Monomial& m, std::int64_t coeff)
{
    const int c = mod_p(coeff, p_);
    if (c == 0)
        return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second = (it->second + c) % p_;
        if (it->second == 0)
            terms_.erase(it);
    }
}

SteenrodElement& SteenrodElement::operator+=(const SteenrodElement& o)
{
    if (o.p_ != p_)
        throw std::invalid_argument("adding Steenrod elements at different primes");
    for (const auto& [m, c] : o.terms_)
        add(m, c);
    return *this;
}

SteenrodElement SteenrodElement::scaled(std::int64_t k) const
{
    SteenrodElement r(p_);
    for (const auto& [m, c] : terms_)
        r.add(m, static_cast<std::int64_t>(c) * mod_p(k, p_));
    return r;
}

std::string SteenrodElement::str() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        if (!out.empty())
            out += " + ";
        if (c != 1)
            out += std::to_string(c) + "*";
        out += m.str();
    }
    return out;
}

// -------------------------------------------------------------- Normalizer

Normalizer::Normalizer(int p, RewriteOrder order) : p_(p), order_(order) { require_odd_prime(p); }

SteenrodElement Normalizer::normalize(const SteenrodWord& w)
{
    if (w.p != p_)
        throw std::invalid_argument("word prime " + std::to_string(w.p) + " differs from normalizer prime " +
                                    std::to_string(p_));
    Monomial m;
    if (!to_monomial(w.letters, m))
        return SteenrodElement(p_);
    return normalize(m);
}

SteenrodElement Normalizer::normalize(const Monomial& m)
{
    if (auto it = memo_.find(m); it != memo_.end())
        return it->second;

    // Inadmissible positions t: s_t < p s_(t+1) + e_(t+1).
    std::size_t k = m.s.size();
    std::size_t chosen = k;
    for (std::size_t t = 0; t + 1 < k; ++t) {
        if (m.s[t] < p_ * m.s[t + 1] + m.eps[t + 1]) {
            chosen = t;
            if (order_ == RewriteOrder::Leftmost)
                break;
        }
    }
    SteenrodElement result(p_);
    if (chosen == k)
        result.add(m, 1);
    else
        result = expand_pair(m, chosen);
    memo_.emplace(m, result);
    return result;
}

// Rewrites P^a b^e P^b at powers t, t+1 by the Adem relation and
// normalizes each resulting word.
SteenrodElement Normalizer::expand_pair(const Monomial& m, std::size_t t)
{
    const int p = p_;
    const std::int64_t a = m.s[t], b = m.s[t + 1];
    const bool e = m.eps[t + 1] != 0;

    std::vector<Letter> prefix, suffix;
    for (std::size_t i = 0; i < t; ++i) {
        if (m.eps[i])
            prefix.push_back(Letter::beta());
        prefix.push_back(Letter::P(m.s[i]));
    }
    if (m.eps[t])
        prefix.push_back(Letter::beta());
    if (m.eps[t + 2])
        suffix.push_back(Letter::beta());
    for (std::size_t i = t + 2; i < m.s.size(); ++i) {
        suffix.push_back(Letter::P(m.s[i]));
        if (m.eps[i + 1])
            suffix.push_back(Letter::beta());
    }

    SteenrodElement result(p);
    auto emit = [&](std::int64_t coeff, std::vector<Letter> middle) {
        if (mod_p(coeff, p) == 0)
            return;
        std::vector<Letter> word = prefix;
        word.insert(word.end(), middle.begin(), middle.end());
        word.insert(word.end(), suffix.begin(), suffix.end());
        Monomial next;
        if (to_monomial(word, next))
            result += normalize(next).scaled(coeff);
    };
    auto sign = [](std::int64_t x) { return x % 2 == 0 ? 1 : -1; };
    const auto P = [](std::int64_t i) { return Letter::P(static_cast<int>(i)); };

    if (!e) {
        // P^a P^b = sum_i (-1)^(a+i) C((p-1)(b-i)-1, a-pi) P^(a+b-i) P^i,  a < pb
        for (std::int64_t i = 0; i <= a / p; ++i)
            emit(sign(a + i) * binomial_mod_p((p - 1) * (b - i) - 1, a - p * i, p), {P(a + b - i), P(i)});
    } else {
        // P^a b P^b = sum_i (-1)^(a+i) C((p-1)(b-i), a-pi) b P^(a+b-i) P^i
        //           + sum_i (-1)^(a+i+1) C((p-1)(b-i)-1, a-pi-1) P^(a+b-i) b P^i,  a <= pb
        for (std::int64_t i = 0; i <= a / p; ++i)
            emit(sign(a + i) * binomial_mod_p((p - 1) * (b - i), a - p * i, p), {Letter::beta(), P(a + b - i), P(i)});
        for (std::int64_t i = 0; i <= (a - 1) / p; ++i)
            emit(sign(a + i + 1) * binomial_mod_p((p - 1) * (b - i) - 1, a - p * i - 1, p),
                 {P(a + b - i), Letter::beta(), P(i)});
    }
    return result;
}

SteenrodElement adem_normalize(const SteenrodWord& w, RewriteOrder order)
{
    Normalizer n(w.p, order);
    return n.normalize(w);
}

SteenrodElement normalize_combination(const std::vector<std::pair<std::int64_t, SteenrodWord>>& combo, int p)
{
    Normalizer n(p);
    SteenrodElement total(p);
    for (const auto& [coeff, w] : combo)
        total += n.normalize(w).scaled(coeff);
    return total;
}

bool verify_identity(const std::vector<std::pair<std::int64_t, SteenrodWord>>& lhs,
                     const std::vector<std::pair<std::int64_t, SteenrodWord>>& rhs, int p)
{
    return normalize_combination(lhs, p) == normalize_combination(rhs, p);
}

std::vector<IdentityCheck> standard_identities(int p)
{
    require_odd_prime(p);
    const std::string ps = std::to_string(p);
    auto word = [&](const std::string& text) { return parse_word(text, p); };
    std::vector<IdentityCheck> out;

    out.push_back({"P" + ps + " b = P1 b P" + std::to_string(p - 1) + " + b P" + ps,
                   verify_identity({{1, word("P" + ps + " b")}},
                                   {{1, word("P1 b P" + std::to_string(p - 1))}, {1, word("b P" + ps)}}, p)});

    std::string ones;
    std::int64_t factorial = 1;
    for (int i = 1; i <= p; ++i) {
        ones += (i > 1 ? " P1" : "P1");
        factorial = factorial * i % p;
        const std::string label = "(P1)^" + std::to_string(i) + " = " + std::to_string(i) + "!*P" + std::to_string(i);
        out.push_back({label, verify_identity({{1, word(ones)}}, {{factorial, word("P" + std::to_string(i))}}, p)});
    }
    out.push_back({"b b = 0", adem_normalize(word("b b")).is_zero()});
    return out;
}

// ----------------------------------------------------------- model algebra

ModelSum::ModelSum(int p, const ModelClass& cls) : p_(p) { add(cls.exponent, cls.coefficient); }

void ModelSum::add(std::uint64_t exponent, std::int64_t coeff)
{
    const int c = mod_p(coeff, p_);
    if (c == 0)
        return;
    auto [it, inserted] = terms_.emplace(exponent, c);
    if (!inserted) {
        it->second = (it->second + c) % p_;
        if (it->second == 0)
            terms_.erase(it);
    }
}

int ModelSum::coefficient(std::uint64_t exponent) const
{
    auto it = terms_.find(exponent);
    return it == terms_.end() ? 0 : it->second;
}

ModelSum ModelSum::operator*(const ModelSum& o) const
{
    ModelSum r(p_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_)
            r.add(e1 + e2, static_cast<std::int64_t>(c1) * c2);
    return r;
}

std::string ModelSum::str() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        if (c != 1 || e == 0)
            os << c;
        if (c != 1 && e != 0)
            os << '*';
        if (e == 1)
            os << 'x';
        else if (e > 1)
            os << "x^" << e;
    }
    return os.str();
}

int cartan_coefficient(std::uint64_t k, std::uint64_t j, int p)
{
    // row[i] = coefficient for P^i(x^m), advanced m = 0..k.
    std::vector<int> row(j + 1, 0);
    row[0] = 1;
    for (std::uint64_t m = 1; m <= k; ++m)
        for (std::uint64_t i = j; i >= 1; --i)
            row[i] = (row[i] + row[i - 1]) % p;
    return row[j];
}

ModelSum apply_letter(const Letter& l, const ModelSum& v)
{
    const int p = v.p();
    ModelSum r(p);
    if (l.bockstein)
        return r;  // the model lives in even degrees
    const auto j = static_cast<std::uint64_t>(l.power);
    for (const auto& [k, c] : v.terms())
        r.add(k + j * static_cast<std::uint64_t>(p - 1), static_cast<std::int64_t>(c) * cartan_coefficient(k, j, p));
    return r;
}

ModelSum act_word(const SteenrodWord& w, const ModelSum& v)
{
    ModelSum cur = v;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        cur = apply_letter(*it, cur);
    return cur;
}

ModelSum act_on_model(const SteenrodElement& op, const ModelSum& v)
{
    ModelSum total(op.p());
    for (const auto& [m, c] : op.terms()) {
        const auto image = act_word(SteenrodWord{op.p(), m.letters()}, v);
        for (const auto& [e, ce] : image.terms())
            total.add(e, static_cast<std::int64_t>(ce) * c);
    }
    return total;
}

ModelSum act_on_model(const SteenrodElement& op, const ModelClass& cls)
{
    return act_on_model(op, ModelSum(op.p(), cls));
}

// --------------------------------------------------- secondary decomposition

bool SecondaryObligation::degrees_consistent() const
{
    return deg_w0 + 1 == target_degree && deg_w1 + 2 * (p - 1) == target_degree;
}

SecondaryObligation secondary_decomposition_schema(std::int64_t k, int p)
{
    require_odd_prime(p);
    if (k <= 0)
        throw std::invalid_argument("secondary decomposition needs a class of positive degree, got k = " +
                                    std::to_string(k));
    const std::int64_t target = k + 2 * static_cast<std::int64_t>(p) * (p - 1);
    return {k,
            p,
            target,
            target - 1,
            k + 2 * static_cast<std::int64_t>(p - 1) * (p - 1),
            {"b(x) = 0", "P1(x) = 0", "deg x = " + std::to_string(k)}};
}

}  // namespace spaceform::steenrod
