#include "spaceform/arith.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace spaceform {

namespace mp = boost::multiprecision;

BigInt gcd(const BigInt& x, const BigInt& y) { return mp::gcd(x, y); }

BigInt lcm(const BigInt& x, const BigInt& y)
{
    if (x == 0 || y == 0)
        return 0;
    return mp::abs(x / gcd(x, y) * y);
}

BigInt pow_mod(BigInt base, BigInt exp, const BigInt& m)
{
    if (m < 1)
        throw std::invalid_argument("pow_mod: modulus must be positive");
    if (exp < 0)
        throw std::invalid_argument("pow_mod: negative exponent");
    if (m == 1)
        return 0;
    base %= m;
    if (base < 0)
        base += m;
    return mp::powm(base, exp, m);
}

BigInt pow(const BigInt& base, std::uint64_t exp)
{
    BigInt result = 1;
    BigInt b = base;
    while (exp) {
        if (exp & 1)
            result *= b;
        exp >>= 1;
        if (exp)
            b *= b;
    }
    return result;
}

namespace {

constexpr unsigned kSmallPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool miller_rabin(const BigInt& n)
{
    if (n < 2)
        return false;
    for (unsigned p : kSmallPrimes) {
        if (n == p)
            return true;
        if (n % p == 0)
            return false;
    }
    BigInt d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (unsigned a : kSmallPrimes) {
        BigInt x = mp::powm(BigInt(a), d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = x * x % n;
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor of composite n.
BigInt pollard_brent(const BigInt& n)
{
    if ((n & 1) == 0)
        return 2;
    for (BigInt c = 1;; ++c) {
        BigInt y = 2, x, g = 1, q = 1, ys;
        unsigned r = 1;
        constexpr unsigned m = 64;
        auto f = [&](const BigInt& v) { return (v * v + c) % n; };
        do {
            x = y;
            for (unsigned i = 0; i < r; ++i)
                y = f(y);
            unsigned k = 0;
            do {
                ys = y;
                for (unsigned i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = q * mp::abs(x - y) % n;
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(mp::abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

void factor_into(BigInt n, std::vector<BigInt>& out)
{
    if (n == 1)
        return;
    if (miller_rabin(n)) {
        out.push_back(n);
        return;
    }
    BigInt f = pollard_brent(n);
    factor_into(f, out);
    factor_into(n / f, out);
}

}  // namespace

bool is_prime(const BigInt& n) { return miller_rabin(n); }

bool is_prime(std::uint64_t n) { return miller_rabin(BigInt(n)); }

std::vector<std::pair<BigInt, unsigned>> factorize(BigInt n)
{
    if (n < 1)
        throw std::invalid_argument("factorize: argument must be positive");
    std::vector<BigInt> primes;
    for (unsigned p = 2; p < 1000 && BigInt(p) * p <= n; ++p) {
        while (n % p == 0) {
            primes.emplace_back(p);
            n /= p;
        }
    }
    factor_into(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<BigInt, unsigned>> result;
    for (const auto& p : primes) {
        if (!result.empty() && result.back().first == p)
            ++result.back().second;
        else
            result.emplace_back(p, 1u);
    }
    return result;
}

BigInt carmichael(const BigInt& n)
{
    BigInt result = 1;
    for (const auto& [p, k] : factorize(n)) {
        BigInt part;
        if (p == 2)
            part = k == 1 ? BigInt(1) : k == 2 ? BigInt(2) : pow(BigInt(2), k - 2);
        else
            part = pow(p, k - 1) * (p - 1);
        result = lcm(result, part);
    }
    return result;
}

BigInt multiplicative_order(const BigInt& c, const BigInt& a)
{
    if (a < 1)
        throw std::invalid_argument("multiplicative_order: modulus must be positive");
    if (a == 1)
        return 1;
    BigInt r = c % a;
    if (r < 0)
        r += a;
    if (gcd(r, a) != 1)
        throw std::invalid_argument("multiplicative_order: element is not a unit");
    BigInt order = carmichael(a);
    for (const auto& [q, k] : factorize(order)) {
        for (unsigned i = 0; i < k; ++i) {
            if (pow_mod(r, order / q, a) == 1)
                order /= q;
            else
                break;
        }
    }
    return order;
}

std::vector<std::int64_t> primes_between(std::int64_t lo, std::int64_t hi)
{
    std::vector<std::int64_t> result;
    if (hi < 2 || hi < lo)
        return result;
    std::vector<bool> composite(static_cast<std::size_t>(hi) + 1, false);
    for (std::int64_t i = 2; i * i <= hi; ++i)
        if (!composite[i])
            for (std::int64_t j = i * i; j <= hi; j += i)
                composite[j] = true;
    for (std::int64_t i = std::max<std::int64_t>(lo, 2); i <= hi; ++i)
        if (!composite[i])
            result.push_back(i);
    return result;
}

std::int64_t least_prime_divisor(std::int64_t n)
{
    if (n < 2)
        throw std::invalid_argument("least_prime_divisor: n must be >= 2");
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0)
            return p;
    return n;
}

int floor_log2(std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("floor_log2: zero");
    return 63 - __builtin_clzll(n);
}

// ---------------------------------------------------------------- Fraction

namespace {

__int128 gcd128(__int128 x, __int128 y)
{
    if (x < 0)
        x = -x;
    if (y < 0)
        y = -y;
    while (y) {
        __int128 t = x % y;
        x = y;
        y = t;
    }
    return x;
}

bool fits64(__int128 v)
{
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Fraction::Fraction(std::int64_t num, std::int64_t den)
{
    *this = from_wide(num, den);
}

Fraction Fraction::from_wide(__int128 num, __int128 den)
{
    if (den == 0)
        throw std::domain_error("Fraction: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (!fits64(num) || !fits64(den))
        throw std::overflow_error("Fraction: int64 overflow");
    Fraction f;
    f.num_ = static_cast<std::int64_t>(num);
    f.den_ = static_cast<std::int64_t>(den);
    return f;
}

Fraction Fraction::operator+(const Fraction& o) const
{
    return from_wide(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                     static_cast<__int128>(den_) * o.den_);
}

Fraction Fraction::operator-(const Fraction& o) const { return *this + (-o); }

Fraction Fraction::operator*(const Fraction& o) const
{
    return from_wide(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
}

Fraction Fraction::operator/(const Fraction& o) const
{
    return from_wide(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
}

Fraction Fraction::operator-() const
{
    Fraction f;
    f.num_ = -num_;
    f.den_ = den_;
    return f;
}

std::strong_ordering Fraction::operator<=>(const Fraction& o) const
{
    __int128 lhs = static_cast<__int128>(num_) * o.den_;
    __int128 rhs = static_cast<__int128>(o.num_) * den_;
    return lhs <=> rhs;
}

std::int64_t Fraction::floor() const
{
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0)
        --q;
    return q;
}

std::int64_t Fraction::ceil() const
{
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0)
        ++q;
    return q;
}

std::string Fraction::str() const
{
    if (den_ == 1)
        return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Fraction Fraction::parse(const std::string& text)
{
    auto parse_int = [&](const std::string& s) -> std::int64_t {
        if (s.empty())
            throw std::invalid_argument("invalid rational: '" + text + "'");
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size() || !std::all_of(s.begin() + start, s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
            throw std::invalid_argument("invalid rational: '" + text + "'");
        return std::stoll(s);
    };
    auto slash = text.find('/');
    if (slash == std::string::npos)
        return Fraction(parse_int(text));
    std::int64_t den = parse_int(text.substr(slash + 1));
    if (den == 0)
        throw std::invalid_argument("invalid rational: zero denominator");
    return Fraction(parse_int(text.substr(0, slash)), den);
}

std::ostream& operator<<(std::ostream& os, const Fraction& f) { return os << f.str(); }

namespace {

// Compares (a << shift) against b for nonnegative a, b.
int compare_shifted(const BigInt& a, std::uint64_t shift, const BigInt& b)
{
    if (a == 0)
        return b == 0 ? 0 : -1;
    if (b == 0)
        return 1;
    std::uint64_t la = mp::msb(a) + shift;
    std::uint64_t lb = mp::msb(b);
    if (la > lb)
        return 1;
    if (la < lb)
        return -1;
    BigInt lhs = a << shift;
    return lhs < b ? -1 : (lhs > b ? 1 : 0);
}

}  // namespace

bool pow2_greater(const Fraction& exponent, const Fraction& value)
{
    if (value <= Fraction(0))
        throw std::invalid_argument("pow2_greater: value must be positive");
    // 2^(e/k) > v/w  <=>  2^e * w^k > v^k  (k > 0, everything positive)
    const auto k = static_cast<std::uint64_t>(exponent.den());
    BigInt vk = pow(BigInt(value.num()), k);
    BigInt wk = pow(BigInt(value.den()), k);
    std::int64_t e = exponent.num();
    if (e >= 0)
        return compare_shifted(wk, static_cast<std::uint64_t>(e), vk) > 0;
    return compare_shifted(vk, static_cast<std::uint64_t>(-e), wk) < 0;
}

}  // namespace spaceform
