#pragma once

// Exact integer and rational helpers shared by every module.
//
// Big integers come from Boost.Multiprecision (header only). The small
// `Fraction` type is an int64-backed rational used in hot sweep loops;
// every operation is overflow checked and throws instead of wrapping.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace spaceform {

using BigInt = boost::multiprecision::cpp_int;

BigInt gcd(const BigInt& x, const BigInt& y);
BigInt lcm(const BigInt& x, const BigInt& y);

/// base^exp mod m for exp >= 0, m >= 1. Result lies in [0, m).
BigInt pow_mod(BigInt base, BigInt exp, const BigInt& m);

BigInt pow(const BigInt& base, std::uint64_t exp);

/// Deterministic for n < 3.3e24, strong probable-prime test above that.
bool is_prime(const BigInt& n);
bool is_prime(std::uint64_t n);

/// Prime factorization as (prime, multiplicity) pairs sorted by prime.
/// Trial division for small factors, Pollard-Brent rho for the rest.
std::vector<std::pair<BigInt, unsigned>> factorize(BigInt n);

/// Carmichael function lambda(n) for n >= 1.
BigInt carmichael(const BigInt& n);

/// Multiplicative order of c modulo a; 1 when a == 1.
/// Throws std::invalid_argument if gcd(c, a) != 1.
BigInt multiplicative_order(const BigInt& c, const BigInt& a);

/// Primes in [lo, hi] by a simple sieve.
std::vector<std::int64_t> primes_between(std::int64_t lo, std::int64_t hi);

/// Least prime divisor of n >= 2.
std::int64_t least_prime_divisor(std::int64_t n);

/// floor(log2(n)) for n >= 1.
int floor_log2(std::uint64_t n);

/// Exact rational over int64. Always reduced with positive denominator.
class Fraction {
public:
    constexpr Fraction() = default;
    Fraction(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Fraction operator+(const Fraction& o) const;
    Fraction operator-(const Fraction& o) const;
    Fraction operator*(const Fraction& o) const;
    Fraction operator/(const Fraction& o) const;
    Fraction operator-() const;

    bool operator==(const Fraction& o) const = default;
    std::strong_ordering operator<=>(const Fraction& o) const;

    std::int64_t floor() const;
    std::int64_t ceil() const;
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    /// Parses "N" or "N/D" (decimal integers only).
    static Fraction parse(const std::string& text);

private:
    static Fraction from_wide(__int128 num, __int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Fraction& f);

/// Decides 2^exponent > value exactly, for value > 0.
bool pow2_greater(const Fraction& exponent, const Fraction& value);

}  // namespace spaceform
