// ntheory.hpp
// Primes, primorials, factorization and the divisor splits used by the
// residue-class and Z_m machinery. All arithmetic is exact 64-bit; anything
// that would wrap throws OverflowError instead.

#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace primesum::ntheory {

using u64 = std::uint64_t;

u64 checked_mul(u64 a, u64 b);
u64 checked_add(u64 a, u64 b);
u64 checked_pow(u64 base, unsigned exp);

// Binary (Stein) gcd.
u64 binary_gcd(u64 a, u64 b);

// Inverse of a modulo m, assuming gcd(a, m) = 1; throws DomainError otherwise.
u64 mod_inverse(u64 a, u64 m);

// Deterministic trial-division primality.
bool is_prime(u64 n);

struct PrimePower {
    u64 prime;
    unsigned exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// A positive integer together with its factorization and derived
// multiplicative data. Immutable after construction.
class FactoredModulus {
public:
    // Builds from an ascending list of distinct prime powers (empty means 1).
    static FactoredModulus from_factors(std::vector<PrimePower> factors);

    u64 value() const { return m_; }
    const std::vector<PrimePower>& factors() const { return factors_; }
    u64 totient() const { return totient_; }
    u64 radical() const { return radical_; }
    bool squarefree() const { return radical_ == m_; }

    // Distinct prime divisors, ascending.
    std::vector<u64> prime_divisors() const;

    // All positive divisors, ascending.
    std::vector<u64> divisors() const;

    friend bool operator==(const FactoredModulus& a, const FactoredModulus& b) {
        return a.m_ == b.m_;
    }

private:
    FactoredModulus() = default;

    u64 m_ = 1;
    std::vector<PrimePower> factors_;
    u64 totient_ = 1;
    u64 radical_ = 1;
};

// All primes <= limit, ascending.
struct PrimeTable {
    u64 limit = 0;
    std::vector<u64> primes;

    bool contains(u64 x) const;
    // Number of listed primes <= x.
    std::size_t count_upto(u64 x) const;
};

PrimeTable sieve_primes(u64 n);

// Product of all primes <= W.
FactoredModulus primorial(u64 W);

FactoredModulus factorize(u64 m);

struct ThresholdSplit {
    FactoredModulus small;  // prime divisors <= t
    FactoredModulus large;  // prime divisors > t
};

ThresholdSplit split_by_threshold(const FactoredModulus& m, u64 t);

// Exact nonnegative rational with 64-bit numerator and denominator, kept in
// lowest terms.
struct Rational {
    u64 num = 0;
    u64 den = 1;

    static Rational make(u64 num, u64 den);
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
};

// Reconstructs x mod prod(moduli) with x = residues[i] mod moduli[i]; moduli
// must be pairwise coprime.
u64 crt(std::span<const u64> residues, std::span<const u64> moduli);

}  // namespace primesum::ntheory
