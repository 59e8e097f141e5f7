#include "primesum/ntheory.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "primesum/errors.hpp"

namespace primesum::ntheory {

namespace {

constexpr u64 kSimpleSieveLimit = 100'000'000;
constexpr u64 kSegmentBytes = 1u << 18;

// Odd-only bit sieve: bit i stands for 2i+1.
std::vector<u64> simple_sieve(u64 n) {
    std::vector<u64> primes;
    if (n >= 2) primes.push_back(2);
    if (n < 3) return primes;
    const u64 bits = (n - 1) / 2 + 1;  // odd numbers 1..n
    std::vector<std::uint64_t> composite((bits + 63) / 64, 0);
    auto test = [&](u64 i) { return (composite[i >> 6] >> (i & 63)) & 1u; };
    for (u64 i = 1; (2 * i + 1) * (2 * i + 1) <= n; ++i) {
        if (test(i)) continue;
        const u64 p = 2 * i + 1;
        for (u64 j = (p * p) / 2; j < bits; j += p) composite[j >> 6] |= u64{1} << (j & 63);
    }
    primes.reserve(static_cast<std::size_t>(1.3 * n / std::log(static_cast<double>(n))) + 16);
    for (u64 i = 1; i < bits; ++i)
        if (!test(i)) primes.push_back(2 * i + 1);
    return primes;
}

// Segmented odd-only sieve, used above kSimpleSieveLimit.
std::vector<u64> segmented_sieve(u64 n) {
    const u64 root = static_cast<u64>(std::sqrt(static_cast<long double>(n))) + 1;
    std::vector<u64> base = simple_sieve(root);
    std::vector<u64> primes;
    primes.reserve(static_cast<std::size_t>(1.3 * n / std::log(static_cast<double>(n))) + 16);
    primes.push_back(2);

    // Segment covers odd numbers low, low+2, ..., low + 2*(kSegmentBytes-1).
    std::vector<unsigned char> seg(kSegmentBytes);
    for (u64 low = 3; low <= n; low += 2 * kSegmentBytes) {
        std::fill(seg.begin(), seg.end(), 1);
        const u64 high = std::min(n, low + 2 * (kSegmentBytes - 1));
        for (std::size_t k = 1; k < base.size(); ++k) {
            const u64 p = base[k];
            if (p * p > high) break;
            u64 start = std::max(p * p, (low + p - 1) / p * p);
            if (start % 2 == 0) start += p;
            for (u64 j = start; j <= high; j += 2 * p) seg[(j - low) / 2] = 0;
        }
        for (u64 x = low; x <= high; x += 2)
            if (seg[(x - low) / 2]) primes.push_back(x);
    }
    return primes;
}

}  // namespace

u64 checked_mul(u64 a, u64 b) {
    u64 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("integer overflow in " + std::to_string(a) + " * " + std::to_string(b));
    return r;
}

u64 checked_add(u64 a, u64 b) {
    u64 r;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError("integer overflow in " + std::to_string(a) + " + " + std::to_string(b));
    return r;
}

u64 checked_pow(u64 base, unsigned exp) {
    u64 r = 1;
    for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

u64 binary_gcd(u64 a, u64 b) {
    if (a == 0) return b;
    if (b == 0) return a;
    const int shift = std::countr_zero(a | b);
    a >>= std::countr_zero(a);
    while (b != 0) {
        b >>= std::countr_zero(b);
        if (a > b) std::swap(a, b);
        b -= a;
    }
    return a << shift;
}

u64 mod_inverse(u64 a, u64 m) {
    if (m == 1) return 0;
    // Extended Euclid over signed 128-bit to keep intermediate values exact.
    __int128 old_r = static_cast<__int128>(a % m), r = m;
    __int128 old_s = 1, s = 0;
    while (r != 0) {
        const __int128 q = old_r / r;
        std::swap(old_r, r);
        r -= q * old_r;
        std::swap(old_s, s);
        s -= q * old_s;
    }
    if (old_r != 1)
        throw DomainError("mod_inverse: " + std::to_string(a) + " is not invertible mod " + std::to_string(m));
    __int128 inv = old_s % static_cast<__int128>(m);
    if (inv < 0) inv += m;
    return static_cast<u64>(inv);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (u64 d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

FactoredModulus FactoredModulus::from_factors(std::vector<PrimePower> factors) {
    FactoredModulus fm;
    u64 prev = 0;
    for (const auto& pp : factors) {
        if (pp.prime <= prev || pp.exponent == 0 || !is_prime(pp.prime))
            throw DomainError("FactoredModulus: factors must be ascending distinct primes with positive exponents");
        prev = pp.prime;
        fm.m_ = checked_mul(fm.m_, checked_pow(pp.prime, pp.exponent));
        fm.radical_ = checked_mul(fm.radical_, pp.prime);
        fm.totient_ = checked_mul(fm.totient_, checked_mul(checked_pow(pp.prime, pp.exponent - 1), pp.prime - 1));
    }
    fm.factors_ = std::move(factors);
    return fm;
}

std::vector<u64> FactoredModulus::prime_divisors() const {
    std::vector<u64> out;
    out.reserve(factors_.size());
    for (const auto& pp : factors_) out.push_back(pp.prime);
    return out;
}

std::vector<u64> FactoredModulus::divisors() const {
    std::vector<u64> divs{1};
    for (const auto& pp : factors_) {
        const std::size_t count = divs.size();
        u64 power = 1;
        for (unsigned e = 1; e <= pp.exponent; ++e) {
            power *= pp.prime;
            for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * power);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

bool PrimeTable::contains(u64 x) const {
    return std::binary_search(primes.begin(), primes.end(), x);
}

std::size_t PrimeTable::count_upto(u64 x) const {
    return static_cast<std::size_t>(std::upper_bound(primes.begin(), primes.end(), x) - primes.begin());
}

PrimeTable sieve_primes(u64 n) {
    if (n < 2) throw DomainError("sieve_primes: n must be >= 2, got " + std::to_string(n));
    PrimeTable table;
    table.limit = n;
    table.primes = n <= kSimpleSieveLimit ? simple_sieve(n) : segmented_sieve(n);
    return table;
}

FactoredModulus primorial(u64 W) {
    if (W < 2) throw DomainError("primorial: W must be >= 2, got " + std::to_string(W));
    std::vector<PrimePower> factors;
    u64 m = 1;
    for (u64 p = 2; p <= W; ++p) {
        if (!is_prime(p)) continue;
        m = checked_mul(m, p);  // reports overflow before building anything
        factors.push_back({p, 1});
    }
    return FactoredModulus::from_factors(std::move(factors));
}

FactoredModulus factorize(u64 m) {
    if (m == 0) throw DomainError("factorize: m must be >= 1");
    std::vector<PrimePower> factors;
    u64 rest = m;
    for (u64 d = 2; d <= rest / d; d += (d == 2 ? 1 : 2)) {
        if (rest % d != 0) continue;
        unsigned e = 0;
        while (rest % d == 0) {
            rest /= d;
            ++e;
        }
        factors.push_back({d, e});
    }
    if (rest > 1) factors.push_back({rest, 1});
    return FactoredModulus::from_factors(std::move(factors));
}

ThresholdSplit split_by_threshold(const FactoredModulus& m, u64 t) {
    if (!m.squarefree())
        throw DomainError("split_by_threshold: modulus " + std::to_string(m.value()) + " is not squarefree");
    std::vector<PrimePower> small, large;
    for (const auto& pp : m.factors()) (pp.prime <= t ? small : large).push_back(pp);
    return {FactoredModulus::from_factors(std::move(small)), FactoredModulus::from_factors(std::move(large))};
}

Rational Rational::make(u64 num, u64 den) {
    if (den == 0) throw DomainError("Rational: zero denominator");
    const u64 g = binary_gcd(num, den);
    return {num / g, den / g};
}

std::string Rational::str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const unsigned __int128 lhs = static_cast<unsigned __int128>(a.num) * b.den;
    const unsigned __int128 rhs = static_cast<unsigned __int128>(b.num) * a.den;
    return lhs <=> rhs;
}

u64 crt(std::span<const u64> residues, std::span<const u64> moduli) {
    if (residues.size() != moduli.size()) throw DomainError("crt: size mismatch");
    u64 x = 0, modulus = 1;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        const u64 p = moduli[i];
        const u64 r = residues[i] % p;
        // x' = x + modulus * t with t = (r - x) * modulus^{-1} mod p
        const u64 inv = mod_inverse(modulus % p, p);
        const u64 diff = (r + p - x % p) % p;
        const u64 t = static_cast<u64>(static_cast<unsigned __int128>(diff) * inv % p);
        const u64 next_modulus = checked_mul(modulus, p);
        x = static_cast<u64>((static_cast<unsigned __int128>(modulus) * t + x) % next_modulus);
        modulus = next_modulus;
    }
    return x;
}

}  // namespace primesum::ntheory
