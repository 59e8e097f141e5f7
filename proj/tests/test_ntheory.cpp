#include "doctest.h"
#include "oracles.hpp"
#include "primesum/errors.hpp"
#include "primesum/ntheory.hpp"

using namespace primesum;
using namespace primesum::ntheory;

TEST_CASE("sieve matches small tables and trial division") {
    CHECK(sieve_primes(10).primes == std::vector<u64>{2, 3, 5, 7});
    CHECK(sieve_primes(2).primes == std::vector<u64>{2});
    const auto t30 = sieve_primes(30);
    CHECK(t30.primes.size() == 10);
    CHECK(t30.primes.back() == 29);
    CHECK(t30.count_upto(13) == 6);
    CHECK(t30.contains(29));
    CHECK_FALSE(t30.contains(27));
    CHECK(sieve_primes(20000).primes == oracle::trial_division_primes(20000));
    CHECK_THROWS_AS(sieve_primes(1), DomainError);
}

TEST_CASE("sieve size checkpoints") {
    CHECK(sieve_primes(1'000'000).primes.size() == 78498);
    CHECK(sieve_primes(10'000'000).primes.size() == 664579);
}

TEST_CASE("segmented range agrees with trial division near its start") {
    const auto t = sieve_primes(100'000'300);
    CHECK(t.primes.size() == t.count_upto(100'000'300));
    std::vector<u64> tail;
    for (u64 x = 99'999'000; x <= 100'000'300; ++x)
        if (is_prime(x)) tail.push_back(x);
    const auto first = std::lower_bound(t.primes.begin(), t.primes.end(), 99'999'000);
    CHECK(std::vector<u64>(first, t.primes.end()) == tail);
    CHECK(t.count_upto(100'000'000) == 5761455);
}

TEST_CASE("primorial") {
    const auto m5 = primorial(5);
    CHECK(m5.value() == 30);
    CHECK(m5.totient() == 8);
    CHECK(m5.squarefree());
    CHECK(primorial(2).value() == 2);
    CHECK(primorial(2).totient() == 1);
    CHECK(primorial(11).value() == 2310);
    CHECK(primorial(11).totient() == 480);
    for (u64 W = 2; W <= 31; ++W) {
        u64 prod = 1;
        for (u64 p : sieve_primes(W).primes) prod *= p;
        CHECK(primorial(W).value() == prod);
    }
    CHECK(primorial(47).value() == 614889782588491410ull);
    CHECK_THROWS_AS(primorial(53), OverflowError);
    CHECK_THROWS_AS(primorial(1), DomainError);
}

TEST_CASE("factorize") {
    const auto f30 = factorize(30);
    CHECK(f30.prime_divisors() == std::vector<u64>{2, 3, 5});
    CHECK(f30.totient() == 8);
    CHECK(f30.squarefree());
    const auto f12 = factorize(12);
    CHECK(f12.factors() == std::vector<PrimePower>{{2, 2}, {3, 1}});
    CHECK(f12.totient() == 4);
    CHECK(f12.radical() == 6);
    CHECK_FALSE(f12.squarefree());
    const auto f1 = factorize(1);
    CHECK(f1.factors().empty());
    CHECK(f1.totient() == 1);
    CHECK(f1.radical() == 1);
    CHECK(factorize(30).divisors() == std::vector<u64>{1, 2, 3, 5, 6, 10, 15, 30});
}

TEST_CASE("totient agrees with brute force up to 1e4") {
    for (u64 m = 1; m <= 10000; ++m) {
        const auto f = factorize(m);
        REQUIRE(f.totient() == oracle::totient(m));
        u64 prod = 1;
        for (const auto& pp : f.factors()) prod *= checked_pow(pp.prime, pp.exponent);
        REQUIRE(prod == m);
        REQUIRE(f.squarefree() == (f.radical() == m));
    }
}

TEST_CASE("split by threshold") {
    const auto [s1, l1] = split_by_threshold(factorize(210), 6);
    CHECK(s1.value() == 30);
    CHECK(l1.value() == 7);
    const auto [s2, l2] = split_by_threshold(factorize(30), 1);
    CHECK(s2.value() == 1);
    CHECK(l2.value() == 30);
    const auto [s3, l3] = split_by_threshold(factorize(30), 5);
    CHECK(s3.value() == 30);
    CHECK(l3.value() == 1);
    CHECK_THROWS_AS(split_by_threshold(factorize(12), 3), DomainError);
    for (u64 m : {2310ull, 30030ull, 510510ull})
        for (u64 t = 1; t < 20; ++t) {
            const auto [s, l] = split_by_threshold(factorize(m), t);
            CHECK(s.value() * l.value() == m);
            CHECK(binary_gcd(s.value(), l.value()) == 1);
        }
}

TEST_CASE("gcd, inverse, crt and rationals") {
    for (u64 a = 0; a < 200; ++a)
        for (u64 b = 0; b < 200; ++b) REQUIRE(binary_gcd(a, b) == std::gcd(a, b));
    CHECK(mod_inverse(7, 30) == 13);
    CHECK_THROWS_AS(mod_inverse(6, 30), DomainError);
    const std::vector<u64> primes{2, 3, 5, 7};
    for (u64 x = 0; x < 210; ++x) {
        std::vector<u64> res;
        for (u64 p : primes) res.push_back(x % p);
        REQUIRE(crt(res, primes) == x);
    }
    CHECK(Rational::make(10, 12).str() == "5/6");
    CHECK(Rational::make(4, 2).str() == "2");
    CHECK(Rational::make(1, 3) < Rational::make(1, 2));
    CHECK_THROWS_AS(checked_mul(u64{1} << 40, u64{1} << 40), OverflowError);
    CHECK_THROWS_AS(checked_add(~u64{0}, 1), OverflowError);
}
