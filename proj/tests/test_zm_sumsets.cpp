#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "primesum/errors.hpp"
#include "primesum/rng.hpp"
#include "primesum/zm_sumsets.hpp"

using namespace primesum;
using namespace primesum::sumsets;
using ntheory::factorize;

namespace {

SubsetOfZm random_subset(u64 m, double p, SplitMix64& rng, bool units_only = false) {
    SubsetOfZm s(m);
    for (u64 x = 0; x < m; ++x) {
        if (units_only && std::gcd(x, m) != 1) continue;
        if (rng.uniform() < p) s.insert(x);
    }
    return s;
}

std::vector<u64> members_of(const std::set<u64>& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("subset basics and rotation") {
    SubsetOfZm s(70);
    for (u64 x : {0, 5, 63, 64, 69}) s.insert(x);
    CHECK(s.size() == 5);
    CHECK(s.contains(64));
    CHECK_THROWS_AS(s.insert(70), DomainError);
    SplitMix64 rng(1);
    for (u64 m : {1ull, 2ull, 63ull, 64ull, 65ull, 130ull, 1999ull}) {
        const auto a = random_subset(m, 0.3, rng);
        for (u64 shift : std::vector<u64>{0, 1, m / 2, m - 1, m + 3}) {
            std::vector<u64> expect;
            for (u64 x : a.members()) expect.push_back((x + shift) % m);
            std::sort(expect.begin(), expect.end());
            REQUIRE(a.rotated(shift).members() == expect);
        }
    }
}

TEST_CASE("sumset examples") {
    const std::vector<u64> b{1, 3};
    const auto s = SubsetOfZm::from_members(10, b);
    CHECK(sumset(s, s).members() == std::vector<u64>{2, 4, 6});
    const SubsetOfZm empty(10);
    CHECK(sumset(empty, empty).empty());
    CHECK(sumset(empty, s).empty());
    const auto units = SubsetOfZm::units(factorize(30));
    const auto ref = oracle::cyclic_sumset(units.members(), units.members(), 30);
    CHECK(sumset(units, units).members() == members_of(ref));
    CHECK_THROWS_AS(sumset(s, SubsetOfZm(12)), DomainError);
}

TEST_CASE("sumset routes agree with enumeration") {
    SplitMix64 rng(42);
    for (u64 m : {30ull, 210ull, 1999ull, 2000ull, 4096ull}) {
        for (int trial = 0; trial < 10; ++trial) {
            const double p = rng.uniform() * 0.2;
            const auto a = random_subset(m, p, rng), b = random_subset(m, p, rng);
            const auto ref = members_of(oracle::cyclic_sumset(a.members(), b.members(), m));
            REQUIRE(sumset_shift(a, b).members() == ref);
            REQUIRE(sumset_convolution(a, b).members() == ref);
        }
    }
}

TEST_CASE("integer sumset") {
    const std::vector<u64> a{1, 3}, zero{0}, s{5, 9, 12};
    CHECK(integer_sumset(a, a) == std::vector<u64>{2, 4, 6});
    CHECK(integer_sumset(zero, s) == s);
    CHECK(integer_sumset({}, s).empty());
    std::vector<u64> a1;
    for (u64 p : oracle::trial_division_primes(100))
        if (p % 6 == 1) a1.push_back(p);
    const auto sums = integer_sumset(a1, a1);
    CHECK(sums == members_of(oracle::integer_sumset(a1, a1)));
    for (u64 x : sums) CHECK(x % 6 == 2);

    SplitMix64 rng(9);
    std::vector<u64> big;
    for (u64 x = 1000; x < 400000; ++x)
        if (rng.uniform() < 0.05) big.push_back(x);
    std::vector<u64> small(big.begin(), big.begin() + 300);
    CHECK(integer_sumset(big, small) == members_of(oracle::integer_sumset(big, small)));
    // Large enough to take the transform route.
    const auto dense = integer_sumset(big, big);
    std::vector<char> seen(800001, 0);
    for (u64 x : dense) seen[x] = 1;
    u64 spot_errors = 0;
    for (int t = 0; t < 200; ++t) {
        const u64 target = 2000 + rng.below(796000);
        bool hit = false;
        for (u64 x : big) {
            if (x > target) break;
            if (std::binary_search(big.begin(), big.end(), target - x)) {
                hit = true;
                break;
            }
        }
        spot_errors += hit != static_cast<bool>(seen[target]);
    }
    CHECK(spot_errors == 0);
}

TEST_CASE("representation histogram") {
    const std::vector<u64> b{1, 2, 3, 4};
    CHECK(rep_histogram(SubsetOfZm::from_members(5, b)).r == std::vector<u64>{4, 3, 3, 3, 3});
    const std::vector<u64> zero{0};
    CHECK(rep_histogram(SubsetOfZm::from_members(7, zero)).r == std::vector<u64>{1, 0, 0, 0, 0, 0, 0});
    SplitMix64 rng(5);
    for (u64 m : {50ull, 499ull, 1500ull, 3000ull}) {
        const auto s = random_subset(m, 0.6, rng);
        const auto h = rep_histogram(s);
        REQUIRE(h.r == oracle::histogram(s.members(), m));
        u64 total = 0, on_sumset = 0;
        const auto ss = sumset(s, s);
        for (u64 x = 0; x < m; ++x) {
            total += h.r[x];
            REQUIRE(h.r[x] <= s.size());
            if (ss.contains(x)) on_sumset += h.r[x];
        }
        REQUIRE(total == s.size() * s.size());
        REQUIRE(on_sumset == total);
    }
}

TEST_CASE("capital R and strata") {
    const auto m30 = factorize(30);
    const auto units = SubsetOfZm::units(m30);
    const auto R = capital_R(units, m30);
    CHECK(R[2] == 3);
    CHECK(R == oracle::capital_R(units.members(), 30));
    CHECK(capital_R(SubsetOfZm(30), m30) == std::vector<u64>(30, 0));
    const std::vector<u64> six{6};
    CHECK_THROWS_AS(capital_R(SubsetOfZm::from_members(30, six), m30), DomainError);
    CHECK_THROWS_AS(capital_R(SubsetOfZm(12), factorize(12)), DomainError);

    // Exhaustive over subsets of Z_30^*.
    const auto um = units.members();
    for (u64 mask = 0; mask < 256; ++mask) {
        SubsetOfZm b(30);
        for (u64 i = 0; i < 8; ++i)
            if (mask >> i & 1) b.insert(um[i]);
        const auto r = rep_histogram(b).r;
        const auto Rb = capital_R(b, m30);
        for (u64 x = 0; x < 30; ++x) REQUIRE(Rb[x] >= r[x]);
    }

    const auto strata = divisor_stratification(m30);
    CHECK(strata.size() == 8);
    u64 total = 0;
    for (const auto& s : strata) {
        total += s.members.size();
        CHECK(s.members.size() == factorize(30 / s.d).totient());
        if (s.d == 6) CHECK(s.members == std::vector<u64>{6, 12, 18, 24});
        if (s.d == 30) CHECK(s.members == std::vector<u64>{0});
    }
    CHECK(total == 30);
}

TEST_CASE("collision statistics and tail counts") {
    const auto m30 = factorize(30);
    const std::vector<u64> t1{1, 6, 2};
    const auto c1 = collision_stats(t1, factorize(5));
    CHECK(c1.per_prime[0].distinct == 2);
    const std::vector<u64> t2{1, 7};
    CHECK(collision_stats(t2, m30).f == ntheory::Rational::make(5, 6));
    CHECK(collision_stats(std::vector<u64>{1, 2}, factorize(35)).f.num == 0);

    const auto units = SubsetOfZm::units(m30);
    CHECK(tail_count(units, 2, 0.9, m30).count == 8);
    CHECK(tail_count(units, 2, 0.0, m30).count == 64);
    const std::vector<u64> one{7};
    const auto single = tail_count(SubsetOfZm::from_members(30, one), 2, 1.0, m30);
    CHECK(single.count == 1);
    u64 prev = ~u64{0};
    for (int i = 0; i < 20; ++i) {
        const u64 c = tail_count(units, 3, i * 0.06, m30).count;
        CHECK(c <= prev);
        prev = c;
    }
    CHECK_THROWS_AS(tail_count(SubsetOfZm::units(factorize(30030)), 4, 0.5, factorize(30030)), SizeError);
}

TEST_CASE("moments") {
    const auto m5 = factorize(5);
    const auto u5 = SubsetOfZm::units(m5);
    const auto c = kth_moment(u5, 2, m5);
    CHECK(c.S_rB == 52);
    CHECK(c.comparator == doctest::Approx(51.2));
    CHECK(c.implied_constant == doctest::Approx(1.015625));
    CHECK(kth_moment(u5, 1, m5).S_rB == 16);
    CHECK_THROWS_AS(kth_moment(u5, 0, m5), DomainError);
    CHECK_THROWS_AS(kth_moment(SubsetOfZm(5), 2, m5), DomainError);

    SplitMix64 rng(21);
    const auto m210 = factorize(210);
    for (int trial = 0; trial < 10; ++trial) {
        const auto b = random_subset(210, 0.4, rng, true);
        if (b.empty()) continue;
        const auto cert = kth_moment(b, 3, m210);
        REQUIRE(cert.S_R.has_value());
        REQUIRE(cert.S_rB <= *cert.S_R);
        u64 total = 0;
        for (const auto& s : cert.stratified) total += s.s_d;
        REQUIRE(total == *cert.S_R);
        const auto R = oracle::capital_R(b.members(), 210);
        u64 direct = 0;
        for (u64 v : R) direct += v * v * v;
        REQUIRE(direct == *cert.S_R);
    }
}

TEST_CASE("C_k series") {
    const auto c1 = ck_series(1, 1);
    CHECK(static_cast<double>(c1.partial_sum) == doctest::Approx(26.0804282).epsilon(1e-8));
    const double ln2 = std::log(2.0);
    CHECK(c1.log_terms[0] == doctest::Approx(4 - ln2 * std::exp(1.0)).epsilon(1e-12));
    CHECK(c1.log_terms[1] == doctest::Approx(8 - ln2 * std::exp(2.0)).epsilon(1e-12));
    CHECK(std::exp(c1.log_terms[1]) == doctest::Approx(17.75).epsilon(0.05 / 17.75));
    CHECK(c1.tail_bound < 1e-9);
    CHECK(c1.dominant_index == 1);
    CHECK(std::abs(c1.dominant_index - c1.formula_maximizer_j) <= 1);
    for (double lt : c1.log_terms) CHECK(std::isfinite(lt));
    for (std::size_t j = 2; j < c1.log_terms.size(); ++j) CHECK(c1.log_terms[j] < c1.log_terms[j - 1]);
    const auto c2 = ck_series(1, 2);
    CHECK(c2.dominant_index == 4);
    CHECK(c2.formula_maximizer_j == doctest::Approx(5.083).epsilon(1e-3));
    CHECK(std::abs(c2.dominant_index - c2.continuous_maximizer_j) <= 1);
    CHECK(ck_series(1, 1, 10).j_max >= 10);
    CHECK_THROWS_AS(ck_series(0, 1), DomainError);
    CHECK_THROWS_AS(ck_series(1000, 40), RangeError);
}

TEST_CASE("Hoelder bounds") {
    const std::vector<u64> b13{1, 3};
    const auto h = holder_lower_bound(SubsetOfZm::from_members(10, b13), 2);
    CHECK(h.moment == 6);
    CHECK(h.bound == doctest::Approx(16.0 / 6));
    CHECK(h.actual == 3);
    const std::vector<u64> zero{0};
    const auto hz = holder_lower_bound(SubsetOfZm::from_members(9, zero), 3);
    CHECK(hz.bound == doctest::Approx(1.0));
    CHECK(hz.actual == 1);
    const auto h5 = holder_lower_bound(SubsetOfZm::units(factorize(5)), 2);
    CHECK(h5.bound == doctest::Approx(256.0 / 52));
    CHECK(h5.actual == 5);
    CHECK_THROWS_AS(holder_lower_bound(SubsetOfZm::units(factorize(5)), 1), DomainError);

    SplitMix64 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        const u64 m = 2 + rng.below(300);
        const auto b = random_subset(m, rng.uniform(), rng);
        if (b.empty()) continue;
        for (unsigned k : {2u, 3u, 4u}) {
            const auto hb = holder_lower_bound(b, k);
            REQUIRE(static_cast<double>(hb.actual) >= hb.bound - 1e-9);
        }
    }
    // The whole group is the equality case.
    SubsetOfZm all(64);
    for (u64 x = 0; x < 64; ++x) all.insert(x);
    CHECK(holder_lower_bound(all, 2).bound == doctest::Approx(64.0));
}

TEST_CASE("k choice") {
    CHECK(k_from_alpha(std::exp(-100.0)) == 2u);
    CHECK_FALSE(k_from_alpha(1.0).has_value());
    CHECK_FALSE(k_from_alpha(0.5).has_value());
}

TEST_CASE("Z_m^* certificates") {
    const auto m30 = factorize(30);
    const std::vector<u64> b{1, 7, 13, 19};
    const auto cert = znstar_certificate(SubsetOfZm::from_members(30, b), m30);
    CHECK(cert.k == 3);
    CHECK_FALSE(cert.k_formula.has_value());
    CHECK(cert.actual_cyclic == oracle::cyclic_sumset(b, b, 30).size());
    CHECK(cert.final_bound <= static_cast<double>(cert.actual_cyclic));
    CHECK(cert.direct.has_value());

    const auto full = znstar_certificate(SubsetOfZm::units(m30), m30);
    CHECK(full.alpha == 1.0);
    CHECK(full.k == 3);

    CHECK_THROWS_AS(znstar_certificate(SubsetOfZm(30), m30), DomainError);
    const std::vector<u64> bad{2};
    CHECK_THROWS_AS(znstar_certificate(SubsetOfZm::from_members(30, bad), m30), DomainError);

    SplitMix64 rng(31);
    for (u64 m : {36ull, 72ull, 180ull, 900ull}) {
        const auto fm = factorize(m);
        for (int trial = 0; trial < 5; ++trial) {
            const auto s = random_subset(m, 0.3 + 0.6 * rng.uniform(), rng, true);
            if (s.empty()) continue;
            const auto c = znstar_certificate(s, fm, 0.1);
            REQUIRE_FALSE(c.squarefree);
            REQUIRE(c.alpha_sum_identity);
            REQUIRE(c.blocks.size() == m / fm.radical());
            // sum_j alpha_j as an exact fraction equals alpha m / m1.
            const auto lhs = ntheory::Rational::make(c.alpha_sum_num, c.alpha_sum_den);
            const auto rhs = ntheory::Rational::make(c.card * m, fm.totient() * fm.radical());
            REQUIRE(lhs == rhs);
            REQUIRE(c.final_bound <= static_cast<double>(c.actual_integer) + 1e-9);
            u64 selected = 0;
            for (const auto& blk : c.blocks) selected += blk.selected;
            REQUIRE(selected >= 1);
        }
    }
}

TEST_CASE("extremal constructions") {
    for (unsigned s = 2; s <= 5; ++s)
        for (unsigned t = 1; t < s; ++t) {
            const auto e = extremal_construct(s, t);
            u64 card = 1, frozen = 1;
            for (unsigned i = 0; i < s; ++i) (i < t ? frozen : card) *= (i < t ? e.primes[i] : e.primes[i] - 1);
            REQUIRE(e.B.size() == card);
            for (u64 x : e.B.members()) REQUIRE(std::gcd(x, e.m) == 1);
            REQUIRE(sumset(e.B, e.B).size() == e.m / frozen);
            REQUIRE(e.predicted_sumset == e.m / frozen);
        }
    const auto e31 = extremal_construct(3, 1);
    CHECK(sumset(e31.B, e31.B).size() == 15);
    CHECK(e31.predicted_alpha == ntheory::Rational::make(1, 1));
    const auto e42 = extremal_construct(4, 2);
    CHECK(e42.B.size() == 24);
    CHECK(sumset(e42.B, e42.B).size() == 35);
    CHECK(e42.predicted_alpha == ntheory::Rational::make(1, 2));
    CHECK(extremal_construct(5, 4).B.size() == 10);
    CHECK_THROWS_AS(extremal_construct(3, 3), DomainError);
    CHECK_THROWS_AS(extremal_construct(3, 0), DomainError);
    CHECK_THROWS_AS(extremal_construct(16, 1), RangeError);
}

TEST_CASE("Mertens ratio") {
    CHECK(mertens_ratio(5) == doctest::Approx(5.12226).epsilon(1e-5));
    CHECK(mertens_ratio(11) == doctest::Approx(2.64378).epsilon(1e-5));
    for (u64 W = 5; W <= 43; ++W) CHECK(mertens_ratio(W) > 0);
    CHECK_THROWS_AS(mertens_ratio(2), DomainError);
    CHECK_THROWS_AS(mertens_ratio(3), DomainError);
}
