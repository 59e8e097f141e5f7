#include "doctest.h"
#include "oracles.hpp"
#include "primesum/errors.hpp"
#include "primesum/rng.hpp"
#include "primesum/spectral.hpp"

using namespace primesum;
using namespace primesum::spectral;
using Df = DensityFunction<double>;
using Vec = RealVector<double>;

namespace {

Df random_density(Index n, SplitMix64& rng) {
    Vec v(n);
    for (Index i = 0; i < n; ++i) v[i] = rng.uniform();
    return Df(v);
}

std::vector<double> to_std(const Vec& v) { return {v.data(), v.data() + v.size()}; }

double rel_err(double a, double b) { return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)}); }

}  // namespace

TEST_CASE("dft examples") {
    const auto ones = dft(Df::constant(4, 1.0));
    CHECK(std::abs(ones.coeffs[0] - 1.0) < 1e-15);
    for (Index xi = 1; xi < 4; ++xi) CHECK(std::abs(ones.coeffs[xi]) < 1e-15);

    const std::vector<Index> zero{0};
    const auto point = dft(Df::indicator(4, zero));
    for (Index xi = 0; xi < 4; ++xi) CHECK(std::abs(point.coeffs[xi] - 0.25) < 1e-15);

    const std::vector<Index> s{1, 2};
    const Df f = Df::indicator(5, s);
    const auto spec = dft(f);
    const auto ref = oracle::dft(to_std(f.values()));
    CHECK(std::abs(spec.coeffs[0] - 0.4) < 1e-15);
    for (Index xi = 0; xi < 5; ++xi)
        CHECK(std::abs(spec.coeffs[xi] - std::complex<double>(ref[xi].real(), ref[xi].imag())) < 1e-12);
}

TEST_CASE("fast transform matches direct summation for many lengths") {
    SplitMix64 rng(11);
    for (Index n : {1, 2, 3, 7, 12, 64, 97, 127, 255, 256, 360, 1000}) {
        const Df f = random_density(n, rng);
        const auto fast = dft(f);
        const auto direct = dft(f, TransformMode::Direct);
        const auto ref = oracle::dft(to_std(f.values()));
        for (Index xi = 0; xi < n; ++xi) {
            const std::complex<double> r(static_cast<double>(ref[xi].real()), static_cast<double>(ref[xi].imag()));
            REQUIRE(std::abs(fast.coeffs[xi] - r) < 1e-12);
            REQUIRE(std::abs(direct.coeffs[xi] - r) < 1e-12);
        }
    }
}

TEST_CASE("Plancherel, convolution theorem and inversion on random functions") {
    SplitMix64 rng(2024);
    for (Index n : {64, 255, 1024, 1001}) {
        for (int trial = 0; trial < 20; ++trial) {
            const Df f = random_density(n, rng), g = random_density(n, rng);
            const auto sf = dft(f), sg = dft(g);
            const std::complex<double> lhs = (sf.coeffs.array() * sg.coeffs.array().conjugate()).sum();
            const double rhs = f.values().dot(g.values()) / static_cast<double>(n);
            REQUIRE(std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs));

            const auto sc = dft(convolve(f, g));
            for (Index xi = 0; xi < n; ++xi) {
                const auto expect = static_cast<double>(n) * sf.coeffs[xi] * sg.coeffs[xi];
                REQUIRE(std::abs(sc.coeffs[xi] - expect) <= 1e-9 * std::max(1.0, std::abs(expect)));
            }
            const Vec back = inverse_dft_real(sf);
            REQUIRE((back - f.values()).cwiseAbs().maxCoeff() <= 1e-9);
        }
    }
}

TEST_CASE("convolve") {
    const std::vector<Index> s{1, 2};
    const Df f = Df::indicator(5, s);
    const Df c = convolve(f, f);
    const std::vector<double> expect{0, 0, 1, 2, 1};
    for (Index x = 0; x < 5; ++x) CHECK(c[x] == doctest::Approx(expect[static_cast<std::size_t>(x)]).epsilon(1e-12));

    SplitMix64 rng(5);
    const Df g = random_density(255, rng), h = random_density(255, rng);
    const std::vector<Index> zero{0};
    const Df id = convolve(g, Df::indicator(255, zero));
    CHECK((id.values() - g.values()).cwiseAbs().maxCoeff() < 1e-12);
    const auto ref = oracle::convolve(to_std(g.values()), to_std(h.values()));
    const Df gh = convolve(g, h);
    for (Index x = 0; x < 255; ++x) REQUIRE(std::abs(gh[x] - ref[static_cast<std::size_t>(x)]) < 1e-9);
    CHECK_THROWS_AS(convolve(g, Df::zeros(7)), DomainError);
}

TEST_CASE("Fourier lp norm") {
    const std::vector<Index> zero{0};
    CHECK(lp_fourier_norm(Df::indicator(4, zero), 3.0) == doctest::Approx(0.3968502630).epsilon(1e-9));
    CHECK(lp_fourier_norm(Df::constant(9, 0.37), 3.5) == doctest::Approx(0.37).epsilon(1e-12));
    SplitMix64 rng(8);
    const Df f = random_density(100, rng);
    const auto ref = oracle::dft(to_std(f.values()));
    long double acc = 0;
    for (const auto& c : ref) acc += std::pow(std::abs(c), 3.0L);
    CHECK(rel_err(lp_fourier_norm(f, 3.0), static_cast<double>(std::cbrt(acc))) < 1e-9);
    CHECK_THROWS_AS(lp_fourier_norm(f, 2.0), DomainError);
}

TEST_CASE("large spectrum") {
    CHECK(large_spectrum(Df::constant(10, 0.3), 0.3) == std::vector<Index>{0});
    CHECK(large_spectrum(Df::constant(10, 0.3), 0.31).empty());
    const std::vector<Index> zero{0};
    CHECK(large_spectrum(Df::indicator(16, zero, 16.0), 0.5).size() == 16);

    SplitMix64 rng(3);
    const Df f = random_density(200, rng);
    std::vector<Index> prev = large_spectrum(f, 0.001);
    for (double eps : {0.005, 0.01, 0.02, 0.05, 0.1, 0.5}) {
        const auto cur = large_spectrum(f, eps);
        CHECK(std::includes(prev.begin(), prev.end(), cur.begin(), cur.end()));
        prev = cur;
    }
}

TEST_CASE("Bohr sets") {
    CHECK(bohr_set<double>(12, {0}, 0.3).members.size() == 12);
    CHECK(bohr_set<double>(12, {}, 0.3).members.size() == 12);
    CHECK(bohr_set<double>(12, {1}, 0.6).members == std::vector<Index>{0, 1, 11});
    CHECK_THROWS_AS(bohr_set<double>(12, {1}, 0.0), DomainError);
    CHECK_THROWS_AS(bohr_set<double>(12, {1}, 1.5), DomainError);

    SplitMix64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const long n = 20 + static_cast<long>(rng.below(200));
        std::vector<long> freqs;
        for (int i = 0; i < 3; ++i) freqs.push_back(static_cast<long>(rng.below(static_cast<std::uint64_t>(n))));
        const double eps = 0.2 + 0.8 * rng.uniform();
        const auto b = bohr_set<double>(n, std::vector<Index>(freqs.begin(), freqs.end()), eps);
        const auto ref = oracle::bohr_members(n, freqs, eps);
        REQUIRE(std::vector<long>(b.members.begin(), b.members.end()) == ref);
        REQUIRE(b.contains(0));
        for (Index x : b.members) REQUIRE(b.contains((n - x) % n));
    }
}

TEST_CASE("decomposition examples") {
    const auto d = green_decompose(Df::constant(30, 0.4), 0.1, 0.01);
    CHECK((d.f1.values().array() - 0.4).abs().maxCoeff() < 1e-12);
    CHECK(d.f2.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(d.bohr.size() == 30);

    const std::vector<Index> zero{0};
    const Df spike = Df::indicator(40, zero, 40.0);
    const auto ds = green_decompose(spike, 0.1, 0.01);
    CHECK(ds.bohr.members == std::vector<Index>{0});
    CHECK((ds.f1.values() - spike.values()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(ds.f2.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("multiplier form equals direct double average") {
    SplitMix64 rng(77);
    for (Index n : {128, 97, 512}) {
        for (int trial = 0; trial < 5; ++trial) {
            const Df f = random_density(n, rng);
            const double eps0 = n == 512 ? 0.3 : 0.2;
            const auto d = green_decompose(f, eps0, 0.01);
            const std::vector<long> bohr(d.bohr.members.begin(), d.bohr.members.end());
            const auto direct = oracle::bohr_average(to_std(f.values()), bohr);
            for (Index x = 0; x < n; ++x) REQUIRE(std::abs(d.f1[x] - direct[static_cast<std::size_t>(x)]) < 1e-9);
            REQUIRE(std::abs(d.f1.mean() - f.mean()) < 1e-9);
            REQUIRE(d.f1.values().minCoeff() >= 0.0);
            const double f2_sup = dft(d.f2).sup_norm();
            REQUIRE(f2_sup <= 2 * eps0 * std::max(1.0, dft(f).sup_norm()) + 1e-12);
            REQUIRE((d.f1.values() + d.f2 - f.values()).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
}

TEST_CASE("positive support") {
    const std::vector<Index> s{1, 2};
    const Df f = Df::indicator(5, s);
    CHECK(positive_support(f, f) == 3);
    CHECK(positive_support(Df::zeros(5), f) == 0);

    SplitMix64 rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Index> a, b;
        std::vector<oracle::u64> ua, ub;
        for (Index x = 0; x < 100; ++x) {
            if (rng.uniform() < 0.1) {
                a.push_back(x);
                ua.push_back(static_cast<oracle::u64>(x));
            }
            if (rng.uniform() < 0.1) {
                b.push_back(x);
                ub.push_back(static_cast<oracle::u64>(x));
            }
        }
        const auto ref = oracle::cyclic_sumset(ua, ub, 100);
        REQUIRE(positive_support(Df::indicator(100, a), Df::indicator(100, b)) == static_cast<Index>(ref.size()));
    }
    CHECK_THROWS_AS(positive_support(f, Df::zeros(6)), DomainError);
}

TEST_CASE("convolution proof quantities") {
    const Df ones = Df::constant(16, 1.0);
    const auto d = green_decompose(ones, 0.5, 0.01);
    const auto rep = convolution_proof_quantities(ones, ones, d, d);
    CHECK(rep.f1g1_l1 == doctest::Approx(256.0));
    for (const auto& e : rep.errors) CHECK(e.l2_squared < 1e-18);

    SplitMix64 rng(12);
    const Df f = random_density(128, rng), g = random_density(128, rng);
    const auto df = green_decompose(f, 0.2, 0.01), dg = green_decompose(g, 0.2, 0.01);
    const auto r = convolution_proof_quantities(f, g, df, dg);
    CHECK(rel_err(r.f1g1_l1, df.f1.l1_norm() * dg.f1.l1_norm()) < 1e-9);
    const auto direct = oracle::convolve(to_std(df.f2), to_std(dg.f2));
    double l2 = 0;
    for (double v : direct) l2 += v * v;
    CHECK(rel_err(r.errors[2].l2_squared, l2) < 1e-9);
    CHECK(rel_err(r.errors[2].l2_squared, r.errors[2].l2_squared_spectral) < 1e-9);
    CHECK_THROWS_AS(convolution_proof_quantities(f, Df::zeros(64), df, dg), DomainError);
}
