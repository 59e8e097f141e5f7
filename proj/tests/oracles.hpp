// Brute-force reference implementations. Each one follows the defining
// formula directly and shares no code with the library.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline std::vector<u64> trial_division_primes(u64 n) {
    std::vector<u64> out;
    for (u64 x = 2; x <= n; ++x) {
        bool prime = true;
        for (u64 d = 2; d * d <= x; ++d)
            if (x % d == 0) {
                prime = false;
                break;
            }
        if (prime) out.push_back(x);
    }
    return out;
}

inline u64 totient(u64 m) {
    u64 c = 0;
    for (u64 x = 1; x <= m; ++x) c += std::gcd(x, m) == 1;
    return c;
}

// (1/N) sum_x f(x) e(-x xi / N), accumulated in long double.
inline std::vector<std::complex<long double>> dft(const std::vector<double>& f) {
    const std::size_t n = f.size();
    const long double two_pi = 2 * std::acos(-1.0L);
    std::vector<std::complex<long double>> out(n);
    for (std::size_t xi = 0; xi < n; ++xi) {
        std::complex<long double> acc = 0;
        for (std::size_t x = 0; x < n; ++x) {
            const long double ang = -two_pi * static_cast<long double>((x * xi) % n) / static_cast<long double>(n);
            acc += static_cast<long double>(f[x]) * std::complex<long double>(std::cos(ang), std::sin(ang));
        }
        out[xi] = acc / static_cast<long double>(n);
    }
    return out;
}

// sum_y f(y) g(x - y).
inline std::vector<double> convolve(const std::vector<double>& f, const std::vector<double>& g) {
    const std::size_t n = f.size();
    std::vector<double> out(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
        long double acc = 0;
        for (std::size_t y = 0; y < n; ++y) acc += static_cast<long double>(f[y]) * g[(x + n - y) % n];
        out[x] = static_cast<double>(acc);
    }
    return out;
}

// E_{y1, y2 in B} f(x + y1 - y2), tallying the differences y1 - y2 first.
inline std::vector<double> bohr_average(const std::vector<double>& f, const std::vector<long>& bohr) {
    const long n = static_cast<long>(f.size());
    std::vector<long double> diff(f.size(), 0);
    for (long y1 : bohr)
        for (long y2 : bohr) diff[static_cast<std::size_t>(((y1 - y2) % n + n) % n)] += 1;
    std::vector<double> out(f.size(), 0);
    const long double count = static_cast<long double>(bohr.size()) * static_cast<long double>(bohr.size());
    for (long x = 0; x < n; ++x) {
        long double acc = 0;
        for (long d = 0; d < n; ++d)
            if (diff[static_cast<std::size_t>(d)] != 0) acc += diff[static_cast<std::size_t>(d)] * f[static_cast<std::size_t>((x + d) % n)];
        out[static_cast<std::size_t>(x)] = static_cast<double>(acc / count);
    }
    return out;
}

// {x : |e(-x xi/N) - 1| <= eps for all xi}, evaluated with complex exponentials.
inline std::vector<long> bohr_members(long n, const std::vector<long>& freqs, double eps) {
    std::vector<long> out;
    const long double two_pi = 2 * std::acos(-1.0L);
    for (long x = 0; x < n; ++x) {
        bool ok = true;
        for (long xi : freqs) {
            const long double ang = -two_pi * static_cast<long double>((x * xi) % n) / static_cast<long double>(n);
            const long double d = std::abs(std::complex<long double>(std::cos(ang) - 1, std::sin(ang)));
            if (std::round(d * 1e12L) / 1e12L > eps) ok = false;
        }
        if (ok) out.push_back(x);
    }
    return out;
}

inline std::set<u64> cyclic_sumset(const std::vector<u64>& a, const std::vector<u64>& b, u64 m) {
    std::set<u64> out;
    for (u64 x : a)
        for (u64 y : b) out.insert((x + y) % m);
    return out;
}

inline std::set<u64> integer_sumset(const std::vector<u64>& a, const std::vector<u64>& b) {
    std::set<u64> out;
    for (u64 x : a)
        for (u64 y : b) out.insert(x + y);
    return out;
}

inline std::vector<u64> histogram(const std::vector<u64>& b, u64 m) {
    std::vector<u64> r(m, 0);
    for (u64 x : b)
        for (u64 y : b) ++r[(x + y) % m];
    return r;
}

// |{b in B : gcd(x - b, m) = 1}|.
inline std::vector<u64> capital_R(const std::vector<u64>& b, u64 m) {
    std::vector<u64> r(m, 0);
    for (u64 x = 0; x < m; ++x)
        for (u64 y : b) r[x] += std::gcd((x + m - y) % m, m) == 1;
    return r;
}

}  // namespace oracle
