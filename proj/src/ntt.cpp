#include "primesum/ntt.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "primesum/errors.hpp"

namespace primesum::ntt {

namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

constexpr u32 kRoot = 3;
constexpr unsigned kMaxLog = 23;

u32 pow_mod(u64 base, u64 exp) {
    u64 r = 1;
    base %= kPrime;
    for (; exp; exp >>= 1, base = base * base % kPrime)
        if (exp & 1) r = r * base % kPrime;
    return static_cast<u32>(r);
}

void transform(std::vector<u32>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        u32 w = pow_mod(kRoot, (kPrime - 1) / len);
        if (inverse) w = pow_mod(w, kPrime - 2);
        const std::size_t half = len / 2;
        std::vector<u32> tw(half);
        tw[0] = 1;
        for (std::size_t k = 1; k < half; ++k) tw[k] = static_cast<u32>(u64{tw[k - 1]} * w % kPrime);
        for (std::size_t s = 0; s < n; s += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const u32 u = a[s + k];
                const u32 v = static_cast<u32>(u64{a[s + k + half]} * tw[k] % kPrime);
                a[s + k] = u + v >= kPrime ? u + v - kPrime : u + v;
                a[s + k + half] = u >= v ? u - v : u + kPrime - v;
            }
        }
    }
    if (inverse) {
        const u64 inv_n = pow_mod(n, kPrime - 2);
        for (auto& x : a) x = static_cast<u32>(x * inv_n % kPrime);
    }
}

}  // namespace

std::vector<u32> linear_convolve(std::span<const u32> a, std::span<const u32> b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t out_len = a.size() + b.size() - 1;
    const std::size_t n = std::bit_ceil(out_len);
    if (std::countr_zero(n) > static_cast<int>(kMaxLog))
        throw SizeError("ntt: transform length " + std::to_string(n) + " exceeds 2^23");
    std::vector<u32> fa(n, 0), fb(n, 0);
    std::copy(a.begin(), a.end(), fa.begin());
    std::copy(b.begin(), b.end(), fb.begin());
    transform(fa, false);
    transform(fb, false);
    for (std::size_t i = 0; i < n; ++i) fa[i] = static_cast<u32>(u64{fa[i]} * fb[i] % kPrime);
    transform(fa, true);
    fa.resize(out_len);
    return fa;
}

std::vector<u32> cyclic_convolve(std::span<const u32> a, std::span<const u32> b) {
    if (a.size() != b.size()) throw DomainError("ntt::cyclic_convolve: length mismatch");
    const std::size_t n = a.size();
    std::vector<u32> lin = linear_convolve(a, b);
    std::vector<u32> out(n, 0);
    for (std::size_t i = 0; i < lin.size(); ++i) {
        const u32 s = out[i % n] + lin[i];
        out[i % n] = s >= kPrime ? s - kPrime : s;
    }
    return out;
}

}  // namespace primesum::ntt
