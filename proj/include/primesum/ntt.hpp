// ntt.hpp
// Exact convolution of small nonnegative integer sequences via a
// number-theoretic transform modulo the prime 998244353 = 119 * 2^23 + 1.
// Results are exact as long as every output coefficient is below the prime.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace primesum::ntt {

inline constexpr std::uint32_t kPrime = 998244353;

// Linear convolution; output length a.size() + b.size() - 1.
// Throws SizeError when the transform length would exceed 2^23.
std::vector<std::uint32_t> linear_convolve(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

// Cyclic convolution of length n = a.size() = b.size().
std::vector<std::uint32_t> cyclic_convolve(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

}  // namespace primesum::ntt
