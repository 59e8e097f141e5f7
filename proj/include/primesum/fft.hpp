// fft.hpp
// Unnormalized discrete Fourier transforms of arbitrary length:
//   X[k] = sum_n x[n] * exp(sign * 2*pi*i * n*k / N)
// Power-of-two lengths use an iterative radix-2 transform; every other length
// goes through Bluestein's chirp-z reduction to a power-of-two circular
// convolution. Twiddles are evaluated from exactly reduced integer angles, so
// no recurrence error accumulates.

#pragma once

#include <Eigen/Core>

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace primesum::fft {

template <class Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

namespace detail {

// exp(sign * 2*pi*i * num / den) for 0 <= num < den.
template <class Scalar>
std::complex<Scalar> unit_root(std::uint64_t num, std::uint64_t den, int sign) {
    const Scalar angle = Scalar(2) * std::numbers::pi_v<Scalar> * static_cast<Scalar>(num) / static_cast<Scalar>(den);
    return {std::cos(angle), static_cast<Scalar>(sign) * std::sin(angle)};
}

template <class Scalar>
void radix2_inplace(std::vector<std::complex<Scalar>>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    std::vector<std::complex<Scalar>> roots(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) roots[k] = unit_root<Scalar>(k, n, sign);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2, stride = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const auto u = a[start + k];
                const auto v = a[start + k + half] * roots[k * stride];
                a[start + k] = u + v;
                a[start + k + half] = u - v;
            }
        }
    }
}

template <class Scalar>
void bluestein_inplace(std::vector<std::complex<Scalar>>& x, int sign) {
    const std::uint64_t n = x.size();
    const std::size_t m = std::bit_ceil(2 * n - 1);
    // chirp[k] = exp(sign * pi*i * k^2 / n), with k^2 reduced mod 2n.
    std::vector<std::complex<Scalar>> chirp(n);
    for (std::uint64_t k = 0; k < n; ++k) chirp[k] = unit_root<Scalar>((k * k) % (2 * n), 2 * n, sign);

    std::vector<std::complex<Scalar>> a(m), b(m);
    for (std::uint64_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
    b[0] = std::conj(chirp[0]);
    for (std::uint64_t k = 1; k < n; ++k) b[k] = b[m - k] = std::conj(chirp[k]);

    radix2_inplace(a, -1);
    radix2_inplace(b, -1);
    for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
    radix2_inplace(a, +1);
    const Scalar scale = Scalar(1) / static_cast<Scalar>(m);
    for (std::uint64_t k = 0; k < n; ++k) x[k] = a[k] * scale * chirp[k];
}

}  // namespace detail

template <class Scalar>
ComplexVector<Scalar> transform(const ComplexVector<Scalar>& input, int sign) {
    const auto n = static_cast<std::size_t>(input.size());
    std::vector<std::complex<Scalar>> work(input.data(), input.data() + n);
    if (n > 1) {
        if (std::has_single_bit(n))
            detail::radix2_inplace(work, sign);
        else
            detail::bluestein_inplace(work, sign);
    }
    return Eigen::Map<const ComplexVector<Scalar>>(work.data(), static_cast<Eigen::Index>(n));
}

// O(N^2) reference evaluation with exactly reduced angles.
template <class Scalar>
ComplexVector<Scalar> transform_direct(const ComplexVector<Scalar>& input, int sign) {
    const auto n = static_cast<std::uint64_t>(input.size());
    ComplexVector<Scalar> out(input.size());
    for (std::uint64_t k = 0; k < n; ++k) {
        std::complex<Scalar> acc{0, 0};
        for (std::uint64_t j = 0; j < n; ++j) acc += input[j] * detail::unit_root<Scalar>((j * k) % n, n, sign);
        out[k] = acc;
    }
    return out;
}

}  // namespace primesum::fft
