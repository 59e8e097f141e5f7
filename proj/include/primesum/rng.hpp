// rng.hpp
// SplitMix64 (Steele, Lea, Flood 2014): state advances by the golden-ratio
// increment and each output is a fixed 64-bit finalizer of the state, so a
// stream is fully determined by its seed on every platform. Bounded integers
// and shuffles are implemented here rather than through <random>
// distributions, whose algorithms vary between standard libraries.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace primesum {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform on [0, bound) by rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t v = next();
            if (v >= limit) return v % bound;
        }
    }

private:
    std::uint64_t state_;
};

// Fisher-Yates, from the back.
template <class T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

}  // namespace primesum
