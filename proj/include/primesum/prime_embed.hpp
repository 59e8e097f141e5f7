// prime_embed.hpp
// The W-trick: split a set of primes A <= n by residue modulo the primorial m
// of W, measure each class's relative density, and embed a class into Z_N
// together with its von Mangoldt-type weight.

#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "primesum/ntheory.hpp"
#include "primesum/spectral.hpp"

namespace primesum::embed {

using ntheory::FactoredModulus;
using ntheory::PrimeTable;
using ntheory::u64;
using Density = spectral::DensityFunction<double>;
using Decomposition = spectral::Decomposition<double>;

struct ResidueClass {
    u64 b = 0;
    std::vector<u64> primes;   // P_n^(b), ascending
    std::vector<u64> members;  // A_n^(b), ascending
    double delta_b = 0;        // |A_n^(b)| / |P_n^(b)|, 0 when the class is empty
};

struct ResiduePartition {
    u64 n = 0;
    u64 W = 0;
    FactoredModulus modulus = ntheory::factorize(1);
    std::vector<ResidueClass> classes;  // one per b in Z_m^*, ascending b
    std::vector<u64> residual_primes;   // primes dividing m, in no class
    std::vector<u64> residual_members;  // the part of A among them
    u64 prime_count = 0;                // |P_n|
    u64 member_count = 0;               // |A_n|
    double delta = 0;                   // |A_n| / |P_n|
    std::vector<u64> good;              // default good set, ascending
    // Primes up to 4n + m, enough for every m x + b with x <= N.
    std::shared_ptr<const PrimeTable> host;

    // DomainError if b is not a unit residue.
    const ResidueClass& cls(u64 b) const;
};

// DomainError if some element of A is not a prime <= n. The default good set
// is {b : delta_b >= delta/2 and delta_b > 0}, so an empty A has G empty.
ResiduePartition partition_and_densities(const std::vector<u64>& A, u64 n, u64 W);

// {b in Z_m^* : delta_b >= threshold}; threshold must lie in [0, 1].
std::vector<u64> good_set(const ResiduePartition& part, double threshold);

// floor(4n/m), checked to lie in (2n/m, 4n/m]; DomainError when m > 2n.
u64 choose_N(u64 n, u64 m);

struct EmbeddedClass {
    u64 b = 0;
    u64 m = 0;
    u64 N = 0;
    u64 W = 0;
    double delta_b = 0;
    std::vector<u64> indicator;  // {(a - b)/m : a in A_n^(b)} within [1, N], ascending
    // Functions on Z_N, with x = N stored at index 0.
    Density lambda{Density::zeros(1)};
    Density nu{Density::zeros(1)};
    Density f{Density::zeros(1)};
};

EmbeddedClass embed_class(const ResiduePartition& part, u64 b, u64 N);

struct MassCheck {
    double mass = 0;       // sum of lambda over the embedded set
    double threshold = 0;  // delta_b / 16
    bool pass = false;
};

MassCheck embedding_mass_check(const EmbeddedClass& ec, double delta_b);

struct Deficit {
    double zero_mode_error = 0;  // |nu^(0) - 1|
    double offpeak_sup = 0;      // max_{xi != 0} |nu^(xi)|
    double reference_bound = 0;  // 2 log log W / W
};

Deficit pseudorandom_deficit(const EmbeddedClass& ec);

struct PairReport {
    u64 b1 = 0, b2 = 0;
    u64 N = 0;
    double delta1 = 0, delta2 = 0;
    double eps = 0;
    double eps0_requested = 0, eps0_used = 0;
    double sigma = 0;
    bool eps0_clamped = false;
    spectral::ConvolutionProofReport<double> proof;
    u64 support_count = 0;    // |{x : f1 * f2 (x) > 0}|
    double support_fraction = 0;
    u64 embedded_sumset = 0;  // |A_1 + A_2 mod N| by enumeration of the indicators
    double target = 0;        // (delta1 + delta2)/2 - eps
    bool pass = false;        // support_fraction >= target
};

// eps0 upper limit sigma^6 alpha^4 / 400, alpha = min(E f1, E f2).
double eps0_limit(double sigma, double alpha);

// Decomposes both classes after clamping eps0 to eps0_limit.
PairReport pair_sumset_report(const EmbeddedClass& ec1, const EmbeddedClass& ec2, double eps, double eps0,
                              double sigma);
// Reuses decompositions already computed at eps0.
PairReport pair_sumset_report(const EmbeddedClass& ec1, const EmbeddedClass& ec2, const Decomposition& d1,
                              const Decomposition& d2, double eps, double eps0, double sigma);

struct DeltaEntry {
    u64 x = 0;
    double delta = 0;  // max over b + b' = x of (delta_b + delta_b')/2
    u64 witness_b = 0, witness_bp = 0;
};

struct DeltaAggregate {
    std::vector<DeltaEntry> entries;  // ascending x over G + G
    double lower_bound = 0;           // sum max(0, Delta_x - eps) n/m
};

// DomainError if G is empty.
DeltaAggregate aggregate_delta(const ResiduePartition& part, const std::vector<u64>& G, double eps);
inline DeltaAggregate aggregate_delta(const ResiduePartition& part, double eps) {
    return aggregate_delta(part, part.good, eps);
}

}  // namespace primesum::embed
