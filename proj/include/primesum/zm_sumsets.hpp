// zm_sumsets.hpp
// Sumsets and representation-function moments in Z_m, the Hoelder lower
// bounds on |B+B| they certify, and the two extremal constructions.
//
// Counts (r_B, R, moment sums) are exact 64-bit integers; any overflow is an
// OverflowError. Enumerations run in ascending residue order.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "primesum/ntheory.hpp"

namespace primesum::sumsets {

using ntheory::FactoredModulus;
using ntheory::Rational;
using ntheory::u64;

// Bit-packed subset of Z_m.
class SubsetOfZm {
public:
    explicit SubsetOfZm(u64 m);
    // Members are reduced mod m; duplicates are fine.
    static SubsetOfZm from_members(u64 m, std::span<const u64> members);
    static SubsetOfZm units(const FactoredModulus& m);

    u64 modulus() const { return m_; }
    void insert(u64 x);
    bool contains(u64 x) const { return (words_[x >> 6] >> (x & 63)) & 1u; }
    u64 size() const;
    bool empty() const { return size() == 0; }
    std::vector<u64> members() const;
    const std::vector<std::uint64_t>& words() const { return words_; }

    // Cyclic rotation: {x + shift mod m : x in this}.
    SubsetOfZm rotated(u64 shift) const;
    // In-place union.
    SubsetOfZm& operator|=(const SubsetOfZm& other);

    friend bool operator==(const SubsetOfZm&, const SubsetOfZm&) = default;

private:
    void clear_tail();

    u64 m_;
    std::vector<std::uint64_t> words_;
};

// B1 + B2 in Z_m by OR-ing rotations of the larger set, one per member of the
// smaller set.
SubsetOfZm sumset_shift(const SubsetOfZm& a, const SubsetOfZm& b);
// Support of the exact cyclic convolution 1_{B1} * 1_{B2}.
SubsetOfZm sumset_convolution(const SubsetOfZm& a, const SubsetOfZm& b);
// Computes both routes; InvariantViolation if they disagree.
SubsetOfZm sumset(const SubsetOfZm& a, const SubsetOfZm& b);

// {a + a'} over the integers; inputs need not be sorted, output is sorted.
std::vector<u64> integer_sumset(std::span<const u64> a, std::span<const u64> b);

struct RepresentationHistogram {
    u64 m = 0;
    std::vector<u64> r;  // r[x] = |{(b, b') in B x B : b + b' = x}|
    u64 source_card = 0;
};

RepresentationHistogram rep_histogram(const SubsetOfZm& b);

// R(x) = |{(b, r) in B x Z_m^* : b + r = x}|, computed as a convolution with
// the units and as the per-prime count |{b : b != x mod p for all p | m}|.
// InvariantViolation if the two disagree.
std::vector<u64> capital_R(const SubsetOfZm& b, const FactoredModulus& m);

struct Stratum {
    u64 d;
    std::vector<u64> members;  // X_d = {x in [0, m) : gcd(x, m) = d}
};

// One stratum per divisor of m, ascending by d.
std::vector<Stratum> divisor_stratification(const FactoredModulus& m);

struct PrimeCollision {
    u64 p;
    u64 distinct;  // r_p: number of distinct residues of the tuple mod p
};

struct CollisionStats {
    std::vector<PrimeCollision> per_prime;
    Rational f;  // sum of 1/p over p | m with r_p <= k - 1
};

CollisionStats collision_stats(std::span<const u64> tuple, const FactoredModulus& m);

struct TailCount {
    u64 count = 0;  // |K(beta)|, ordered k-tuples with f >= beta
    u64 total = 0;  // |B|^k
    // k^2 2^{-exp(beta / (c k^2))} |B|^{k-2} phi(m)^2 for the supplied c
    double bound_log = 0;
    double bound = 0;
    double c = 1;
};

inline constexpr u64 kTailEnumerationLimit = 100'000'000;

// Exhaustive; SizeError if |B|^k exceeds kTailEnumerationLimit.
TailCount tail_count(const SubsetOfZm& b, unsigned k, double beta, const FactoredModulus& m, double c = 1.0);

struct StratifiedMoment {
    u64 d;
    u64 s_d;  // sum over x in X_d of R(x)^k
};

struct MomentCertificate {
    SubsetOfZm B{1};
    unsigned k = 1;
    double alpha = 0;  // |B| / phi(m)
    u64 S_rB = 0;      // sum_x r_B(x)^k
    std::optional<u64> S_R;  // sum_x R(x)^k (squarefree m, B in Z_m^*)
    std::vector<StratifiedMoment> stratified;
    // |B|^k phi(m)^k / m^{k-1} / alpha^2, and S_rB over it.
    double comparator = 0;
    double implied_constant = 0;
    std::optional<double> holder_bound;  // k >= 2, B nonempty
    u64 actual_sumset = 0;
};

MomentCertificate kth_moment(const SubsetOfZm& b, unsigned k, const FactoredModulus& m);

struct CkSeries {
    double c = 1;
    unsigned k = 1;
    std::vector<double> log_terms;     // log of each summed term, j = 0..j_max
    long double partial_sum = 0;       // sum of the terms
    double log_partial_sum = 0;
    double tail_bound = 0;             // rigorous bound on the omitted terms
    unsigned j_max = 0;
    unsigned dominant_index = 0;       // argmax_j of the terms
    double formula_maximizer_j = 0;      // log2(c k^3 log(4 c k^2 (k+1) / log 2))
    double continuous_maximizer_j = 0; // exact maximizer of the exponent in 2^j
    double tail_start_j = 0;           // log2(4 c^2 k^4 (k+1))
};

// C_k = sum_{j>=0} exp(2(k+1) 2^j) 2^{-exp(2^j / (c k^2))}, evaluated in log
// space. j_max = 0 extends automatically until the current term is below
// 1e-30 of the running sum and the geometric tail certificate applies.
CkSeries ck_series(double c, unsigned k, unsigned j_max = 0);

struct HolderBound {
    unsigned k = 2;
    u64 moment = 0;  // sum_x r_B(x)^k
    double bound = 0;
    u64 actual = 0;  // |B + B|
};

// |B+B| >= |B|^{2k/(k-1)} / (sum_x r_B(x)^k)^{1/(k-1)}; InvariantViolation if
// the computed sumset is smaller than the bound by more than 1e-9.
HolderBound holder_lower_bound(const SubsetOfZm& b, unsigned k);

struct BlockStep {
    u64 j = 0;        // block index
    u64 size = 0;     // |B_j|
    double alpha_j = 0;
    bool selected = false;  // j in J
    std::optional<double> bound;     // Hoelder bound for the translate
    std::optional<u64> cyclic_sumset;   // |B_j' + B_j'| in the reduced modulus
    std::optional<u64> integer_sumset;  // |B_j + B_j| as integers
};

struct ZnStarCertificate {
    u64 m = 0;
    bool squarefree = true;
    u64 card = 0;
    double alpha = 0;
    std::optional<unsigned> k_formula;  // floor((log(1/a) / log log(1/a))^{1/3}) when defined
    unsigned k = 3;                     // max(3, k_formula)
    // Squarefree case: one Hoelder step on B itself.
    std::optional<HolderBound> direct;
    // Non-squarefree case: blocks I_j = [j m1, (j+1) m1) with m1 = rad(m).
    u64 radical = 0;
    std::vector<BlockStep> blocks;
    u64 alpha_sum_num = 0, alpha_sum_den = 1;  // sum_j alpha_j, exact
    bool alpha_sum_identity = true;            // sum_j alpha_j == alpha m / m1
    // Optional consecutive-block partition for large alpha.
    std::optional<double> alpha0;
    std::vector<BlockStep> consecutive_blocks;
    double consecutive_bound = 0;  // sum of the consecutive-block bounds
    double final_bound = 0;
    u64 actual_cyclic = 0;   // |B + B| in Z_m
    u64 actual_integer = 0;  // |B + B| with B as integers in [0, m)
    double reference_shape = 0;  // alpha e^{-(log 1/a)^{2/3} (loglog 1/a)^{1/3}} m, constants = 1
};

// Full certificate pipeline for B in Z_m^*. DomainError for empty B or B not
// inside the units.
ZnStarCertificate znstar_certificate(const SubsetOfZm& b, const FactoredModulus& m,
                                     std::optional<double> alpha0 = std::nullopt);

// k from the log(1/alpha) formula, or nullopt when log log(1/alpha) <= 0.
std::optional<unsigned> k_from_alpha(double alpha);

struct ExtremalConstruction {
    unsigned s = 0, t = 0;
    std::vector<u64> primes;  // first s primes
    u64 m = 0;
    SubsetOfZm B{1};
    u64 predicted_sumset = 0;  // m / (p_1 ... p_t)
    Rational predicted_alpha;  // 1 / phi(p_1 ... p_t)
};

ExtremalConstruction extremal_construct(unsigned s, unsigned t);

// m / (phi(m) log log phi(m)) for m the primorial of W.
double mertens_ratio(u64 W);

}  // namespace primesum::sumsets
