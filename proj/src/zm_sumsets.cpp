#include "primesum/zm_sumsets.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "primesum/errors.hpp"
#include "primesum/ntt.hpp"

namespace primesum::sumsets {

using ntheory::binary_gcd;
using ntheory::checked_add;
using ntheory::checked_mul;
using ntheory::checked_pow;

namespace {

using Words = std::vector<std::uint64_t>;

constexpr u64 kMaxBitsetModulus = u64{1} << 31;

// dest |= (src << s), truncated to dest.size() words.
void or_shifted_left(Words& dest, const Words& src, u64 s) {
    const u64 ws = s >> 6;
    const unsigned bs = s & 63;
    const u64 n = dest.size();
    for (u64 w = ws; w < n; ++w) {
        const u64 from = w - ws;
        std::uint64_t v = from < src.size() ? src[from] << bs : 0;
        if (bs != 0 && from >= 1 && from - 1 < src.size()) v |= src[from - 1] >> (64 - bs);
        dest[w] |= v;
    }
}

// dest |= (src >> s).
void or_shifted_right(Words& dest, const Words& src, u64 s) {
    const u64 ws = s >> 6;
    const unsigned bs = s & 63;
    for (u64 w = 0; w < dest.size() && w + ws < src.size(); ++w) {
        std::uint64_t v = src[w + ws] >> bs;
        if (bs != 0 && w + ws + 1 < src.size()) v |= src[w + ws + 1] << (64 - bs);
        dest[w] |= v;
    }
}

void require_same_modulus(const SubsetOfZm& a, const SubsetOfZm& b, const char* what) {
    if (a.modulus() != b.modulus())
        throw DomainError(std::string(what) + ": mismatched moduli " + std::to_string(a.modulus()) + " and " +
                          std::to_string(b.modulus()));
}

void require_modulus(const SubsetOfZm& b, const FactoredModulus& m, const char* what) {
    if (b.modulus() != m.value())
        throw DomainError(std::string(what) + ": subset lives in Z_" + std::to_string(b.modulus()) + ", modulus is " +
                          std::to_string(m.value()));
}

void require_units(const SubsetOfZm& b, const FactoredModulus& m, const char* what) {
    for (u64 x : b.members())
        if (binary_gcd(x, m.value()) != 1)
            throw DomainError(std::string(what) + ": " + std::to_string(x) + " is not a unit mod " +
                              std::to_string(m.value()));
}

std::vector<std::uint32_t> indicator32(const SubsetOfZm& s) {
    std::vector<std::uint32_t> v(s.modulus(), 0);
    for (u64 x : s.members()) v[x] = 1;
    return v;
}

u64 moment(const std::vector<u64>& values, unsigned k) {
    u64 s = 0;
    for (u64 v : values) s = checked_add(s, checked_pow(v, k));
    return s;
}

}  // namespace

SubsetOfZm::SubsetOfZm(u64 m) : m_(m) {
    if (m == 0) throw DomainError("SubsetOfZm: modulus must be positive");
    if (m > kMaxBitsetModulus) throw SizeError("SubsetOfZm: modulus " + std::to_string(m) + " too large for a bitset");
    words_.assign((m + 63) / 64, 0);
}

SubsetOfZm SubsetOfZm::from_members(u64 m, std::span<const u64> members) {
    SubsetOfZm s(m);
    for (u64 x : members) s.insert(x % m);
    return s;
}

SubsetOfZm SubsetOfZm::units(const FactoredModulus& m) {
    SubsetOfZm s(m.value());
    for (u64 x = 0; x < m.value(); ++x)
        if (binary_gcd(x, m.value()) == 1) s.insert(x);
    return s;
}

void SubsetOfZm::insert(u64 x) {
    if (x >= m_) throw DomainError("SubsetOfZm: element " + std::to_string(x) + " outside Z_" + std::to_string(m_));
    words_[x >> 6] |= std::uint64_t{1} << (x & 63);
}

u64 SubsetOfZm::size() const {
    u64 c = 0;
    for (auto w : words_) c += static_cast<u64>(std::popcount(w));
    return c;
}

std::vector<u64> SubsetOfZm::members() const {
    std::vector<u64> out;
    out.reserve(size());
    for (u64 w = 0; w < words_.size(); ++w) {
        for (std::uint64_t bits = words_[w]; bits != 0; bits &= bits - 1)
            out.push_back(w * 64 + static_cast<u64>(std::countr_zero(bits)));
    }
    return out;
}

void SubsetOfZm::clear_tail() {
    if (const unsigned rem = m_ & 63; rem != 0) words_.back() &= (std::uint64_t{1} << rem) - 1;
}

SubsetOfZm SubsetOfZm::rotated(u64 shift) const {
    shift %= m_;
    SubsetOfZm out(m_);
    if (shift == 0) {
        out.words_ = words_;
        return out;
    }
    or_shifted_left(out.words_, words_, shift);
    out.clear_tail();
    or_shifted_right(out.words_, words_, m_ - shift);
    return out;
}

SubsetOfZm& SubsetOfZm::operator|=(const SubsetOfZm& other) {
    require_same_modulus(*this, other, "SubsetOfZm::operator|=");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

SubsetOfZm sumset_shift(const SubsetOfZm& a, const SubsetOfZm& b) {
    require_same_modulus(a, b, "sumset");
    const bool a_small = a.size() <= b.size();
    const SubsetOfZm& small = a_small ? a : b;
    const SubsetOfZm& large = a_small ? b : a;
    SubsetOfZm out(a.modulus());
    for (u64 s : small.members()) out |= large.rotated(s);
    return out;
}

SubsetOfZm sumset_convolution(const SubsetOfZm& a, const SubsetOfZm& b) {
    require_same_modulus(a, b, "sumset");
    SubsetOfZm out(a.modulus());
    if (a.empty() || b.empty()) return out;
    const auto conv = ntt::cyclic_convolve(indicator32(a), indicator32(b));
    for (u64 x = 0; x < conv.size(); ++x)
        if (conv[x] != 0) out.insert(x);
    return out;
}

SubsetOfZm sumset(const SubsetOfZm& a, const SubsetOfZm& b) {
    SubsetOfZm by_shift = sumset_shift(a, b);
    if (by_shift != sumset_convolution(a, b))
        throw InvariantViolation("sumset: shift-accumulate and convolution-support routes disagree");
    return by_shift;
}

std::vector<u64> integer_sumset(std::span<const u64> a, std::span<const u64> b) {
    if (a.empty() || b.empty()) return {};
    const auto [amin, amax] = std::minmax_element(a.begin(), a.end());
    const auto [bmin, bmax] = std::minmax_element(b.begin(), b.end());
    const u64 base = checked_add(*amin, *bmin);
    const u64 span_a = *amax - *amin + 1, span_b = *bmax - *bmin + 1;
    const u64 width = span_a + span_b - 1;

    Words wa((span_a + 63) / 64, 0), wb((span_b + 63) / 64, 0);
    for (u64 x : a) wa[(x - *amin) >> 6] |= std::uint64_t{1} << ((x - *amin) & 63);
    for (u64 x : b) wb[(x - *bmin) >> 6] |= std::uint64_t{1} << ((x - *bmin) & 63);
    auto count_bits = [](const Words& w) {
        u64 c = 0;
        for (auto v : w) c += static_cast<u64>(std::popcount(v));
        return c;
    };
    const u64 na = count_bits(wa), nb = count_bits(wb);
    const u64 shift_cost = std::min(na, nb) * ((width + 63) / 64);

    std::vector<u64> out;
    if (shift_cost > 200'000'000 && std::bit_ceil(width) <= (u64{1} << 23)) {
        std::vector<std::uint32_t> ia(span_a, 0), ib(span_b, 0);
        for (u64 x : a) ia[x - *amin] = 1;
        for (u64 x : b) ib[x - *bmin] = 1;
        const auto conv = ntt::linear_convolve(ia, ib);
        for (u64 i = 0; i < conv.size(); ++i)
            if (conv[i] != 0) out.push_back(base + i);
        return out;
    }
    const bool a_small = na <= nb;
    const Words& small = a_small ? wa : wb;
    const Words& large = a_small ? wb : wa;
    Words acc((width + 63) / 64, 0);
    for (u64 w = 0; w < small.size(); ++w)
        for (std::uint64_t bits = small[w]; bits != 0; bits &= bits - 1)
            or_shifted_left(acc, large, w * 64 + static_cast<u64>(std::countr_zero(bits)));
    for (u64 w = 0; w < acc.size(); ++w)
        for (std::uint64_t bits = acc[w]; bits != 0; bits &= bits - 1) {
            const u64 i = w * 64 + static_cast<u64>(std::countr_zero(bits));
            if (i < width) out.push_back(base + i);
        }
    return out;
}

RepresentationHistogram rep_histogram(const SubsetOfZm& b) {
    const u64 m = b.modulus();
    RepresentationHistogram h{m, std::vector<u64>(m, 0), b.size()};
    const auto members = b.members();
    if (members.size() * members.size() <= 1'000'000) {
        for (u64 x : members)
            for (u64 y : members) ++h.r[(x + y) % m];
        return h;
    }
    const auto ind = indicator32(b);
    const auto conv = ntt::cyclic_convolve(ind, ind);
    for (u64 x = 0; x < m; ++x) h.r[x] = conv[x];
    return h;
}

std::vector<u64> capital_R(const SubsetOfZm& b, const FactoredModulus& m) {
    require_modulus(b, m, "capital_R");
    if (!m.squarefree()) throw DomainError("capital_R: modulus " + std::to_string(m.value()) + " is not squarefree");
    require_units(b, m, "capital_R");
    const u64 mod = m.value();

    std::vector<u64> by_units(mod, 0);
    if (!b.empty()) {
        const auto conv = ntt::cyclic_convolve(indicator32(b), indicator32(SubsetOfZm::units(m)));
        for (u64 x = 0; x < mod; ++x) by_units[x] = conv[x];
    }

    const auto primes = m.prime_divisors();
    const auto members = b.members();
    std::vector<u64> residues(members.size() * primes.size());
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = 0; j < primes.size(); ++j) residues[i * primes.size() + j] = members[i] % primes[j];
    std::vector<u64> xres(primes.size());
    std::vector<u64> by_primes(mod, 0);
    for (u64 x = 0; x < mod; ++x) {
        for (std::size_t j = 0; j < primes.size(); ++j) xres[j] = x % primes[j];
        u64 count = 0;
        for (std::size_t i = 0; i < members.size(); ++i) {
            bool avoids = true;
            for (std::size_t j = 0; j < primes.size() && avoids; ++j) avoids = residues[i * primes.size() + j] != xres[j];
            count += avoids;
        }
        by_primes[x] = count;
    }
    if (by_units != by_primes)
        throw InvariantViolation("capital_R: unit-convolution and per-prime counts disagree");
    return by_units;
}

std::vector<Stratum> divisor_stratification(const FactoredModulus& m) {
    const auto divs = m.divisors();
    std::vector<Stratum> strata;
    strata.reserve(divs.size());
    for (u64 d : divs) strata.push_back({d, {}});
    for (u64 x = 0; x < m.value(); ++x) {
        const u64 d = binary_gcd(x, m.value());
        const auto it = std::lower_bound(divs.begin(), divs.end(), d);
        strata[static_cast<std::size_t>(it - divs.begin())].members.push_back(x);
    }
    return strata;
}

CollisionStats collision_stats(std::span<const u64> tuple, const FactoredModulus& m) {
    if (!m.squarefree()) throw DomainError("collision_stats: modulus " + std::to_string(m.value()) + " is not squarefree");
    const u64 k = tuple.size();
    CollisionStats out;
    u64 num = 0;
    std::vector<u64> res(k);
    for (u64 p : m.prime_divisors()) {
        for (u64 i = 0; i < k; ++i) res[i] = tuple[i] % p;
        std::sort(res.begin(), res.end());
        const u64 distinct = static_cast<u64>(std::unique(res.begin(), res.end()) - res.begin());
        out.per_prime.push_back({p, distinct});
        if (distinct + 1 <= k) num += m.value() / p;
    }
    out.f = Rational::make(num, m.value());
    return out;
}

TailCount tail_count(const SubsetOfZm& b, unsigned k, double beta, const FactoredModulus& m, double c) {
    require_modulus(b, m, "tail_count");
    if (!m.squarefree()) throw DomainError("tail_count: modulus is not squarefree");
    if (k == 0) throw DomainError("tail_count: k must be >= 1");
    if (!(c > 0)) throw DomainError("tail_count: c must be positive");
    const auto members = b.members();
    const u64 card = members.size();
    u64 total;
    try {
        total = checked_pow(card, k);
    } catch (const OverflowError&) {
        throw SizeError("tail_count: |B|^k overflows the enumeration guard");
    }
    if (total > kTailEnumerationLimit)
        throw SizeError("tail_count: |B|^k = " + std::to_string(total) + " exceeds enumeration guard 1e8");

    const auto primes = m.prime_divisors();
    const std::size_t np = primes.size();
    std::vector<u64> weights(np);
    for (std::size_t j = 0; j < np; ++j) weights[j] = m.value() / primes[j];
    std::vector<u64> residues(card * np);
    for (u64 i = 0; i < card; ++i)
        for (std::size_t j = 0; j < np; ++j) residues[i * np + j] = members[i] % primes[j];
    // f >= beta  <=>  sum of qualifying weights >= beta * m
    const long double target = static_cast<long double>(beta) * static_cast<long double>(m.value());

    TailCount out;
    out.total = total;
    out.c = c;
    if (card > 0) {
        std::vector<u64> idx(k, 0);
        for (u64 t = 0; t < total; ++t) {
            u64 weight = 0;
            for (std::size_t j = 0; j < np; ++j) {
                bool collide = false;
                for (unsigned a = 0; a < k && !collide; ++a)
                    for (unsigned bb = a + 1; bb < k && !collide; ++bb)
                        collide = residues[idx[a] * np + j] == residues[idx[bb] * np + j];
                if (collide) weight += weights[j];
            }
            if (static_cast<long double>(weight) >= target) ++out.count;
            for (unsigned pos = k; pos-- > 0;) {
                if (++idx[pos] < card) break;
                idx[pos] = 0;
            }
        }
    }
    const double kk = static_cast<double>(k);
    out.bound_log = 2 * std::log(kk) - std::numbers::ln2 * std::exp(beta / (c * kk * kk)) +
                    (kk - 2) * std::log(static_cast<double>(std::max<u64>(card, 1))) +
                    2 * std::log(static_cast<double>(m.totient()));
    out.bound = std::exp(out.bound_log);
    return out;
}

MomentCertificate kth_moment(const SubsetOfZm& b, unsigned k, const FactoredModulus& m) {
    require_modulus(b, m, "kth_moment");
    if (k == 0) throw DomainError("kth_moment: k must be >= 1");
    if (b.empty()) throw DomainError("kth_moment: B is empty");
    MomentCertificate cert;
    cert.B = b;
    cert.k = k;
    const u64 card = b.size();
    cert.alpha = static_cast<double>(card) / static_cast<double>(m.totient());
    const RepresentationHistogram hist = rep_histogram(b);
    cert.S_rB = moment(hist.r, k);

    bool units_only = true;
    for (u64 x : b.members()) units_only = units_only && binary_gcd(x, m.value()) == 1;
    if (m.squarefree() && units_only) {
        const auto R = capital_R(b, m);
        for (u64 x = 0; x < m.value(); ++x)
            if (R[x] < hist.r[x])
                throw InvariantViolation("kth_moment: R(" + std::to_string(x) + ") < r_B(" + std::to_string(x) + ")");
        cert.S_R = moment(R, k);
        u64 reassembled = 0;
        for (const Stratum& st : divisor_stratification(m)) {
            u64 part = 0;
            for (u64 x : st.members) part = checked_add(part, checked_pow(R[x], k));
            cert.stratified.push_back({st.d, part});
            reassembled = checked_add(reassembled, part);
        }
        if (cert.S_rB > *cert.S_R) throw InvariantViolation("kth_moment: S_rB exceeds S_R");
        if (reassembled != *cert.S_R) throw InvariantViolation("kth_moment: stratified parts do not reassemble S_R");
    }

    const double kk = k;
    const double log_cmp = kk * std::log(static_cast<double>(card)) + kk * std::log(static_cast<double>(m.totient())) -
                           (kk - 1) * std::log(static_cast<double>(m.value())) - 2 * std::log(cert.alpha);
    cert.comparator = std::exp(log_cmp);
    cert.implied_constant = static_cast<double>(cert.S_rB) / cert.comparator;
    const SubsetOfZm sums = sumset(b, b);
    cert.actual_sumset = sums.size();
    if (k >= 2) cert.holder_bound = holder_lower_bound(b, k).bound;
    return cert;
}

CkSeries ck_series(double c, unsigned k, unsigned j_max) {
    if (!(c > 0)) throw DomainError("ck_series: c must be positive");
    if (k == 0) throw DomainError("ck_series: k must be >= 1");
    const double kk = k;
    const double a = 2 * (kk + 1);
    const double b = c * kk * kk;
    const double ln2 = std::numbers::ln2;
    auto exponent = [&](double u) { return a * u - ln2 * std::exp(u / b); };
    // D(u) = L(2u) - L(u); D is concave, so D'(u) < 0 and D(u) <= -1 certify
    // that every later term is at most e^{-1} times its predecessor.
    auto ratio_log = [&](double u) { return a * u - ln2 * (std::exp(2 * u / b) - std::exp(u / b)); };
    auto ratio_slope = [&](double u) { return a - (ln2 / b) * (2 * std::exp(2 * u / b) - std::exp(u / b)); };

    CkSeries out;
    out.c = c;
    out.k = k;
    out.formula_maximizer_j = std::log2(c * kk * kk * kk * std::log(4 * c * kk * kk * (kk + 1) / ln2));
    out.continuous_maximizer_j = std::log2(b * std::log(a * b / ln2));
    out.tail_start_j = std::log2(4 * c * c * kk * kk * kk * kk * (kk + 1));

    long double log_sum = -std::numeric_limits<long double>::infinity();
    double best = -std::numeric_limits<double>::infinity();
    for (unsigned j = 0;; ++j) {
        if (j > 1000) throw RangeError("ck_series: no tail certificate within 1000 terms");
        const double u = std::ldexp(1.0, static_cast<int>(j));
        const double lj = exponent(u);
        if (std::isnan(lj) || lj == std::numeric_limits<double>::infinity())
            throw RangeError("ck_series: term " + std::to_string(j) + " overflows log space; dominant index " +
                             std::to_string(out.dominant_index));
        out.log_terms.push_back(lj);
        if (lj > best) {
            best = lj;
            out.dominant_index = j;
        }
        if (lj != -std::numeric_limits<double>::infinity()) {
            const long double hi = std::max<long double>(log_sum, lj);
            log_sum = hi + std::log(std::exp(log_sum - hi) + std::exp(static_cast<long double>(lj) - hi));
        }
        const bool small = lj - static_cast<double>(log_sum) < std::log(1e-30);
        const bool certified = lj == -std::numeric_limits<double>::infinity() ||
                               (ratio_slope(u) < 0 && ratio_log(u) <= -1);
        if (j >= j_max && small && certified) {
            out.j_max = j;
            out.tail_bound = lj == -std::numeric_limits<double>::infinity() ? 0.0 : std::exp(lj) / (std::numbers::e - 1);
            break;
        }
    }
    if (log_sum > std::log(std::numeric_limits<long double>::max()))
        throw RangeError("ck_series: partial sum exceeds extended precision; dominant index " +
                         std::to_string(out.dominant_index));
    out.log_partial_sum = static_cast<double>(log_sum);
    out.partial_sum = std::exp(log_sum);
    return out;
}

HolderBound holder_lower_bound(const SubsetOfZm& b, unsigned k) {
    if (k < 2) throw DomainError("holder_lower_bound: k must be >= 2");
    if (b.empty()) throw DomainError("holder_lower_bound: B is empty");
    HolderBound out;
    out.k = k;
    out.moment = moment(rep_histogram(b).r, k);
    const long double kk = k;
    const long double log_bound =
        (2 * kk * std::log(static_cast<long double>(b.size())) - std::log(static_cast<long double>(out.moment))) / (kk - 1);
    out.bound = static_cast<double>(std::exp(log_bound));
    out.actual = sumset(b, b).size();
    if (static_cast<double>(out.actual) < out.bound - 1e-9)
        throw InvariantViolation("holder_lower_bound: |B+B| = " + std::to_string(out.actual) + " below bound " +
                                 std::to_string(out.bound));
    return out;
}

std::optional<unsigned> k_from_alpha(double alpha) {
    if (!(alpha > 0) || alpha >= 1) return std::nullopt;
    const double l = std::log(1 / alpha);
    const double ll = std::log(l);
    if (!(ll > 0)) return std::nullopt;
    return static_cast<unsigned>(std::floor(std::cbrt(l / ll)));
}

namespace {

BlockStep certify_block(u64 j, const std::vector<u64>& block, u64 offset, u64 modulus, unsigned k, double alpha_j,
                        bool selected) {
    BlockStep step;
    step.j = j;
    step.size = block.size();
    step.alpha_j = alpha_j;
    step.selected = selected;
    if (!selected || block.empty()) return step;
    std::vector<u64> translated(block.size());
    for (std::size_t i = 0; i < block.size(); ++i) translated[i] = block[i] - offset;
    const SubsetOfZm local = SubsetOfZm::from_members(modulus, translated);
    const HolderBound hb = holder_lower_bound(local, k);
    step.bound = hb.bound;
    step.cyclic_sumset = hb.actual;
    step.integer_sumset = integer_sumset(block, block).size();
    if (*step.cyclic_sumset > *step.integer_sumset)
        throw InvariantViolation("znstar_certificate: cyclic block sumset exceeds its integer sumset");
    return step;
}

}  // namespace

ZnStarCertificate znstar_certificate(const SubsetOfZm& b, const FactoredModulus& m, std::optional<double> alpha0) {
    require_modulus(b, m, "znstar_certificate");
    if (b.empty()) throw DomainError("znstar_certificate: B is empty");
    require_units(b, m, "znstar_certificate");

    ZnStarCertificate cert;
    cert.m = m.value();
    cert.squarefree = m.squarefree();
    cert.card = b.size();
    cert.alpha = static_cast<double>(cert.card) / static_cast<double>(m.totient());
    cert.k_formula = k_from_alpha(cert.alpha);
    cert.k = std::max(3u, cert.k_formula.value_or(0));
    cert.radical = m.radical();
    const auto members = b.members();
    cert.actual_cyclic = sumset(b, b).size();
    cert.actual_integer = integer_sumset(members, members).size();

    if (cert.squarefree) {
        cert.direct = holder_lower_bound(b, cert.k);
        cert.final_bound = cert.direct->bound;
        if (cert.final_bound > static_cast<double>(cert.actual_cyclic) + 1e-9)
            throw InvariantViolation("znstar_certificate: bound exceeds |B+B|");
    } else {
        const u64 m1 = cert.radical;
        const FactoredModulus rad = ntheory::factorize(m1);
        const u64 blocks = m.value() / m1;
        std::vector<std::vector<u64>> parts(blocks);
        for (u64 x : members) parts[x / m1].push_back(x);
        u64 total = 0, selected_integer = 0;
        for (u64 j = 0; j < blocks; ++j) {
            const double alpha_j = static_cast<double>(parts[j].size()) / static_cast<double>(rad.totient());
            const bool selected = alpha_j > cert.alpha / 2;
            cert.blocks.push_back(certify_block(j, parts[j], j * m1, m1, cert.k, alpha_j, selected));
            total += parts[j].size();
            if (cert.blocks.back().bound) {
                cert.final_bound += *cert.blocks.back().bound;
                selected_integer += *cert.blocks.back().integer_sumset;
            }
        }
        const Rational sum = Rational::make(total, rad.totient());
        cert.alpha_sum_num = sum.num;
        cert.alpha_sum_den = sum.den;
        // sum_j |B_j| / phi(m1) == (|B| / phi(m)) * (m / m1)
        const unsigned __int128 lhs = static_cast<unsigned __int128>(total) * m.totient() * m1;
        const unsigned __int128 rhs = static_cast<unsigned __int128>(cert.card) * m.value() * rad.totient();
        cert.alpha_sum_identity = lhs == rhs;
        if (!cert.alpha_sum_identity) throw InvariantViolation("znstar_certificate: block densities do not sum to alpha m/m1");
        if (selected_integer > cert.actual_integer)
            throw InvariantViolation("znstar_certificate: disjoint block sumsets exceed |B+B|");
        if (cert.final_bound > static_cast<double>(cert.actual_integer) + 1e-9)
            throw InvariantViolation("znstar_certificate: bound exceeds |B+B|");
    }

    if (alpha0) {
        if (!(*alpha0 > 0 && *alpha0 <= 1)) throw DomainError("znstar_certificate: alpha0 must lie in (0, 1]");
        cert.alpha0 = alpha0;
        const u64 block_size = static_cast<u64>(std::floor(*alpha0 * static_cast<double>(m.totient())));
        const u64 count = static_cast<u64>(std::floor(cert.alpha / *alpha0));
        u64 integer_total = 0;
        for (u64 j = 0; block_size > 0 && j < count && (j + 1) * block_size <= members.size(); ++j) {
            std::vector<u64> block(members.begin() + static_cast<std::ptrdiff_t>(j * block_size),
                                   members.begin() + static_cast<std::ptrdiff_t>((j + 1) * block_size));
            const double alpha_j = static_cast<double>(block_size) / static_cast<double>(m.totient());
            cert.consecutive_blocks.push_back(certify_block(j, block, 0, m.value(), cert.k, alpha_j, true));
            integer_total += *cert.consecutive_blocks.back().integer_sumset;
            cert.consecutive_bound += *cert.consecutive_blocks.back().bound;
        }
        if (integer_total > cert.actual_integer)
            throw InvariantViolation("znstar_certificate: consecutive block sumsets exceed |B+B|");
    }

    const double l = std::log(1 / cert.alpha);
    const double ll = l > 0 ? std::log(l) : 0;
    const double expo = ll > 0 ? std::pow(l, 2.0 / 3.0) * std::cbrt(ll) : 0;
    cert.reference_shape = cert.alpha * std::exp(-expo) * static_cast<double>(m.value());
    return cert;
}

ExtremalConstruction extremal_construct(unsigned s, unsigned t) {
    if (!(t >= 1 && t < s)) throw DomainError("extremal_construct: need 1 <= t < s");
    ExtremalConstruction out;
    out.s = s;
    out.t = t;
    u64 m = 1, frozen = 1, frozen_phi = 1;
    try {
        for (u64 p = 2; out.primes.size() < s; ++p) {
            if (!ntheory::is_prime(p)) continue;
            out.primes.push_back(p);
            m = checked_mul(m, p);
            if (out.primes.size() <= t) {
                frozen *= p;
                frozen_phi *= p - 1;
            }
        }
    } catch (const OverflowError& e) {
        throw RangeError(std::string("extremal_construct: modulus overflow: ") + e.what());
    }
    out.m = m;
    out.predicted_sumset = m / frozen;
    out.predicted_alpha = Rational::make(1, frozen_phi);

    // Each element is rebuilt by CRT from its coordinate vector: 1 in the
    // frozen coordinates, any nonzero residue in the free ones.
    SubsetOfZm b(m);
    std::vector<u64> residues(s, 1);
    for (;;) {
        b.insert(ntheory::crt(residues, out.primes));
        bool done = true;
        for (unsigned pos = s; pos > t;) {
            --pos;
            if (++residues[pos] < out.primes[pos]) {
                done = false;
                break;
            }
            residues[pos] = 1;
        }
        if (done) break;
    }
    out.B = std::move(b);
    return out;
}

double mertens_ratio(u64 W) {
    if (W < 3) throw DomainError("mertens_ratio: W must be >= 3");
    const FactoredModulus m = ntheory::primorial(W);
    if (m.totient() < 3)
        throw DomainError("mertens_ratio: phi(m) = " + std::to_string(m.totient()) + " < 3, log log phi(m) is not positive");
    const double phi = static_cast<double>(m.totient());
    return static_cast<double>(m.value()) / (phi * std::log(std::log(phi)));
}

}  // namespace primesum::sumsets
