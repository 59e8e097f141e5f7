#include "primesum/prime_embed.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "primesum/errors.hpp"

namespace primesum::embed {

using ntheory::binary_gcd;
using spectral::Index;

namespace {

// Neumaier's compensated summation.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0, comp_ = 0;
};

std::vector<Index> as_indices(const std::vector<u64>& xs, u64 N) {
    std::vector<Index> out;
    out.reserve(xs.size());
    for (u64 x : xs) out.push_back(static_cast<Index>(x % N));
    return out;
}

}  // namespace

const ResidueClass& ResiduePartition::cls(u64 b) const {
    const auto it = std::lower_bound(classes.begin(), classes.end(), b,
                                     [](const ResidueClass& c, u64 v) { return c.b < v; });
    if (it == classes.end() || it->b != b)
        throw DomainError("residue " + std::to_string(b) + " is not a unit mod " + std::to_string(modulus.value()));
    return *it;
}

ResiduePartition partition_and_densities(const std::vector<u64>& A, u64 n, u64 W) {
    ResiduePartition part;
    part.n = n;
    part.W = W;
    part.modulus = ntheory::primorial(W);
    const u64 m = part.modulus.value();
    part.host = std::make_shared<const PrimeTable>(
        ntheory::sieve_primes(ntheory::checked_add(ntheory::checked_mul(4, n), m)));
    const auto& all = part.host->primes;
    const std::size_t upto_n = part.host->count_upto(n);

    std::vector<u64> sorted_a = A;
    std::sort(sorted_a.begin(), sorted_a.end());
    sorted_a.erase(std::unique(sorted_a.begin(), sorted_a.end()), sorted_a.end());
    for (u64 a : sorted_a)
        if (a > n || !std::binary_search(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(upto_n), a))
            throw DomainError("partition_and_densities: " + std::to_string(a) + " is not a prime <= " +
                              std::to_string(n));

    std::vector<long> slot(m, -1);
    for (u64 b = 0; b < m; ++b) {
        if (binary_gcd(b, m) != 1) continue;
        slot[b] = static_cast<long>(part.classes.size());
        part.classes.push_back({b, {}, {}, 0});
    }
    auto in_a = sorted_a.begin();
    for (std::size_t i = 0; i < upto_n; ++i) {
        const u64 p = all[i];
        while (in_a != sorted_a.end() && *in_a < p) ++in_a;
        const bool member = in_a != sorted_a.end() && *in_a == p;
        const long s = slot[p % m];
        if (s < 0) {
            part.residual_primes.push_back(p);
            if (member) part.residual_members.push_back(p);
        } else {
            part.classes[static_cast<std::size_t>(s)].primes.push_back(p);
            if (member) part.classes[static_cast<std::size_t>(s)].members.push_back(p);
        }
    }
    part.prime_count = upto_n;
    part.member_count = sorted_a.size();
    part.delta = part.prime_count == 0 ? 0.0 : static_cast<double>(part.member_count) / static_cast<double>(part.prime_count);
    for (auto& c : part.classes) {
        c.delta_b = c.primes.empty() ? 0.0 : static_cast<double>(c.members.size()) / static_cast<double>(c.primes.size());
        if (c.delta_b > 0 && c.delta_b >= part.delta / 2) part.good.push_back(c.b);
    }
    return part;
}

std::vector<u64> good_set(const ResiduePartition& part, double threshold) {
    if (!(threshold >= 0 && threshold <= 1)) throw DomainError("good_set: threshold must lie in [0, 1]");
    std::vector<u64> out;
    for (const auto& c : part.classes)
        if (c.delta_b >= threshold) out.push_back(c.b);
    return out;
}

u64 choose_N(u64 n, u64 m) {
    if (m == 0) throw DomainError("choose_N: m must be positive");
    if (m > 2 * n)
        throw DomainError("choose_N: m = " + std::to_string(m) + " exceeds 2n = " + std::to_string(2 * n) +
                          ", so (2n/m, 4n/m] contains no admissible N >= 2");
    const u64 N = 4 * n / m;
    if (!(N * m > 2 * n && N * m <= 4 * n)) throw InvariantViolation("choose_N: N outside (2n/m, 4n/m]");
    return N;
}

EmbeddedClass embed_class(const ResiduePartition& part, u64 b, u64 N) {
    const u64 m = part.modulus.value();
    if (b >= m || binary_gcd(b, m) != 1)
        throw DomainError("embed_class: b = " + std::to_string(b) + " is not a unit mod " + std::to_string(m));
    if (N < 1) throw DomainError("embed_class: N must be positive");
    if (ntheory::checked_add(ntheory::checked_mul(m, N), b) > part.host->limit)
        throw DomainError("embed_class: m N + b exceeds the sieved range");
    const ResidueClass& c = part.cls(b);

    EmbeddedClass ec;
    ec.b = b;
    ec.m = m;
    ec.N = N;
    ec.W = part.W;
    ec.delta_b = c.delta_b;
    for (u64 a : c.members) {
        if (a <= b) continue;
        const u64 x = (a - b) / m;
        if (x >= 1 && x <= N) ec.indicator.push_back(x);
    }

    const double scale = static_cast<double>(part.modulus.totient()) / (static_cast<double>(m) * static_cast<double>(N));
    Density::Vector lambda = Density::Vector::Zero(static_cast<Index>(N));
    for (u64 x = 1; x <= N; ++x) {
        const u64 v = m * x + b;
        if (part.host->contains(v)) lambda[static_cast<Index>(x % N)] = scale * std::log(static_cast<double>(v));
    }
    Density::Vector nu = lambda * static_cast<double>(N);
    Density::Vector f = Density::Vector::Zero(static_cast<Index>(N));
    for (u64 x : ec.indicator) f[static_cast<Index>(x % N)] = nu[static_cast<Index>(x % N)];
    ec.lambda = Density(std::move(lambda));
    ec.nu = Density(std::move(nu));
    ec.f = Density(std::move(f));
    return ec;
}

MassCheck embedding_mass_check(const EmbeddedClass& ec, double delta_b) {
    CompensatedSum s;
    for (u64 x : ec.indicator) s.add(ec.lambda[static_cast<Index>(x % ec.N)]);
    MassCheck out;
    out.mass = s.value();
    out.threshold = delta_b / 16;
    out.pass = out.mass >= out.threshold;
    return out;
}

Deficit pseudorandom_deficit(const EmbeddedClass& ec) {
    const auto spec = spectral::dft(ec.nu);
    Deficit d;
    d.zero_mode_error = std::abs(spec.coeffs[0] - std::complex<double>(1, 0));
    for (Index xi = 1; xi < spec.size(); ++xi) d.offpeak_sup = std::max(d.offpeak_sup, spec.magnitude(xi));
    const double w = static_cast<double>(ec.W);
    d.reference_bound = 2 * std::log(std::log(w)) / w;
    return d;
}

double eps0_limit(double sigma, double alpha) {
    return std::pow(sigma, 6) * std::pow(alpha, 4) / 400.0;
}

PairReport pair_sumset_report(const EmbeddedClass& ec1, const EmbeddedClass& ec2, double eps, double eps0,
                              double sigma) {
    if (ec1.N != ec2.N) throw DomainError("pair_sumset_report: mismatched N");
    const double alpha = std::min(ec1.f.mean(), ec2.f.mean());
    const double limit = eps0_limit(sigma, alpha);
    const double used = limit > 0 ? std::min(eps0, limit) : eps0;
    const Decomposition d1 = spectral::green_decompose(ec1.f, used, sigma);
    const Decomposition d2 = spectral::green_decompose(ec2.f, used, sigma);
    PairReport rep = pair_sumset_report(ec1, ec2, d1, d2, eps, used, sigma);
    rep.eps0_requested = eps0;
    rep.eps0_clamped = used < eps0;
    return rep;
}

PairReport pair_sumset_report(const EmbeddedClass& ec1, const EmbeddedClass& ec2, const Decomposition& d1,
                              const Decomposition& d2, double eps, double eps0, double sigma) {
    if (ec1.N != ec2.N) throw DomainError("pair_sumset_report: mismatched N");
    if (!(eps > 0 && eps < 1)) throw DomainError("pair_sumset_report: eps must lie in (0, 1)");
    PairReport rep;
    rep.b1 = ec1.b;
    rep.b2 = ec2.b;
    rep.N = ec1.N;
    rep.delta1 = ec1.delta_b;
    rep.delta2 = ec2.delta_b;
    rep.eps = eps;
    rep.eps0_requested = eps0;
    rep.eps0_used = eps0;
    rep.sigma = sigma;
    rep.proof = spectral::convolution_proof_quantities(ec1.f, ec2.f, d1, d2);
    rep.support_count = static_cast<u64>(spectral::positive_support(ec1.f, ec2.f));
    rep.support_fraction = static_cast<double>(rep.support_count) / static_cast<double>(rep.N);

    std::vector<char> hit(rep.N, 0);
    const auto i1 = as_indices(ec1.indicator, rep.N), i2 = as_indices(ec2.indicator, rep.N);
    if (!i1.empty() && !i2.empty()) {
        const auto conv = spectral::cyclic_convolve(Density::indicator(static_cast<Index>(rep.N), i1).values(),
                                                    Density::indicator(static_cast<Index>(rep.N), i2).values());
        for (Index x = 0; x < conv.size(); ++x) rep.embedded_sumset += conv[x] > 0.5;
    }
    rep.target = (rep.delta1 + rep.delta2) / 2 - eps;
    rep.pass = rep.support_fraction >= rep.target;
    return rep;
}

DeltaAggregate aggregate_delta(const ResiduePartition& part, const std::vector<u64>& G, double eps) {
    if (G.empty()) throw DomainError("aggregate_delta: good set is empty");
    const u64 m = part.modulus.value();
    std::vector<u64> sorted = G;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> best(m, -1);
    std::vector<std::pair<u64, u64>> witness(m);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double di = part.cls(sorted[i]).delta_b;
        for (std::size_t j = i; j < sorted.size(); ++j) {
            const double v = (di + part.cls(sorted[j]).delta_b) / 2;
            const u64 x = (sorted[i] + sorted[j]) % m;
            if (v > best[x]) {
                best[x] = v;
                witness[x] = {sorted[i], sorted[j]};
            }
        }
    }
    DeltaAggregate out;
    const double scale = static_cast<double>(part.n) / static_cast<double>(m);
    for (u64 x = 0; x < m; ++x) {
        if (best[x] < 0) continue;
        out.entries.push_back({x, best[x], witness[x].first, witness[x].second});
        out.lower_bound += std::max(0.0, best[x] - eps) * scale;
    }
    return out;
}

}  // namespace primesum::embed
