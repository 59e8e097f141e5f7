// spectral.hpp
// Fourier analysis on the cyclic group Z_N with the 1/N-normalized transform
//   f^(xi) = (1/N) sum_x f(x) e(-x xi / N),   e(t) = exp(2 pi i t),
// plus Bohr sets, large spectra and the Bohr-average decomposition
// f = f1 + f2 with f1 structured and f2 spectrally small.
//
// Everything is templated on the real scalar type; the library itself is
// exercised with double.

#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "primesum/errors.hpp"
#include "primesum/fft.hpp"

namespace primesum::spectral {

using Index = Eigen::Index;

template <class Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

enum class TransformMode { Fast, Direct };

// Direct transforms are only allowed up to this length.
inline constexpr Index kDirectTransformLimit = 4096;

namespace detail {

// Fixed-shape pairwise summation tree; the result depends only on the input
// order, never on scheduling.
template <class T>
T pairwise_sum(const T* p, Index n) {
    if (n <= 8) {
        T acc = T(0);
        for (Index i = 0; i < n; ++i) acc += p[i];
        return acc;
    }
    const Index half = n / 2;
    return pairwise_sum(p, half) + pairwise_sum(p + half, n - half);
}

// Rounds to 12 decimal digits so threshold comparisons are stable under
// floating-point noise.
template <class Scalar>
Scalar round12(Scalar v) {
    return std::round(v * Scalar(1e12)) / Scalar(1e12);
}

}  // namespace detail

template <class Derived>
typename Derived::Scalar pairwise_sum(const Eigen::MatrixBase<Derived>& v) {
    const auto plain = v.eval();
    return detail::pairwise_sum(plain.data(), plain.size());
}

// Nonnegative finite function on Z_N.
template <class Scalar>
class DensityFunction {
public:
    using Vector = RealVector<Scalar>;

    explicit DensityFunction(Vector values) : values_(std::move(values)) {
        if (values_.size() < 1) throw DomainError("DensityFunction: N must be >= 1");
        for (Index i = 0; i < values_.size(); ++i)
            if (!std::isfinite(values_[i]) || values_[i] < Scalar(0))
                throw DomainError("DensityFunction: value at " + std::to_string(i) + " is negative or not finite");
    }

    static DensityFunction zeros(Index n) { return DensityFunction(Vector::Zero(n)); }
    static DensityFunction constant(Index n, Scalar v) { return DensityFunction(Vector::Constant(n, v)); }

    // height * 1_S for S given by residues (reduced mod N).
    static DensityFunction indicator(Index n, std::span<const Index> members, Scalar height = Scalar(1)) {
        Vector v = Vector::Zero(n);
        for (Index x : members) v[((x % n) + n) % n] = height;
        return DensityFunction(std::move(v));
    }

    Index size() const { return values_.size(); }
    const Vector& values() const { return values_; }
    Scalar operator[](Index x) const { return values_[x]; }
    Scalar l1_norm() const { return pairwise_sum(values_); }
    Scalar mean() const { return l1_norm() / static_cast<Scalar>(size()); }
    Scalar max() const { return values_.maxCoeff(); }

private:
    Vector values_;
};

template <class Scalar>
struct Spectrum {
    ComplexVector<Scalar> coeffs;

    Index size() const { return coeffs.size(); }
    Scalar magnitude(Index xi) const { return std::abs(coeffs[xi]); }
    Scalar sup_norm() const { return coeffs.cwiseAbs().maxCoeff(); }
};

// Normalized transform of an arbitrary real or complex vector.
template <class Derived>
auto dft(const Eigen::MatrixBase<Derived>& values, TransformMode mode = TransformMode::Fast) {
    using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    const Index n = values.size();
    if (n < 1) throw DomainError("dft: N must be >= 1");
    const ComplexVector<Real> input = values.template cast<std::complex<Real>>();
    ComplexVector<Real> out;
    if (mode == TransformMode::Direct) {
        if (n > kDirectTransformLimit) throw SizeError("dft: direct mode limited to N <= 4096");
        out = fft::transform_direct<Real>(input, -1);
    } else {
        out = fft::transform<Real>(input, -1);
    }
    out /= static_cast<Real>(n);
    return Spectrum<Real>{std::move(out)};
}

template <class Scalar>
Spectrum<Scalar> dft(const DensityFunction<Scalar>& f, TransformMode mode = TransformMode::Fast) {
    return dft(f.values(), mode);
}

// Fourier inversion: f(x) = sum_xi f^(xi) e(x xi / N).
template <class Scalar>
ComplexVector<Scalar> inverse_dft(const Spectrum<Scalar>& s, TransformMode mode = TransformMode::Fast) {
    if (mode == TransformMode::Direct) {
        if (s.size() > kDirectTransformLimit) throw SizeError("inverse_dft: direct mode limited to N <= 4096");
        return fft::transform_direct<Scalar>(s.coeffs, +1);
    }
    return fft::transform<Scalar>(s.coeffs, +1);
}

template <class Scalar>
RealVector<Scalar> inverse_dft_real(const Spectrum<Scalar>& s, TransformMode mode = TransformMode::Fast) {
    return inverse_dft(s, mode).real();
}

// (a * b)(x) = sum_y a(y) b(x - y) for signed real vectors of equal length.
template <class DerivedA, class DerivedB>
auto cyclic_convolve(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    using Real = typename DerivedA::Scalar;
    const Index n = a.size();
    if (b.size() != n)
        throw DomainError("convolve: mismatched group orders " + std::to_string(n) + " and " + std::to_string(b.size()));
    RealVector<Real> out(n);
    if (n <= 64) {
        for (Index x = 0; x < n; ++x) {
            Real acc = 0;
            for (Index y = 0; y < n; ++y) acc += a[y] * b[((x - y) % n + n) % n];
            out[x] = acc;
        }
        return out;
    }
    const ComplexVector<Real> fa = fft::transform<Real>(a.template cast<std::complex<Real>>(), -1);
    const ComplexVector<Real> fb = fft::transform<Real>(b.template cast<std::complex<Real>>(), -1);
    const ComplexVector<Real> prod = fa.cwiseProduct(fb);
    out = fft::transform<Real>(prod, +1).real() / static_cast<Real>(n);
    return out;
}

// Convolution of nonnegative functions; roundoff-level negatives are zeroed.
template <class Scalar>
DensityFunction<Scalar> convolve(const DensityFunction<Scalar>& f, const DensityFunction<Scalar>& g) {
    RealVector<Scalar> out = cyclic_convolve(f.values(), g.values());
    return DensityFunction<Scalar>(out.cwiseMax(Scalar(0)));
}

// (sum_xi |f^(xi)|^s)^(1/s), s > 2.
template <class Scalar>
Scalar lp_fourier_norm(const Spectrum<Scalar>& spec, Scalar s) {
    if (!(s > Scalar(2))) throw DomainError("lp_fourier_norm: exponent must exceed 2");
    RealVector<Scalar> powered = spec.coeffs.cwiseAbs().array().pow(s).matrix();
    return std::pow(pairwise_sum(powered), Scalar(1) / s);
}

template <class Scalar>
Scalar lp_fourier_norm(const DensityFunction<Scalar>& f, Scalar s) {
    if (!(s > Scalar(2))) throw DomainError("lp_fourier_norm: exponent must exceed 2");
    return lp_fourier_norm(dft(f), s);
}

// Frequencies xi, ascending, with |f^(xi)| >= eps0 (magnitudes rounded to 12
// decimal digits before comparing).
template <class Scalar>
std::vector<Index> large_spectrum(const Spectrum<Scalar>& spec, Scalar eps0) {
    if (!(eps0 > Scalar(0))) throw DomainError("large_spectrum: eps0 must be positive");
    std::vector<Index> out;
    for (Index xi = 0; xi < spec.size(); ++xi)
        if (detail::round12(spec.magnitude(xi)) >= eps0) out.push_back(xi);
    return out;
}

template <class Scalar>
std::vector<Index> large_spectrum(const DensityFunction<Scalar>& f, Scalar eps0) {
    return large_spectrum(dft(f), eps0);
}

template <class Scalar>
struct BohrSet {
    Index N = 0;
    std::vector<Index> frequencies;  // ascending
    Scalar width = 0;
    std::vector<Index> members;  // ascending

    bool contains(Index x) const { return std::binary_search(members.begin(), members.end(), x); }
    Index size() const { return static_cast<Index>(members.size()); }
};

// |e(-x xi / N) - 1| = 2 |sin(pi r / N)| with r = x*xi mod N, folded to the
// nearer of r and N - r so that x and -x give identical values.
template <class Scalar>
Scalar character_distance(Index x, Index xi, Index n) {
    const auto r = static_cast<std::uint64_t>(x) * static_cast<std::uint64_t>(xi) % static_cast<std::uint64_t>(n);
    const auto folded = std::min<std::uint64_t>(r, static_cast<std::uint64_t>(n) - r);
    return Scalar(2) * std::sin(std::numbers::pi_v<Scalar> * static_cast<Scalar>(folded) / static_cast<Scalar>(n));
}

// {x : |e(-x xi/N) - 1| <= eps0 for every xi in frequencies}. Distances are
// rounded to 12 decimal digits, matching large_spectrum.
template <class Scalar>
BohrSet<Scalar> bohr_set(Index n, std::vector<Index> frequencies, Scalar eps0) {
    if (n < 1) throw DomainError("bohr_set: N must be >= 1");
    if (!(eps0 > Scalar(0) && eps0 <= Scalar(1))) throw DomainError("bohr_set: eps0 must lie in (0, 1]");
    std::sort(frequencies.begin(), frequencies.end());
    frequencies.erase(std::unique(frequencies.begin(), frequencies.end()), frequencies.end());
    for (Index xi : frequencies)
        if (xi < 0 || xi >= n) throw DomainError("bohr_set: frequency " + std::to_string(xi) + " outside Z_N");

    BohrSet<Scalar> out{n, std::move(frequencies), eps0, {}};
    for (Index x = 0; x < n; ++x) {
        bool member = true;
        for (Index xi : out.frequencies) {
            if (detail::round12(character_distance<Scalar>(x, xi, n)) > eps0) {
                member = false;
                break;
            }
        }
        if (member) out.members.push_back(x);
    }
    return out;
}

// mu(xi) = |sum_{y in B} e(-xi y / N)|^2 / |B|^2, the Fourier multiplier of
// the double average over B. mu(0) = 1 and 0 <= mu <= 1.
template <class Scalar>
RealVector<Scalar> bohr_multiplier(const BohrSet<Scalar>& bohr) {
    RealVector<Scalar> ind = RealVector<Scalar>::Zero(bohr.N);
    for (Index y : bohr.members) ind[y] = Scalar(1);
    const ComplexVector<Scalar> sums = fft::transform<Scalar>(ind.template cast<std::complex<Scalar>>(), -1);
    const Scalar size = static_cast<Scalar>(bohr.members.size());
    RealVector<Scalar> mu = (sums.cwiseAbs2() / (size * size)).cwiseMin(Scalar(1));
    mu[0] = Scalar(1);
    return mu;
}

template <class Scalar>
struct Decomposition {
    DensityFunction<Scalar> f1;
    RealVector<Scalar> f2;
    BohrSet<Scalar> bohr;
    std::vector<Index> large_spectrum;
    Scalar spectrum_threshold = 0;
    Scalar sigma = 0;
    Scalar max_f1 = 0;  // diagnostic; the 1 + sigma bound is asymptotic only
};

// f1(x) = E_{y1,y2 in B0} f(x + y1 - y2), computed through its Fourier
// multiplier: f1^(xi) = f^(xi) * mu(xi). B0 is the Bohr set of the large
// spectrum of f at width eps0. f2 = f - f1.
template <class Scalar>
Decomposition<Scalar> green_decompose(const DensityFunction<Scalar>& f, Scalar eps0, Scalar sigma) {
    if (!(eps0 > Scalar(0) && eps0 <= Scalar(1))) throw DomainError("green_decompose: eps0 must lie in (0, 1]");
    if (!(sigma > Scalar(0))) throw DomainError("green_decompose: sigma must be positive");
    const Index n = f.size();
    const Spectrum<Scalar> spec = dft(f);
    std::vector<Index> lambda0 = large_spectrum(spec, eps0);
    BohrSet<Scalar> bohr = bohr_set<Scalar>(n, lambda0, eps0);

    RealVector<Scalar> f1;
    if (bohr.size() == 1) {
        f1 = f.values();
    } else {
        const RealVector<Scalar> mu = bohr_multiplier(bohr);
        Spectrum<Scalar> s1{spec.coeffs.cwiseProduct(mu.template cast<std::complex<Scalar>>())};
        f1 = inverse_dft_real(s1).cwiseMax(Scalar(0));
    }
    RealVector<Scalar> f2 = f.values() - f1;
    DensityFunction<Scalar> first(std::move(f1));
    const Scalar peak = first.max();
    return Decomposition<Scalar>{std::move(first), std::move(f2), std::move(bohr), std::move(lambda0), eps0, sigma, peak};
}

// |{x : (f*g)(x) > threshold}|, after zeroing values within
// 1e-9 * max(1, |f|_1 |g|_1 / N) of zero.
template <class Scalar>
Index positive_support(const DensityFunction<Scalar>& f, const DensityFunction<Scalar>& g, Scalar threshold = Scalar(0)) {
    if (f.size() != g.size()) throw DomainError("positive_support: mismatched group orders");
    if (threshold < Scalar(0)) throw DomainError("positive_support: threshold must be >= 0");
    const RealVector<Scalar> conv = cyclic_convolve(f.values(), g.values());
    const Scalar tol = Scalar(1e-9) * std::max(Scalar(1), f.l1_norm() * g.l1_norm() / static_cast<Scalar>(f.size()));
    Index count = 0;
    for (Index x = 0; x < conv.size(); ++x) {
        const Scalar v = std::abs(conv[x]) <= tol ? Scalar(0) : conv[x];
        if (v > threshold) ++count;
    }
    return count;
}

template <class Scalar>
struct ErrorTerm {
    int i = 0, j = 0;             // f_i * g_j with (i, j) != (1, 1)
    Scalar l2_squared = 0;        // sum_x |(f_i * g_j)(x)|^2
    Scalar l2_squared_spectral = 0;  // N^3 sum_xi |f_i^|^2 |g_j^|^2
    Scalar exceed_threshold = 0;  // sigma * alpha * N / 10
    Index exceed_count = 0;       // |{x : |f_i * g_j| > exceed_threshold}|
};

template <class Scalar>
struct ConvolutionProofReport {
    Index N = 0;
    Scalar alpha = 0, beta = 0;     // alpha = min(E f, E g), beta = max
    Scalar f1g1_l1 = 0;             // |f1 * g1|_1
    Scalar f1_l1 = 0, g1_l1 = 0;
    Scalar main_threshold = 0;      // sigma * alpha * N
    Index main_term_count = 0;      // |{x : f1*g1(x) > sigma alpha N}|
    std::array<ErrorTerm<Scalar>, 3> errors{};  // (1,2), (2,1), (2,2)
};

namespace detail {

template <class Scalar>
bool rel_close(Scalar a, Scalar b, Scalar rel, Scalar floor) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + floor;
}

}  // namespace detail

// Quantities from the convolution-positivity argument. Throws
// InvariantViolation if |f1*g1|_1 != |f1|_1 |g1|_1 or if the Plancherel form
// of |f_i*g_j|_2^2 disagrees with direct summation (both 1e-9 relative).
template <class Scalar>
ConvolutionProofReport<Scalar> convolution_proof_quantities(const DensityFunction<Scalar>& f,
                                                            const DensityFunction<Scalar>& g,
                                                            const Decomposition<Scalar>& df,
                                                            const Decomposition<Scalar>& dg) {
    const Index n = f.size();
    if (g.size() != n || df.f1.size() != n || dg.f1.size() != n || df.f2.size() != n || dg.f2.size() != n)
        throw DomainError("convolution_proof_quantities: mismatched group orders");

    ConvolutionProofReport<Scalar> rep;
    rep.N = n;
    rep.alpha = std::min(f.mean(), g.mean());
    rep.beta = std::max(f.mean(), g.mean());
    const Scalar sigma = df.sigma;
    const Scalar nn = static_cast<Scalar>(n);

    const RealVector<Scalar> f1g1 = cyclic_convolve(df.f1.values(), dg.f1.values());
    rep.f1g1_l1 = pairwise_sum(f1g1.cwiseAbs());
    rep.f1_l1 = df.f1.l1_norm();
    rep.g1_l1 = dg.f1.l1_norm();
    if (!detail::rel_close(rep.f1g1_l1, rep.f1_l1 * rep.g1_l1, Scalar(1e-9), Scalar(1e-300)))
        throw InvariantViolation("|f1*g1|_1 = |f1|_1 |g1|_1 failed: " + std::to_string(rep.f1g1_l1) + " vs " +
                                 std::to_string(rep.f1_l1 * rep.g1_l1));
    rep.main_threshold = sigma * rep.alpha * nn;
    for (Index x = 0; x < n; ++x)
        if (f1g1[x] > rep.main_threshold) ++rep.main_term_count;

    const std::array<const RealVector<Scalar>*, 2> fs{&df.f1.values(), &df.f2};
    const std::array<const RealVector<Scalar>*, 2> gs{&dg.f1.values(), &dg.f2};
    const std::array<std::pair<int, int>, 3> pairs{{{1, 2}, {2, 1}, {2, 2}}};
    for (std::size_t t = 0; t < pairs.size(); ++t) {
        const auto [i, j] = pairs[t];
        const RealVector<Scalar>& fi = *fs[i - 1];
        const RealVector<Scalar>& gj = *gs[j - 1];
        const RealVector<Scalar> conv = cyclic_convolve(fi, gj);
        ErrorTerm<Scalar> e;
        e.i = i;
        e.j = j;
        e.l2_squared = pairwise_sum(conv.cwiseAbs2());
        const Spectrum<Scalar> sf = dft(fi), sg = dft(gj);
        e.l2_squared_spectral = nn * nn * nn * pairwise_sum(sf.coeffs.cwiseAbs2().cwiseProduct(sg.coeffs.cwiseAbs2()));
        // Absolute floor: 1e-12 of the Young bound N |f_i|_2^2 |g_j|_2^2.
        const Scalar floor = Scalar(1e-12) * nn * fi.squaredNorm() * gj.squaredNorm();
        if (!detail::rel_close(e.l2_squared, e.l2_squared_spectral, Scalar(1e-9), floor))
            throw InvariantViolation("Plancherel form of |f" + std::to_string(i) + "*g" + std::to_string(j) +
                                     "|_2^2 failed: " + std::to_string(e.l2_squared) + " vs " +
                                     std::to_string(e.l2_squared_spectral));
        e.exceed_threshold = sigma * rep.alpha * nn / Scalar(10);
        for (Index x = 0; x < n; ++x)
            if (std::abs(conv[x]) > e.exceed_threshold) ++e.exceed_count;
        rep.errors[t] = e;
    }
    return rep;
}

}  // namespace primesum::spectral
