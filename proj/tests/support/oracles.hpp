#pragma once

// Slow, independent reference computations. Nothing here calls into the
// library's FFT, synthesis or unwrapping code.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using lcplx = std::complex<long double>;

inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;

/// O(N^2) DFT in long double, forward 1/N.
inline std::vector<cplx> dft(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        lcplx acc{0.0L, 0.0L};
        for (std::size_t i = 0; i < n; ++i) {
            const long double a = -2.0L * kPiL * static_cast<long double>((k * i) % n) / static_cast<long double>(n);
            acc += static_cast<long double>(x[i]) * lcplx{std::cos(a), std::sin(a)};
        }
        acc /= static_cast<long double>(n);
        out[k] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    }
    return out;
}

/// O(N^2) complex DFT without normalization, sign -1 (forward) or +1 (inverse).
inline std::vector<cplx> naive_transform(const std::vector<cplx>& x, int sign) {
    const std::size_t n = x.size();
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        lcplx acc{0.0L, 0.0L};
        for (std::size_t i = 0; i < n; ++i) {
            const long double a = sign * 2.0L * kPiL * static_cast<long double>((k * i) % n) / static_cast<long double>(n);
            acc += lcplx{x[i].real(), x[i].imag()} * lcplx{std::cos(a), std::sin(a)};
        }
        out[k] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    }
    return out;
}

/// z[n] = 2 sum_{k=lo}^{hi} X[k] e^{j 2 pi k n / N}, summed directly per sample.
inline std::vector<cplx> band(const std::vector<cplx>& spectrum, std::size_t lo, std::size_t hi) {
    const std::size_t n = spectrum.size();
    std::vector<cplx> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        lcplx acc{0.0L, 0.0L};
        for (std::size_t k = lo; k <= hi; ++k) {
            const long double a = 2.0L * kPiL * static_cast<long double>((k * i) % n) / static_cast<long double>(n);
            acc += lcplx{spectrum[k].real(), spectrum[k].imag()} * lcplx{std::cos(a), std::sin(a)};
        }
        z[i] = {static_cast<double>(2.0L * acc.real()), static_cast<double>(2.0L * acc.imag())};
    }
    return z;
}

/// Difference-based unwrap: each step is the principal value of the raw
/// phase increment.
inline std::vector<double> unwrap(const std::vector<cplx>& z) {
    std::vector<double> phi(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double raw = std::arg(z[i]);
        if (i == 0) {
            phi[i] = raw;
            continue;
        }
        double d = std::remainder(raw - std::arg(z[i - 1]), 2.0 * std::numbers::pi);
        phi[i] = phi[i - 1] + d;
    }
    return phi;
}

inline bool admissible(const std::vector<cplx>& z, double tol) {
    for (const cplx& v : z)
        if (std::abs(v) == 0.0) return false;
    const std::vector<double> phi = unwrap(z);
    for (std::size_t i = 1; i + 1 < z.size(); ++i)
        if (0.5 * (phi[i + 1] - phi[i - 1]) < -tol) return false;
    return true;
}

struct Band {
    std::size_t lo, hi;
    friend bool operator==(const Band&, const Band&) = default;
};

/// Low-to-high maximal band search: every candidate end bin is synthesized
/// from scratch and tested on its own; the largest admissible one wins.
/// Assumes no empty bins; a start bin with no admissible extension stands alone.
inline std::vector<Band> maximal_bands_lth(const std::vector<double>& x, double tol) {
    const std::vector<cplx> X = dft(x);
    const std::size_t top = (x.size() + 1) / 2 - 1;
    std::vector<Band> out;
    std::size_t lo = 1;
    while (lo <= top) {
        std::size_t best = lo;
        for (std::size_t hi = lo; hi <= top; ++hi)
            if (admissible(band(X, lo, hi), tol)) best = hi;
        out.push_back({lo, best});
        lo = best + 1;
    }
    return out;
}

inline std::vector<double> gaussian(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d(0.0, 1.0);
    std::vector<double> x(n);
    for (double& v : x) v = d(rng);
    return x;
}

inline double rel_l2(const std::vector<double>& a, const std::vector<double>& b) {
    long double e = 0.0L, r = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const long double d = static_cast<long double>(a[i]) - b[i];
        e += d * d;
        r += static_cast<long double>(b[i]) * b[i];
    }
    return static_cast<double>(std::sqrt(r > 0 ? e / r : e));
}

}  // namespace oracle
