#include "fdmkit/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fdmkit {

namespace {

// exp(-2 pi i m / n), evaluated from the reduced index so every table entry
// carries full double precision.
cplx unit_root(std::size_t m, std::size_t n) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(m % n) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

std::size_t next_pow2(std::size_t v) {
    std::size_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

}  // namespace

std::vector<std::size_t> fft_factors(std::size_t n) {
    std::vector<std::size_t> out;
    while (n % 4 == 0) {
        out.push_back(4);
        n /= 4;
    }
    while (n % 2 == 0) {
        out.push_back(2);
        n /= 2;
    }
    for (std::size_t p = 3; p * p <= n; p += 2) {
        while (n % p == 0) {
            out.push_back(p);
            n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Chirp-z state: X[k] = c[k] * (a (*) b)[k] with c[m] = exp(-i pi m^2 / N).
struct FftPlan::Bluestein {
    std::vector<cplx> chirp;         // c[m], m < N
    std::vector<cplx> filter_freq;   // FFT of conj(c) wrapped to length M
    std::unique_ptr<FftPlan> inner;  // power-of-two plan of length M
};

FftPlan::FftPlan(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("FftPlan: length must be positive");
    factors_ = fft_factors(n);
    const bool direct = std::all_of(factors_.begin(), factors_.end(),
                                    [](std::size_t p) { return p <= kMaxDirectRadix; });
    if (direct) {
        twiddles_.resize(n);
        for (std::size_t i = 0; i < n; ++i) twiddles_[i] = unit_root(i, n);
        return;
    }

    auto b = std::make_unique<Bluestein>();
    const std::size_t m = next_pow2(2 * n - 1);
    b->inner = std::make_unique<FftPlan>(m);
    b->chirp.resize(n);
    const std::size_t two_n = 2 * n;
    // k^2 mod 2N, advanced by (k+1)^2 = k^2 + 2k + 1, keeps the chirp argument exact.
    std::size_t sq = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) sq = (sq + 2 * (k - 1) + 1) % two_n;
        const double angle = -std::numbers::pi * static_cast<double>(sq) / static_cast<double>(n);
        b->chirp[k] = {std::cos(angle), std::sin(angle)};
    }
    std::vector<cplx> filt(m, cplx{0.0, 0.0});
    filt[0] = std::conj(b->chirp[0]);
    for (std::size_t k = 1; k < n; ++k) {
        filt[k] = std::conj(b->chirp[k]);
        filt[m - k] = std::conj(b->chirp[k]);
    }
    b->filter_freq = b->inner->forward(filt);
    bluestein_ = std::move(b);
}

FftPlan::~FftPlan() = default;
FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

void FftPlan::forward(std::span<const cplx> in, std::span<cplx> out) const {
    if (in.size() != n_ || out.size() != n_) throw std::invalid_argument("FftPlan: size mismatch");
    if (in.data() == out.data()) {
        std::vector<cplx> tmp(in.begin(), in.end());
        forward(tmp, out);
        return;
    }
    if (!bluestein_) {
        mixed_radix(in.data(), out.data());
        return;
    }

    const Bluestein& b = *bluestein_;
    const std::size_t m = b.inner->size();
    std::vector<cplx> a(m, cplx{0.0, 0.0});
    for (std::size_t k = 0; k < n_; ++k) a[k] = in[k] * b.chirp[k];
    std::vector<cplx> af = b.inner->forward(a);
    for (std::size_t k = 0; k < m; ++k) af[k] *= b.filter_freq[k];
    std::vector<cplx> conv = b.inner->inverse(af);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n_; ++k) out[k] = conv[k] * scale * b.chirp[k];
}

void FftPlan::inverse(std::span<const cplx> in, std::span<cplx> out) const {
    if (in.size() != n_ || out.size() != n_) throw std::invalid_argument("FftPlan: size mismatch");
    std::vector<cplx> tmp(n_);
    for (std::size_t k = 0; k < n_; ++k) tmp[k] = std::conj(in[k]);
    forward(tmp, out);
    for (auto& v : out) v = std::conj(v);
}

std::vector<cplx> FftPlan::forward(std::span<const cplx> in) const {
    std::vector<cplx> out(n_);
    forward(in, out);
    return out;
}

std::vector<cplx> FftPlan::inverse(std::span<const cplx> in) const {
    std::vector<cplx> out(n_);
    inverse(in, out);
    return out;
}

void FftPlan::mixed_radix(const cplx* in, cplx* out) const {
    if (n_ == 1) {
        out[0] = in[0];
        return;
    }
    recurse(in, 1, out, n_, 0);
}

// Decimation in time: split into p interleaved subsequences of length m,
// transform each into out[q*m .. q*m+m), then combine with one butterfly pass.
void FftPlan::recurse(const cplx* in, std::size_t in_stride, cplx* out, std::size_t n,
                      std::size_t factor_idx) const {
    const std::size_t p = factors_[factor_idx];
    const std::size_t m = n / p;
    if (m == 1) {
        for (std::size_t q = 0; q < p; ++q) out[q] = in[q * in_stride];
    } else {
        for (std::size_t q = 0; q < p; ++q)
            recurse(in + q * in_stride, in_stride * p, out + q * m, m, factor_idx + 1);
    }
    butterfly(out, m, p, n_ / n);
}

void FftPlan::butterfly(cplx* out, std::size_t m, std::size_t p, std::size_t tw_stride) const {
    const cplx* tw = twiddles_.data();
    if (p == 2) {
        for (std::size_t j = 0; j < m; ++j) {
            const cplx t = out[j + m] * tw[j * tw_stride];
            out[j + m] = out[j] - t;
            out[j] += t;
        }
        return;
    }
    if (p == 4) {
        for (std::size_t j = 0; j < m; ++j) {
            const cplx a0 = out[j];
            const cplx a1 = out[j + m] * tw[j * tw_stride];
            const cplx a2 = out[j + 2 * m] * tw[2 * j * tw_stride];
            const cplx a3 = out[j + 3 * m] * tw[3 * j * tw_stride];
            const cplx s02 = a0 + a2, d02 = a0 - a2;
            const cplx s13 = a1 + a3, d13 = a1 - a3;
            // multiply by -i
            const cplx d13_mi{d13.imag(), -d13.real()};
            out[j] = s02 + s13;
            out[j + m] = d02 + d13_mi;
            out[j + 2 * m] = s02 - s13;
            out[j + 3 * m] = d02 - d13_mi;
        }
        return;
    }

    // generic radix: X[j + s m] = sum_q W_n^{q (j + s m)} sub_q[j]
    std::vector<cplx> scratch(p);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t q = 0; q < p; ++q) scratch[q] = out[j + q * m];
        for (std::size_t s = 0; s < p; ++s) {
            const std::size_t k = j + s * m;
            cplx acc = scratch[0];
            std::size_t idx = 0;
            const std::size_t step = (k * tw_stride) % n_;
            for (std::size_t q = 1; q < p; ++q) {
                idx += step;
                if (idx >= n_) idx -= n_;
                acc += scratch[q] * tw[idx];
            }
            out[k] = acc;
        }
    }
}

}  // namespace fdmkit
