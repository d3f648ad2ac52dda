#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace fdmkit {

using cplx = std::complex<double>;

/**
 * Unnormalized complex FFT of arbitrary length.
 *
 * Lengths whose prime factors are all small run a recursive mixed-radix
 * Cooley-Tukey transform (radix-2/4 kernels plus a generic odd-radix
 * butterfly). Any length with a prime factor above kMaxDirectRadix goes
 * through Bluestein's chirp-z convolution on a power-of-two plan.
 *
 * A plan is immutable after construction and can be shared across threads.
 */
class FftPlan {
public:
    static constexpr std::size_t kMaxDirectRadix = 61;

    explicit FftPlan(std::size_t n);
    ~FftPlan();
    FftPlan(FftPlan&&) noexcept;
    FftPlan& operator=(FftPlan&&) noexcept;

    std::size_t size() const noexcept { return n_; }

    /// out[k] = sum_n in[n] exp(-2 pi i k n / N)
    void forward(std::span<const cplx> in, std::span<cplx> out) const;
    /// out[n] = sum_k in[k] exp(+2 pi i k n / N)   (no 1/N)
    void inverse(std::span<const cplx> in, std::span<cplx> out) const;

    std::vector<cplx> forward(std::span<const cplx> in) const;
    std::vector<cplx> inverse(std::span<const cplx> in) const;

private:
    struct Bluestein;

    void mixed_radix(const cplx* in, cplx* out) const;
    void recurse(const cplx* in, std::size_t in_stride, cplx* out, std::size_t n,
                 std::size_t factor_idx) const;
    void butterfly(cplx* out, std::size_t m, std::size_t p, std::size_t twiddle_stride) const;

    std::size_t n_ = 0;
    std::vector<std::size_t> factors_;
    std::vector<cplx> twiddles_;
    std::unique_ptr<Bluestein> bluestein_;
};

/// Prime factorization in the order the mixed-radix recursion consumes it
/// (4s first, then 2s, 3s, 5s, and remaining primes ascending).
std::vector<std::size_t> fft_factors(std::size_t n);

}  // namespace fdmkit
