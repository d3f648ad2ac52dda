#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "fdmkit/error.hpp"
#include "fdmkit/fft.hpp"

namespace fdmkit {

/// Inclusive range of positive-frequency DFT bins.
struct BinRange {
    std::size_t lo = 0;
    std::size_t hi = 0;

    std::size_t width() const noexcept { return hi - lo + 1; }
    bool contains(std::size_t k) const noexcept { return lo <= k && k <= hi; }
    friend bool operator==(const BinRange&, const BinRange&) = default;
};

/// Uniformly sampled, finite, real time series.
class Signal {
public:
    Signal(std::vector<double> samples, double sample_rate_hz, double start_time_s = 0.0);

    std::span<const double> samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    double operator[](std::size_t n) const noexcept { return samples_[n]; }
    double sample_rate_hz() const noexcept { return sample_rate_hz_; }
    double start_time_s() const noexcept { return start_time_s_; }
    double time_at(std::size_t n) const noexcept {
        return start_time_s_ + static_cast<double>(n) / sample_rate_hz_;
    }

private:
    std::vector<double> samples_;
    double sample_rate_hz_;
    double start_time_s_;
};

/// DFT coefficients with the 1/N placed on the forward transform, so
/// coefficients[0] is the signal mean.
struct Spectrum {
    std::vector<cplx> coefficients;
    std::size_t source_length = 0;
    double sample_rate_hz = 1.0;
    double start_time_s = 0.0;

    std::size_t size() const noexcept { return coefficients.size(); }
    const cplx& operator[](std::size_t k) const noexcept { return coefficients[k]; }
    double bin_frequency_hz(std::size_t k) const noexcept {
        return static_cast<double>(k) * sample_rate_hz / static_cast<double>(source_length);
    }
};

/// Complex band signal 2 * sum_{k in bins} X[k] e^{j 2 pi k n / N}; its real
/// part is the band's time-domain contribution.
struct AnalyticSignal {
    std::vector<cplx> values;
    BinRange bins;
    double sample_rate_hz = 1.0;
};

/// Highest positive-frequency bin excluding Nyquist: ceil(N/2) - 1.
constexpr std::size_t last_positive_bin(std::size_t n) noexcept { return (n + 1) / 2 - 1; }
constexpr bool has_nyquist_bin(std::size_t n) noexcept { return n % 2 == 0; }

Spectrum dft(const Signal& signal);

/// Synthesis x[n] = sum_k X[k] e^{j 2 pi k n / N}. Throws SymmetryError if the
/// imaginary residue exceeds 1e-10 * max|x|.
Signal idft(const Spectrum& spectrum);

/// Throws InputError unless 1 <= k_lo <= k_hi <= last_positive_bin(N).
AnalyticSignal analytic_band(const Spectrum& spectrum, std::size_t k_lo, std::size_t k_hi);

/// Per-sample power (1/N) sum x[n]^2.
double signal_energy(const Signal& signal);
/// Per-sample power (1/N) sum |z[n]|^2.
double analytic_energy(const AnalyticSignal& analytic);

/// Parseval bookkeeping: signal = dc^2 + analytic/2 + nyquist^2 (per-sample powers).
struct EnergyBudget {
    double signal = 0.0;
    double dc = 0.0;
    double analytic = 0.0;
    double nyquist = 0.0;
};
EnergyBudget energy_budget(const Signal& signal);

/// Imaginary-residue threshold applied after synthesis, relative to max|x|.
inline constexpr double kSymmetryResidueTolerance = 1e-10;

}  // namespace fdmkit
