#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fdmkit/spectral.hpp"

namespace fdmkit {

/// P channels sharing one length and sample rate.
class MultichannelSignal {
public:
    explicit MultichannelSignal(std::vector<Signal> channels);

    std::size_t channel_count() const noexcept { return channels_.size(); }
    std::size_t length() const noexcept { return channels_.front().size(); }
    double sample_rate_hz() const noexcept { return channels_.front().sample_rate_hz(); }
    double start_time_s() const noexcept { return channels_.front().start_time_s(); }
    const Signal& operator[](std::size_t p) const noexcept { return channels_[p]; }
    const std::vector<Signal>& channels() const noexcept { return channels_; }

private:
    std::vector<Signal> channels_;
};

/// Strictly decreasing high-pass cutoffs f_c1 > ... > f_cl > 0, all below Fs/2.
struct CutoffSchedule {
    std::vector<double> cutoffs_hz;
    /// Center-frequency-to-bandwidth ratio when built by cutoff_schedule().
    std::optional<double> m;
    double sample_rate_hz = 1.0;

    std::size_t levels() const noexcept { return cutoffs_hz.size(); }
    void validate() const;
};

/// f_H1 = Fs/2, f_ci = (2m-1)/(2m+1) f_Hi, f_H(i+1) = f_ci. Requires m > 1/2.
CutoffSchedule cutoff_schedule(double sample_rate_hz, double m, std::size_t levels);
/// Wrap a user-supplied list; throws InputError unless valid.
CutoffSchedule explicit_schedule(double sample_rate_hz, std::vector<double> cutoffs_hz);
/// floor(log2 N) - 1 levels, the dyadic filter-bank depth.
std::size_t default_dyadic_levels(std::size_t length);

/// Bin k (and its mirror N-k) is retained iff k Fs / N >= cutoff_hz.
std::vector<std::size_t> highpass_bins(std::size_t length, double sample_rate_hz, double cutoff_hz);

/// Ideal Fourier-mask high-pass filter; output keeps features at their sample positions.
Signal zero_phase_highpass(const Signal& signal, double cutoff_hz);
/// Complementary mask: keeps k Fs / N < cutoff_hz (including DC).
Signal zero_phase_lowpass(const Signal& signal, double cutoff_hz);

enum class FilterCascade {
    /// y_1 = HPF(x, f_c1), r_1 = x - y_1, y_2 = HPF(r_1, f_c2), ...
    HighPassFirst,
    /// r_l = LPF(x, f_cl) first, then bands l, l-1, ..., 1 from the remainder.
    ResidueFirst,
};

struct MfdmResult {
    /// bands[i][p]: band i (pass-band [f_ci, f_c(i-1)) with f_c0 = Fs/2) of channel p.
    std::vector<std::vector<std::vector<double>>> bands;
    /// residue[p]: everything below f_cl.
    std::vector<std::vector<double>> residue;
    CutoffSchedule schedule;
    FilterCascade cascade = FilterCascade::HighPassFirst;
    /// band_bins[p][i]: positive bins (0..N/2) retained in band i for channel p.
    std::vector<std::vector<std::vector<std::size_t>>> band_bins;
    /// Per-channel relative L2 error of sum(bands) + residue against the input.
    std::vector<double> reconstruction_error;
};

MfdmResult mfdm_decompose(const MultichannelSignal& data, const CutoffSchedule& schedule,
                          FilterCascade cascade = FilterCascade::HighPassFirst);

}  // namespace fdmkit
