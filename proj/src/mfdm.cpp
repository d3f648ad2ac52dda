#include "fdmkit/mfdm.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "fdmkit/fdm.hpp"

namespace fdmkit {

namespace {

double bin_hz(std::size_t k, std::size_t n, double fs) {
    return static_cast<double>(k) * fs / static_cast<double>(n);
}

void check_cutoff(double fs, double cutoff_hz) {
    if (!(cutoff_hz > 0.0) || !(cutoff_hz < fs / 2.0))
        throw InputError("cutoff " + std::to_string(cutoff_hz) + " Hz outside (0, " + std::to_string(fs / 2.0) +
                         ") Hz");
}

// Keep bin k and its mirror when keep(k) holds, for k in [0, N/2].
Signal apply_mask(const Signal& signal, const std::function<bool(std::size_t)>& keep) {
    Spectrum spec = dft(signal);
    const std::size_t n = spec.size();
    for (std::size_t k = 0; 2 * k <= n; ++k) {
        if (keep(k)) continue;
        spec.coefficients[k] = 0.0;
        if (k != 0 && 2 * k != n) spec.coefficients[n - k] = 0.0;
    }
    return idft(spec);
}

std::vector<double> minus(std::span<const double> a, std::span<const double> b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

}  // namespace

MultichannelSignal::MultichannelSignal(std::vector<Signal> channels) : channels_(std::move(channels)) {
    if (channels_.empty()) throw InputError("multichannel signal needs at least one channel");
    for (std::size_t p = 1; p < channels_.size(); ++p) {
        if (channels_[p].size() != channels_[0].size())
            throw InputError("channel " + std::to_string(p) + " has length " + std::to_string(channels_[p].size()) +
                             ", expected " + std::to_string(channels_[0].size()));
        if (channels_[p].sample_rate_hz() != channels_[0].sample_rate_hz())
            throw InputError("channel " + std::to_string(p) + " has a different sample rate");
    }
}

void CutoffSchedule::validate() const {
    if (!(sample_rate_hz > 0.0)) throw InputError("schedule sample rate must be positive");
    if (cutoffs_hz.empty()) throw InputError("cutoff schedule needs at least one level");
    for (std::size_t i = 0; i < cutoffs_hz.size(); ++i) {
        check_cutoff(sample_rate_hz, cutoffs_hz[i]);
        if (i > 0 && !(cutoffs_hz[i] < cutoffs_hz[i - 1]))
            throw InputError("cutoffs must be strictly decreasing (level " + std::to_string(i + 1) + ")");
    }
}

CutoffSchedule cutoff_schedule(double sample_rate_hz, double m, std::size_t levels) {
    if (!(m > 0.5) || !std::isfinite(m)) throw InputError("m must be finite and greater than 1/2");
    if (levels < 1) throw InputError("levels must be at least 1");
    if (!(sample_rate_hz > 0.0)) throw InputError("sample rate must be positive");

    const double ratio = (2.0 * m - 1.0) / (2.0 * m + 1.0);
    CutoffSchedule s;
    s.m = m;
    s.sample_rate_hz = sample_rate_hz;
    double upper = sample_rate_hz / 2.0;
    for (std::size_t i = 0; i < levels; ++i) {
        const double cutoff = ratio * upper;
        s.cutoffs_hz.push_back(cutoff);
        upper = cutoff;
    }
    s.validate();
    return s;
}

CutoffSchedule explicit_schedule(double sample_rate_hz, std::vector<double> cutoffs_hz) {
    CutoffSchedule s;
    s.cutoffs_hz = std::move(cutoffs_hz);
    s.sample_rate_hz = sample_rate_hz;
    s.validate();
    return s;
}

std::size_t default_dyadic_levels(std::size_t length) {
    if (length < 4) return 1;
    std::size_t lg = 0;
    while ((std::size_t{1} << (lg + 1)) <= length) ++lg;
    return lg - 1;
}

std::vector<std::size_t> highpass_bins(std::size_t length, double sample_rate_hz, double cutoff_hz) {
    std::vector<std::size_t> out;
    for (std::size_t k = 1; 2 * k <= length; ++k)
        if (bin_hz(k, length, sample_rate_hz) >= cutoff_hz) out.push_back(k);
    return out;
}

Signal zero_phase_highpass(const Signal& signal, double cutoff_hz) {
    check_cutoff(signal.sample_rate_hz(), cutoff_hz);
    const std::size_t n = signal.size();
    const double fs = signal.sample_rate_hz();
    return apply_mask(signal, [&](std::size_t k) { return bin_hz(k, n, fs) >= cutoff_hz; });
}

Signal zero_phase_lowpass(const Signal& signal, double cutoff_hz) {
    check_cutoff(signal.sample_rate_hz(), cutoff_hz);
    const std::size_t n = signal.size();
    const double fs = signal.sample_rate_hz();
    return apply_mask(signal, [&](std::size_t k) { return bin_hz(k, n, fs) < cutoff_hz; });
}

MfdmResult mfdm_decompose(const MultichannelSignal& data, const CutoffSchedule& schedule, FilterCascade cascade) {
    schedule.validate();
    const std::size_t n = data.length();
    const double fs = data.sample_rate_hz();
    if (schedule.sample_rate_hz != fs)
        throw InputError("schedule sample rate " + std::to_string(schedule.sample_rate_hz) +
                         " Hz does not match data sample rate " + std::to_string(fs) + " Hz");
    const double resolution = fs / static_cast<double>(n);
    for (std::size_t i = 0; i < schedule.levels(); ++i) {
        if (schedule.cutoffs_hz[i] < resolution)
            throw InputError("cutoff level " + std::to_string(i + 1) + " (" + std::to_string(schedule.cutoffs_hz[i]) +
                             " Hz) is below the DFT resolution " + std::to_string(resolution) + " Hz");
    }

    const std::size_t levels = schedule.levels();
    const std::size_t channels = data.channel_count();
    MfdmResult result;
    result.schedule = schedule;
    result.cascade = cascade;
    result.bands.assign(levels, std::vector<std::vector<double>>(channels));
    result.residue.resize(channels);
    result.band_bins.assign(channels, std::vector<std::vector<std::size_t>>(levels));
    result.reconstruction_error.resize(channels);

    auto pass_band = [&](std::size_t i) {
        const double upper = i == 0 ? fs : schedule.cutoffs_hz[i - 1];
        std::vector<std::size_t> bins;
        for (std::size_t k = 1; 2 * k <= n; ++k) {
            const double f = bin_hz(k, n, fs);
            if (f >= schedule.cutoffs_hz[i] && (i == 0 || f < upper)) bins.push_back(k);
        }
        return bins;
    };

    for (std::size_t p = 0; p < channels; ++p) {
        const Signal& x = data[p];
        if (cascade == FilterCascade::HighPassFirst) {
            std::vector<double> rest(x.samples().begin(), x.samples().end());
            for (std::size_t i = 0; i < levels; ++i) {
                const Signal r(rest, fs, x.start_time_s());
                Signal y = zero_phase_highpass(r, schedule.cutoffs_hz[i]);
                rest = minus(rest, y.samples());
                result.bands[i][p].assign(y.samples().begin(), y.samples().end());
            }
            result.residue[p] = std::move(rest);
        } else {
            const Signal low = zero_phase_lowpass(x, schedule.cutoffs_hz[levels - 1]);
            result.residue[p].assign(low.samples().begin(), low.samples().end());
            std::vector<double> rest = minus(x.samples(), low.samples());
            for (std::size_t i = levels - 1; i >= 1; --i) {
                const Signal r(rest, fs, x.start_time_s());
                Signal y = zero_phase_lowpass(r, schedule.cutoffs_hz[i - 1]);
                rest = minus(rest, y.samples());
                result.bands[i][p].assign(y.samples().begin(), y.samples().end());
            }
            result.bands[0][p] = std::move(rest);
        }
        for (std::size_t i = 0; i < levels; ++i) result.band_bins[p][i] = pass_band(i);

        double err2 = 0.0, ref2 = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            double sum = result.residue[p][t];
            for (std::size_t i = 0; i < levels; ++i) sum += result.bands[i][p][t];
            const double d = x[t] - sum;
            err2 += d * d;
            ref2 += x[t] * x[t];
        }
        result.reconstruction_error[p] = ref2 > 0.0 ? std::sqrt(err2 / ref2) : std::sqrt(err2);
        if (!(result.reconstruction_error[p] < kReconstructionTolerance))
            throw NumericalError("mfdm: channel " + std::to_string(p) + " reconstruction error exceeds tolerance");
    }
    return result;
}

}  // namespace fdmkit
