#include "fdmkit/tfe.hpp"

#include <algorithm>
#include <cmath>

namespace fdmkit {

FhsPoints fhs(const DecompositionResult& result) {
    FhsPoints out;
    out.length = result.length;
    out.sample_rate_hz = result.sample_rate_hz;
    out.points.reserve(result.fibfs.size() * result.length);
    const double nyquist_hz = result.sample_rate_hz / 2.0;
    for (std::size_t i = 0; i < result.fibfs.size(); ++i) {
        const Afibf& f = result.fibfs[i];
        for (std::size_t n = 0; n < result.length; ++n) {
            double freq = f.inst_freq_hz[n];
            if (freq < 0.0) {
                freq = 0.0;
                ++out.clamped_negative;
            }
            freq = std::min(freq, nyquist_hz);
            const double t = result.start_time_s + static_cast<double>(n) / result.sample_rate_hz;
            out.points.push_back({t, freq, f.amplitude[n], i});
        }
    }
    return out;
}

MarginalSpectrum marginal_spectrum(const FhsPoints& points, double freq_bin_hz) {
    if (!(freq_bin_hz > 0.0) || !std::isfinite(freq_bin_hz)) throw InputError("frequency bin width must be positive");
    const Axis axis = default_freq_axis(points.sample_rate_hz, freq_bin_hz);
    MarginalSpectrum h;
    h.bin_width_hz = freq_bin_hz;
    h.freq_hz.resize(axis.count);
    for (std::size_t j = 0; j < axis.count; ++j) h.freq_hz[j] = axis.at(j);
    h.value.assign(axis.count, 0.0);
    const double dt = 1.0 / points.sample_rate_hz;
    for (const TfePoint& p : points.points) {
        // Frequencies are clamped to [0, Fs/2], so the last bin absorbs any
        // overshoot of a bin width that does not divide Fs/2.
        const std::size_t j = std::min(axis.nearest(p.freq_hz), axis.count - 1);
        h.value[j] += p.amplitude * dt;
    }
    return h;
}

std::vector<double> instantaneous_energy(const DecompositionResult& result) {
    std::vector<double> e(result.length, 0.0);
    for (const Afibf& f : result.fibfs)
        for (std::size_t n = 0; n < result.length; ++n) e[n] += f.amplitude[n] * f.amplitude[n];
    return e;
}

std::size_t Axis::nearest(double v) const noexcept {
    if (count == 0 || !(step > 0.0)) return count;
    const double pos = std::round((v - start) / step);
    if (pos < 0.0 || pos >= static_cast<double>(count)) return count;
    return static_cast<std::size_t>(pos);
}

TfeGrid rasterize(const FhsPoints& points, const Axis& time_axis, const Axis& freq_axis, GridMode mode) {
    if (time_axis.count == 0 || freq_axis.count == 0 || !(time_axis.step > 0.0) || !(freq_axis.step > 0.0))
        throw InputError("rasterize: axes need a positive step and at least one bin");
    TfeGrid g;
    g.time_axis = time_axis;
    g.freq_axis = freq_axis;
    g.mode = mode;
    g.cells.assign(time_axis.count * freq_axis.count, 0.0);
    for (const TfePoint& p : points.points) {
        const std::size_t ti = time_axis.nearest(p.time_s);
        const std::size_t fi = freq_axis.nearest(p.freq_hz);
        if (ti == time_axis.count || fi == freq_axis.count) {
            ++g.dropped;
            continue;
        }
        double& cell = g.cells[ti * freq_axis.count + fi];
        if (mode == GridMode::Energy)
            cell += p.amplitude * p.amplitude;
        else
            cell = std::max(cell, p.amplitude);
    }
    return g;
}

Axis default_time_axis(const DecompositionResult& result) {
    return Axis{result.start_time_s, 1.0 / result.sample_rate_hz, result.length};
}

Axis default_freq_axis(double sample_rate_hz, double freq_bin_hz) {
    const double half = sample_rate_hz / 2.0;
    // ceil, with a little slack so Fs/2 that is an exact multiple of the bin
    // width does not spill into an extra bin through rounding.
    const auto bins = static_cast<std::size_t>(std::ceil(half / freq_bin_hz - 1e-9));
    return Axis{0.0, freq_bin_hz, bins + 1};
}

}  // namespace fdmkit
