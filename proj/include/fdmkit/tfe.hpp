#pragma once

#include <cstddef>
#include <vector>

#include "fdmkit/fdm.hpp"

namespace fdmkit {

struct TfePoint {
    double time_s = 0.0;
    double freq_hz = 0.0;
    double amplitude = 0.0;
    std::size_t fibf = 0;  ///< index into DecompositionResult::fibfs
};

/// Fourier-Hilbert spectrum as a point cloud: one point per FIBF per sample,
/// ordered by FIBF index, then time.
struct FhsPoints {
    std::vector<TfePoint> points;
    /// Samples whose IF was negative and clamped to 0 Hz.
    std::size_t clamped_negative = 0;
    std::size_t length = 0;
    double sample_rate_hz = 1.0;
};

FhsPoints fhs(const DecompositionResult& result);

struct MarginalSpectrum {
    double bin_width_hz = 0.0;
    std::vector<double> freq_hz;  ///< bin centers j * bin_width_hz
    std::vector<double> value;    ///< sum of amplitude * dt over points in the bin
};

/// Nearest-bin marginal h(f) with bins covering [0, Fs/2]. Throws InputError
/// unless freq_bin_hz > 0.
MarginalSpectrum marginal_spectrum(const FhsPoints& points, double freq_bin_hz);

/// E[n] = sum_i a_i[n]^2
std::vector<double> instantaneous_energy(const DecompositionResult& result);

/// Uniform axis of bin centers start + i * step, i < count.
struct Axis {
    double start = 0.0;
    double step = 1.0;
    std::size_t count = 0;

    double at(std::size_t i) const noexcept { return start + static_cast<double>(i) * step; }
    /// Nearest bin, or count when the value falls outside the half-step margin.
    std::size_t nearest(double v) const noexcept;
};

enum class GridMode { Amplitude, Energy };

struct TfeGrid {
    Axis time_axis;
    Axis freq_axis;
    GridMode mode = GridMode::Amplitude;
    /// cells[t * freq_axis.count + f]
    std::vector<double> cells;
    /// Points that fell outside the axes and were not rasterized.
    std::size_t dropped = 0;

    double at(std::size_t t, std::size_t f) const noexcept { return cells[t * freq_axis.count + f]; }
};

/// Nearest-bin rasterization: Energy mode sums a^2 per cell, Amplitude mode
/// keeps the maximum amplitude.
TfeGrid rasterize(const FhsPoints& points, const Axis& time_axis, const Axis& freq_axis, GridMode mode);

/// Sample-time axis and [0, Fs/2] frequency axis at the given bin width.
Axis default_time_axis(const DecompositionResult& result);
Axis default_freq_axis(double sample_rate_hz, double freq_bin_hz);

}  // namespace fdmkit
