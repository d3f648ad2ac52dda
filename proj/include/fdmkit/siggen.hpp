#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "fdmkit/mfdm.hpp"
#include "fdmkit/spectral.hpp"

namespace fdmkit {

enum class SignalKind {
    ToneMix,           ///< sum of unit sines per channel plus Gaussian noise
    IntermittentTone,  ///< carrier tone plus a gated high-frequency burst
    LinearChirp,
    FmSinusoid,
    IntrawaveEq25,     ///< 1/(1.2+cos 2 pi t) + cos(32 pi t + 0.2 cos 64 pi t)/(1.5+sin 2 pi t)
    ModelWaveEq26,     ///< cos(omega t + epsilon sin omega t)
    UnitSample,        ///< delta[n - n0]
    WhiteGaussian,
};

std::string_view to_string(SignalKind kind);
std::optional<SignalKind> parse_signal_kind(std::string_view name);

/**
 * Parameters per kind (defaults in brackets; times are seconds, t = n / Fs):
 *
 *   ToneMix          amplitude [1], sigma [0]; tone list in frequencies_hz
 *                    [4, 8, 16, 32],
 *                    channel_tones[p] = indices of the tones present in channel p
 *                    (empty: one channel with every tone)
 *   IntermittentTone carrier_hz [5], carrier_amplitude [1], burst_hz [40],
 *                    burst_amplitude [0.3], burst_start [0.4], burst_end [0.6]
 *                    (burst gate as fractions of the record)
 *   LinearChirp      f_start_hz [2], f_end_hz [30], amplitude [1]
 *   FmSinusoid       carrier_hz [20], deviation_hz [8], rate_hz [1], amplitude [1]
 *   IntrawaveEq25    (none)
 *   ModelWaveEq26    omega [1], epsilon [0.5]
 *   UnitSample       n0 [(n-1)/2], amplitude [1]
 *   WhiteGaussian    sigma [1], mean [0]
 *
 * Random kinds draw from std::mt19937_64 seeded with `seed`, turned into
 * normals by Box-Muller (GaussianSource), so draws replay identically on any
 * conforming standard library.
 */
struct GeneratorSpec {
    SignalKind kind = SignalKind::WhiteGaussian;
    std::map<std::string, double> parameters;
    std::size_t n = 1024;
    double sample_rate_hz = 100.0;
    std::uint64_t seed = 0;
    std::vector<double> frequencies_hz;
    std::vector<std::vector<std::size_t>> channel_tones;

    void validate() const;
    double param(const std::string& name) const;
    std::vector<double> tone_frequencies() const;
};

/// Single-channel output; throws InputError for a multichannel ToneMix.
Signal generate(const GeneratorSpec& spec);
MultichannelSignal generate_channels(const GeneratorSpec& spec);

/// Four-channel 4/8/16/32 Hz tone mixture with the channel assignment used
/// for scale-alignment experiments: 32 Hz in channels 1,2,4; 16 Hz in 1,2,3;
/// 8 Hz in all; 4 Hz in 1,3,4.
GeneratorSpec quadrivariate_tone_mix(std::size_t n, double sample_rate_hz, double sigma, std::uint64_t seed);

/// Portable standard normal draws: mt19937_64 + Box-Muller.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}
    double next();

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

}  // namespace fdmkit
