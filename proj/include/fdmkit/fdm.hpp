#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fdmkit/spectral.hpp"

namespace fdmkit {

enum class ScanOrder { LowToHigh, HighToLow };

/// How far a band grows from its starting bin.
///   MaximalExhaustive: try every end bin up to the spectrum edge, keep the
///     farthest admissible one (admissibility is not monotone in the end bin).
///   FirstViolation: stop at the first inadmissible extension.
enum class SearchMode { MaximalExhaustive, FirstViolation };

struct FdmConfig {
    ScanOrder scan = ScanOrder::LowToHigh;
    SearchMode search = SearchMode::MaximalExhaustive;
    /// Slack on the phase-slope test, radians/sample. Must be >= 0.
    double monotonicity_tolerance = 0.0;
    /// Cap on the number of FIBFs; bins left after max_fibfs-1 bands are
    /// merged into a final band regardless of admissibility.
    std::optional<std::size_t> max_fibfs;
    /// Bins with |X[k]| <= empty_bin_tolerance * max_k |X[k]| count as empty:
    /// they are zeroed, skipped when a band starts, and trimmed off band ends.
    double empty_bin_tolerance = 1e-12;

    void validate() const;
};

/// One analytic FIBF a[n] e^{j phi[n]} and its real part.
struct Afibf {
    BinRange bins;
    std::vector<double> amplitude;
    std::vector<double> phase;
    std::vector<double> inst_freq_hz;
    std::vector<double> fibf;
    /// Phase slope passes the admissibility test. False only for a band
    /// emitted by the forced final-band fallback.
    bool monotone = true;
};

struct DecompositionResult {
    double dc = 0.0;
    std::optional<double> nyquist;
    std::vector<Afibf> fibfs;
    ScanOrder scan = ScanOrder::LowToHigh;
    double reconstruction_error = 0.0;
    /// The final band was merged because of max_fibfs and failed admissibility.
    bool forced_final_band = false;
    /// Positive bins treated as empty and not claimed by any band range.
    std::vector<std::size_t> empty_bins;
    std::size_t length = 0;
    double sample_rate_hz = 1.0;
    double start_time_s = 0.0;

    /// dc + sum fibf + nyquist (-1)^n
    std::vector<double> reconstruct() const;
    double nyquist_term(std::size_t n) const noexcept {
        if (!nyquist) return 0.0;
        return (n % 2 == 0) ? *nyquist : -*nyquist;
    }
};

/// atan2 phase unwrapped so consecutive samples differ by at most pi, with
/// phase[0] in (-pi, pi]. Throws UndefinedPhaseError on a zero sample.
std::vector<double> unwrap_phase(std::span<const cplx> values);
inline std::vector<double> unwrap_phase(const AnalyticSignal& a) { return unwrap_phase(a.values); }

/// Central-difference instantaneous frequency in Hz, one-sided at the ends.
/// Requires at least 3 samples.
std::vector<double> inst_freq(std::span<const double> phase, double sample_rate_hz);

/// (phi[n+1] - phi[n-1]) / 2 >= -tolerance at every interior sample, and no
/// sample has zero magnitude.
bool phase_admissible(std::span<const cplx> values, double tolerance);

DecompositionResult decompose(const Signal& signal, const FdmConfig& config = {});

/// Build the FIBF record for a synthesized analytic band.
Afibf make_afibf(std::span<const cplx> values, BinRange bins, double sample_rate_hz, bool monotone);

inline constexpr double kReconstructionTolerance = 1e-9;

}  // namespace fdmkit
