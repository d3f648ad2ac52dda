#include "fdmkit/fdm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace fdmkit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double principal_arg(const cplx& z) {
    const double a = std::atan2(z.imag(), z.real());
    return a == -std::numbers::pi ? std::numbers::pi : a;
}

// Wrap count update; keeps raw[n] + 2 pi c within pi of the previous sample.
void update_wraps(double prev_raw, double raw, long long& wraps) {
    const double d = raw - prev_raw;
    if (d > std::numbers::pi)
        --wraps;
    else if (d <= -std::numbers::pi)
        ++wraps;
}

double unwrapped(double raw, long long wraps) { return raw + kTwoPi * static_cast<double>(wraps); }

// Returns the index of the first zero-magnitude sample, or values.size().
std::size_t unwrap_into(std::span<const cplx> values, std::vector<double>& out) {
    out.resize(values.size());
    std::size_t first_zero = values.size();
    long long wraps = 0;
    double prev = 0.0;
    for (std::size_t n = 0; n < values.size(); ++n) {
        if (values[n] == cplx{0.0, 0.0} && first_zero == values.size()) first_zero = n;
        const double raw = principal_arg(values[n]);
        if (n > 0) update_wraps(prev, raw, wraps);
        out[n] = unwrapped(raw, wraps);
        prev = raw;
    }
    return first_zero;
}

class BandSynth {
public:
    BandSynth(std::size_t n, std::vector<cplx> weights) : n_(n), weights_(std::move(weights)), roots_(n) {
        for (std::size_t m = 0; m < n; ++m) {
            const double angle = kTwoPi * static_cast<double>(m) / static_cast<double>(n);
            roots_[m] = {std::cos(angle), std::sin(angle)};
        }
    }

    // acc[n] += weights[k] e^{j 2 pi k n / N}
    void add_bin(std::size_t k, std::vector<cplx>& acc) const {
        const cplx w = weights_[k];
        std::size_t idx = 0;
        for (std::size_t n = 0; n < n_; ++n) {
            acc[n] += w * roots_[idx];
            idx += k;
            if (idx >= n_) idx -= n_;
        }
    }

private:
    std::size_t n_;
    std::vector<cplx> weights_;
    std::vector<cplx> roots_;
};

}  // namespace

void FdmConfig::validate() const {
    if (!(monotonicity_tolerance >= 0.0) || !std::isfinite(monotonicity_tolerance))
        throw InputError("monotonicity tolerance must be a finite value >= 0");
    if (!(empty_bin_tolerance >= 0.0) || !std::isfinite(empty_bin_tolerance))
        throw InputError("empty-bin tolerance must be a finite value >= 0");
    if (max_fibfs && *max_fibfs == 0) throw InputError("max_fibfs must be at least 1");
}

std::vector<double> DecompositionResult::reconstruct() const {
    std::vector<double> out(length, dc);
    for (std::size_t n = 0; n < length; ++n) out[n] += nyquist_term(n);
    for (const Afibf& f : fibfs)
        for (std::size_t n = 0; n < length; ++n) out[n] += f.fibf[n];
    return out;
}

std::vector<double> unwrap_phase(std::span<const cplx> values) {
    std::vector<double> phase;
    const std::size_t zero = unwrap_into(values, phase);
    if (zero != values.size()) throw UndefinedPhaseError(zero);
    return phase;
}

std::vector<double> inst_freq(std::span<const double> phase, double sample_rate_hz) {
    const std::size_t n = phase.size();
    if (n < 3) throw InputError("inst_freq needs at least 3 phase samples");
    const double to_hz = sample_rate_hz / kTwoPi;
    std::vector<double> f(n);
    f[0] = (phase[1] - phase[0]) * to_hz;
    for (std::size_t i = 1; i + 1 < n; ++i) f[i] = 0.5 * (phase[i + 1] - phase[i - 1]) * to_hz;
    f[n - 1] = (phase[n - 1] - phase[n - 2]) * to_hz;
    return f;
}

bool phase_admissible(std::span<const cplx> values, double tolerance) {
    const std::size_t n = values.size();
    if (n == 0) return false;
    // Rolling window of three unwrapped samples; exits on the first violation.
    long long wraps = 0;
    double prev_raw = 0.0;
    double phi_m2 = 0.0, phi_m1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (values[i] == cplx{0.0, 0.0}) return false;
        const double raw = principal_arg(values[i]);
        if (i > 0) update_wraps(prev_raw, raw, wraps);
        prev_raw = raw;
        const double phi = unwrapped(raw, wraps);
        if (i >= 2 && 0.5 * (phi - phi_m2) < -tolerance) return false;
        phi_m2 = phi_m1;
        phi_m1 = phi;
    }
    return true;
}

Afibf make_afibf(std::span<const cplx> values, BinRange bins, double sample_rate_hz, bool monotone) {
    Afibf f;
    f.bins = bins;
    f.monotone = monotone;
    f.amplitude.resize(values.size());
    f.fibf.resize(values.size());
    for (std::size_t n = 0; n < values.size(); ++n) {
        f.amplitude[n] = std::abs(values[n]);
        f.fibf[n] = values[n].real();
    }
    // A forced final band may contain exact zeros; its phase there is the
    // atan2(0, 0) convention and the band is already flagged non-monotone.
    unwrap_into(values, f.phase);
    f.inst_freq_hz = inst_freq(f.phase, sample_rate_hz);
    return f;
}

DecompositionResult decompose(const Signal& signal, const FdmConfig& config) {
    config.validate();
    const std::size_t n = signal.size();
    if (n < 4) throw InputError("decompose needs at least 4 samples, got " + std::to_string(n));

    const Spectrum spec = dft(signal);
    const std::size_t top = last_positive_bin(n);

    DecompositionResult result;
    result.scan = config.scan;
    result.length = n;
    result.sample_rate_hz = signal.sample_rate_hz();
    result.start_time_s = signal.start_time_s();
    result.dc = spec[0].real();
    if (has_nyquist_bin(n)) result.nyquist = spec[n / 2].real();

    double peak = 0.0;
    for (const cplx& c : spec.coefficients) peak = std::max(peak, std::abs(c));

    std::vector<bool> empty(top + 1, true);
    std::vector<cplx> weights(n, cplx{0.0, 0.0});
    const double floor = config.empty_bin_tolerance * peak;
    for (std::size_t k = 1; k <= top; ++k) {
        if (peak > 0.0 && std::abs(spec[k]) > floor) {
            empty[k] = false;
            weights[k] = 2.0 * spec[k];
        }
    }
    const BandSynth synth(n, std::move(weights));
    const double tol = config.monotonicity_tolerance;
    const bool exhaustive = config.search == SearchMode::MaximalExhaustive;

    auto emit = [&](std::vector<cplx>& values, BinRange bins, bool monotone) {
        result.fibfs.push_back(make_afibf(values, bins, signal.sample_rate_hz(), monotone));
    };
    auto final_band_due = [&] { return config.max_fibfs && result.fibfs.size() + 1 == *config.max_fibfs; };

    std::vector<cplx> acc(n), best(n);
    if (config.scan == ScanOrder::LowToHigh) {
        auto next_filled = [&](std::size_t k) {
            while (k <= top && empty[k]) ++k;
            return k;
        };
        std::size_t lo = next_filled(1);
        while (lo <= top) {
            std::fill(acc.begin(), acc.end(), cplx{0.0, 0.0});
            if (final_band_due()) {
                std::size_t last = lo;
                for (std::size_t k = lo; k <= top; ++k) {
                    if (empty[k]) continue;
                    synth.add_bin(k, acc);
                    last = k;
                }
                const bool ok = phase_admissible(acc, tol);
                result.forced_final_band = !ok;
                emit(acc, {lo, last}, ok);
                break;
            }
            std::size_t best_hi = 0;
            for (std::size_t hi = lo; hi <= top; ++hi) {
                if (empty[hi]) continue;
                synth.add_bin(hi, acc);
                if (phase_admissible(acc, tol)) {
                    best_hi = hi;
                    best = acc;
                } else if (!exhaustive) {
                    break;
                }
            }
            if (best_hi == 0) {
                // No admissible extension, not even the single bin; keep it
                // alone and flag it so reconstruction stays exact.
                std::fill(best.begin(), best.end(), cplx{0.0, 0.0});
                synth.add_bin(lo, best);
                emit(best, {lo, lo}, false);
                best_hi = lo;
            } else {
                emit(best, {lo, best_hi}, true);
            }
            lo = next_filled(best_hi + 1);
        }
    } else {
        auto prev_filled = [&](std::size_t k) {
            while (k >= 1 && empty[k]) --k;
            return k;
        };
        std::size_t hi = prev_filled(top);
        while (hi >= 1) {
            std::fill(acc.begin(), acc.end(), cplx{0.0, 0.0});
            if (final_band_due()) {
                std::size_t first = hi;
                for (std::size_t k = hi; k >= 1; --k) {
                    if (empty[k]) continue;
                    synth.add_bin(k, acc);
                    first = k;
                }
                const bool ok = phase_admissible(acc, tol);
                result.forced_final_band = !ok;
                emit(acc, {first, hi}, ok);
                break;
            }
            std::size_t best_lo = 0;
            for (std::size_t lo = hi; lo >= 1; --lo) {
                if (empty[lo]) continue;
                synth.add_bin(lo, acc);
                if (phase_admissible(acc, tol)) {
                    best_lo = lo;
                    best = acc;
                } else if (!exhaustive) {
                    break;
                }
            }
            if (best_lo == 0) {
                std::fill(best.begin(), best.end(), cplx{0.0, 0.0});
                synth.add_bin(hi, best);
                emit(best, {hi, hi}, false);
                best_lo = hi;
            } else {
                emit(best, {best_lo, hi}, true);
            }
            hi = prev_filled(best_lo - 1);
        }
    }

    for (std::size_t k = 1; k <= top; ++k) {
        if (!empty[k]) continue;
        const bool claimed = std::any_of(result.fibfs.begin(), result.fibfs.end(),
                                         [k](const Afibf& f) { return f.bins.contains(k); });
        if (!claimed) result.empty_bins.push_back(k);
    }

    const std::vector<double> recon = result.reconstruct();
    double err2 = 0.0, ref2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = signal[i] - recon[i];
        err2 += d * d;
        ref2 += signal[i] * signal[i];
    }
    result.reconstruction_error = ref2 > 0.0 ? std::sqrt(err2 / ref2) : std::sqrt(err2);
    if (!(result.reconstruction_error < kReconstructionTolerance))
        throw NumericalError("decompose: reconstruction error " + std::to_string(result.reconstruction_error) +
                             " exceeds tolerance");
    return result;
}

}  // namespace fdmkit
