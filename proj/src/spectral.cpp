#include "fdmkit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fdmkit {

Signal::Signal(std::vector<double> samples, double sample_rate_hz, double start_time_s)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz), start_time_s_(start_time_s) {
    if (samples_.size() < 2)
        throw InputError("signal needs at least 2 samples, got " + std::to_string(samples_.size()));
    if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_))
        throw InputError("sample rate must be positive and finite");
    if (!std::isfinite(start_time_s_)) throw InputError("start time must be finite");
    for (std::size_t n = 0; n < samples_.size(); ++n) {
        if (!std::isfinite(samples_[n]))
            throw InputError("non-finite sample at index " + std::to_string(n));
    }
}

Spectrum dft(const Signal& signal) {
    const std::size_t n = signal.size();
    std::vector<cplx> in(n);
    for (std::size_t i = 0; i < n; ++i) in[i] = {signal[i], 0.0};

    const FftPlan plan(n);
    std::vector<cplx> out = plan.forward(in);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : out) v *= scale;

    // Project onto the Hermitian subspace; for real input this only removes
    // rounding asymmetry between X[k] and X[N-k].
    out[0] = {out[0].real(), 0.0};
    for (std::size_t k = 1; 2 * k < n; ++k) {
        const cplx sym = 0.5 * (out[k] + std::conj(out[n - k]));
        out[k] = sym;
        out[n - k] = std::conj(sym);
    }
    if (has_nyquist_bin(n)) out[n / 2] = {out[n / 2].real(), 0.0};

    return Spectrum{std::move(out), n, signal.sample_rate_hz(), signal.start_time_s()};
}

Signal idft(const Spectrum& spectrum) {
    const std::size_t n = spectrum.size();
    if (n < 2) throw InputError("spectrum needs at least 2 coefficients");
    if (spectrum.source_length != n) throw InputError("spectrum source_length does not match coefficient count");

    const FftPlan plan(n);
    const std::vector<cplx> z = plan.inverse(spectrum.coefficients);

    double max_re = 0.0, max_im = 0.0;
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = z[i].real();
        max_re = std::max(max_re, std::abs(z[i].real()));
        max_im = std::max(max_im, std::abs(z[i].imag()));
    }
    if (max_im > kSymmetryResidueTolerance * max_re)
        throw SymmetryError("idft: imaginary residue " + std::to_string(max_im) +
                            " exceeds threshold; spectrum is not conjugate-symmetric");
    return Signal(std::move(x), spectrum.sample_rate_hz, spectrum.start_time_s);
}

AnalyticSignal analytic_band(const Spectrum& spectrum, std::size_t k_lo, std::size_t k_hi) {
    const std::size_t n = spectrum.size();
    const std::size_t top = last_positive_bin(n);
    if (k_lo < 1 || k_lo > k_hi || k_hi > top)
        throw InputError("analytic_band: bin range [" + std::to_string(k_lo) + ", " + std::to_string(k_hi) +
                         "] outside [1, " + std::to_string(top) + "]");

    std::vector<cplx> masked(n, cplx{0.0, 0.0});
    for (std::size_t k = k_lo; k <= k_hi; ++k) masked[k] = 2.0 * spectrum[k];
    const FftPlan plan(n);
    return AnalyticSignal{plan.inverse(masked), BinRange{k_lo, k_hi}, spectrum.sample_rate_hz};
}

double signal_energy(const Signal& signal) {
    double acc = 0.0;
    for (double v : signal.samples()) acc += v * v;
    return acc / static_cast<double>(signal.size());
}

double analytic_energy(const AnalyticSignal& analytic) {
    if (analytic.values.empty()) return 0.0;
    double acc = 0.0;
    for (const cplx& v : analytic.values) acc += std::norm(v);
    return acc / static_cast<double>(analytic.values.size());
}

EnergyBudget energy_budget(const Signal& signal) {
    const Spectrum spec = dft(signal);
    const std::size_t n = signal.size();
    EnergyBudget b;
    b.signal = signal_energy(signal);
    b.dc = spec[0].real() * spec[0].real();
    if (has_nyquist_bin(n)) b.nyquist = spec[n / 2].real() * spec[n / 2].real();
    if (last_positive_bin(n) >= 1) b.analytic = analytic_energy(analytic_band(spec, 1, last_positive_bin(n)));
    return b;
}

}  // namespace fdmkit
