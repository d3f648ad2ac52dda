#include "fdmkit/siggen.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace fdmkit {

namespace {

constexpr double kPi = std::numbers::pi;

struct KindInfo {
    SignalKind kind;
    std::string_view name;
    std::vector<std::pair<std::string, double>> defaults;
};

const std::vector<KindInfo>& kind_table() {
    static const std::vector<KindInfo> table = {
        {SignalKind::ToneMix, "tone_mix", {{"amplitude", 1.0}, {"sigma", 0.0}}},
        {SignalKind::IntermittentTone,
         "intermittent_tone",
         {{"carrier_hz", 5.0},
          {"carrier_amplitude", 1.0},
          {"burst_hz", 40.0},
          {"burst_amplitude", 0.3},
          {"burst_start", 0.4},
          {"burst_end", 0.6}}},
        {SignalKind::LinearChirp, "linear_chirp", {{"f_start_hz", 2.0}, {"f_end_hz", 30.0}, {"amplitude", 1.0}}},
        {SignalKind::FmSinusoid,
         "fm_sinusoid",
         {{"carrier_hz", 20.0}, {"deviation_hz", 8.0}, {"rate_hz", 1.0}, {"amplitude", 1.0}}},
        {SignalKind::IntrawaveEq25, "intrawave_eq25", {}},
        {SignalKind::ModelWaveEq26, "model_wave_eq26", {{"omega", 1.0}, {"epsilon", 0.5}}},
        {SignalKind::UnitSample, "unit_sample", {{"n0", -1.0}, {"amplitude", 1.0}}},
        {SignalKind::WhiteGaussian, "white_gaussian", {{"sigma", 1.0}, {"mean", 0.0}}},
    };
    return table;
}

const KindInfo& info(SignalKind kind) {
    for (const auto& k : kind_table())
        if (k.kind == kind) return k;
    throw InputError("unknown signal kind");
}

void require(bool ok, const std::string& what) {
    if (!ok) throw InputError("generator: " + what);
}

std::vector<double> times(const GeneratorSpec& s) {
    std::vector<double> t(s.n);
    for (std::size_t i = 0; i < s.n; ++i) t[i] = static_cast<double>(i) / s.sample_rate_hz;
    return t;
}

}  // namespace

std::string_view to_string(SignalKind kind) { return info(kind).name; }

std::optional<SignalKind> parse_signal_kind(std::string_view name) {
    for (const auto& k : kind_table())
        if (k.name == name) return k.kind;
    return std::nullopt;
}

double GaussianSource::next() {
    if (spare_) {
        const double v = *spare_;
        spare_.reset();
        return v;
    }
    // u1 in (0, 1], u2 in [0, 1), both with 53 random bits
    constexpr double scale = 1.0 / 9007199254740992.0;
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * scale;
    const double u2 = static_cast<double>(engine_() >> 11) * scale;
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    return r * std::cos(2.0 * kPi * u2);
}

double GeneratorSpec::param(const std::string& name) const {
    if (auto it = parameters.find(name); it != parameters.end()) return it->second;
    for (const auto& [key, value] : info(kind).defaults)
        if (key == name) return value;
    throw InputError("generator: no parameter '" + name + "' for kind " + std::string(to_string(kind)));
}

std::vector<double> GeneratorSpec::tone_frequencies() const {
    if (frequencies_hz.empty()) return {4.0, 8.0, 16.0, 32.0};
    return frequencies_hz;
}

void GeneratorSpec::validate() const {
    require(n >= 2, "n must be at least 2");
    require(sample_rate_hz > 0.0 && std::isfinite(sample_rate_hz), "sample rate must be positive");
    const KindInfo& ki = info(kind);
    for (const auto& [key, value] : parameters) {
        bool known = false;
        for (const auto& d : ki.defaults) known = known || d.first == key;
        require(known, "unknown parameter '" + key + "' for kind " + std::string(ki.name));
        require(std::isfinite(value), "parameter '" + key + "' must be finite");
    }
    const double nyq = sample_rate_hz / 2.0;
    switch (kind) {
        case SignalKind::ToneMix: {
            const std::vector<double> tones = tone_frequencies();
            for (double f : tones) require(f > 0.0 && f < nyq, "tone frequencies must lie in (0, Fs/2)");
            for (const auto& ch : channel_tones) {
                for (std::size_t idx : ch) require(idx < tones.size(), "channel tone index out of range");
            }
            require(param("sigma") >= 0.0, "sigma must be >= 0");
            break;
        }
        case SignalKind::IntermittentTone:
            require(param("carrier_hz") > 0.0 && param("carrier_hz") < nyq, "carrier_hz must lie in (0, Fs/2)");
            require(param("burst_hz") > 0.0 && param("burst_hz") < nyq, "burst_hz must lie in (0, Fs/2)");
            require(0.0 <= param("burst_start") && param("burst_start") < param("burst_end") &&
                        param("burst_end") <= 1.0,
                    "burst gate needs 0 <= burst_start < burst_end <= 1");
            break;
        case SignalKind::LinearChirp:
            require(param("f_start_hz") >= 0.0 && param("f_end_hz") >= 0.0 && param("f_start_hz") < nyq &&
                        param("f_end_hz") < nyq,
                    "chirp frequencies must lie in [0, Fs/2)");
            break;
        case SignalKind::FmSinusoid:
            require(param("carrier_hz") > 0.0 && param("rate_hz") > 0.0 && param("deviation_hz") >= 0.0,
                    "fm carrier and rate must be positive, deviation >= 0");
            require(param("carrier_hz") + param("deviation_hz") < nyq, "fm peak frequency must stay below Fs/2");
            break;
        case SignalKind::IntrawaveEq25: break;
        case SignalKind::ModelWaveEq26:
            require(param("omega") > 0.0, "omega must be positive");
            require(param("epsilon") >= 0.0, "epsilon must be >= 0");
            break;
        case SignalKind::UnitSample: {
            const double n0 = param("n0");
            if (n0 != -1.0)
                require(n0 >= 0.0 && n0 < static_cast<double>(n) && n0 == std::floor(n0),
                        "n0 must be an integer in [0, n)");
            break;
        }
        case SignalKind::WhiteGaussian: require(param("sigma") >= 0.0, "sigma must be >= 0"); break;
    }
}

MultichannelSignal generate_channels(const GeneratorSpec& spec) {
    spec.validate();
    const std::vector<double> t = times(spec);
    const double fs = spec.sample_rate_hz;
    const double duration = static_cast<double>(spec.n) / fs;
    std::vector<double> x(spec.n, 0.0);

    switch (spec.kind) {
        case SignalKind::ToneMix: {
            const std::vector<double> freqs = spec.tone_frequencies();
            std::vector<std::vector<std::size_t>> channels = spec.channel_tones;
            if (channels.empty()) {
                channels.emplace_back();
                for (std::size_t i = 0; i < freqs.size(); ++i) channels.back().push_back(i);
            }
            const double amp = spec.param("amplitude");
            const double sigma = spec.param("sigma");
            GaussianSource noise(spec.seed);
            std::vector<Signal> out;
            for (const auto& tones : channels) {
                std::vector<double> ch(spec.n, 0.0);
                for (std::size_t idx : tones) {
                    const double f = freqs[idx];
                    for (std::size_t i = 0; i < spec.n; ++i) ch[i] += amp * std::sin(2.0 * kPi * f * t[i]);
                }
                if (sigma > 0.0)
                    for (double& v : ch) v += sigma * noise.next();
                out.emplace_back(std::move(ch), fs);
            }
            return MultichannelSignal(std::move(out));
        }
        case SignalKind::IntermittentTone: {
            const double gate0 = spec.param("burst_start") * duration;
            const double gate1 = spec.param("burst_end") * duration;
            for (std::size_t i = 0; i < spec.n; ++i) {
                x[i] = spec.param("carrier_amplitude") * std::sin(2.0 * kPi * spec.param("carrier_hz") * t[i]);
                if (t[i] >= gate0 && t[i] < gate1)
                    x[i] += spec.param("burst_amplitude") * std::sin(2.0 * kPi * spec.param("burst_hz") * t[i]);
            }
            break;
        }
        case SignalKind::LinearChirp: {
            const double f0 = spec.param("f_start_hz");
            const double sweep = (spec.param("f_end_hz") - f0) / duration;
            for (std::size_t i = 0; i < spec.n; ++i)
                x[i] = spec.param("amplitude") * std::cos(2.0 * kPi * (f0 * t[i] + 0.5 * sweep * t[i] * t[i]));
            break;
        }
        case SignalKind::FmSinusoid: {
            const double fc = spec.param("carrier_hz");
            const double fm = spec.param("rate_hz");
            const double beta = spec.param("deviation_hz") / fm;
            for (std::size_t i = 0; i < spec.n; ++i)
                x[i] = spec.param("amplitude") * std::cos(2.0 * kPi * fc * t[i] + beta * std::sin(2.0 * kPi * fm * t[i]));
            break;
        }
        case SignalKind::IntrawaveEq25:
            for (std::size_t i = 0; i < spec.n; ++i) {
                const double ti = t[i];
                x[i] = 1.0 / (1.2 + std::cos(2.0 * kPi * ti)) +
                       std::cos(32.0 * kPi * ti + 0.2 * std::cos(64.0 * kPi * ti)) / (1.5 + std::sin(2.0 * kPi * ti));
            }
            break;
        case SignalKind::ModelWaveEq26: {
            const double w = spec.param("omega");
            const double eps = spec.param("epsilon");
            for (std::size_t i = 0; i < spec.n; ++i) x[i] = std::cos(w * t[i] + eps * std::sin(w * t[i]));
            break;
        }
        case SignalKind::UnitSample: {
            double n0 = spec.param("n0");
            if (n0 == -1.0) n0 = static_cast<double>((spec.n - 1) / 2);
            x[static_cast<std::size_t>(n0)] = spec.param("amplitude");
            break;
        }
        case SignalKind::WhiteGaussian: {
            GaussianSource noise(spec.seed);
            const double sigma = spec.param("sigma");
            const double mean = spec.param("mean");
            for (double& v : x) v = mean + sigma * noise.next();
            break;
        }
    }
    std::vector<Signal> one;
    one.emplace_back(std::move(x), fs);
    return MultichannelSignal(std::move(one));
}

Signal generate(const GeneratorSpec& spec) {
    MultichannelSignal m = generate_channels(spec);
    if (m.channel_count() != 1)
        throw InputError("generator: spec produces " + std::to_string(m.channel_count()) +
                         " channels; use generate_channels");
    return m[0];
}

GeneratorSpec quadrivariate_tone_mix(std::size_t n, double sample_rate_hz, double sigma, std::uint64_t seed) {
    GeneratorSpec s;
    s.kind = SignalKind::ToneMix;
    s.n = n;
    s.sample_rate_hz = sample_rate_hz;
    s.seed = seed;
    s.parameters["sigma"] = sigma;
    s.frequencies_hz = {4.0, 8.0, 16.0, 32.0};
    // tone indices: 0 -> 4 Hz, 1 -> 8 Hz, 2 -> 16 Hz, 3 -> 32 Hz
    s.channel_tones = {{0, 1, 2, 3}, {1, 2, 3}, {0, 1, 2}, {0, 1, 3}};
    return s;
}

}  // namespace fdmkit
