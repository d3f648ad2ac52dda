#include "fdmkit/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fdmkit/csv.hpp"

namespace fdmkit::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr const char* kToolVersion = "0.1.0";

// FDMKIT_LOG: off | error | warn | info | debug  (default warn)
enum class LogLevel { Off, Error, Warn, Info, Debug };

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("FDMKIT_LOG");
        if (!env) return LogLevel::Warn;
        const std::string v(env);
        if (v == "off") return LogLevel::Off;
        if (v == "error") return LogLevel::Error;
        if (v == "info") return LogLevel::Info;
        if (v == "debug") return LogLevel::Debug;
        return LogLevel::Warn;
    }();
    return level;
}

void log(LogLevel level, const std::string& msg) {
    if (level == LogLevel::Off || static_cast<int>(level) > static_cast<int>(log_level())) return;
    static constexpr const char* names[] = {"off", "error", "warn", "info", "debug"};
    std::cerr << "[fdmkit] " << names[static_cast<int>(level)] << ": " << msg << '\n';
}

template <typename Enum>
struct Named {
    Enum value;
    const char* name;
};

constexpr Named<Command> kCommands[] = {{Command::Decompose, "decompose"}, {Command::Mfdm, "mfdm"},
                                        {Command::Tfe, "tfe"},             {Command::Marginal, "marginal"},
                                        {Command::Energy, "energy"},       {Command::Generate, "generate"}};
constexpr Named<ScanOrder> kScans[] = {{ScanOrder::LowToHigh, "lth"}, {ScanOrder::HighToLow, "htl"}};
constexpr Named<SearchMode> kSearches[] = {{SearchMode::MaximalExhaustive, "max"}, {SearchMode::FirstViolation, "first"}};
constexpr Named<GridMode> kModes[] = {{GridMode::Amplitude, "amplitude"}, {GridMode::Energy, "energy"}};
constexpr Named<OutputFormat> kFormats[] = {{OutputFormat::Csv, "csv"}, {OutputFormat::Json, "json"}};
constexpr Named<FilterCascade> kCascades[] = {{FilterCascade::HighPassFirst, "hpf"}, {FilterCascade::ResidueFirst, "lpf"}};

template <typename Enum, std::size_t N>
Enum lookup(const Named<Enum> (&table)[N], const std::string& s, const char* what) {
    for (const auto& e : table)
        if (s == e.name) return e.value;
    std::string choices;
    for (const auto& e : table) choices += std::string(choices.empty() ? "" : "|") + e.name;
    throw InputError(std::string("invalid ") + what + " '" + s + "' (expected " + choices + ")");
}

template <typename Enum, std::size_t N>
const char* name_of(const Named<Enum> (&table)[N], Enum v) {
    for (const auto& e : table)
        if (e.value == v) return e.name;
    return "?";
}

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
    return out.empty() ? "ch" : out;
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::pair<std::string, double> parse_param(const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("--param expects name=value, got '" + kv + "'");
    const std::string value = kv.substr(eq + 1);
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing");
        return {kv.substr(0, eq), v};
    } catch (const std::exception&) {
        throw InputError("--param value for '" + kv.substr(0, eq) + "' is not a number");
    }
}

// ---- config file --------------------------------------------------------

GeneratorSpec generator_from_json(const json& j) {
    GeneratorSpec g;
    const std::string kind = j.at("kind").get<std::string>();
    const auto parsed = parse_signal_kind(kind);
    if (!parsed) throw InputError("unknown generator kind '" + kind + "'");
    g.kind = *parsed;
    if (j.contains("n")) g.n = j.at("n").get<std::size_t>();
    if (j.contains("fs")) g.sample_rate_hz = j.at("fs").get<double>();
    if (j.contains("seed")) g.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("parameters"))
        for (const auto& [k, v] : j.at("parameters").items()) g.parameters[k] = v.get<double>();
    if (j.contains("frequencies_hz")) g.frequencies_hz = j.at("frequencies_hz").get<std::vector<double>>();
    if (j.contains("channel_tones"))
        g.channel_tones = j.at("channel_tones").get<std::vector<std::vector<std::size_t>>>();
    return g;
}

json generator_to_json(const GeneratorSpec& g) {
    json j;
    j["kind"] = std::string(to_string(g.kind));
    j["n"] = g.n;
    j["fs"] = g.sample_rate_hz;
    j["seed"] = g.seed;
    json params = json::object();
    for (const auto& [k, v] : g.parameters) params[k] = v;
    j["parameters"] = params;
    if (!g.frequencies_hz.empty()) j["frequencies_hz"] = g.frequencies_hz;
    if (!g.channel_tones.empty()) j["channel_tones"] = g.channel_tones;
    return j;
}

void apply_config_json(RunConfig& c, const json& j) {
    try {
        if (j.contains("command")) {
            const auto cmd = parse_command(j.at("command").get<std::string>());
            if (!cmd) throw InputError("config: unknown command '" + j.at("command").get<std::string>() + "'");
            c.command = *cmd;
        }
        if (j.contains("input")) c.input = j.at("input").get<std::string>();
        if (j.contains("generator")) c.generator = generator_from_json(j.at("generator"));
        if (j.contains("fs")) c.sample_rate_hz = j.at("fs").get<double>();
        if (j.contains("scan")) c.fdm.scan = lookup(kScans, j.at("scan").get<std::string>(), "scan");
        if (j.contains("search")) c.fdm.search = lookup(kSearches, j.at("search").get<std::string>(), "search");
        if (j.contains("mono_tol")) c.fdm.monotonicity_tolerance = j.at("mono_tol").get<double>();
        if (j.contains("max_fibfs")) c.fdm.max_fibfs = j.at("max_fibfs").get<std::size_t>();
        if (j.contains("m")) c.m = j.at("m").get<double>();
        if (j.contains("levels")) c.levels = j.at("levels").get<std::size_t>();
        if (j.contains("cutoffs")) c.cutoffs_hz = j.at("cutoffs").get<std::vector<double>>();
        if (j.contains("cascade")) c.cascade = lookup(kCascades, j.at("cascade").get<std::string>(), "cascade");
        if (j.contains("freq_bin")) c.freq_bin_hz = j.at("freq_bin").get<double>();
        if (j.contains("mode")) c.mode = lookup(kModes, j.at("mode").get<std::string>(), "mode");
        if (j.contains("format")) c.format = lookup(kFormats, j.at("format").get<std::string>(), "format");
        if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("timestamp")) c.timestamp = j.at("timestamp").get<bool>();
    } catch (const json::exception& e) {
        throw InputError(std::string("config: ") + e.what());
    }
}

// ---- pipeline -----------------------------------------------------------

struct Loaded {
    MultichannelSignal data;
    std::vector<std::string> names;
    json source;
};

Loaded load_input(const RunConfig& c) {
    if (c.input) {
        IngestedData d = ingest_csv(*c.input, c.sample_rate_hz);
        json src{{"type", "csv"}, {"path", c.input->string()}};
        log(LogLevel::Info, "read " + std::to_string(d.data.channel_count()) + " channel(s) x " +
                                std::to_string(d.data.length()) + " samples from " + c.input->string());
        return Loaded{std::move(d.data), std::move(d.channel_names), src};
    }
    GeneratorSpec g = *c.generator;
    if (c.seed) g.seed = *c.seed;
    if (c.sample_rate_hz) g.sample_rate_hz = *c.sample_rate_hz;
    MultichannelSignal data = generate_channels(g);
    std::vector<std::string> names;
    if (data.channel_count() == 1)
        names.push_back("x");
    else
        for (std::size_t p = 0; p < data.channel_count(); ++p) names.push_back("x" + std::to_string(p + 1));
    return Loaded{std::move(data), std::move(names), json{{"type", "generator"}, {"spec", generator_to_json(g)}}};
}

std::vector<double> time_column(const Signal& s) {
    std::vector<double> t(s.size());
    for (std::size_t n = 0; n < s.size(); ++n) t[n] = s.time_at(n);
    return t;
}

class Writer {
public:
    Writer(const RunConfig& c) : dir_(c.out_dir) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec || !fs::is_directory(dir_)) throw IoError("cannot create output directory " + dir_.string());
    }

    void write(const std::string& name, const std::string& content) {
        const fs::path p = dir_ / name;
        write_file_atomic(p, content);
        report_.files.push_back(p);
        log(LogLevel::Debug, "wrote " + p.string());
    }
    void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }
    RunReport report() && { return std::move(report_); }

private:
    fs::path dir_;
    RunReport report_;
};

json summary_header(const RunConfig& c, const Loaded& in) {
    json s;
    s["schema_version"] = kSchemaVersion;
    s["tool"] = "fdmkit";
    s["tool_version"] = kToolVersion;
    if (c.timestamp) s["generated_at"] = utc_now();
    s["command"] = to_string(c.command);
    s["source"] = in.source;
    s["length"] = in.data.length();
    s["sample_rate_hz"] = in.data.sample_rate_hz();
    s["start_time_s"] = in.data.start_time_s();
    return s;
}

json fdm_settings(const FdmConfig& f) {
    json j{{"scan", name_of(kScans, f.scan)},
           {"search", name_of(kSearches, f.search)},
           {"mono_tol", f.monotonicity_tolerance}};
    j["max_fibfs"] = f.max_fibfs ? json(*f.max_fibfs) : json(nullptr);
    return j;
}

json decomposition_summary(const DecompositionResult& r) {
    json j;
    j["dc"] = r.dc;
    j["nyquist"] = r.nyquist ? json(*r.nyquist) : json(nullptr);
    j["fibf_count"] = r.fibfs.size();
    j["reconstruction_error"] = r.reconstruction_error;
    j["forced_final_band"] = r.forced_final_band;
    j["empty_bins"] = r.empty_bins;
    json bands = json::array();
    const double df = r.sample_rate_hz / static_cast<double>(r.length);
    for (std::size_t i = 0; i < r.fibfs.size(); ++i) {
        const Afibf& f = r.fibfs[i];
        double energy = 0.0;
        for (double v : f.fibf) energy += v * v;
        bands.push_back({{"index", i + 1},
                         {"k_lo", f.bins.lo},
                         {"k_hi", f.bins.hi},
                         {"f_lo_hz", static_cast<double>(f.bins.lo) * df},
                         {"f_hi_hz", static_cast<double>(f.bins.hi) * df},
                         {"monotone", f.monotone},
                         {"energy", energy}});
    }
    j["fibfs"] = bands;
    return j;
}

void warn_flags(const std::string& name, const DecompositionResult& r) {
    if (r.forced_final_band)
        log(LogLevel::Warn, name + ": final band merged by max_fibfs is not phase-monotone");
    for (std::size_t i = 0; i < r.fibfs.size(); ++i)
        if (!r.fibfs[i].monotone && !(r.forced_final_band && i + 1 == r.fibfs.size()))
            log(LogLevel::Warn, name + ": FIBF " + std::to_string(i + 1) + " is not phase-monotone");
}

RunReport run_decompose(const RunConfig& c, const Loaded& in, Writer& w) {
    json summary = summary_header(c, in);
    summary["fdm"] = fdm_settings(c.fdm);
    json channels = json::array();
    for (std::size_t p = 0; p < in.data.channel_count(); ++p) {
        const Signal& x = in.data[p];
        const DecompositionResult r = decompose(x, c.fdm);
        warn_flags(in.names[p], r);
        const std::string stem = "fibfs_" + sanitize(in.names[p]);
        std::string file;
        if (c.format == OutputFormat::Csv) {
            std::vector<std::string> header{"t"};
            std::vector<std::vector<double>> cols{time_column(x)};
            for (std::size_t i = 0; i < r.fibfs.size(); ++i) {
                const std::string idx = std::to_string(i + 1);
                header.insert(header.end(), {"y_" + idx, "a_" + idx, "f_" + idx});
                cols.push_back(r.fibfs[i].fibf);
                cols.push_back(r.fibfs[i].amplitude);
                cols.push_back(r.fibfs[i].inst_freq_hz);
            }
            file = stem + ".csv";
            w.write(file, to_csv(header, cols));
        } else {
            json j;
            j["t"] = time_column(x);
            json arr = json::array();
            for (const Afibf& f : r.fibfs)
                arr.push_back({{"k_lo", f.bins.lo}, {"k_hi", f.bins.hi}, {"y", f.fibf}, {"a", f.amplitude},
                               {"f", f.inst_freq_hz}, {"monotone", f.monotone}});
            j["fibfs"] = arr;
            file = stem + ".json";
            w.write_json(file, j);
        }
        json ch = decomposition_summary(r);
        ch["name"] = in.names[p];
        ch["file"] = file;
        channels.push_back(ch);
    }
    summary["channels"] = channels;
    w.write_json("summary.json", summary);
    return std::move(w).report();
}

RunReport run_tfe_family(const RunConfig& c, const Loaded& in, Writer& w) {
    json summary = summary_header(c, in);
    summary["fdm"] = fdm_settings(c.fdm);
    const double fs = in.data.sample_rate_hz();
    const double bin = c.freq_bin_hz.value_or(fs / static_cast<double>(in.data.length()));
    if (!(bin > 0.0)) throw InputError("--freq-bin must be positive");
    summary["freq_bin_hz"] = bin;
    if (c.command == Command::Tfe) summary["mode"] = name_of(kModes, c.mode);
    json channels = json::array();
    for (std::size_t p = 0; p < in.data.channel_count(); ++p) {
        const Signal& x = in.data[p];
        const DecompositionResult r = decompose(x, c.fdm);
        warn_flags(in.names[p], r);
        const std::string suffix = sanitize(in.names[p]);
        json ch{{"name", in.names[p]}, {"fibf_count", r.fibfs.size()}, {"reconstruction_error", r.reconstruction_error}};
        const FhsPoints pts = fhs(r);
        if (pts.clamped_negative > 0)
            log(LogLevel::Warn, in.names[p] + ": " + std::to_string(pts.clamped_negative) +
                                    " negative IF samples clamped to 0 Hz");
        ch["clamped_negative_if"] = pts.clamped_negative;

        if (c.command == Command::Tfe) {
            const Axis ta = default_time_axis(r);
            const Axis fa = default_freq_axis(fs, bin);
            const TfeGrid g = rasterize(pts, ta, fa, c.mode);
            std::size_t best = 0;
            for (std::size_t i = 1; i < g.cells.size(); ++i)
                if (g.cells[i] > g.cells[best]) best = i;
            ch["grid"] = {{"time_bins", ta.count},
                          {"freq_bins", fa.count},
                          {"dropped_points", g.dropped},
                          {"argmax", {{"t", ta.at(best / fa.count)}, {"f", fa.at(best % fa.count)}, {"value", g.cells.empty() ? 0.0 : g.cells[best]}}}};
            if (c.format == OutputFormat::Csv) {
                std::vector<std::vector<double>> cols(4);
                for (const TfePoint& pt : pts.points) {
                    cols[0].push_back(pt.time_s);
                    cols[1].push_back(pt.freq_hz);
                    cols[2].push_back(pt.amplitude);
                    cols[3].push_back(static_cast<double>(pt.fibf + 1));
                }
                const std::vector<std::string> ph{"t", "f", "a", "fibf"};
                w.write("tfe_points_" + suffix + ".csv", to_csv(ph, cols));
                std::vector<std::string> gh{"t"};
                std::vector<std::vector<double>> gc(1 + fa.count);
                for (std::size_t f = 0; f < fa.count; ++f) gh.push_back(format_double(fa.at(f)));
                for (std::size_t t = 0; t < ta.count; ++t) {
                    gc[0].push_back(ta.at(t));
                    for (std::size_t f = 0; f < fa.count; ++f) gc[1 + f].push_back(g.at(t, f));
                }
                w.write("tfe_grid_" + suffix + ".csv", to_csv(gh, gc));
                ch["files"] = {"tfe_points_" + suffix + ".csv", "tfe_grid_" + suffix + ".csv"};
            } else {
                json j;
                json tcol = json::array(), fcol = json::array(), acol = json::array(), icol = json::array();
                for (const TfePoint& pt : pts.points) {
                    tcol.push_back(pt.time_s);
                    fcol.push_back(pt.freq_hz);
                    acol.push_back(pt.amplitude);
                    icol.push_back(pt.fibf + 1);
                }
                j["points"] = {{"t", tcol}, {"f", fcol}, {"a", acol}, {"fibf", icol}};
                std::vector<double> taxis(ta.count), faxis(fa.count);
                for (std::size_t t = 0; t < ta.count; ++t) taxis[t] = ta.at(t);
                for (std::size_t f = 0; f < fa.count; ++f) faxis[f] = fa.at(f);
                j["grid"] = {{"t", taxis}, {"f", faxis}, {"cells", g.cells}};
                w.write_json("tfe_" + suffix + ".json", j);
                ch["files"] = {"tfe_" + suffix + ".json"};
            }
        } else if (c.command == Command::Marginal) {
            const MarginalSpectrum h = marginal_spectrum(pts, bin);
            const std::string file = "marginal_" + suffix + (c.format == OutputFormat::Csv ? ".csv" : ".json");
            if (c.format == OutputFormat::Csv) {
                const std::vector<std::string> hh{"f", "h"};
                const std::vector<std::vector<double>> hc{h.freq_hz, h.value};
                w.write(file, to_csv(hh, hc));
            } else {
                w.write_json(file, json{{"f", h.freq_hz}, {"h", h.value}});
            }
            ch["files"] = {file};
        } else {
            const std::vector<double> e = instantaneous_energy(r);
            const std::string file = "energy_" + suffix + (c.format == OutputFormat::Csv ? ".csv" : ".json");
            if (c.format == OutputFormat::Csv) {
                const std::vector<std::string> eh{"t", "E"};
                const std::vector<std::vector<double>> ec{time_column(x), e};
                w.write(file, to_csv(eh, ec));
            } else {
                w.write_json(file, json{{"t", time_column(x)}, {"E", e}});
            }
            ch["files"] = {file};
        }
        channels.push_back(ch);
    }
    summary["channels"] = channels;
    w.write_json("summary.json", summary);
    return std::move(w).report();
}

RunReport run_mfdm(const RunConfig& c, const Loaded& in, Writer& w) {
    const double fs = in.data.sample_rate_hz();
    const CutoffSchedule schedule =
        c.cutoffs_hz.empty() ? cutoff_schedule(fs, c.m, c.levels.value_or(default_dyadic_levels(in.data.length())))
                             : explicit_schedule(fs, c.cutoffs_hz);
    const MfdmResult r = mfdm_decompose(in.data, schedule, c.cascade);

    json summary = summary_header(c, in);
    summary["schedule"] = {{"cutoffs_hz", schedule.cutoffs_hz},
                           {"m", schedule.m ? json(*schedule.m) : json(nullptr)},
                           {"levels", schedule.levels()},
                           {"cascade", name_of(kCascades, c.cascade)}};
    json channels = json::array();
    const std::size_t levels = schedule.levels();
    for (std::size_t p = 0; p < in.data.channel_count(); ++p) {
        const std::string suffix = sanitize(in.names[p]);
        std::string file = "mfdm_" + suffix + (c.format == OutputFormat::Csv ? ".csv" : ".json");
        if (c.format == OutputFormat::Csv) {
            std::vector<std::string> header{"t"};
            std::vector<std::vector<double>> cols{time_column(in.data[p])};
            for (std::size_t i = 0; i < levels; ++i) {
                header.push_back("band_" + std::to_string(i + 1));
                cols.push_back(r.bands[i][p]);
            }
            header.push_back("residue");
            cols.push_back(r.residue[p]);
            w.write(file, to_csv(header, cols));
        } else {
            json bands = json::array();
            for (std::size_t i = 0; i < levels; ++i) bands.push_back(r.bands[i][p]);
            w.write_json(file, json{{"t", time_column(in.data[p])}, {"bands", bands}, {"residue", r.residue[p]}});
        }
        json bins = json::array();
        for (std::size_t i = 0; i < levels; ++i) {
            const auto& b = r.band_bins[p][i];
            bins.push_back(b.empty() ? json(nullptr) : json{{"k_lo", b.front()}, {"k_hi", b.back()}, {"count", b.size()}});
        }
        channels.push_back({{"name", in.names[p]},
                            {"file", file},
                            {"reconstruction_error", r.reconstruction_error[p]},
                            {"band_bins", bins}});
    }
    summary["channels"] = channels;
    w.write_json("summary.json", summary);
    return std::move(w).report();
}

RunReport run_generate(const RunConfig& c, const Loaded& in, Writer& w) {
    std::string file;
    if (c.format == OutputFormat::Csv) {
        std::vector<std::string> header{"t"};
        std::vector<std::vector<double>> cols{time_column(in.data[0])};
        for (std::size_t p = 0; p < in.data.channel_count(); ++p) {
            header.push_back(in.names[p]);
            cols.emplace_back(in.data[p].samples().begin(), in.data[p].samples().end());
        }
        file = "signal.csv";
        w.write(file, to_csv(header, cols));
    } else {
        json j{{"t", time_column(in.data[0])}};
        for (std::size_t p = 0; p < in.data.channel_count(); ++p)
            j[in.names[p]] = std::vector<double>(in.data[p].samples().begin(), in.data[p].samples().end());
        file = "signal.json";
        w.write_json(file, j);
    }
    json summary = summary_header(c, in);
    summary["channels"] = in.names;
    summary["file"] = file;
    w.write_json("summary.json", summary);
    return std::move(w).report();
}

}  // namespace

std::string to_string(Command c) { return name_of(kCommands, c); }

std::optional<Command> parse_command(const std::string& s) {
    for (const auto& e : kCommands)
        if (s == e.name) return e.value;
    return std::nullopt;
}

void RunConfig::validate() const {
    if (input.has_value() == generator.has_value())
        throw InputError("exactly one input source is required: --input <csv> or a generator (--kind / config)");
    fdm.validate();
    if (freq_bin_hz && !(*freq_bin_hz > 0.0)) throw InputError("--freq-bin must be positive");
    if (command == Command::Generate && !generator) throw InputError("generate needs a generator spec");
}

RunReport execute(const RunConfig& config) {
    config.validate();
    const Loaded in = load_input(config);
    Writer w(config);
    switch (config.command) {
        case Command::Decompose: return run_decompose(config, in, w);
        case Command::Mfdm: return run_mfdm(config, in, w);
        case Command::Tfe:
        case Command::Marginal:
        case Command::Energy: return run_tfe_family(config, in, w);
        case Command::Generate: return run_generate(config, in, w);
    }
    throw InputError("unknown command");
}

int run(const RunConfig& config, std::ostream& err) {
    try {
        execute(config);
        return kExitOk;
    } catch (const Error& e) {
        err << "fdmkit: " << e.what() << '\n';
        switch (e.kind()) {
            case ErrorKind::Input: return kExitInput;
            case ErrorKind::Numerical: return kExitNumerical;
            case ErrorKind::Io: return kExitIo;
        }
        return kExitNumerical;
    } catch (const fs::filesystem_error& e) {
        err << "fdmkit: " << e.what() << '\n';
        return kExitIo;
    }
}

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& help) {
    CLI::App app{"Fourier decomposition toolkit: FIBF decomposition, MFDM filter banks, time-frequency-energy output"};
    app.name("fdmkit");

    std::string command, input, kind, scan, search, mode, format, out, config_path, cascade;
    double fs = 0, mono_tol = 0, m = 0, freq_bin = 0;
    std::size_t levels = 0, max_fibfs = 0, n = 0;
    std::uint64_t seed = 0;
    std::vector<double> cutoffs;
    std::vector<std::string> params;
    bool no_timestamp = false;

    app.add_option("command", command, "decompose | mfdm | tfe | marginal | energy | generate")->required();
    auto* o_config = app.add_option("--config", config_path, "JSON run config; flags override its values");
    auto* o_input = app.add_option("--input", input, "input CSV (header row; optional leading 't' column)");
    auto* o_kind = app.add_option("--kind", kind, "generator kind, e.g. unit_sample, white_gaussian");
    auto* o_param = app.add_option("--param", params, "generator parameter name=value (repeatable)");
    auto* o_n = app.add_option("--n", n, "generator length");
    auto* o_fs = app.add_option("--fs", fs, "sample rate in Hz");
    auto* o_scan = app.add_option("--scan", scan, "band scan order: lth | htl");
    auto* o_search = app.add_option("--search", search, "band growth: max | first");
    auto* o_mono = app.add_option("--mono-tol", mono_tol, "phase-slope slack in radians/sample");
    auto* o_maxf = app.add_option("--max-fibfs", max_fibfs, "cap on FIBF count");
    auto* o_m = app.add_option("--m", m, "center-frequency-to-bandwidth ratio (> 1/2)");
    auto* o_levels = app.add_option("--levels", levels, "number of MFDM levels");
    auto* o_cutoffs = app.add_option("--cutoffs", cutoffs, "explicit MFDM cutoffs in Hz, comma separated")->delimiter(',');
    auto* o_cascade = app.add_option("--cascade", cascade, "MFDM filter order: hpf | lpf");
    auto* o_bin = app.add_option("--freq-bin", freq_bin, "frequency bin width in Hz (default Fs/N)");
    auto* o_mode = app.add_option("--mode", mode, "grid cell value: amplitude | energy");
    auto* o_format = app.add_option("--format", format, "output format: csv | json");
    auto* o_out = app.add_option("--out", out, "output directory");
    auto* o_seed = app.add_option("--seed", seed, "seed for random generator kinds");
    app.add_flag("--no-timestamp", no_timestamp, "omit generated_at from summary JSON");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        help << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw InputError(e.what());
    }

    RunConfig c;
    if (o_config->count()) {
        std::ifstream f(config_path);
        if (!f) throw InputError("cannot open config " + config_path);
        json j;
        try {
            f >> j;
        } catch (const json::exception& e) {
            throw InputError("config " + config_path + ": " + e.what());
        }
        apply_config_json(c, j);
    }
    const auto cmd = parse_command(command);
    if (!cmd) throw InputError("unknown command '" + command + "'");
    c.command = *cmd;

    if (o_input->count()) {
        c.input = input;
        c.generator.reset();
    }
    if (o_kind->count()) {
        const auto k = parse_signal_kind(kind);
        if (!k) throw InputError("unknown generator kind '" + kind + "'");
        if (!c.generator || c.generator->kind != *k) c.generator = GeneratorSpec{};
        c.generator->kind = *k;
        if (!o_input->count()) c.input.reset();
    }
    if (o_param->count() || o_n->count()) {
        if (!c.generator) throw InputError("--param/--n need a generator (--kind)");
        for (const auto& p : params) {
            auto [k, v] = parse_param(p);
            c.generator->parameters[k] = v;
        }
        if (o_n->count()) c.generator->n = n;
    }
    if (o_fs->count()) c.sample_rate_hz = fs;
    if (o_scan->count()) c.fdm.scan = lookup(kScans, scan, "scan");
    if (o_search->count()) c.fdm.search = lookup(kSearches, search, "search");
    if (o_mono->count()) c.fdm.monotonicity_tolerance = mono_tol;
    if (o_maxf->count()) c.fdm.max_fibfs = max_fibfs;
    if (o_m->count()) c.m = m;
    if (o_levels->count()) c.levels = levels;
    if (o_cutoffs->count()) c.cutoffs_hz = cutoffs;
    if (o_cascade->count()) c.cascade = lookup(kCascades, cascade, "cascade");
    if (o_bin->count()) c.freq_bin_hz = freq_bin;
    if (o_mode->count()) c.mode = lookup(kModes, mode, "mode");
    if (o_format->count()) c.format = lookup(kFormats, format, "format");
    if (o_out->count()) c.out_dir = out;
    if (o_seed->count()) c.seed = seed;
    if (no_timestamp) c.timestamp = false;
    return c;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::optional<RunConfig> cfg;
    try {
        cfg = parse_args(args, out);
    } catch (const Error& e) {
        err << "fdmkit: " << e.what() << '\n';
        return kExitInput;
    }
    if (!cfg) return kExitOk;
    return run(*cfg, err);
}

}  // namespace fdmkit::cli
