#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fdmkit/fdm.hpp"
#include "fdmkit/mfdm.hpp"
#include "fdmkit/siggen.hpp"
#include "fdmkit/tfe.hpp"

namespace py = pybind11;
using namespace fdmkit;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

py::array_t<double> to_numpy(const std::vector<double>& v) {
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

std::vector<double> from_numpy(const Array& a) {
    if (a.ndim() != 1) throw InputError("expected a one-dimensional array");
    return {a.data(), a.data() + a.size()};
}

ScanOrder parse_scan(const std::string& s) {
    if (s == "lth") return ScanOrder::LowToHigh;
    if (s == "htl") return ScanOrder::HighToLow;
    throw InputError("scan must be 'lth' or 'htl'");
}

SearchMode parse_search(const std::string& s) {
    if (s == "max") return SearchMode::MaximalExhaustive;
    if (s == "first") return SearchMode::FirstViolation;
    throw InputError("search must be 'max' or 'first'");
}

GridMode parse_mode(const std::string& s) {
    if (s == "amplitude") return GridMode::Amplitude;
    if (s == "energy") return GridMode::Energy;
    throw InputError("mode must be 'amplitude' or 'energy'");
}

}  // namespace

PYBIND11_MODULE(_fdmkit, m) {
    m.doc() = "Fourier decomposition into intrinsic band functions";

    auto base = py::register_exception<Error>(m, "FdmkitError", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());

    py::class_<Afibf>(m, "Fibf")
        .def_property_readonly("bins", [](const Afibf& f) { return py::make_tuple(f.bins.lo, f.bins.hi); })
        .def_property_readonly("values", [](const Afibf& f) { return to_numpy(f.fibf); })
        .def_property_readonly("amplitude", [](const Afibf& f) { return to_numpy(f.amplitude); })
        .def_property_readonly("phase", [](const Afibf& f) { return to_numpy(f.phase); })
        .def_property_readonly("inst_freq_hz", [](const Afibf& f) { return to_numpy(f.inst_freq_hz); })
        .def_readonly("monotone", &Afibf::monotone)
        .def("__repr__", [](const Afibf& f) {
            return "<Fibf bins=(" + std::to_string(f.bins.lo) + ", " + std::to_string(f.bins.hi) + ")>";
        });

    py::class_<DecompositionResult>(m, "Decomposition")
        .def_readonly("dc", &DecompositionResult::dc)
        .def_readonly("nyquist", &DecompositionResult::nyquist)
        .def_readonly("fibfs", &DecompositionResult::fibfs)
        .def_readonly("reconstruction_error", &DecompositionResult::reconstruction_error)
        .def_readonly("forced_final_band", &DecompositionResult::forced_final_band)
        .def_readonly("empty_bins", &DecompositionResult::empty_bins)
        .def_readonly("sample_rate_hz", &DecompositionResult::sample_rate_hz)
        .def("reconstruct", [](const DecompositionResult& r) { return to_numpy(r.reconstruct()); })
        .def("__len__", [](const DecompositionResult& r) { return r.fibfs.size(); });

    m.def(
        "decompose",
        [](const Array& x, double fs, const std::string& scan, const std::string& search, double mono_tol,
           std::optional<std::size_t> max_fibfs, double start_time_s) {
            FdmConfig c;
            c.scan = parse_scan(scan);
            c.search = parse_search(search);
            c.monotonicity_tolerance = mono_tol;
            c.max_fibfs = max_fibfs;
            const Signal s(from_numpy(x), fs, start_time_s);
            py::gil_scoped_release release;
            return decompose(s, c);
        },
        py::arg("x"), py::arg("fs"), py::arg("scan") = "lth", py::arg("search") = "max", py::arg("mono_tol") = 0.0,
        py::arg("max_fibfs") = py::none(), py::arg("start_time_s") = 0.0,
        "Split x into dc, FIBFs and a Nyquist term.");

    m.def(
        "dft",
        [](const Array& x) {
            const Spectrum s = dft(Signal(from_numpy(x), 1.0));
            return py::array_t<std::complex<double>>(static_cast<py::ssize_t>(s.size()), s.coefficients.data());
        },
        py::arg("x"), "DFT with the 1/N on the forward transform.");

    m.def("cutoff_schedule", [](double fs, double mval, std::size_t levels) {
        return cutoff_schedule(fs, mval, levels).cutoffs_hz;
    }, py::arg("fs"), py::arg("m"), py::arg("levels"));

    m.def(
        "mfdm",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& x, double fs,
           std::optional<std::vector<double>> cutoffs, double mval, std::optional<std::size_t> levels,
           const std::string& cascade) {
            if (x.ndim() != 1 && x.ndim() != 2) throw InputError("x must be (N,) or (P, N)");
            const std::size_t p = x.ndim() == 1 ? 1 : static_cast<std::size_t>(x.shape(0));
            const std::size_t n = static_cast<std::size_t>(x.ndim() == 1 ? x.shape(0) : x.shape(1));
            std::vector<Signal> chans;
            for (std::size_t c = 0; c < p; ++c)
                chans.emplace_back(std::vector<double>(x.data() + c * n, x.data() + (c + 1) * n), fs);
            const MultichannelSignal data(std::move(chans));
            const CutoffSchedule sched = cutoffs ? explicit_schedule(fs, *cutoffs)
                                                 : cutoff_schedule(fs, mval, levels.value_or(default_dyadic_levels(n)));
            FilterCascade fc;
            if (cascade == "hpf")
                fc = FilterCascade::HighPassFirst;
            else if (cascade == "lpf")
                fc = FilterCascade::ResidueFirst;
            else
                throw InputError("cascade must be 'hpf' or 'lpf'");
            const MfdmResult r = mfdm_decompose(data, sched, fc);
            const std::size_t l = sched.levels();
            py::array_t<double> bands({l, p, n});
            py::array_t<double> residue({p, n});
            auto b = bands.mutable_unchecked<3>();
            auto rr = residue.mutable_unchecked<2>();
            for (std::size_t c = 0; c < p; ++c)
                for (std::size_t t = 0; t < n; ++t) {
                    for (std::size_t i = 0; i < l; ++i) b(i, c, t) = r.bands[i][c][t];
                    rr(c, t) = r.residue[c][t];
                }
            py::dict out;
            out["bands"] = bands;
            out["residue"] = residue;
            out["cutoffs_hz"] = sched.cutoffs_hz;
            out["reconstruction_error"] = r.reconstruction_error;
            return out;
        },
        py::arg("x"), py::arg("fs"), py::arg("cutoffs_hz") = py::none(), py::arg("m") = 1.5,
        py::arg("levels") = py::none(), py::arg("cascade") = "hpf",
        "Zero-phase filter bank; returns bands (L, P, N) and residue (P, N).");

    m.def("instantaneous_energy", [](const DecompositionResult& r) { return to_numpy(instantaneous_energy(r)); });

    m.def(
        "marginal_spectrum",
        [](const DecompositionResult& r, std::optional<double> bin) {
            const auto h = marginal_spectrum(fhs(r), bin.value_or(r.sample_rate_hz / static_cast<double>(r.length)));
            return py::make_tuple(to_numpy(h.freq_hz), to_numpy(h.value));
        },
        py::arg("result"), py::arg("freq_bin_hz") = py::none(), "Returns (f, h).");

    m.def(
        "tfe_grid",
        [](const DecompositionResult& r, std::optional<double> bin, const std::string& mode) {
            const Axis ta = default_time_axis(r);
            const Axis fa =
                default_freq_axis(r.sample_rate_hz, bin.value_or(r.sample_rate_hz / static_cast<double>(r.length)));
            const TfeGrid g = rasterize(fhs(r), ta, fa, parse_mode(mode));
            std::vector<double> t(ta.count), f(fa.count);
            for (std::size_t i = 0; i < ta.count; ++i) t[i] = ta.at(i);
            for (std::size_t i = 0; i < fa.count; ++i) f[i] = fa.at(i);
            py::array_t<double> cells({ta.count, fa.count});
            std::copy(g.cells.begin(), g.cells.end(), cells.mutable_data());
            return py::make_tuple(to_numpy(t), to_numpy(f), cells);
        },
        py::arg("result"), py::arg("freq_bin_hz") = py::none(), py::arg("mode") = "amplitude",
        "Returns (t, f, cells[t, f]).");

    m.def(
        "generate",
        [](const std::string& kind, std::size_t n, double fs, std::uint64_t seed, std::map<std::string, double> params,
           std::vector<double> frequencies_hz) {
            const auto k = parse_signal_kind(kind);
            if (!k) throw InputError("unknown signal kind '" + kind + "'");
            GeneratorSpec g;
            g.kind = *k;
            g.n = n;
            g.sample_rate_hz = fs;
            g.seed = seed;
            g.parameters = std::move(params);
            g.frequencies_hz = std::move(frequencies_hz);
            const Signal s = generate(g);
            return to_numpy({s.samples().begin(), s.samples().end()});
        },
        py::arg("kind"), py::arg("n") = 1024, py::arg("fs") = 100.0, py::arg("seed") = 0,
        py::arg("params") = std::map<std::string, double>{}, py::arg("frequencies_hz") = std::vector<double>{});
}
