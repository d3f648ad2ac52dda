#include "fdmkit/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace fdmkit {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

std::string where(const std::string& source, std::size_t line) {
    return source + ":" + std::to_string(line) + ": ";
}

}  // namespace

IngestedData parse_csv(std::istream& in, std::optional<double> sample_rate_hz, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        for (auto cell : split(line)) header.emplace_back(cell);
        break;
    }
    if (header.empty()) throw InputError(source + ": missing header row");
    for (std::size_t c = 0; c < header.size(); ++c)
        if (header[c].empty()) throw InputError(where(source, line_no) + "empty column name in header");

    const bool has_time = header[0] == "t";
    const std::size_t first_channel = has_time ? 1 : 0;
    if (header.size() <= first_channel) throw InputError(source + ": no data columns after the time column");

    std::vector<std::vector<double>> cols(header.size());
    std::vector<std::size_t> row_lines;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.size())
            throw InputError(where(source, line_no) + "row has " + std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(header.size()));
        for (std::size_t c = 0; c < cells.size(); ++c) {
            double v = 0.0;
            const char* b = cells[c].data();
            const char* e = b + cells[c].size();
            const auto [ptr, ec] = std::from_chars(b, e, v);
            if (cells[c].empty() || ec != std::errc{} || ptr != e || !std::isfinite(v))
                throw InputError(where(source, line_no) + "non-numeric cell '" + std::string(cells[c]) + "' in column " +
                                 header[c]);
            cols[c].push_back(v);
        }
        row_lines.push_back(line_no);
    }
    const std::size_t rows = row_lines.size();
    if (rows < 2) throw InputError(source + ": need at least 2 data rows");

    double fs = 0.0;
    double start = 0.0;
    if (has_time) {
        const auto& t = cols[0];
        const double step = (t.back() - t.front()) / static_cast<double>(rows - 1);
        if (!(step > 0.0)) throw InputError(source + ": time column must be increasing");
        for (std::size_t i = 1; i < rows; ++i) {
            const double d = t[i] - t[i - 1];
            if (std::abs(d - step) > kUniformTimeTolerance * step)
                throw InputError(where(source, row_lines[i]) + "non-uniform time step " + format_double(d) +
                                 " (expected " + format_double(step) + ")");
        }
        fs = 1.0 / step;
        start = t.front();
        if (sample_rate_hz && std::abs(*sample_rate_hz - fs) > kUniformTimeTolerance * fs)
            throw InputError(source + ": --fs " + format_double(*sample_rate_hz) +
                             " disagrees with time column rate " + format_double(fs));
        if (sample_rate_hz) fs = *sample_rate_hz;
    } else {
        if (!sample_rate_hz) throw InputError(source + ": no time column 't'; a sample rate must be supplied");
        fs = *sample_rate_hz;
    }

    std::vector<Signal> channels;
    std::vector<std::string> names;
    for (std::size_t c = first_channel; c < header.size(); ++c) {
        channels.emplace_back(std::move(cols[c]), fs, start);
        names.push_back(header[c]);
    }
    return IngestedData{MultichannelSignal(std::move(channels)), std::move(names), has_time};
}

IngestedData ingest_csv(const std::filesystem::path& path, std::optional<double> sample_rate_hz) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return parse_csv(in, sample_rate_hz, path.string());
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

std::string to_csv(std::span<const std::string> header, std::span<const std::vector<double>> columns) {
    std::string out;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c) out += ',';
        out += header[c];
    }
    out += '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out += ',';
            out += format_double(columns[c][r]);
        }
        out += '\n';
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move " + tmp.string() + " into place: " + ec.message());
    }
}

}  // namespace fdmkit
