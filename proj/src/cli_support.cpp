#include "spinport/cli_support.hpp"

#include "spinport/version.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace spinport::cli {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

std::string format_exact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void RunManifest::set(const std::string& key, const std::string& value) {
    entries_[key] = value;
}
void RunManifest::set(const std::string& key, double value) {
    entries_[key] = format_exact(value);
}
void RunManifest::set(const std::string& key, int value) {
    entries_[key] = std::to_string(value);
}
void RunManifest::set(const std::string& key, unsigned long long value) {
    entries_[key] = std::to_string(value);
}
void RunManifest::set(const std::string& key, const std::vector<double>& values) {
    std::string joined;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) joined += ';';
        joined += format_exact(values[i]);
    }
    entries_[key] = joined;
}

std::string RunManifest::line(const std::string& subcommand) const {
    std::string out = "# manifest: " + subcommand;
    for (const auto& [key, value] : entries_) out += " " + key + "=" + value;
    out += " version=" SPINPORT_VERSION;
    return out;
}

CsvWriter::CsvWriter(const std::string& path, const std::string& manifest_line,
                     const std::vector<std::string>& header)
    : path_(path), columns_(header.size()) {
    buffer_ = manifest_line + "\n";
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += header[i];
    }
    buffer_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_)
        throw std::logic_error("csv row width does not match the header");
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += cells[i];
    }
    buffer_ += '\n';
}

void flush_csv(CsvWriter& w) {
    std::ofstream out(w.path_, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + w.path_);
    out << w.buffer_;
    if (!out) throw std::runtime_error("failed writing output file: " + w.path_);
}

SpinJ parse_spin(double j) {
    try {
        SpinJ s = SpinJ::from(j);
        if (s.two_j == 0) throw std::invalid_argument("spin must be positive");
        return s;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("invalid spin value " + format_double(j) +
                                    " (expected a positive half-integer)");
    }
}

std::vector<SpinJ> parse_spin_list(const std::vector<double>& js) {
    if (js.empty()) throw std::invalid_argument("spin list must be non-empty");
    std::vector<SpinJ> out;
    out.reserve(js.size());
    for (double j : js) out.push_back(parse_spin(j));
    return out;
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
    size_t dot = path.find_last_of('.');
    size_t slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

std::string spin_label_string(SpinJ j) {
    if (j.is_integer()) return std::to_string(j.two_j / 2);
    return std::to_string(j.two_j / 2) + ".5";
}

}  // namespace spinport::cli
