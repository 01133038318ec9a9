#pragma once

#include "spinport/spin_core.hpp"

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace spinport::cli {

/// 15 significant digits, '.' decimal separator, no locale surprises.
std::string format_double(double v);

/// Exact-width serialization used in manifests so identical configs produce
/// byte-identical files.
std::string format_exact(double v);

/// Effective configuration of one run, serialized deterministically into the
/// leading manifest comment of every CSV.
class RunManifest {
  public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, int value);
    void set(const std::string& key, unsigned long long value);
    void set(const std::string& key, const std::vector<double>& values);

    /// "# manifest: <subcommand> k1=v1 k2=v2 ... <version>"
    std::string line(const std::string& subcommand) const;

  private:
    std::map<std::string, std::string> entries_;
};

class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::string& manifest_line,
              const std::vector<std::string>& header);

    void row(const std::vector<std::string>& cells);
    const std::string& path() const { return path_; }

  private:
    std::string path_;
    std::string buffer_;
    size_t columns_;

    friend void flush_csv(CsvWriter& w);
};

/// Writes the buffered file to disk (single write keeps partial outputs off
/// the filesystem when a later row fails).
void flush_csv(CsvWriter& w);

/// Parses and validates a half-integer spin value.
SpinJ parse_spin(double j);

/// Validates every entry and rejects empty lists.
std::vector<SpinJ> parse_spin_list(const std::vector<double>& js);

/// Inserts a suffix before the extension: out.csv + "_j2" -> out_j2.csv.
std::string with_suffix(const std::string& path, const std::string& suffix);

/// Compact spin label for filenames: 1 -> "1", 1.5 -> "1.5".
std::string spin_label_string(SpinJ j);

}  // namespace spinport::cli
