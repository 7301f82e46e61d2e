#pragma once

#include <map>
#include <string>
#include <vector>

namespace tht {

/// Writes a two-column CSV (RFC-4180 line endings, '.' decimal separator,
/// 17 significant digits).
void write_csv_pairs(const std::string& path, const std::string& header,
                     const std::vector<double>& col1, const std::vector<double>& col2);

/// Run manifest, written atomically (temp file + rename) at the end of a CLI
/// run.
struct RunManifest {
    std::string command;
    std::string config_digest;
    std::map<std::string, std::string> parameters;
    std::vector<std::string> outputs;
    double wall_seconds = 0.0;
    std::string version = "tht 0.1.0";

    void write(const std::string& dir) const;
};

}  // namespace tht
