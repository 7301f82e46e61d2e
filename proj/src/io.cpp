#include "tht/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace tht {

void write_csv_pairs(const std::string& path, const std::string& header,
                     const std::vector<double>& col1, const std::vector<double>& col2) {
    if (col1.size() != col2.size())
        throw std::invalid_argument("write_csv_pairs: column size mismatch");
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw std::runtime_error("cannot write " + path);
    std::fprintf(fp, "%s\r\n", header.c_str());
    for (size_t i = 0; i < col1.size(); ++i)
        std::fprintf(fp, "%.17g,%.17g\r\n", col1[i], col2[i]);
    std::fclose(fp);
}

void RunManifest::write(const std::string& dir) const {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    nlohmann::json j;
    j["command"] = command;
    j["config_digest"] = config_digest;
    j["parameters"] = parameters;
    j["outputs"] = outputs;
    j["wall_seconds"] = wall_seconds;
    j["version"] = version;
    const fs::path tmp = fs::path(dir) / "manifest.json.tmp";
    const fs::path final_path = fs::path(dir) / "manifest.json";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << j.dump(2) << "\n";
    }
    fs::rename(tmp, final_path);
}

}  // namespace tht
