#ifndef CTQW_CLI_MANIFEST_HPP
#define CTQW_CLI_MANIFEST_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ctqw/spectrum.hpp"

namespace ctqw::cli {

/// A file could not be created or written.
class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

struct Artifact {
    std::string path; // relative to the output directory
    std::string kind; // edges | spectrum | levels | series | matrix | lta
    std::string sha256;
    std::uintmax_t bytes = 0;
};

/// Writes artifacts into one directory and records their checksums.
class ArtifactWriter {
public:
    explicit ArtifactWriter(std::filesystem::path dir);

    const std::filesystem::path& dir() const noexcept { return dir_; }
    const std::vector<Artifact>& artifacts() const noexcept { return artifacts_; }

    void write(const std::string& name, const std::string& kind, const std::function<void(std::ostream&)>& body);

private:
    std::filesystem::path dir_;
    std::vector<Artifact> artifacts_;
};

struct RunManifest {
    std::string command;
    nlohmann::ordered_json config;
    std::vector<Artifact> files;
    nlohmann::ordered_json spectrum;
    nlohmann::ordered_json results = nlohmann::ordered_json::object();
    std::vector<std::string> notes;
    double duration_seconds = 0;

    nlohmann::ordered_json to_json() const;
    static RunManifest from_json(const nlohmann::json& j);
};

/// N, number of distinct levels and the three most degenerate levels.
nlohmann::ordered_json spectrum_summary(const DegeneracySpectrum<double>& ds);

void write_manifest(const std::filesystem::path& dir, const RunManifest& m);
RunManifest read_manifest(const std::filesystem::path& dir);

} // namespace ctqw::cli

#endif // CTQW_CLI_MANIFEST_HPP
