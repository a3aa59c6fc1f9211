#include "cli/manifest.hpp"

#include <fstream>
#include <sstream>

#include <openssl/evp.h>

namespace ctqw::cli {

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (!EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr))
        throw std::runtime_error("SHA-256 digest failed");
    static const char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw OutputError("cannot read '" + path.string() + "'");
    std::ostringstream bytes;
    bytes << in.rdbuf();
    return sha256_hex(bytes.str());
}

ArtifactWriter::ArtifactWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec || !std::filesystem::is_directory(dir_))
        throw OutputError("cannot create output directory '" + dir_.string() + "'");
}

void ArtifactWriter::write(const std::string& name, const std::string& kind,
                           const std::function<void(std::ostream&)>& body) {
    std::ostringstream buffer;
    body(buffer);
    const std::string bytes = buffer.str();
    const auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) throw OutputError("cannot write '" + path.string() + "'");
    artifacts_.push_back({name, kind, sha256_hex(bytes), bytes.size()});
}

nlohmann::ordered_json RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["config"] = config;
    j["files"] = nlohmann::ordered_json::array();
    for (const auto& a : files)
        j["files"].push_back({{"path", a.path}, {"kind", a.kind}, {"sha256", a.sha256}, {"bytes", a.bytes}});
    j["spectrum"] = spectrum;
    j["results"] = results;
    j["notes"] = notes;
    j["duration_seconds"] = duration_seconds;
    return j;
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.config = j.at("config");
    for (const auto& f : j.at("files"))
        m.files.push_back({f.at("path").get<std::string>(), f.at("kind").get<std::string>(),
                           f.at("sha256").get<std::string>(), f.at("bytes").get<std::uintmax_t>()});
    m.spectrum = j.at("spectrum");
    m.results = j.at("results");
    m.notes = j.at("notes").get<std::vector<std::string>>();
    m.duration_seconds = j.at("duration_seconds").get<double>();
    return m;
}

nlohmann::ordered_json spectrum_summary(const DegeneracySpectrum<double>& ds) {
    nlohmann::ordered_json j;
    j["size"] = ds.total();
    j["distinct_levels"] = ds.size();
    j["top_degeneracies"] = nlohmann::ordered_json::array();
    const auto ranked = ds.by_degeneracy();
    for (std::size_t i = 0; i < std::min<std::size_t>(3, ranked.size()); ++i)
        j["top_degeneracies"].push_back({{"energy", ranked[i].energy}, {"degeneracy", ranked[i].degeneracy}});
    return j;
}

void write_manifest(const std::filesystem::path& dir, const RunManifest& m) {
    const auto path = dir / "manifest.json";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << m.to_json().dump(2) << '\n';
    out.close();
    if (!out) throw OutputError("cannot write '" + path.string() + "'");
}

RunManifest read_manifest(const std::filesystem::path& dir) {
    std::ifstream in(dir / "manifest.json", std::ios::binary);
    if (!in) throw OutputError("cannot read manifest in '" + dir.string() + "'");
    return RunManifest::from_json(nlohmann::json::parse(in));
}

} // namespace ctqw::cli
