#include "cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ctqw/errors.hpp"
#include "cli/manifest.hpp"
#include "ctqw/io.hpp"

namespace ctqw::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream ss(text);
    while (std::getline(ss, part, sep)) parts.push_back(part);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

template <typename T>
T parse_number(const std::string& field, const std::string& what) {
    T x{};
    auto res = std::from_chars(field.data(), field.data() + field.size(), x);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw InvalidParameter("bad number '" + field + "' in " + what);
    return x;
}

void require_unset(const std::optional<int>& value, const char* flag, const std::string& source) {
    if (value) throw InvalidParameter(std::string(flag) + " does not apply to " + source);
}

void require_set(const std::optional<int>& value, const char* flag, const std::string& source) {
    if (!value) throw InvalidParameter(source + " needs " + flag);
}

} // namespace

std::string GridSpec::str() const {
    return std::string(kind == GridKind::linear ? "lin" : "log") + ":" + io::format_double(t_min) + ":" +
           io::format_double(t_max) + ":" + std::to_string(points);
}

GridSpec parse_grid_spec(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 4) throw InvalidParameter("grid must be <lin|log>:<t_min>:<t_max>:<points>, got '" + text + "'");
    GridSpec g;
    if (parts[0] == "lin")
        g.kind = GridKind::linear;
    else if (parts[0] == "log")
        g.kind = GridKind::logarithmic;
    else
        throw InvalidParameter("grid kind must be lin or log, got '" + parts[0] + "'");
    g.t_min = parse_number<double>(parts[1], "grid");
    g.t_max = parse_number<double>(parts[2], "grid");
    g.points = parse_number<long>(parts[3], "grid");
    g.grid(); // validates
    return g;
}

std::pair<double, double> parse_window(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) throw InvalidParameter("window must be <t_lo>:<t_hi>, got '" + text + "'");
    const double lo = parse_number<double>(parts[0], "window"), hi = parse_number<double>(parts[1], "window");
    if (!(lo > 0 && lo < hi)) throw InvalidParameter("window needs 0 < t_lo < t_hi, got '" + text + "'");
    return {lo, hi};
}

bool ScenarioConfig::wants(const std::string& observable) const {
    return std::find(observables.begin(), observables.end(), observable) != observables.end();
}

void validate(const ScenarioConfig& config) {
    if (config.observables.empty()) throw InvalidParameter("at least one observable must be requested");
    for (const auto& o : config.observables)
        if (std::find(known_observables().begin(), known_observables().end(), o) == known_observables().end())
            throw InvalidParameter("unknown observable '" + o + "'");
    if (!(config.efficiency_constant > 0)) throw InvalidParameter("efficiency constant must be positive");
    if (config.out.empty()) throw InvalidParameter("output directory must not be empty");
}

ResolvedNetwork resolve_network(const ScenarioConfig& config) {
    if (config.edges) {
        if (config.family && parse_family(*config.family) != Family::custom)
            throw InvalidParameter("--edges conflicts with --family " + *config.family);
        const std::string source = "an edge-list network";
        require_unset(config.size, "--size", source);
        require_unset(config.arms, "--arms", source);
        require_unset(config.arm_length, "--arm-length", source);
        require_unset(config.generations, "--generations", source);
        std::ifstream in(*config.edges, std::ios::binary);
        if (!in) throw InvalidParameter("cannot open edge list '" + *config.edges + "'");
        std::ostringstream bytes;
        bytes << in.rdbuf();
        std::istringstream text(bytes.str());
        return {load_adjacency(text), sha256_hex(bytes.str())};
    }
    if (!config.family) throw InvalidParameter("no network given: use --family or --edges");

    const Family family = parse_family(*config.family);
    const std::string source = std::string(family_name(family));
    switch (family) {
    case Family::ring:
    case Family::star:
        require_set(config.size, "--size", source);
        require_unset(config.arms, "--arms", source);
        require_unset(config.arm_length, "--arm-length", source);
        require_unset(config.generations, "--generations", source);
        return {family == Family::ring ? build_ring(*config.size) : build_star(*config.size), std::nullopt};
    case Family::arm_star:
        require_set(config.arms, "--arms", source);
        require_set(config.arm_length, "--arm-length", source);
        require_unset(config.size, "--size", source);
        require_unset(config.generations, "--generations", source);
        return {build_arm_star(*config.arms, *config.arm_length), std::nullopt};
    case Family::dendrimer:
        require_set(config.generations, "--generations", source);
        require_unset(config.size, "--size", source);
        require_unset(config.arms, "--arms", source);
        require_unset(config.arm_length, "--arm-length", source);
        return {build_dendrimer(*config.generations), std::nullopt};
    case Family::custom:
        break;
    }
    throw InvalidParameter("family custom needs --edges");
}

nlohmann::ordered_json echo(const ScenarioConfig& config) {
    nlohmann::ordered_json j;
    if (config.family) j["family"] = *config.family;
    if (config.size) j["size"] = *config.size;
    if (config.arms) j["arms"] = *config.arms;
    if (config.arm_length) j["arm_length"] = *config.arm_length;
    if (config.generations) j["generations"] = *config.generations;
    if (config.edges) j["edges"] = *config.edges;
    j["observables"] = config.observables;
    if (config.grid) j["grid"] = config.grid->str();
    j["out"] = config.out;
    j["efficiency_constant"] = config.efficiency_constant;
    j["eigenvectors"] = config.eigenvectors;
    j["pairwise"] = config.pairwise;
    j["fit_window"] = {config.fit_window.first, config.fit_window.second};
    return j;
}

} // namespace ctqw::cli
