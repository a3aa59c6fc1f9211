#ifndef CTQW_CLI_CONFIG_HPP
#define CTQW_CLI_CONFIG_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ctqw/network.hpp"
#include "ctqw/time_series.hpp"

namespace ctqw::cli {

/// "<lin|log>:<t_min>:<t_max>:<points>"
struct GridSpec {
    GridKind kind = GridKind::linear;
    double t_min = 0;
    double t_max = 0;
    Eigen::Index points = 0;

    TimeGrid<double> grid() const { return TimeGrid<double>(kind, t_min, t_max, points); }
    std::string str() const;
};

GridSpec parse_grid_spec(const std::string& text);
std::pair<double, double> parse_window(const std::string& text);

inline const std::vector<std::string>& known_observables() {
    static const std::vector<std::string> names{"classical", "quantum", "lower_bound", "lta", "closed_form", "fits"};
    return names;
}

struct ScenarioConfig {
    std::optional<std::string> family;
    std::optional<int> size;
    std::optional<int> arms;
    std::optional<int> arm_length;
    std::optional<int> generations;
    std::optional<std::string> edges;

    std::vector<std::string> observables;
    std::optional<GridSpec> grid;
    std::string out = "out";
    double efficiency_constant = 3.0;
    bool eigenvectors = false;
    bool pairwise = false;
    std::pair<double, double> fit_window{10.0, 100.0};

    bool has_network() const { return family || size || arms || arm_length || generations || edges; }
    bool wants(const std::string& observable) const;
};

/// Checks observables and the efficiency constant; throws InvalidParameter.
void validate(const ScenarioConfig& config);

struct ResolvedNetwork {
    Network network;
    std::optional<std::string> edges_sha256;
};

/// Builds the network named by the config. Exactly one source is allowed:
/// a generated family with its own parameters, or an edge-list file.
ResolvedNetwork resolve_network(const ScenarioConfig& config);

nlohmann::ordered_json echo(const ScenarioConfig& config);

} // namespace ctqw::cli

#endif // CTQW_CLI_CONFIG_HPP
