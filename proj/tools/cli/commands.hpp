#ifndef CTQW_CLI_COMMANDS_HPP
#define CTQW_CLI_COMMANDS_HPP

#include <string>
#include <string_view>

#include "cli/config.hpp"
#include "cli/manifest.hpp"

namespace ctqw::cli {

// Every command writes its artifacts and manifest.json into config.out and
// returns the manifest it wrote.

/// network.edges, spectrum.csv and levels.csv.
RunManifest cmd_generate(const ScenarioConfig& config);

/// Time series for the requested observables, plus fits and closed forms.
RunManifest cmd_transport(const ScenarioConfig& config);

/// lta.json (and lta_pairwise.csv on request) with the efficiency verdict.
RunManifest cmd_lta(const ScenarioConfig& config);

enum class FigureId { fig1, fig2, fig3, fig4 };
FigureId parse_figure(std::string_view name);
std::string_view figure_name(FigureId id);

/// Fixed scenarios: ring N=1000, star N=51, arm star 50x2, dendrimer G=10.
/// Only config.out and config.grid (the quantum-series grid) are used.
RunManifest cmd_figure(FigureId which, const ScenarioConfig& config);

/// "efficient" when chi_avg_lower <= c / N.
std::string efficiency_verdict(double chi_avg_lower, Eigen::Index n, double c);

/// Pearson correlation of two equally long samples.
double pearson_correlation(const VectorX<double>& a, const VectorX<double>& b);

} // namespace ctqw::cli

#endif // CTQW_CLI_COMMANDS_HPP
