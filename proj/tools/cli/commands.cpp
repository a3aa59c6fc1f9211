#include "cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>

#include "ctqw/ctqw.hpp"
#include "ctqw/io.hpp"

namespace ctqw::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct Analysis {
    Network net;
    Spectrum<double> s;
    DegeneracySpectrum<double> ds;
};

Analysis analyze(Network net, bool vectors) {
    auto s = eigendecompose(hamiltonian(net), vectors ? Eigenvectors::compute : Eigenvectors::skip);
    auto ds = cluster_degeneracies(s);
    return {std::move(net), std::move(s), std::move(ds)};
}

class Run {
public:
    Run(std::string command, const ScenarioConfig& config)
        : start_(Clock::now()), writer_(config.out) {
        manifest_.command = std::move(command);
        manifest_.config = echo(config);
    }

    ArtifactWriter& writer() { return writer_; }
    RunManifest& manifest() { return manifest_; }

    void series(const std::string& name, const TimeSeries<double>& ts) {
        writer_.write(name, "series", [&](std::ostream& out) { io::write_series_csv(out, ts); });
    }

    void network_files(const Analysis& a, bool with_eigenvectors) {
        writer_.write("network.edges", "edges", [&](std::ostream& out) { write_edge_list(out, a.net); });
        writer_.write("spectrum.csv", "spectrum",
                      [&](std::ostream& out) { io::write_spectrum_csv(out, a.s, with_eigenvectors); });
        levels(a);
    }

    void levels(const Analysis& a) {
        writer_.write("levels.csv", "levels", [&](std::ostream& out) { io::write_levels_csv(out, a.ds); });
        manifest_.spectrum = spectrum_summary(a.ds);
    }

    RunManifest finish() {
        manifest_.files = writer_.artifacts();
        manifest_.duration_seconds = std::chrono::duration<double>(Clock::now() - start_).count();
        write_manifest(writer_.dir(), manifest_);
        return manifest_;
    }

private:
    Clock::time_point start_;
    ArtifactWriter writer_;
    RunManifest manifest_;
};

json fit_json(const ScalingFit<double>& f) {
    return {{"exponent", f.exponent}, {"prefactor", f.prefactor}, {"t_lo", f.t_lo},
            {"t_hi", f.t_hi},         {"residual", f.residual},   {"points", f.points}};
}

// Family-specific checks reported alongside every run.
void network_report(const Analysis& a, RunManifest& m) {
    const auto n = a.net.size();
    if (a.net.family() == Family::star) {
        const double top = a.ds.levels().back().energy;
        const int closer = std::abs(top - double(n)) <= std::abs(top - double(n - 2)) ? n : n - 2;
        m.results["star_largest_eigenvalue"] = {{"numeric", top}, {"N", n}, {"N_minus_2", n - 2}, {"matches", closer}};
        m.notes.push_back("star largest eigenvalue is " + io::format_double(top) + ", i.e. N = " + std::to_string(n) +
                          " rather than N-2 = " + std::to_string(n - 2) +
                          "; the third exponential of the star closed forms uses N");
    }
    if (a.net.family() == Family::dendrimer) {
        const auto report = dendrimer_degeneracy_check(a.ds, a.net.params().generations);
        json checks = json::array();
        for (const auto& c : report.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        m.results["dendrimer_check"] = {{"passed", report.passed()},
                                        {"nondegenerate_levels", report.nondegenerate_levels},
                                        {"degeneracy_one", report.degeneracy_one},
                                        {"degeneracy_lower", report.degeneracy_lower},
                                        {"degeneracy_upper", report.degeneracy_upper},
                                        {"checks", checks}};
    }
}

// The family's closed-form lower-bound approximant, if it has one.
std::optional<TimeSeries<double>> closed_form(const Analysis& a, const TimeGrid<double>& grid, RunManifest& m) {
    const auto& p = a.net.params();
    switch (a.net.family()) {
    case Family::star: return closed_form_star(a.net.size(), grid).second;
    case Family::arm_star:
        if (p.arm_length == 2) return closed_form_arm_star(a.net.size(), grid);
        break;
    case Family::dendrimer:
        if (p.generations > 3) {
            auto approx = closed_form_dendrimer(p.generations, a.ds, grid);
            m.results["closed_form_normalization"] = approx.normalization;
            m.results["closed_form_degeneracy"] = approx.degeneracy;
            if (approx.warning) m.notes.push_back(*approx.warning);
            return std::move(approx.series);
        }
        break;
    default: break;
    }
    m.notes.push_back("no closed-form approximant for this network");
    return std::nullopt;
}

TimeGrid<double> quantum_grid(const ScenarioConfig& config, const Analysis& a, double t_max) {
    return config.grid ? config.grid->grid() : default_quantum_grid(a.ds.levels().back().energy, 0.0, t_max);
}

// Interference time of the lower bound when it shows one, else the slowest
// beat period of the spectrum.
std::pair<double, std::string> characteristic_time(const TimeSeries<double>& bound, const Analysis& a) {
    try {
        return {interference_time_estimate(bound), "interference_time"};
    } catch (const NoPlateau&) {
        return {slowest_period(a.ds), "slowest_period"};
    }
}

// Long-time means of the lower bound (and the full average when eigenvectors
// exist) over [4 tc, 14 tc].
void long_time_report(const TimeSeries<double>& bound, const Analysis& a, RunManifest& m) {
    const auto [tc, source] = characteristic_time(bound, a);
    const auto window = long_time_window(tc);
    const auto grid = default_quantum_grid(a.ds.levels().back().energy, window.first, window.second);
    json means{{"lower_bound", long_time_mean(quantum_lower_bound(a.ds, grid), window)}};
    if (a.s.has_eigenvectors()) means["quantum_avg_return"] = long_time_mean(quantum_avg_return(a.s, grid), window);
    m.results["characteristic_time"] = {{"value", tc}, {"source", source}};
    m.results["long_time_window"] = {window.first, window.second};
    m.results["long_time_mean"] = means;
    m.results["lta_avg_lower"] = lta_avg_lower_bound(a.ds);
}

// Samples of a series restricted to [lo, hi].
VectorX<double> restrict(const TimeSeries<double>& ts, double lo, double hi) {
    std::vector<double> v;
    for (Eigen::Index i = 0; i < ts.size(); ++i)
        if (ts.times(i) >= lo && ts.times(i) <= hi) v.push_back(ts.values(i));
    return Eigen::Map<VectorX<double>>(v.data(), static_cast<Eigen::Index>(v.size()));
}

TimeSeries<double> reference_slope(const TimeGrid<double>& grid, double exponent, double anchor) {
    TimeSeries<double> ts(grid, Observable::approximant, "reference slope");
    for (Eigen::Index i = 0; i < ts.size(); ++i) ts.values(i) = anchor * std::pow(ts.times(i) / 10.0, exponent);
    return ts;
}

RunManifest figure_ring(const ScenarioConfig& config) {
    Run run("figure fig1", config);
    auto& m = run.manifest();
    const auto a = analyze(build_ring(1000), false);
    run.levels(a);

    const auto classical = classical_avg_return(a.ds, default_classical_grid());
    const auto bound = quantum_lower_bound(a.ds, quantum_grid(config, a, 10000.0));
    const auto fc = fit_envelope_exponent(classical, config.fit_window.first, config.fit_window.second);
    const auto fq = fit_envelope_exponent(bound, config.fit_window.first, config.fit_window.second);
    run.series("classical_avg_return.csv", classical);
    run.series("lower_bound.csv", bound);
    run.series("reference_slope_half.csv", reference_slope(classical.grid, -0.5, fc(10.0)));
    run.series("reference_slope_one.csv", reference_slope(classical.grid, -1.0, fq(10.0)));
    m.results["fits"] = {{"classical_avg_return", fit_json(fc)}, {"lower_bound", fit_json(fq)}};
    long_time_report(bound, a, m);
    return run.finish();
}

RunManifest figure_star(const ScenarioConfig& config) {
    Run run("figure fig2", config);
    auto& m = run.manifest();
    const auto a = analyze(build_star(51), true);
    run.levels(a);
    network_report(a, m);

    const auto grid = quantum_grid(config, a, 100.0);
    const auto bound = quantum_lower_bound(a.ds, grid);
    run.series("classical_avg_return.csv", classical_avg_return(a.ds, default_classical_grid()));
    run.series("quantum_avg_return.csv", quantum_avg_return(a.s, grid));
    run.series("lower_bound.csv", bound);
    m.results["classical_at_1e5"] = classical_avg_return(a.ds, TimeGrid<double>::linear(1e5, 1e5 + 1, 2)).values(0);
    m.results["dominant_term"] = star_dominant_term(51);
    long_time_report(bound, a, m);
    return run.finish();
}

RunManifest figure_arm_star(const ScenarioConfig& config) {
    Run run("figure fig3", config);
    auto& m = run.manifest();
    const auto a = analyze(build_arm_star(50, 2), true);
    run.levels(a);

    const auto grid = quantum_grid(config, a, 50.0);
    const auto bound = quantum_lower_bound(a.ds, grid);
    const auto approx = closed_form_arm_star(a.net.size(), grid);
    run.series("classical_avg_return.csv", classical_avg_return(a.ds, default_classical_grid()));
    run.series("quantum_avg_return.csv", quantum_avg_return(a.s, grid));
    run.series("lower_bound.csv", bound);
    run.series("closed_form.csv", approx);

    const double lo = grid[0], hi = std::min(50.0, grid[grid.n_points() - 1]);
    const VectorX<double> b = restrict(bound, lo, hi);
    m.results["closed_form_max_deviation"] = (restrict(approx, lo, hi) - b).cwiseAbs().maxCoeff();
    m.results["deviation_window"] = {lo, hi};
    m.results["lower_bound_min"] = b.minCoeff();
    m.results["lower_bound_max"] = b.maxCoeff();
    const double r5 = std::sqrt(5.0);
    json levels = json::array();
    for (double e : {(3 - r5) / 2, (3 + r5) / 2}) {
        const auto* l = a.ds.find(e, 1e-9);
        levels.push_back({{"energy", e}, {"degeneracy", l ? l->degeneracy : 0}});
    }
    m.results["golden_levels"] = levels;
    long_time_report(bound, a, m);
    return run.finish();
}

RunManifest figure_dendrimer(const ScenarioConfig& config) {
    Run run("figure fig4", config);
    auto& m = run.manifest();
    const auto a = analyze(build_dendrimer(10), false);
    run.levels(a);
    network_report(a, m);

    const auto grid = quantum_grid(config, a, 50.0);
    const auto bound = quantum_lower_bound(a.ds, grid);
    const auto approx = closed_form(a, grid, m);
    run.series("classical_avg_return.csv", classical_avg_return(a.ds, default_classical_grid()));
    run.series("lower_bound.csv", bound);
    run.series("closed_form.csv", *approx);
    const double lo = grid[0], hi = std::min(50.0, grid[grid.n_points() - 1]);
    m.results["closed_form_correlation"] = pearson_correlation(restrict(*approx, lo, hi), restrict(bound, lo, hi));
    m.results["correlation_window"] = {lo, hi};
    long_time_report(bound, a, m);
    return run.finish();
}

} // namespace

std::string efficiency_verdict(double chi_avg_lower, Eigen::Index n, double c) {
    return chi_avg_lower <= c / double(n) ? "efficient" : "inefficient";
}

double pearson_correlation(const VectorX<double>& a, const VectorX<double>& b) {
    if (a.size() != b.size() || a.size() < 2) throw InsufficientData("correlation needs two equal samples of size >= 2");
    const VectorX<double> x = a.array() - a.mean();
    const VectorX<double> y = b.array() - b.mean();
    const double denom = x.norm() * y.norm();
    if (!(denom > 0)) throw InsufficientData("correlation undefined for a constant sample");
    return x.dot(y) / denom;
}

RunManifest cmd_generate(const ScenarioConfig& config) {
    auto [net, checksum] = resolve_network(config);
    Run run("generate", config);
    auto& m = run.manifest();
    if (checksum) m.config["edges_sha256"] = *checksum;
    const auto a = analyze(std::move(net), config.eigenvectors);
    run.network_files(a, config.eigenvectors);
    network_report(a, m);
    return run.finish();
}

RunManifest cmd_transport(const ScenarioConfig& config) {
    validate(config);
    auto [net, checksum] = resolve_network(config);
    Run run("transport", config);
    auto& m = run.manifest();
    if (checksum) m.config["edges_sha256"] = *checksum;
    const auto a = analyze(std::move(net), config.wants("quantum") || config.wants("lta"));
    run.levels(a);
    network_report(a, m);

    const auto qgrid = quantum_grid(config, a, 100.0);
    std::vector<std::pair<std::string, TimeSeries<double>>> written;
    if (config.wants("classical"))
        written.emplace_back("classical_avg_return", classical_avg_return(a.ds, config.grid ? qgrid : default_classical_grid()));
    if (config.wants("quantum")) written.emplace_back("quantum_avg_return", quantum_avg_return(a.s, qgrid));
    if (config.wants("lower_bound")) written.emplace_back("lower_bound", quantum_lower_bound(a.ds, qgrid));
    for (const auto& [name, ts] : written) run.series(name + ".csv", ts);
    if (config.wants("closed_form"))
        if (auto approx = closed_form(a, qgrid, m)) run.series("closed_form.csv", *approx);

    if (config.wants("fits")) {
        json fits = json::object();
        for (const auto& [name, ts] : written)
            fits[name] = fit_json(fit_envelope_exponent(ts, config.fit_window.first, config.fit_window.second));
        m.results["fits"] = fits;
    }
    if (config.wants("lta")) {
        const auto r = lta_report(a.s, a.ds, false);
        run.writer().write("lta.json", "lta", [&](std::ostream& out) { io::write_lta_report(out, r); });
        m.results["verdict"] = efficiency_verdict(r.chi_avg_lower, a.s.size(), config.efficiency_constant);
    }
    return run.finish();
}

RunManifest cmd_lta(const ScenarioConfig& config) {
    if (!(config.efficiency_constant > 0)) throw InvalidParameter("efficiency constant must be positive");
    auto [net, checksum] = resolve_network(config);
    Run run("lta", config);
    auto& m = run.manifest();
    if (checksum) m.config["edges_sha256"] = *checksum;
    const auto a = analyze(std::move(net), true);
    run.levels(a);
    network_report(a, m);

    const auto r = lta_report(a.s, a.ds, config.pairwise);
    std::optional<std::string> pairwise_file;
    if (r.chi_pairwise) {
        pairwise_file = "lta_pairwise.csv";
        run.writer().write(*pairwise_file, "matrix", [&](std::ostream& out) { io::write_matrix_csv(out, *r.chi_pairwise); });
    }
    run.writer().write("lta.json", "lta", [&](std::ostream& out) { io::write_lta_report(out, r, pairwise_file); });

    const auto n = a.s.size();
    const double threshold = config.efficiency_constant / double(n);
    m.results["chi_avg_exact"] = r.chi_avg_exact;
    m.results["chi_avg_lower"] = r.chi_avg_lower;
    m.results["equipartition"] = r.equipartition;
    m.results["fourth_moment"] = r.fourth_moment;
    m.results["degenerate_clusters"] = r.degenerate_clusters;
    m.results["efficiency_constant"] = config.efficiency_constant;
    m.results["threshold"] = threshold;
    m.results["comparison"] = "chi_avg_lower = " + io::format_double(r.chi_avg_lower) + " vs equipartition 1/N = " +
                              io::format_double(r.equipartition) + " (ratio " +
                              io::format_double(r.chi_avg_lower / r.equipartition) + ", threshold c/N = " +
                              io::format_double(threshold) + ")";
    m.results["verdict"] = efficiency_verdict(r.chi_avg_lower, n, config.efficiency_constant);
    return run.finish();
}

FigureId parse_figure(std::string_view name) {
    if (name == "fig1") return FigureId::fig1;
    if (name == "fig2") return FigureId::fig2;
    if (name == "fig3") return FigureId::fig3;
    if (name == "fig4") return FigureId::fig4;
    throw InvalidParameter("unknown figure '" + std::string(name) + "', expected fig1..fig4");
}

std::string_view figure_name(FigureId id) {
    switch (id) {
    case FigureId::fig1: return "fig1";
    case FigureId::fig2: return "fig2";
    case FigureId::fig3: return "fig3";
    case FigureId::fig4: return "fig4";
    }
    return "fig1";
}

RunManifest cmd_figure(FigureId which, const ScenarioConfig& config) {
    if (config.has_network()) throw InvalidParameter("figure scenarios fix their own network; drop the network flags");
    switch (which) {
    case FigureId::fig1: return figure_ring(config);
    case FigureId::fig2: return figure_star(config);
    case FigureId::fig3: return figure_arm_star(config);
    case FigureId::fig4: return figure_dendrimer(config);
    }
    throw InvalidParameter("unknown figure");
}

} // namespace ctqw::cli
