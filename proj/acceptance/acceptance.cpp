// Acceptance suite: one [PASS]/[FAIL] line per criterion, with the measured
// quantity and its tolerance on indented sub-lines. Exit status is nonzero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "ctqw/ctqw.hpp"
#include "oracles.hpp"

using namespace ctqw;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::vector<std::pair<bool, std::string>> checks;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.first) return false;
        return !checks.empty();
    }

    template <typename... Args>
    void check(bool ok, const char* fmt, Args... args) {
        char buf[512];
        std::snprintf(buf, sizeof(buf), fmt, args...);
        checks.emplace_back(ok, buf);
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Analysis {
    Spectrum<double> s;
    DegeneracySpectrum<double> ds;
};

Analysis analyze(const Network& net, Eigenvectors mode = Eigenvectors::compute) {
    auto s = eigendecompose(hamiltonian(net), mode);
    auto ds = cluster_degeneracies(s);
    return {std::move(s), std::move(ds)};
}

double max_abs_diff(const VectorX<double>& a, const VectorX<double>& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Long-time mean over [4 tc, 14 tc], tc the interference time of the lower
// bound or, when there is none, the slowest beat period.
double long_time(const Analysis& a, const TimeSeries<double>& bound, bool full) {
    double tc;
    try {
        tc = interference_time_estimate(bound);
    } catch (const NoPlateau&) {
        tc = slowest_period(a.ds);
    }
    const auto window = long_time_window(tc);
    const auto grid = default_quantum_grid(a.ds.levels().back().energy, window.first, window.second);
    return long_time_mean(full ? quantum_avg_return(a.s, grid) : quantum_lower_bound(a.ds, grid), window);
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("ctqw_acceptance_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

cli::RunManifest figure(cli::FigureId id) {
    cli::ScenarioConfig c;
    c.out = scratch(std::string(cli::figure_name(id))).string();
    return cli::cmd_figure(id, c);
}

Criterion ring_exactness() {
    Criterion c{1, "ring: full average return equals its lower bound", {}};
    for (int n : {5, 100, 1000}) {
        const auto a = analyze(build_ring(n));
        const auto grid = TimeGrid<double>::linear(0.0, 100.0, 2000);
        const double d = max_abs_diff(quantum_avg_return(a.s, grid).values, quantum_lower_bound(a.ds, grid).values);
        c.check(d <= 1e-10, "N=%d: max |pi - |alpha|^2| = %.3e (<= 1e-10) over 2000 points on [0,100]", n, d);
    }
    return c;
}

Criterion ring_scaling() {
    Criterion c{2, "ring N=1000: envelope exponents on [10,100]", {}};
    const auto a = analyze(build_ring(1000), Eigenvectors::skip);
    const double classical =
        fit_envelope_exponent(classical_avg_return(a.ds, default_classical_grid()), 10.0, 100.0).exponent;
    const double bound =
        fit_envelope_exponent(quantum_lower_bound(a.ds, default_quantum_grid(4.0, 0.0, 120.0)), 10.0, 100.0).exponent;
    c.check(std::abs(classical + 0.5) <= 0.05, "classical exponent %.5f (-0.5 +- 0.05)", classical);
    c.check(std::abs(bound + 1.0) <= 0.1, "lower-bound exponent %.5f (-1.0 +- 0.1)", bound);
    const auto m = figure(cli::FigureId::fig1);
    const double fig = m.results["fits"]["classical_avg_return"]["exponent"].get<double>();
    c.check(std::abs(fig + 0.5) <= 0.05, "fig1 manifest classical exponent %.5f (-0.5 +- 0.05)", fig);
    return c;
}

Criterion ring_lta() {
    Criterion c{3, "ring long-time averages", {}};
    {
        const int n = 1000;
        const auto a = analyze(build_ring(n), Eigenvectors::skip);
        const auto bound = quantum_lower_bound(a.ds, default_quantum_grid(4.0, 2000.0, 20000.0));
        const double avg = time_average(bound, 2000.0, 20000.0);
        const double expected = (2.0 * n - 2) / (double(n) * n);
        const double rel = std::abs(avg - expected) / expected;
        c.check(rel <= 0.05, "N=1000: mean |alpha|^2 on [2000,20000] = %.6e vs (2N-2)/N^2 = %.6e, rel %.2e (<= 5%%)",
                avg, expected, rel);
    }
    for (int n : {5, 6}) {
        const double exact = lta_avg_exact(analyze(build_ring(n)).s);
        // odd rings carry one extra unpaired level
        const double expected = (n % 2 ? 2.0 * n - 1 : 2.0 * n - 2) / (double(n) * n);
        const double rel = std::abs(exact - expected) / expected;
        c.check(rel <= 0.01, "N=%d: lta_avg_exact = %.12f vs %s = %.12f, rel %.2e (<= 1%%)", n, exact,
                n % 2 ? "(2N-1)/N^2" : "(2N-2)/N^2", expected, rel);
    }
    return c;
}

Criterion star_spectrum() {
    Criterion c{4, "star N=51 spectrum", {}};
    const auto a = analyze(build_star(51), Eigenvectors::skip);
    const auto expected = analytic_star_spectrum<double>(51);
    bool same = a.ds.size() == expected.size();
    double err = 0;
    for (std::size_t i = 0; same && i < a.ds.size(); ++i) {
        same = a.ds.levels()[i].degeneracy == expected.levels()[i].degeneracy;
        err = std::max(err, std::abs(a.ds.levels()[i].energy - expected.levels()[i].energy));
    }
    c.check(same && err <= 1e-9, "levels {(0,1),(1,49),(51,1)}: structure %s, max energy error %.3e (<= 1e-9)",
            same ? "matches" : "differs", err);
    const double top = a.ds.levels().back().energy;
    const bool is_n = std::abs(top - 51) < std::abs(top - 49);
    c.check(is_n, "largest eigenvalue %.15f resolves to %s (N = 51, N-2 = 49)", top, is_n ? "N" : "N-2");
    return c;
}

Criterion star_inefficiency() {
    Criterion c{5, "star N=51 transport", {}};
    const int n = 51;
    const auto a = analyze(build_star(n));
    const auto bound = quantum_lower_bound(a.ds, default_quantum_grid(51.0, 0.0, 100.0));
    const double floor = star_dominant_term(n) - 0.02;
    const double mean_bound = long_time(a, bound, false);
    const double mean_full = long_time(a, bound, true);
    c.check(mean_bound >= floor && mean_bound <= 1.0, "long-time mean |alpha|^2 = %.6f in [%.6f, 1]", mean_bound, floor);
    c.check(mean_full >= 0.9, "long-time mean pi = %.6f (>= 0.9)", mean_full);
    const double p = classical_avg_return(a.ds, TimeGrid<double>::linear(1e5, 1e5 + 1, 2)).values(0);
    c.check(std::abs(p - 1.0 / n) <= 1e-6, "classical p(1e5) = %.12f vs 1/51 = %.12f (+- 1e-6)", p, 1.0 / n);
    const auto m = figure(cli::FigureId::fig2);
    const double fig = m.results["long_time_mean"]["lower_bound"].get<double>();
    c.check(fig >= 0.9, "fig2 manifest long-time mean |alpha|^2 = %.6f (>= 0.9)", fig);
    return c;
}

Criterion arm_star() {
    Criterion c{6, "arm star 50 x 2 (N=101)", {}};
    const auto a = analyze(build_arm_star(50, 2), Eigenvectors::skip);
    const double r5 = std::sqrt(5.0);
    for (double e : {(3 - r5) / 2, (3 + r5) / 2}) {
        const auto* l = a.ds.find(e, 1e-9);
        c.check(l && l->degeneracy == 49, "level %.12f: degeneracy %d (== 49)", e, l ? l->degeneracy : 0);
    }
    const auto grid = TimeGrid<double>::linear(0.0, 50.0, 200001);
    const auto bound = quantum_lower_bound(a.ds, grid);
    const double dev = max_abs_diff(closed_form_arm_star(101, grid).values, bound.values);
    c.check(dev <= 0.1, "max |(1 + cos sqrt5 t)/2 - |alpha|^2| on [0,50] = %.5f (<= 0.1)", dev);
    const double lo = bound.values.minCoeff(), hi = bound.values.maxCoeff();
    c.check(lo <= 0.05 && hi >= 0.95, "|alpha|^2 range on [0,50]: min %.3e (<= 0.05), max %.6f (>= 0.95)", lo, hi);
    return c;
}

Criterion dendrimer() {
    Criterion c{7, "dendrimer G=10", {}};
    const auto t0 = Clock::now();
    const auto net = build_dendrimer(10);
    const auto s = eigendecompose(hamiltonian(net), Eigenvectors::skip);
    const double elapsed = seconds_since(t0);
    const Analysis a{s, cluster_degeneracies(s)};
    c.check(net.size() == 3070, "N = %d (== 3070)", net.size());
    c.check(elapsed < 60.0, "3070 x 3070 eigendecomposition (eigenvalues) took %.1f s (< 60 s)", elapsed);

    const auto top = a.ds.by_degeneracy();
    const double r3 = std::sqrt(3.0);
    for (double e : {1.0, 2 - r3, 2 + r3}) {
        bool found = false;
        for (std::size_t i = 0; i < 3 && i < top.size(); ++i) found = found || std::abs(top[i].energy - e) <= 1e-8;
        const auto* l = a.ds.find(e, 1e-8);
        c.check(found, "eigenvalue %.12f among the three most degenerate levels (degeneracy %d)", e,
                l ? l->degeneracy : 0);
    }

    const auto grid = default_quantum_grid(a.ds.levels().back().energy, 0.0, 50.0);
    const auto bound = quantum_lower_bound(a.ds, grid);
    const double mean = long_time(a, bound, false);
    c.check(mean >= 0.15 && mean <= 0.25, "long-time mean |alpha|^2 = %.5f in [0.15, 0.25] (infinite-time value %.5f)",
            mean, lta_avg_lower_bound(a.ds));
    const auto approx = closed_form_dendrimer(10, a.ds, grid);
    const double r = cli::pearson_correlation(approx.series.values, bound.values);
    c.check(r >= 0.9, "Pearson correlation of the three-level form with |alpha|^2 on [0,50] = %.4f (>= 0.9)", r);
    const auto m = figure(cli::FigureId::fig4);
    const double fig = m.results["long_time_mean"]["lower_bound"].get<double>();
    c.check(fig >= 0.15 && fig <= 0.25, "fig4 manifest long-time mean |alpha|^2 = %.5f in [0.15, 0.25]", fig);
    return c;
}

std::vector<Network> random_instances() {
    std::mt19937_64 rng(20240611);
    std::vector<Network> nets;
    std::uniform_int_distribution<int> pick(0, 4);
    while (nets.size() < 20) {
        switch (pick(rng)) {
        case 0: nets.push_back(build_ring(std::uniform_int_distribution<int>(3, 20)(rng))); break;
        case 1: nets.push_back(build_star(std::uniform_int_distribution<int>(3, 20)(rng))); break;
        case 2: {
            const int arms = std::uniform_int_distribution<int>(2, 6)(rng);
            const int len = std::uniform_int_distribution<int>(1, 19 / arms)(rng);
            nets.push_back(build_arm_star(arms, len));
            break;
        }
        case 3: nets.push_back(build_dendrimer(std::uniform_int_distribution<int>(1, 2)(rng))); break;
        default: {
            const int n = std::uniform_int_distribution<int>(2, 20)(rng);
            nets.push_back(oracle::random_connected(n, std::uniform_int_distribution<int>(0, n)(rng), rng));
        }
        }
    }
    return nets;
}

Criterion oracle_equivalence() {
    Criterion c{8, "spectral propagation vs direct matrix exponential (20 random instances, N <= 20)", {}};
    double worst_q = 0, worst_c = 0, worst_u = 0, worst_s = 0;
    int max_n = 0;
    for (const auto& net : random_instances()) {
        const auto a = analyze(net);
        const int n = net.size();
        max_n = std::max(max_n, n);
        for (double t : {0.0, 0.37, 2.5, 11.0}) {
            const auto u = oracle::quantum_propagator(net, t);
            const auto p = oracle::classical_propagator(net, t);
            for (int k = 1; k <= n; ++k)
                for (int j = 1; j <= n; ++j) {
                    worst_q = std::max(worst_q, std::abs(pairwise_transition(a.s, k, j, t) - std::norm(u(k - 1, j - 1))));
                    worst_c = std::max(worst_c, std::abs(classical_pairwise(a.s, k, j, t) - p(k - 1, j - 1)));
                }
            const MatrixX<double> us = quantum_propagator(a.s, t).cwiseAbs2();
            const MatrixX<double> cs = classical_propagator(a.s, t);
            worst_u = std::max(worst_u, (us.colwise().sum().array() - 1.0).abs().maxCoeff());
            worst_s = std::max(worst_s, (cs.colwise().sum().array() - 1.0).abs().maxCoeff());
        }
    }
    c.check(max_n <= 20, "largest instance N = %d (<= 20)", max_n);
    c.check(worst_q <= 1e-8, "max |pi_kj - |expm(-iHt)_kj|^2| = %.3e (<= 1e-8)", worst_q);
    c.check(worst_c <= 1e-8, "max |p_kj - expm(-Ht)_kj| = %.3e (<= 1e-8)", worst_c);
    c.check(worst_u <= 1e-9, "max |sum_k pi_kj - 1| = %.3e (<= 1e-9)", worst_u);
    c.check(worst_s <= 1e-9, "max |sum_k p_kj - 1| = %.3e (<= 1e-9)", worst_s);
    return c;
}

Criterion bound_ordering() {
    Criterion c{9, "bound ordering on every tested network", {}};
    auto nets = random_instances();
    for (auto&& extra : {build_ring(5), build_ring(100), build_star(51), build_arm_star(50, 2), build_dendrimer(4)})
        nets.push_back(extra);
    double pair_slack = INFINITY, avg_slack = INFINITY, lta_slack = INFINITY;
    for (const auto& net : nets) {
        const auto a = analyze(net);
        const double n = net.size();
        pair_slack = std::min(pair_slack, lta_pairwise(a.s, a.ds).minCoeff() - 1.0 / (n * n));
        const auto grid = default_quantum_grid(a.ds.levels().back().energy, 0.0, 30.0);
        avg_slack = std::min(avg_slack,
                             (quantum_avg_return(a.s, grid).values - quantum_lower_bound(a.ds, grid).values).minCoeff());
        lta_slack = std::min(lta_slack, lta_avg_exact(a.s, a.ds) - lta_avg_lower_bound(a.ds));
    }
    c.check(pair_slack >= -1e-10, "%zu networks: min (chi_kj - 1/N^2) = %.3e (>= -1e-10)", nets.size(), pair_slack);
    c.check(avg_slack >= -1e-10, "min (pi - |alpha|^2) over t in [0,30] = %.3e (>= -1e-10)", avg_slack);
    c.check(lta_slack >= -1e-10, "min (chi_exact - chi_lower) = %.3e (>= -1e-10)", lta_slack);
    return c;
}

Criterion gauge_invariance() {
    Criterion c{10, "rotations inside degenerate clusters", {}};
    std::mt19937_64 rng(7);
    double worst_lta = 0, worst_avg = 0;
    int rotated = 0;
    for (const auto& net : {build_star(51), build_arm_star(50, 2), build_ring(100), build_dendrimer(4)}) {
        const auto a = analyze(net);
        auto r = a.s;
        for (const auto& l : a.ds.levels()) {
            if (l.degeneracy < 2) continue;
            ++rotated;
            auto block = r.eigenvectors.middleCols(l.offset, l.degeneracy);
            block = (block * oracle::random_orthogonal(l.degeneracy, rng)).eval();
        }
        const auto grid = default_quantum_grid(a.ds.levels().back().energy, 0.0, 20.0);
        worst_lta = std::max(worst_lta, std::abs(lta_avg_exact(a.s, a.ds) - lta_avg_exact(r, a.ds)));
        worst_avg = std::max(worst_avg, max_abs_diff(quantum_avg_return(a.s, grid).values,
                                                     quantum_avg_return(r, grid).values));
    }
    c.check(worst_lta <= 1e-9, "%d clusters rotated: max change of lta_avg_exact = %.3e (<= 1e-9)", rotated, worst_lta);
    c.check(worst_avg <= 1e-9, "max change of pi over t in [0,20] = %.3e (<= 1e-9)", worst_avg);
    return c;
}

} // namespace

int main() {
    const std::vector<std::function<Criterion()>> suite{ring_exactness, ring_scaling, ring_lta,      star_spectrum,
                                                        star_inefficiency, arm_star, dendrimer,   oracle_equivalence,
                                                        bound_ordering,  gauge_invariance};
    int failed = 0;
    for (const auto& run : suite) {
        const auto t0 = Clock::now();
        Criterion c;
        try {
            c = run();
        } catch (const std::exception& e) {
            c.check(false, "threw: %s", e.what());
        }
        failed += !c.passed();
        std::printf("[%s] %d. %s (%.1f s)\n", c.passed() ? "PASS" : "FAIL", c.id, c.title.c_str(), seconds_since(t0));
        for (const auto& [ok, line] : c.checks) std::printf("    %s %s\n", ok ? "ok  " : "FAIL", line.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", int(suite.size()) - failed, suite.size());
    return failed ? 1 : 0;
}
