#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "ctqw/analytic.hpp"
#include "ctqw/envelope.hpp"
#include "ctqw/transport.hpp"
#include "oracles.hpp"

using namespace ctqw;

namespace {

struct Decomposed {
    Network net;
    Spectrum<double> s;
    DegeneracySpectrum<double> ds;
};

Decomposed decompose(const Network& net) {
    auto s = eigendecompose(hamiltonian(net));
    auto ds = cluster_degeneracies(s);
    return {net, std::move(s), std::move(ds)};
}

std::vector<Network> zoo() {
    std::mt19937_64 rng(7);
    return {build_ring(5),        build_ring(6),         build_ring(100),     build_star(5),
            build_star(51),       build_arm_star(3, 2),  build_arm_star(50, 2), build_arm_star(4, 3),
            build_dendrimer(2),   build_dendrimer(4),    oracle::random_connected(12, 6, rng),
            Network(6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}})};
}

double star_classical(int n, double t) {
    return (1.0 + (n - 2) * std::exp(-t) + std::exp(-n * t)) / n;
}

double star_bound(int n, double t) {
    using C = std::complex<double>;
    const C z = 1.0 + double(n - 2) * std::exp(C(0, -t)) + std::exp(C(0, -double(n) * t));
    return std::norm(z) / (double(n) * n);
}

} // namespace

TEST_CASE("classical average return") {
    const auto grid = default_classical_grid();
    for (const auto& net : zoo()) {
        const auto d = decompose(net);
        const auto p = classical_avg_return(d.ds, grid);
        const auto at0 = classical_avg_return(d.ds, TimeGrid<double>::linear(0, 1, 2));
        CHECK(at0.values(0) == doctest::Approx(1.0).epsilon(1e-15));
        for (Eigen::Index i = 1; i < p.size(); ++i) CHECK(p.values(i) <= p.values(i - 1));
        CHECK(std::abs(p.values(p.size() - 1) - 1.0 / net.size()) <= 1e-12);
    }

    // numeric star spectrum against the substituted closed form with top level N
    const auto star = decompose(build_star(51));
    const auto p = classical_avg_return(star.ds, TimeGrid<double>::logarithmic(1e-3, 1e3, 400));
    for (Eigen::Index i = 0; i < p.size(); ++i) CHECK(std::abs(p.values(i) - star_classical(51, p.times(i))) <= 1e-12);

    const auto late = classical_avg_return(star.ds, TimeGrid<double>::linear(1e5 - 1, 1e5, 2));
    CHECK(std::abs(late.values(1) - 1.0 / 51) <= 1e-6);
}

TEST_CASE("quantum lower bound") {
    const auto star = decompose(build_star(51));
    const auto grid = default_quantum_grid(51.0, 0.0, 30.0);
    const auto b = quantum_lower_bound(star.ds, grid);
    CHECK(b.values(0) == doctest::Approx(1.0).epsilon(1e-15));
    for (Eigen::Index i = 0; i < b.size(); ++i) {
        CHECK(std::abs(b.values(i) - star_bound(51, b.times(i))) <= 1e-9);
        CHECK(b.values(i) >= 0.0);
        CHECK(b.values(i) <= 1.0 + 1e-14);
    }
}

TEST_CASE("ring lower bound settles near 2/N") {
    // N = 100 is even: the long-time value is (2N - 2) / N^2
    const auto ring = decompose(build_ring(100));
    const auto b = quantum_lower_bound(ring.ds, default_quantum_grid(4.0, 200.0, 4000.0));
    CHECK(time_average(b, 200.0, 4000.0) == doctest::Approx(198.0 / 10000).epsilon(0.05));
}

TEST_CASE("quantum average return") {
    for (const auto& net : zoo()) {
        const auto d = decompose(net);
        const auto grid = default_quantum_grid(d.s.max_energy(), 0.0, 20.0);
        const auto pi = quantum_avg_return(d.s, grid);
        const auto bound = quantum_lower_bound(d.ds, grid);
        CHECK(pi.values(0) == doctest::Approx(1.0).epsilon(1e-12));
        for (Eigen::Index i = 0; i < pi.size(); ++i) {
            CHECK(pi.values(i) >= bound.values(i) - 1e-10);
            CHECK(pi.values(i) <= 1.0 + 1e-10);
        }
        if (net.family() == Family::ring)
            CHECK((pi.values - bound.values).cwiseAbs().maxCoeff() <= 1e-10);
    }

    const auto star = decompose(build_star(51));
    const auto pi = quantum_avg_return(star.s, default_quantum_grid(51.0, 0.0, 25.0));
    CHECK(pi.values.minCoeff() >= 0.85);

    Spectrum<double> values_only;
    values_only.eigenvalues = star.s.eigenvalues;
    CHECK_THROWS_AS(quantum_avg_return(values_only, default_quantum_grid(51.0, 0.0, 1.0)), InvalidParameter);
}

TEST_CASE("pairwise transition probabilities") {
    const auto path = decompose(Network(2, {{1, 2}}));
    for (double t : {0.0, 0.3, std::numbers::pi / 2, 2.0, 17.5}) {
        CHECK(pairwise_transition(path.s, 1, 2, t) == doctest::Approx(std::pow(std::sin(t), 2)).epsilon(1e-12));
        CHECK(classical_pairwise(path.s, 1, 2, t) == doctest::Approx((1 - std::exp(-2 * t)) / 2).epsilon(1e-12));
    }
    CHECK(std::abs(pairwise_transition(path.s, 1, 2, std::numbers::pi / 2) - 1.0) < 1e-12);

    const auto d = decompose(build_arm_star(4, 3));
    for (int k = 1; k <= d.s.size(); ++k) {
        CHECK(pairwise_transition(d.s, k, k, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(classical_pairwise(d.s, k, k, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
        for (int j = 1; j <= d.s.size(); ++j) {
            if (j != k) CHECK(std::abs(pairwise_transition(d.s, k, j, 0.0)) < 1e-12);
            CHECK(pairwise_transition(d.s, k, j, 1.7) == doctest::Approx(pairwise_transition(d.s, j, k, 1.7)));
        }
    }
    CHECK_THROWS_AS(pairwise_transition(d.s, 0, 1, 1.0), InvalidParameter);
    CHECK_THROWS_AS(classical_pairwise(d.s, 1, 14, 1.0), InvalidParameter);
}

TEST_CASE("unitarity and stochasticity") {
    for (const auto& net : zoo()) {
        const auto d = decompose(net);
        for (double t : {0.1, 1.0, 7.3, 150.0}) {
            const auto u = quantum_propagator(d.s, t);
            const Eigen::MatrixXd pi = u.cwiseAbs2();
            CHECK((pi.colwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-9);
            const auto p = classical_propagator(d.s, t);
            CHECK((p.colwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-9);
            CHECK(p.minCoeff() >= -1e-12);
        }
    }
}

TEST_CASE("spectral propagation matches direct matrix exponentiation") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> time(0.0, 10.0);
    const std::vector<Network> nets{build_ring(9), build_star(11), build_arm_star(3, 4), build_dendrimer(2),
                                    oracle::random_connected(15, 10, rng)};
    for (const auto& net : nets) {
        const auto d = decompose(net);
        for (int rep = 0; rep < 3; ++rep) {
            const double t = time(rng);
            const Eigen::MatrixXd pi_direct = oracle::quantum_propagator(net, t).cwiseAbs2();
            const Eigen::MatrixXd p_direct = oracle::classical_propagator(net, t);
            for (int k = 1; k <= net.size(); ++k)
                for (int j = 1; j <= net.size(); ++j) {
                    CHECK(std::abs(pairwise_transition(d.s, k, j, t) - pi_direct(k - 1, j - 1)) <= 1e-8);
                    CHECK(std::abs(classical_pairwise(d.s, k, j, t) - p_direct(k - 1, j - 1)) <= 1e-8);
                }
        }
    }
}

TEST_CASE("pairwise long-time averages") {
    const auto path = decompose(Network(2, {{1, 2}}));
    const auto chi2 = lta_pairwise(path.s, path.ds);
    CHECK((chi2.array() - 0.5).abs().maxCoeff() < 1e-12);

    for (const auto& net : zoo()) {
        const auto d = decompose(net);
        const auto chi = lta_pairwise(d.s, d.ds);
        const double n = net.size();
        CHECK(chi.minCoeff() >= 1.0 / (n * n) - 1e-10);
        CHECK((chi.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-8);
        CHECK((chi - chi.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    }

    // core-to-leaf entry of the 5-node star against a brute-force time average
    const auto star = decompose(build_star(5));
    const double chi_core_leaf = lta_pairwise(star.s, star.ds)(0, 1);
    const double dt = 0.01;
    const double avg_half = oracle::time_averaged_transition(star.net, 1, 2, 5e3, dt);
    const double avg_full = oracle::time_averaged_transition(star.net, 1, 2, 1e4, dt);
    CHECK(std::abs(avg_full - avg_half) < 1e-3);
    CHECK(chi_core_leaf == doctest::Approx(avg_full).epsilon(1e-3));

    CHECK_THROWS_AS(lta_pairwise(star.s, decompose(build_star(6)).ds), SpectrumMismatch);
}

TEST_CASE("averaged long-time average") {
    const auto path = decompose(Network(2, {{1, 2}}));
    CHECK(lta_avg_exact(path.s) == doctest::Approx(0.5));

    CHECK(lta_avg_exact(decompose(build_ring(5)).s) == doctest::Approx(9.0 / 25));
    CHECK(lta_avg_exact(decompose(build_ring(6)).s) == doctest::Approx(10.0 / 36));

    const auto star = decompose(build_star(51));
    CHECK(lta_avg_exact(star.s, star.ds) >= 49.0 * 49.0 / (51.0 * 51.0));

    for (const auto& net : zoo()) {
        const auto d = decompose(net);
        const double exact = lta_avg_exact(d.s, d.ds);
        const double lower = lta_avg_lower_bound(d.ds);
        CHECK(exact >= lower - 1e-10);
        CHECK(lower >= 1.0 / net.size() - 1e-15);
        CHECK(exact <= 1.0 + 1e-12);
    }
}

TEST_CASE("averaged long-time average equals the time average of the return probability") {
    std::mt19937_64 rng(99);
    for (const auto& net : {build_star(7), build_arm_star(3, 2), build_dendrimer(2), build_ring(8),
                            oracle::random_connected(9, 4, rng)}) {
        const auto d = decompose(net);
        const auto pi = quantum_avg_return(d.s, default_quantum_grid(d.s.max_energy(), 0.0, 4000.0));
        CHECK(time_average(pi, 0.0, 4000.0) == doctest::Approx(lta_avg_exact(d.s, d.ds)).epsilon(0.01));
    }
}

TEST_CASE("lower bound of the long-time average") {
    // path graphs have simple spectra
    const auto path = decompose(Network(6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}}));
    CHECK(path.ds.size() == 6);
    CHECK(lta_avg_lower_bound(path.ds) == doctest::Approx(1.0 / 6));
    CHECK(lta_avg_exact(path.s, path.ds) == doctest::Approx(eigenvector_fourth_moment(path.s)).epsilon(1e-12));

    CHECK(lta_avg_lower_bound(decompose(build_star(51)).ds) == doctest::Approx(2403.0 / 2601));
    CHECK(lta_avg_lower_bound(analytic_star_spectrum(51)) == doctest::Approx(2403.0 / 2601));
    CHECK(lta_avg_lower_bound(decompose(build_arm_star(50, 2)).ds) == doctest::Approx(4805.0 / 10201));
}

TEST_CASE("observables do not depend on the basis inside degenerate eigenspaces") {
    std::mt19937_64 rng(31337);
    for (const auto& net : {build_star(51), build_arm_star(50, 2), build_ring(100), build_dendrimer(4)}) {
        const auto d = decompose(net);
        auto rotated = d.s;
        for (const auto& l : d.ds.levels()) {
            if (l.degeneracy < 2) continue;
            auto block = rotated.eigenvectors.middleCols(l.offset, l.degeneracy);
            block = (block * oracle::random_orthogonal(l.degeneracy, rng)).eval();
        }
        CHECK((rotated.eigenvectors - d.s.eigenvectors).cwiseAbs().maxCoeff() > 1e-3);

        CHECK(std::abs(lta_avg_exact(rotated, d.ds) - lta_avg_exact(d.s, d.ds)) <= 1e-9);
        CHECK((lta_pairwise(rotated, d.ds) - lta_pairwise(d.s, d.ds)).cwiseAbs().maxCoeff() <= 1e-9);
        const auto grid = default_quantum_grid(d.s.max_energy(), 0.0, 50.0);
        CHECK((quantum_avg_return(rotated, grid).values - quantum_avg_return(d.s, grid).values).cwiseAbs().maxCoeff() <=
              1e-9);
    }
}

TEST_CASE("per-eigenvector form is basis dependent on degenerate spectra") {
    const auto star = decompose(build_star(51));
    const auto r = lta_report(star.s, star.ds, true);
    CHECK(r.degenerate_clusters);
    CHECK(r.chi_pairwise.has_value());
    CHECK(r.equipartition == doctest::Approx(1.0 / 51));
    CHECK(r.chi_avg_exact >= r.chi_avg_lower);
    CHECK(r.fourth_moment < r.chi_avg_exact);
}

TEST_CASE("arm star with unit arms reproduces the star") {
    const auto star = decompose(build_star(9));
    const auto arms = decompose(build_arm_star(8, 1));
    const auto grid = default_quantum_grid(9.0, 0.0, 10.0);
    CHECK(quantum_avg_return(star.s, grid).values == quantum_avg_return(arms.s, grid).values);
    CHECK(quantum_lower_bound(star.ds, grid).values == quantum_lower_bound(arms.ds, grid).values);
    CHECK(classical_avg_return(star.ds, grid).values == classical_avg_return(arms.ds, grid).values);
    CHECK(lta_avg_exact(star.s, star.ds) == lta_avg_exact(arms.s, arms.ds));
}
