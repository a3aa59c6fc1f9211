#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ctqw/errors.hpp"
#include "ctqw/hamiltonian.hpp"
#include "ctqw/network.hpp"

using namespace ctqw;

namespace {

int degree_sum(const Network& net) {
    const auto f = net.degrees();
    return std::accumulate(f.begin(), f.end(), 0);
}

std::vector<int> sorted_degrees(const Network& net) {
    auto f = net.degrees();
    std::sort(f.begin(), f.end());
    return f;
}

} // namespace

TEST_CASE("ring") {
    const auto tri = build_ring(3);
    CHECK(tri.size() == 3);
    CHECK(tri.edges() == std::vector<Edge>{{1, 2}, {1, 3}, {2, 3}});
    CHECK(tri.family() == Family::ring);

    for (int n : {4, 17, 1000}) {
        const auto ring = build_ring(n);
        CHECK(ring.edges().size() == static_cast<std::size_t>(n));
        const auto f = ring.degrees();
        CHECK(std::all_of(f.begin(), f.end(), [](int d) { return d == 2; }));
    }
    CHECK_THROWS_AS(build_ring(2), InvalidParameter);
}

TEST_CASE("star") {
    const auto star = build_star(51);
    CHECK(star.size() == 51);
    CHECK(star.edges().size() == 50);
    const auto f = star.degrees();
    CHECK(f[0] == 50);
    CHECK(std::all_of(f.begin() + 1, f.end(), [](int d) { return d == 1; }));

    // the 3-node star is the 3-node path
    CHECK(build_star(3).edges() == std::vector<Edge>{{1, 2}, {1, 3}});
    CHECK_THROWS_AS(build_star(2), InvalidParameter);
}

TEST_CASE("arm star") {
    const auto fig3 = build_arm_star(50, 2);
    CHECK(fig3.size() == 101);
    CHECK(fig3.edges().size() == 100);
    CHECK(fig3.degrees()[0] == 50);
    // core first, then arm a occupies nodes 2a+2 (inner) and 2a+3 (outer)
    CHECK(fig3.edges()[0] == Edge{1, 2});
    CHECK(std::find(fig3.edges().begin(), fig3.edges().end(), Edge{2, 3}) != fig3.edges().end());

    for (int m : {2, 3, 10}) {
        const auto a = build_arm_star(m, 1);
        const auto s = build_star(m + 1);
        CHECK(a.same_graph(s));
        CHECK(sorted_degrees(a) == sorted_degrees(s));
    }
    CHECK_THROWS_AS(build_arm_star(1, 2), InvalidParameter);
    CHECK_THROWS_AS(build_arm_star(3, 0), InvalidParameter);
}

TEST_CASE("dendrimer") {
    CHECK(build_dendrimer(1).same_graph(build_star(4)));
    CHECK(build_dendrimer(10).size() == 3070);
    CHECK(shell_sizes(build_dendrimer(3)) == std::vector<int>{1, 3, 6, 12});

    for (int g = 1; g <= 12; ++g) {
        const auto d = build_dendrimer(g);
        CHECK(d.size() == 3 * (1 << g) - 2);
        const auto shells = shell_sizes(d);
        REQUIRE(shells.size() == static_cast<std::size_t>(g + 1));
        for (int k = 1; k <= g; ++k) CHECK(shells[k] == 3 * (1 << (k - 1)));

        const auto f = d.degrees();
        const int interior = d.size() - shells.back();
        CHECK(std::all_of(f.begin(), f.begin() + interior, [](int x) { return x == 3; }));
        CHECK(std::all_of(f.begin() + interior, f.end(), [](int x) { return x == 1; }));
    }
    CHECK_THROWS_AS(build_dendrimer(0), InvalidParameter);
}

TEST_CASE("degree sum is twice the edge count") {
    for (const auto& net : {build_ring(12), build_star(9), build_arm_star(4, 3), build_dendrimer(5)})
        CHECK(degree_sum(net) == 2 * static_cast<int>(net.edges().size()));
}

TEST_CASE("construction validates the graph") {
    CHECK_THROWS_AS(Network(3, {{1, 1}, {1, 2}, {2, 3}}), InvalidParameter);
    CHECK_THROWS_AS(Network(3, {{1, 2}, {2, 1}, {2, 3}}), InvalidParameter);
    CHECK_THROWS_AS(Network(3, {{1, 2}, {2, 4}}), InvalidParameter);
    try {
        Network(4, {{1, 2}, {3, 4}});
        FAIL("disconnected network accepted");
    } catch (const ConnectivityError& e) {
        CHECK(e.unreachable_node() == 3);
    }
    CHECK(Network(1, {}).size() == 1);
}

TEST_CASE("edge list parsing") {
    std::istringstream path("3\n1 2\n2 3");
    const auto net = load_adjacency(path);
    CHECK(net.size() == 3);
    CHECK(net.family() == Family::custom);
    CHECK(net.edges() == std::vector<Edge>{{1, 2}, {2, 3}});

    std::istringstream commented("# a ring\n4\n\n1 2\n2 3\n  # inner comment\n3 4\n1 4\n");
    CHECK(load_adjacency(commented).same_graph(build_ring(4)));

    std::stringstream round;
    write_edge_list(round, build_dendrimer(3));
    CHECK(load_adjacency(round).same_graph(build_dendrimer(3)));

    std::istringstream bad_token("3\n1 x\n");
    CHECK_THROWS_AS(load_adjacency(bad_token), ParseError);
    std::istringstream out_of_range("3\n1 4\n");
    CHECK_THROWS_AS(load_adjacency(out_of_range), ParseError);
    std::istringstream trailing("3\n1 2 3\n");
    CHECK_THROWS_AS(load_adjacency(trailing), ParseError);
    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(load_adjacency(empty), ParseError);
    std::istringstream split("4\n1 2\n3 4\n");
    CHECK_THROWS_AS(load_adjacency(split), ConnectivityError);
}

TEST_CASE("hamiltonian") {
    const auto h2 = hamiltonian(Network(2, {{1, 2}}));
    Eigen::Matrix2d expected;
    expected << 1, -1, -1, 1;
    CHECK(h2.matrix() == expected);

    const auto h5 = hamiltonian(build_star(5));
    CHECK(h5.matrix().diagonal() == Eigen::Vector<double, 5>(4, 1, 1, 1, 1));

    const auto h3 = hamiltonian(build_ring(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(h3(i, j) == (i == j ? 2.0 : -1.0));

    for (const auto& net : {build_ring(30), build_star(20), build_arm_star(5, 4), build_dendrimer(4)}) {
        const auto h = hamiltonian(net);
        const auto& m = h.matrix();
        CHECK(m == m.transpose());
        CHECK(m.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
        const auto f = net.degrees();
        for (int i = 0; i < net.size(); ++i) {
            CHECK(m(i, i) == f[i]);
            for (int j = 0; j < net.size(); ++j)
                if (i != j) CHECK((m(i, j) == 0.0 || m(i, j) == -1.0));
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() > -1e-12);
    }
}

TEST_CASE("hamiltonian in extended precision") {
    const auto h = hamiltonian<long double>(build_arm_star(3, 2));
    CHECK(h.matrix().rowwise().sum().cwiseAbs().maxCoeff() == 0.0L);
    CHECK(h.max_abs() == 3.0L);
}

TEST_CASE("family names") {
    for (Family f : {Family::ring, Family::star, Family::arm_star, Family::dendrimer, Family::custom})
        CHECK(parse_family(family_name(f)) == f);
    CHECK(parse_family("arm-star") == Family::arm_star);
    CHECK_THROWS_AS(parse_family("lattice"), InvalidParameter);
}
