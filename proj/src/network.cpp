#include "ctqw/network.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>

#include "ctqw/errors.hpp"

namespace ctqw {

std::string_view family_name(Family family) {
    switch (family) {
    case Family::ring: return "ring";
    case Family::star: return "star";
    case Family::arm_star: return "arm_star";
    case Family::dendrimer: return "dendrimer";
    case Family::custom: return "custom";
    }
    return "custom";
}

Family parse_family(std::string_view name) {
    for (Family f : {Family::ring, Family::star, Family::arm_star, Family::dendrimer, Family::custom}) {
        if (family_name(f) == name) return f;
    }
    if (name == "arm-star") return Family::arm_star;
    throw InvalidParameter("unknown network family '" + std::string(name) + "'");
}

Network::Network(int n_nodes, std::vector<Edge> edges, Family family, FamilyParams params)
    : n_nodes_(n_nodes), edges_(std::move(edges)), family_(family), params_(params) {
    if (n_nodes_ < 1) throw InvalidParameter("network needs at least one node");

    for (auto& e : edges_) {
        if (e.first == e.second)
            throw InvalidParameter("self-loop at node " + std::to_string(e.first));
        if (e.first > e.second) std::swap(e.first, e.second);
        if (e.first < 1 || e.second > n_nodes_)
            throw InvalidParameter("edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                                   ") outside node range 1.." + std::to_string(n_nodes_));
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end())
        throw InvalidParameter("duplicate edge (" + std::to_string(dup->first) + "," +
                               std::to_string(dup->second) + ")");

    // breadth-first reachability from node 1
    const auto adj = adjacency();
    std::vector<char> seen(n_nodes_, 0);
    std::queue<int> frontier;
    seen[0] = 1;
    frontier.push(0);
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop();
        for (int w : adj[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                frontier.push(w);
            }
        }
    }
    auto missing = std::find(seen.begin(), seen.end(), 0);
    if (missing != seen.end()) throw ConnectivityError(static_cast<int>(missing - seen.begin()) + 1);
}

std::vector<int> Network::degrees() const {
    std::vector<int> f(n_nodes_, 0);
    for (const auto& e : edges_) {
        ++f[e.first - 1];
        ++f[e.second - 1];
    }
    return f;
}

std::vector<std::vector<int>> Network::adjacency() const {
    std::vector<std::vector<int>> adj(n_nodes_);
    for (const auto& e : edges_) {
        adj[e.first - 1].push_back(e.second - 1);
        adj[e.second - 1].push_back(e.first - 1);
    }
    return adj;
}

Network build_ring(int n) {
    if (n < 3) throw InvalidParameter("ring needs n >= 3, got " + std::to_string(n));
    std::vector<Edge> edges;
    edges.reserve(n);
    for (int i = 1; i < n; ++i) edges.push_back({i, i + 1});
    edges.push_back({1, n});
    return Network(n, std::move(edges), Family::ring, {.size = n});
}

Network build_star(int n) {
    if (n < 3) throw InvalidParameter("star needs n >= 3, got " + std::to_string(n));
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (int leaf = 2; leaf <= n; ++leaf) edges.push_back({1, leaf});
    return Network(n, std::move(edges), Family::star, {.size = n});
}

Network build_arm_star(int arms, int arm_length) {
    if (arms < 2) throw InvalidParameter("arm star needs arms >= 2, got " + std::to_string(arms));
    if (arm_length < 1)
        throw InvalidParameter("arm star needs arm_length >= 1, got " + std::to_string(arm_length));
    const int n = arms * arm_length + 1;
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    int next = 2;
    for (int a = 0; a < arms; ++a) {
        int prev = 1;
        for (int k = 0; k < arm_length; ++k) {
            edges.push_back({prev, next});
            prev = next++;
        }
    }
    return Network(n, std::move(edges), Family::arm_star,
                   {.size = n, .arms = arms, .arm_length = arm_length});
}

int dendrimer_size(int generations) {
    if (generations < 1 || generations > 28)
        throw InvalidParameter("dendrimer generations must be in [1, 28], got " +
                               std::to_string(generations));
    return 3 * (1 << generations) - 2;
}

Network build_dendrimer(int generations) {
    const int n = dendrimer_size(generations);
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    // breadth-first numbering: core is 1, generation g follows generation g-1
    std::vector<int> shell{1};
    int next = 2;
    for (int g = 1; g <= generations; ++g) {
        const int branching = (g == 1) ? 3 : 2;
        std::vector<int> outer;
        outer.reserve(shell.size() * branching);
        for (int parent : shell) {
            for (int b = 0; b < branching; ++b) {
                edges.push_back({parent, next});
                outer.push_back(next++);
            }
        }
        shell = std::move(outer);
    }
    return Network(n, std::move(edges), Family::dendrimer, {.size = n, .generations = generations});
}

std::vector<int> shell_sizes(const Network& net, int root) {
    if (root < 1 || root > net.size()) throw InvalidParameter("root node out of range");
    const auto adj = net.adjacency();
    std::vector<int> dist(net.size(), -1);
    std::queue<int> frontier;
    dist[root - 1] = 0;
    frontier.push(root - 1);
    std::vector<int> sizes;
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop();
        if (dist[v] >= static_cast<int>(sizes.size())) sizes.push_back(0);
        ++sizes[dist[v]];
        for (int w : adj[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                frontier.push(w);
            }
        }
    }
    return sizes;
}

namespace {

bool skippable(const std::string& line) {
    auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

} // namespace

Network load_adjacency(std::istream& in) {
    std::string line;
    int line_no = 0;
    int n = -1;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        std::istringstream fields(line);
        if (n < 0) {
            if (!(fields >> n) || n < 1) throw ParseError("expected positive node count", line_no);
        } else {
            Edge e;
            if (!(fields >> e.first >> e.second)) throw ParseError("expected \"i j\"", line_no);
            if (e.first < 1 || e.second < 1 || e.first > n || e.second > n)
                throw ParseError("node index outside 1.." + std::to_string(n), line_no);
            edges.push_back(e);
        }
        std::string rest;
        if (fields >> rest) throw ParseError("trailing token '" + rest + "'", line_no);
    }
    if (n < 0) throw ParseError("empty edge list", line_no);
    FamilyParams params;
    params.size = n;
    return Network(n, std::move(edges), Family::custom, params);
}

void write_edge_list(std::ostream& out, const Network& net) {
    out << "# " << family_name(net.family()) << '\n' << net.size() << '\n';
    for (const auto& e : net.edges()) out << e.first << ' ' << e.second << '\n';
}

} // namespace ctqw
