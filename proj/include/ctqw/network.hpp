#ifndef CTQW_NETWORK_HPP
#define CTQW_NETWORK_HPP

#include <iosfwd>
#include <string_view>
#include <utility>
#include <vector>

namespace ctqw {

enum class Family { ring, star, arm_star, dendrimer, custom };

std::string_view family_name(Family family);
Family parse_family(std::string_view name);

struct FamilyParams {
    int size = 0;
    int arms = 0;
    int arm_length = 0;
    int generations = 0;

    bool operator==(const FamilyParams&) const = default;
};

/// Undirected bond between two 1-based node indices, stored with first < second.
struct Edge {
    int first = 0;
    int second = 0;

    auto operator<=>(const Edge&) const = default;
};

/// Connected, simple, undirected network on nodes 1..N.
///
/// The constructor validates everything (index range, self-loops, duplicates,
/// connectivity) so any Network that exists is a valid walk substrate. Edges
/// are kept normalized and sorted; node numbering is the one chosen by the
/// builder.
class Network {
public:
    Network(int n_nodes, std::vector<Edge> edges, Family family = Family::custom,
            FamilyParams params = {});

    int size() const noexcept { return n_nodes_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    Family family() const noexcept { return family_; }
    const FamilyParams& params() const noexcept { return params_; }

    /// Number of bonds f_i at every node, index 0 holds node 1.
    std::vector<int> degrees() const;

    /// Neighbour lists, 0-based.
    std::vector<std::vector<int>> adjacency() const;

    /// Same node count and edge set; the family tag is not compared.
    bool same_graph(const Network& other) const {
        return n_nodes_ == other.n_nodes_ && edges_ == other.edges_;
    }

private:
    int n_nodes_;
    std::vector<Edge> edges_;
    Family family_;
    FamilyParams params_;
};

Network build_ring(int n);
Network build_star(int n);
Network build_arm_star(int arms, int arm_length);
Network build_dendrimer(int generations);

/// Node count of the functionality-3 dendrimer, 3 * 2^G - 2.
int dendrimer_size(int generations);

/// Sizes of the breadth-first shells around `root` (1-based).
std::vector<int> shell_sizes(const Network& net, int root = 1);

/// Parses the edge-list text format: first line N, then "i j" per bond.
/// Blank lines and lines starting with '#' are skipped.
Network load_adjacency(std::istream& in);
void write_edge_list(std::ostream& out, const Network& net);

} // namespace ctqw

#endif // CTQW_NETWORK_HPP
