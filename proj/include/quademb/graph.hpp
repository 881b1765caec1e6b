#pragma once

#include <array>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace quademb {

// Vertex labels are plain strings, but structured values (pairs, poles) are
// encoded through the helpers below so pipeline outputs stay comparable by
// label. Tokens never contain whitespace.
std::string pair_label(const std::string& a, const std::string& b);
std::string atom_label(int value);

// East-to-check total order on labels: shorter first, then bytewise. Sorts
// numeric atoms numerically and keeps structured labels deterministic.
bool label_less(const std::string& a, const std::string& b);

// Labeled multigraph. Loops and parallel edges are allowed; edge ids are
// contiguous from 0. Vertices are kept sorted by label_less.
class Graph {
public:
    Graph() = default;
    Graph(std::vector<std::string> labels, std::vector<std::array<int, 2>> edges);

    int num_vertices() const { return static_cast<int>(labels_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    const std::string& label(int v) const { return labels_.at(v); }
    const std::vector<std::string>& labels() const { return labels_; }
    int index_of(const std::string& label) const;          // -1 when absent
    bool has_vertex(const std::string& label) const { return index_of(label) >= 0; }

    const std::array<int, 2>& endpoints(int e) const { return edges_.at(e); }
    const std::vector<std::array<int, 2>>& edges() const { return edges_; }
    bool is_loop(int e) const { return edges_.at(e)[0] == edges_.at(e)[1]; }

    int degree(int v) const;                                // loops count twice
    std::vector<int> incident_edges(int v) const;           // ascending edge id
    std::vector<int> neighbors(int v) const;                // sorted, deduplicated
    int find_edge(int u, int v) const;                      // least id, -1 when absent

    bool is_simple() const;
    bool is_connected() const;
    std::vector<int> component_of() const;                  // vertex -> component id

    // Structural equality on labels and unordered endpoint pairs (ids ignored).
    bool same_labeled_graph(const Graph& other) const;

    Graph relabeled(const std::unordered_map<std::string, std::string>& map) const;
    Graph canonical() const;                                // relabel to atoms 0..n-1

    static Graph complete(int n);
    static Graph complete_bipartite(int a, int b);
    static Graph cycle(int n);
    static Graph path(int n);
    static Graph edgeless(int n);
    static Graph from_edge_list(const std::vector<std::string>& labels,
                                const std::vector<std::array<std::string, 2>>& edges);

private:
    std::vector<std::string> labels_;
    std::vector<std::array<int, 2>> edges_;
    std::unordered_map<std::string, int> index_;

    void rebuild_index();
    void check_edges() const;
};

struct Matching {
    std::vector<int> edge_ids;   // ascending
    bool perfect = false;
};

// Lexicographic product G[H]: vertices V(G) x V(H), labels pair_label(g, h).
Graph composition(const Graph& g, const Graph& h);

// Disjoint union; label collisions are resolved by prefixing "0:" / "1:".
Graph disjoint_union(const Graph& g, const Graph& h);

// Disjoint union plus every cross edge.
Graph join(const Graph& g, const Graph& h);

// Deterministic: the perfect matching whose sorted edge-id list is
// lexicographically least. Backtracking; fine at the scales used here.
std::optional<Matching> find_perfect_matching(const Graph& g);

// Any cycle as a vertex sequence (loops and parallel pairs count in
// multigraphs). Deterministic. Empty optional on forests.
std::optional<std::vector<int>> find_cycle(const Graph& g);

// Edge ids of a vertex cycle, matching find_cycle output.
std::vector<int> cycle_edges(const Graph& g, const std::vector<int>& cycle);

// Replace edge e by a path of length two through one fresh vertex.
Graph subdivide_edge(const Graph& g, int e);

// ".g" text format: "graph <n> <m>" then m lines "e <id> <u> <v>".
// Vertices are inferred from the edge lines; isolated vertices are not
// representable in this format.
std::string encode_g(const Graph& g);
Graph decode_g(const std::string& text);

}  // namespace quademb
