#pragma once

#include <random>

#include "quademb/embedding.hpp"

namespace quademb::testing {

// Cycle graph embedded in the sphere: two faces, both of degree n.
inline Embedding embed_cycle_planar(int n) {
    Embedding e;
    e.graph = Graph::cycle(n);
    e.signatures.assign(n, 1);
    e.rotations.assign(n, {});
    for (int eid = 0; eid < n; ++eid) {
        e.rotations[e.graph.endpoints(eid)[0]].push_back(make_dart(eid, 0));
        e.rotations[e.graph.endpoints(eid)[1]].push_back(make_dart(eid, 1));
    }
    e.validate();
    return e;
}

// One vertex, one loop.
inline Embedding embed_single_loop(int signature) {
    Embedding e;
    e.graph = Graph({"0"}, {{0, 0}});
    e.signatures = {signature};
    e.rotations = {{make_dart(0, 0), make_dart(0, 1)}};
    e.validate();
    return e;
}

// Bouquet of two interleaved loops at one vertex (the torus bouquet).
inline Embedding embed_bouquet_two_loops() {
    Embedding e;
    e.graph = Graph({"0"}, {{0, 0}, {0, 0}});
    e.signatures = {1, 1};
    e.rotations = {{make_dart(0, 0), make_dart(1, 0), make_dart(0, 1), make_dart(1, 1)}};
    e.validate();
    return e;
}

// K4 drawn in the plane: vertex 3 in the middle of triangle 0-1-2.
inline Embedding embed_k4_planar() {
    Embedding e;
    e.graph = Graph::complete(4);
    // edges: 0={0,1} 1={0,2} 2={0,3} 3={1,2} 4={1,3} 5={2,3}
    e.signatures.assign(6, 1);
    e.rotations.assign(4, {});
    e.rotations[0] = {make_dart(0, 0), make_dart(2, 0), make_dart(1, 0)};
    e.rotations[1] = {make_dart(0, 1), make_dart(3, 0), make_dart(4, 0)};
    e.rotations[2] = {make_dart(1, 1), make_dart(5, 0), make_dart(3, 1)};
    e.rotations[3] = {make_dart(2, 1), make_dart(4, 1), make_dart(5, 1)};
    e.validate();
    return e;
}

// Random valid scheme over a random multigraph: any rotation order and any
// signatures form a legal embedding.
inline Embedding random_embedding(std::mt19937& rng, int max_vertices = 6, int max_edges = 10,
                                  bool allow_negative = true) {
    std::uniform_int_distribution<int> nd(1, max_vertices);
    int n = nd(rng);
    std::uniform_int_distribution<int> md(n - 1 > 0 ? n - 1 : 1, max_edges);
    int m = md(rng);
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(atom_label(i));
    std::vector<std::array<int, 2>> edges;
    std::uniform_int_distribution<int> vd(0, n - 1);
    for (int i = 0; i < m; ++i) edges.push_back({vd(rng), vd(rng)});
    Embedding e;
    e.graph = Graph(labels, edges);
    e.signatures.clear();
    std::uniform_int_distribution<int> sd(0, 1);
    for (int i = 0; i < m; ++i)
        e.signatures.push_back(allow_negative && sd(rng) ? -1 : 1);
    e.rotations.assign(n, {});
    for (int eid = 0; eid < m; ++eid) {
        e.rotations[e.graph.endpoints(eid)[0]].push_back(make_dart(eid, 0));
        e.rotations[e.graph.endpoints(eid)[1]].push_back(make_dart(eid, 1));
    }
    for (auto& rot : e.rotations) std::shuffle(rot.begin(), rot.end(), rng);
    e.validate();
    return e;
}

}  // namespace quademb::testing
