#pragma once

#include <map>
#include <vector>

#include "quademb/embedding.hpp"

namespace quademb {

// Ordinary voltage graph over Z_k. The plus direction of every edge is its
// stored endpoint order (end0 -> end1).
struct VoltageGraph {
    Embedding base;
    int group_order = 1;            // k >= 1
    std::vector<int> assignment;    // edge id -> element of Z_k

    void validate() const;
};

// One step of a walk: edge id plus whether it is traversed in the plus
// direction.
struct WalkStep {
    int edge = -1;
    bool forward = true;
};

// Sum of +/- voltages along the walk; start_vertex anchors continuity checks
// (loops and parallel edges make endpoints ambiguous otherwise).
int total_voltage(const VoltageGraph& vg, int start_vertex, const std::vector<WalkStep>& walk);

// Total voltage of a traced face walk.
int face_total_voltage(const VoltageGraph& vg, const FaceWalk& f);

// The k-fold covering: vertices (u, a), edge (e, a) from (u, a) to
// (v, a + alpha(e)); rotations via the natural dart bijection; signatures
// inherited.
Embedding derived_embedding(const VoltageGraph& vg);

// Derived vertex / edge naming helpers.
std::string derived_vertex_label(const std::string& base_label, int a);
int derived_edge_id(const VoltageGraph& vg, int base_edge, int a);

struct LiftPrediction {
    std::map<int, int> face_degrees;  // degree -> count
    int face_count = 0;
    bool orientable = true;
};

// Face structure of the derived embedding predicted from the base: a face of
// degree d whose boundary voltage has order r lifts to k/r faces of degree
// d*r. The derived embedding is nonorientable iff the base is nonorientable
// and some orientation-reversing closed walk has total voltage 0.
LiftPrediction predict_lift(const VoltageGraph& vg);

// ".vlt" text format: "voltages <k>" then one "v <edge-id> <value>" per edge.
std::string encode_vlt(const VoltageGraph& vg);
// Attaches to an existing embedding by edge id.
VoltageGraph decode_vlt(const std::string& text, const Embedding& base);

}  // namespace quademb
