#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quademb/graph.hpp"

namespace quademb {

// A dart is one end of an edge: id = 2 * edge + end. A loop contributes both
// of its darts to the same vertex's rotation.
using Dart = int;

inline Dart make_dart(int edge, int end) { return 2 * edge + end; }
inline int dart_edge(Dart d) { return d / 2; }
inline int dart_end(Dart d) { return d % 2; }
inline Dart dart_mate(Dart d) { return d ^ 1; }

// Embedding scheme: a rotation (cyclic dart order) at each vertex plus a
// +1/-1 signature per edge. Values are immutable by convention; the editor
// operations below return new embeddings.
struct Embedding {
    Graph graph;
    std::vector<std::vector<Dart>> rotations;  // indexed like graph vertices
    std::vector<int> signatures;               // +1 or -1 per edge

    int dart_vertex(Dart d) const { return graph.endpoints(dart_edge(d))[dart_end(d)]; }

    // Throws on any scheme invariant violation (dart missing, duplicated, or
    // placed at the wrong vertex; bad signature values).
    void validate() const;

    // Value fingerprint; face handles are tied to it and go stale when the
    // embedding they were traced from differs.
    uint64_t fingerprint() const;

    Embedding relabeled(const std::unordered_map<std::string, std::string>& map) const;
    Embedding canonical_labels() const;  // relabel vertices to atoms 0..n-1

    bool operator==(const Embedding& o) const {
        return graph.same_labeled_graph(o.graph) && graph.labels() == o.graph.labels() &&
               graph.edges() == o.graph.edges() && rotations == o.rotations &&
               signatures == o.signatures;
    }
};

// One closed boundary walk. steps[i] = (dart traversed, orientation flag);
// the walk leaves vertex_at(i) along dart(i). Canonically rotated so that
// traced output is deterministic.
struct FaceWalk {
    uint64_t owner = 0;                     // fingerprint of the traced embedding
    std::vector<std::pair<Dart, int>> steps;

    int degree() const { return static_cast<int>(steps.size()); }
    Dart dart(int i) const { return steps[i].first; }
    int orientation(int i) const { return steps[i].second; }
    std::vector<int> edge_ids() const;
    // Tail vertex of each traversal, as graph indices / labels.
    std::vector<int> vertex_indices(const Embedding& e) const;
    std::vector<std::string> vertex_labels(const Embedding& e) const;
    bool contains_vertex(const Embedding& e, int v) const;
    std::string to_string(const Embedding& e) const;
};

// All boundary walks; every edge is traversed exactly twice across the
// result. Output order and per-walk rotation are canonical.
std::vector<FaceWalk> trace_faces(const Embedding& e);

struct OrientabilityResult {
    bool orientable = false;
    // Orientation-reversing cycle witness (edge ids) when nonorientable.
    std::vector<int> witness_cycle;
};

// Signature balance test over a spanning forest; rotations do not matter.
OrientabilityResult orientability(const Embedding& e);

struct SurfaceId {
    int euler_characteristic = 2;
    bool orientable = true;
    std::string name;  // S_h or N_k

    static SurfaceId of(int chi, bool orientable);
};

struct SurfaceReport {
    bool connected = true;
    SurfaceId surface;                  // meaningful for connected embeddings
    std::vector<SurfaceId> components;  // one entry per component
    int total_chi = 0;
    bool all_orientable = true;
};

SurfaceReport surface_of(const Embedding& e);

struct QuadReport {
    bool pass = false;
    int face_count = 0;
    std::vector<FaceWalk> offending;
    bool simple = false;
    bool connected = false;
    bool edge_count_identity = false;  // m == 2n - 2*chi
    std::string summary;
};

// Quadrangularity: every face has degree 4 with four distinct vertices and
// four distinct edges, and the edge-count identity holds. Simplicity and
// connectivity additionally gate the verdict when expect_simple is set.
QuadReport verify_quadrangular(const Embedding& e, bool expect_simple);

// --- face-respecting editor ------------------------------------------------
//
// Each operation takes a face handle produced by trace_faces on the same
// embedding value; handles from any other value are rejected as stale.

struct SplitResult {
    Embedding embedding;
    int e1 = -1;  // side on the face listed first in canonical trace order
    int e2 = -1;
};

// Replace edge e by two parallel edges bounding a digon; each former face of
// e keeps exactly one side. e1 reuses e's id, e2 is appended.
SplitResult split_edge_into_digon(const Embedding& e, int edge);

struct DigonPairResult {
    Embedding embedding;
    int d1 = -1;  // bounds the triangle through the walk edges entering a / leaving b
    int d2 = -1;  // bounds the triangle on the a->b side of the walk
};

// Insert two parallel edges between opposite corners a, b of a quadrilateral
// face, leaving triangle + digon + triangle.
DigonPairResult insert_digon_pair_in_face(const Embedding& e, const FaceWalk& f,
                                          const std::string& a, const std::string& b);

struct LoopResult {
    Embedding embedding;
    int loop = -1;
};

// Insert a contractible loop at v inside f: a monogon plus the old face with
// degree one higher.
LoopResult insert_loop_in_face(const Embedding& e, const FaceWalk& f, const std::string& v);

// Collapse a digon bounded by parallel edges a, b to the single edge
// min(a, b). Inverse of split_edge_into_digon up to edge-id compaction.
Embedding replace_digon_by_single_edge(const Embedding& e, int a, int b);

struct Degree2Result {
    Embedding embedding;
    std::string new_vertex;
    int ea = -1;
    int eb = -1;
};

// New degree-2 vertex joined to two opposite corners of a quadrilateral;
// both new faces are quadrilaterals.
Degree2Result insert_degree2_vertex_in_face(const Embedding& e, const FaceWalk& f);

// --- ".emb" text format -----------------------------------------------------

std::string encode_emb(const Embedding& e);
Embedding decode_emb(const std::string& text);

// Face-degree multiset, e.g. {2: 3, 4: 6}.
std::map<int, int> face_degree_multiset(const std::vector<FaceWalk>& faces);

// Faces as canonical vertex-label cycles (min rotation/reflection), used to
// compare embeddings that differ only in edge numbering.
std::vector<std::vector<std::string>> face_label_cycles(const Embedding& e);

}  // namespace quademb
