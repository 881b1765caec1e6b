#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <unordered_map>

#include "quademb/embedding.hpp"
#include "quademb/search.hpp"
#include "quademb/voltage.hpp"

namespace quademb {

// Pole labels of the doubled vertex u in G[bar(K2)] constructions: north is
// (u,0), south is (u,1), matching the composition labels.
std::string north_label(const std::string& u);
std::string south_label(const std::string& u);

struct GraphicalSurfaceOptions {
    // Cyclic neighbor order per vertex; defaults to ascending label order.
    std::optional<std::unordered_map<std::string, std::vector<std::string>>> rotation;
    std::set<int> twisted_edges;  // G-edge ids carried by twisted tubes
};

// Quadrangular embedding of G[bar(K2)] on the (possibly twisted) sphere-and-
// tube surface of G. Every face is a 4-cycle (t_X u_N v_Y u_S); f = 2|E(G)|;
// twisted tubes carry signature -1 on all four tube edges.
Embedding graphical_surface_embedding(const Graph& g, const GraphicalSurfaceOptions& opts = {});

struct VoltageStageDiagnostics {
    std::map<int, int> predicted_degrees;
    std::map<int, int> traced_degrees;
    bool predicted_orientable = true;
    bool traced_orientable = true;
    bool agree() const {
        return predicted_degrees == traced_degrees && predicted_orientable == traced_orientable;
    }
};

struct MatchingGadgetInfo {
    int g_edge = -1;        // the matching edge uv of G
    std::string u, v;
    int h_edge = -1;        // chosen tube edge e = u_S v_N
    int e1 = -1, e2 = -1;   // digon sides of e; e1 on Q'_u, e2 on Q'_v
    int d1 = -1, d2 = -1;   // digon pair between u_N, u_S (voltages 0, 1)
    int d3 = -1, d4 = -1;   // digon pair between v_N, v_S (voltages 1, 0)
    int loop_uN = -1, loop_uS = -1, loop_vN = -1, loop_vS = -1;
};

struct CompositionK4Report {
    VoltageStageDiagnostics voltage;
    std::vector<MatchingGadgetInfo> gadgets;
    int split_digons = 0;
    int digons_replaced = 0;
    int twisted_g_edge = -1;  // -1 in the orientable mode
};

// The G[K4] pipeline: graphical surface, digon splits, alternating Z_2
// voltages, matching gadgets with the voltage swap, the Z_2 derived
// embedding, and digon-to-edge replacement. Verified at every stage.
Embedding composition_k4(const Graph& g, const Matching& matching, Orientation mode,
                         CompositionK4Report* report = nullptr);

struct DiamondAlignment {
    int offset = 0;
    bool reflect = false;
};

// Diamond sum at degree-k vertices: delete both, identify the neighbor
// cycles, splice rotations. Chi-additivity, orientability conjunction and
// quadrangularity preservation are asserted on every invocation.
Embedding diamond_sum(const Embedding& a, const std::string& va, const Embedding& b,
                      const std::string& vb,
                      std::optional<DiamondAlignment> alignment = std::nullopt);

struct DiamondSumAudit {
    uint64_t invocations = 0;
    uint64_t checks_passed = 0;
};
DiamondSumAudit diamond_sum_audit();
void reset_diamond_sum_audit();

// Quadrangular K_{6,q}: verified K_{6,3} base plus diamond-sum chaining,
// one new big-side vertex per step. chi = 6 - 2q.
Embedding k6q_embedding(int q, Orientation orientation);

// The verified K7+ quadrangulation in N_5 (n=8, m=22, f=11).
Embedding k7plus_embedding();

// Named base fixtures: "k4_projective" (3 hamilton-cycle faces, N_1) and
// "k5_torus" (n=5, m=10, f=5, S_1).
Embedding base_embedding(const std::string& name);

// One round of the diamond-sum extension: quadrangular K_n in, nonorientable
// quadrangular K_{n+4} out (canonical labels 0..n+3).
Embedding extend_by_four(const Embedding& phi);

// Top-level drivers. Orientable needs n = 0 (mod 8); nonorientable needs
// n = 0 (mod 4), or n = 1 (mod 4) with n >= 9.
Embedding complete_quadrangulation(int n, Orientation orientation,
                                   CompositionK4Report* report = nullptr);

// --- fixtures ----------------------------------------------------------------

// Fixture lookup: QUAD_EMBED_FIXTURES overrides the built-in copies. Every
// load is decoded, validated and re-verified; results are memoized.
Embedding load_fixture(const std::string& name);
std::vector<std::string> fixture_names();
const char* fixture_text(const std::string& name);
uint64_t fixture_checksum(const std::string& name);

}  // namespace quademb
