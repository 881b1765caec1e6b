#include "quademb/constructions.hpp"

#include <algorithm>
#include <atomic>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace quademb {

std::string north_label(const std::string& u) { return pair_label(u, "0"); }
std::string south_label(const std::string& u) { return pair_label(u, "1"); }

namespace {

[[noreturn]] void stage_fail(const std::string& stage, const std::string& detail) {
    throw std::runtime_error("construction stage '" + stage + "' failed: " + detail);
}

void require_quadrangular(const Embedding& e, bool expect_simple, const std::string& stage) {
    auto rep = verify_quadrangular(e, expect_simple);
    if (!rep.pass) stage_fail(stage, rep.summary);
}

}  // namespace

Embedding graphical_surface_embedding(const Graph& g, const GraphicalSurfaceOptions& opts) {
    if (!g.is_simple()) throw std::invalid_argument("graphical surface: G must be simple");
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) == 0)
            throw std::invalid_argument("graphical surface: isolated vertex " + g.label(v));
    for (int e : opts.twisted_edges)
        if (e < 0 || e >= g.num_edges())
            throw std::invalid_argument("graphical surface: twisted edge out of range");

    // Neighbor cyclic orders.
    std::vector<std::vector<int>> nbr_order(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (opts.rotation) {
            auto it = opts.rotation->find(g.label(v));
            if (it == opts.rotation->end())
                throw std::invalid_argument("graphical surface: rotation missing vertex " +
                                            g.label(v));
            auto expected = g.neighbors(v);
            std::vector<int> order;
            for (const auto& l : it->second) {
                int w = g.index_of(l);
                if (w < 0) throw std::invalid_argument("graphical surface: unknown neighbor " + l);
                order.push_back(w);
            }
            auto sorted = order;
            std::sort(sorted.begin(), sorted.end());
            if (sorted != expected)
                throw std::invalid_argument("graphical surface: rotation at " + g.label(v) +
                                            " is not a permutation of its neighbors");
            nbr_order[v] = order;
        } else {
            nbr_order[v] = g.neighbors(v);
        }
    }

    // Vertices (u,0)=north, (u,1)=south; tube uv contributes edges
    // 4e+0 = u_N v_N, 4e+1 = u_N v_S, 4e+2 = u_S v_S, 4e+3 = u_S v_N,
    // with endpoint order (u-pole, v-pole).
    std::vector<std::string> labels;
    for (int v = 0; v < g.num_vertices(); ++v) {
        labels.push_back(north_label(g.label(v)));
        labels.push_back(south_label(g.label(v)));
    }
    Graph shell(labels, {});
    auto pole = [&](int v, int s) {
        return shell.index_of(s == 0 ? north_label(g.label(v)) : south_label(g.label(v)));
    };
    std::vector<std::array<int, 2>> edges(4 * g.num_edges());
    std::vector<int> sigs(4 * g.num_edges(), 1);
    for (int e = 0; e < g.num_edges(); ++e) {
        int u = g.endpoints(e)[0], v = g.endpoints(e)[1];
        edges[4 * e + 0] = {pole(u, 0), pole(v, 0)};
        edges[4 * e + 1] = {pole(u, 0), pole(v, 1)};
        edges[4 * e + 2] = {pole(u, 1), pole(v, 1)};
        edges[4 * e + 3] = {pole(u, 1), pole(v, 0)};
        if (opts.twisted_edges.count(e))
            for (int t = 0; t < 4; ++t) sigs[4 * e + t] = -1;
    }

    Embedding out;
    out.graph = Graph(shell.labels(), edges);
    out.signatures = sigs;
    out.rotations.assign(out.graph.num_vertices(), {});

    // Per-tube dart pairs at each pole, ordered (toward v_N, toward v_S).
    // A twisted tube swaps the pair at its end1-side poles.
    auto north_darts = [&](int u, int e) -> std::array<Dart, 2> {
        bool at_end0 = g.endpoints(e)[0] == u;
        bool twist = opts.twisted_edges.count(e) > 0;
        if (at_end0) return {make_dart(4 * e + 0, 0), make_dart(4 * e + 1, 0)};
        if (!twist) return {make_dart(4 * e + 0, 1), make_dart(4 * e + 3, 1)};
        return {make_dart(4 * e + 3, 1), make_dart(4 * e + 0, 1)};
    };
    auto south_darts = [&](int u, int e) -> std::array<Dart, 2> {
        bool at_end0 = g.endpoints(e)[0] == u;
        bool twist = opts.twisted_edges.count(e) > 0;
        if (at_end0) return {make_dart(4 * e + 3, 0), make_dart(4 * e + 2, 0)};
        if (!twist) return {make_dart(4 * e + 1, 1), make_dart(4 * e + 2, 1)};
        return {make_dart(4 * e + 2, 1), make_dart(4 * e + 1, 1)};
    };

    for (int u = 0; u < g.num_vertices(); ++u) {
        std::vector<Dart> north, south;
        for (int w : nbr_order[u]) {
            int e = g.find_edge(u, w);
            auto nd = north_darts(u, e);
            north.push_back(nd[0]);
            north.push_back(nd[1]);
            auto sd = south_darts(u, e);
            south.push_back(sd[0]);
            south.push_back(sd[1]);
        }
        // The south pole sees the equator with the opposite handedness.
        std::reverse(south.begin(), south.end());
        out.rotations[pole(u, 0)] = north;
        out.rotations[pole(u, 1)] = south;
    }
    out.validate();

    require_quadrangular(out, false, "graphical surface");
    auto faces = trace_faces(out);
    if (static_cast<int>(faces.size()) != 2 * g.num_edges())
        stage_fail("graphical surface", "face count " + std::to_string(faces.size()) +
                                            " != 2|E(G)|");
    if (!out.graph.same_labeled_graph(composition(g, Graph::edgeless(2))))
        stage_fail("graphical surface", "underlying graph is not G[bar(K2)]");
    return out;
}

// --- the G[K4] pipeline -------------------------------------------------------

namespace {

// Two-color digon sides around each tube so that every digon face has total
// voltage 1 and every quadrilateral total voltage 0.
std::vector<int> alternating_voltages(const Embedding& j, int h_edges,
                                      const std::vector<FaceWalk>& faces) {
    int m = j.graph.num_edges();
    auto tube_of = [&](int jid) {
        int parent = jid < h_edges ? jid : jid - h_edges;
        return parent / 4;
    };
    std::vector<std::vector<int>> adj(m);
    auto constrain = [&](int a, int b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    for (const auto& f : faces) {
        auto ids = f.edge_ids();
        if (f.degree() == 2) {
            constrain(ids[0], ids[1]);
        } else if (f.degree() == 4) {
            std::map<int, std::vector<int>> by_tube;
            for (int id : ids) by_tube[tube_of(id)].push_back(id);
            for (const auto& [tube, group] : by_tube) {
                if (group.size() == 2) {
                    constrain(group[0], group[1]);
                } else if (group.size() == 4) {
                    // Single-tube quadrilateral (degree-1 spheres): voltages
                    // alternate along the walk.
                    for (int i = 0; i < 4; ++i) constrain(ids[i], ids[(i + 1) % 4]);
                } else {
                    stage_fail("voltage assignment", "quadrilateral with odd tube grouping");
                }
            }
        } else {
            stage_fail("voltage assignment", "unexpected face of degree " +
                                                 std::to_string(f.degree()));
        }
    }
    std::vector<int> color(m, -1);
    for (int s = 0; s < m; ++s) {
        if (color[s] >= 0) continue;
        color[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : adj[x]) {
                if (color[y] < 0) {
                    color[y] = 1 - color[x];
                    q.push(y);
                } else if (color[y] == color[x]) {
                    stage_fail("voltage assignment", "alternation constraints are not bipartite");
                }
            }
        }
    }
    return color;
}

const FaceWalk* face_of_degree_with_edge(const std::vector<FaceWalk>& faces, int degree,
                                         int edge) {
    for (const auto& f : faces) {
        if (f.degree() != degree) continue;
        auto ids = f.edge_ids();
        if (std::find(ids.begin(), ids.end(), edge) != ids.end()) return &f;
    }
    return nullptr;
}

}  // namespace

Embedding composition_k4(const Graph& g, const Matching& matching, Orientation mode,
                         CompositionK4Report* report) {
    if (mode == Orientation::any)
        throw std::invalid_argument("composition_k4: mode must be orientable or nonorientable");
    if (!g.is_simple() || !g.is_connected())
        throw std::invalid_argument("composition_k4: G must be simple and connected");
    // Matching must be perfect in G.
    {
        std::vector<int> covered(g.num_vertices(), 0);
        for (int e : matching.edge_ids) {
            if (e < 0 || e >= g.num_edges())
                throw std::invalid_argument("composition_k4: matching references a missing edge");
            ++covered[g.endpoints(e)[0]];
            ++covered[g.endpoints(e)[1]];
        }
        for (int c : covered)
            if (c != 1) throw std::invalid_argument("composition_k4: matching is not perfect");
    }

    CompositionK4Report local;
    CompositionK4Report& rep = report ? *report : local;
    rep = CompositionK4Report{};

    // Stage 1: graphical surface, twisted on one cycle edge when nonorientable.
    GraphicalSurfaceOptions gso;
    if (mode == Orientation::nonorientable) {
        auto cyc = find_cycle(g);
        if (!cyc)
            throw std::invalid_argument(
                "composition_k4: nonorientable mode needs a cycle in G (forest given)");
        int twist = cycle_edges(g, *cyc).front();
        gso.twisted_edges.insert(twist);
        rep.twisted_g_edge = twist;
    }
    Embedding h = graphical_surface_embedding(g, gso);
    int h_edges = h.graph.num_edges();

    // Stage 2: split every edge into a digon. Splitting in id order keeps
    // original ids for one side and appends the other, so the digon pair of
    // H-edge e is {e, h_edges + e}.
    Embedding j = h;
    for (int e = 0; e < h_edges; ++e) j = split_edge_into_digon(j, e).embedding;
    {
        auto degs = face_degree_multiset(trace_faces(j));
        std::map<int, int> want = {{2, h_edges}, {4, 2 * g.num_edges()}};
        if (degs != want) stage_fail("edge split", "unexpected face degrees after splitting");
    }
    rep.split_digons = h_edges;

    // Stage 3: alternating Z_2 voltages.
    std::vector<int> alpha = alternating_voltages(j, h_edges, trace_faces(j));

    // Stage 4: matching gadgets.
    std::vector<int> loops;
    for (int me : matching.edge_ids) {
        MatchingGadgetInfo info;
        info.g_edge = me;
        int ui = g.endpoints(me)[0], vi = g.endpoints(me)[1];
        info.u = g.label(ui);
        info.v = g.label(vi);
        info.h_edge = 4 * me + 3;  // e = u_S v_N
        int side_a = info.h_edge, side_b = h_edges + info.h_edge;

        std::string uN = north_label(info.u), uS = south_label(info.u);
        std::string vN = north_label(info.v), vS = south_label(info.v);

        // Q'_u contains both u-poles; ties broken by canonical trace order.
        {
            auto faces = trace_faces(j);
            const FaceWalk* qa = face_of_degree_with_edge(faces, 4, side_a);
            const FaceWalk* qb = face_of_degree_with_edge(faces, 4, side_b);
            if (!qa || !qb) stage_fail("matching gadget", "digon sides lost their quadrilaterals");
            int un = j.graph.index_of(uN), us = j.graph.index_of(uS);
            bool a_has_u = qa->contains_vertex(j, un) && qa->contains_vertex(j, us);
            bool b_has_u = qb->contains_vertex(j, un) && qb->contains_vertex(j, us);
            const FaceWalk* qu = nullptr;
            if (a_has_u && b_has_u) {
                qu = qa->steps < qb->steps ? qa : qb;
            } else if (a_has_u) {
                qu = qa;
            } else if (b_has_u) {
                qu = qb;
            } else {
                stage_fail("matching gadget", "no face of e contains both u-poles");
            }
            info.e1 = (qu == qa) ? side_a : side_b;
            info.e2 = (qu == qa) ? side_b : side_a;

            // Digon pair between u_N and u_S inside Q'_u.
            auto r = insert_digon_pair_in_face(j, *qu, uN, uS);
            j = r.embedding;
            // The new edge on the triangle containing e1 gets voltage 1.
            auto after = trace_faces(j);
            const FaceWalk* t2 = face_of_degree_with_edge(after, 3, info.e1);
            if (!t2) stage_fail("matching gadget", "triangle through e1 not found");
            auto ids = t2->edge_ids();
            bool r1_in = std::find(ids.begin(), ids.end(), r.d1) != ids.end();
            info.d2 = r1_in ? r.d1 : r.d2;  // voltage 1
            info.d1 = r1_in ? r.d2 : r.d1;  // voltage 0
            alpha.resize(j.graph.num_edges(), 0);
            alpha[info.d1] = 0;
            alpha[info.d2] = 1;
        }
        {
            auto faces = trace_faces(j);
            const FaceWalk* qv = face_of_degree_with_edge(faces, 4, info.e2);
            if (!qv) stage_fail("matching gadget", "Q'_v not found");
            auto r = insert_digon_pair_in_face(j, *qv, vN, vS);
            j = r.embedding;
            auto after = trace_faces(j);
            const FaceWalk* t1v = face_of_degree_with_edge(after, 3, info.e2);
            if (!t1v) stage_fail("matching gadget", "triangle through e2 not found");
            auto ids = t1v->edge_ids();
            bool r1_in = std::find(ids.begin(), ids.end(), r.d1) != ids.end();
            info.d3 = r1_in ? r.d1 : r.d2;  // voltage 1
            info.d4 = r1_in ? r.d2 : r.d1;  // voltage 0
            alpha.resize(j.graph.num_edges(), 0);
            alpha[info.d3] = 1;
            alpha[info.d4] = 0;
        }
        // Loops with voltage 1 in the four triangles.
        auto add_loop = [&](int dedge, const std::string& at) {
            auto faces = trace_faces(j);
            const FaceWalk* tri = face_of_degree_with_edge(faces, 3, dedge);
            if (!tri) stage_fail("matching gadget", "loop target triangle not found");
            auto r = insert_loop_in_face(j, *tri, at);
            j = r.embedding;
            alpha.resize(j.graph.num_edges(), 0);
            alpha[r.loop] = 1;
            loops.push_back(r.loop);
            return r.loop;
        };
        info.loop_uN = add_loop(info.d1, uN);
        info.loop_uS = add_loop(info.d2, uS);
        info.loop_vN = add_loop(info.d3, vN);
        info.loop_vS = add_loop(info.d4, vS);

        // The swap on e1, e2 makes the loop faces at u_S and v_N lift to
        // quadrilaterals.
        std::swap(alpha[info.e1], alpha[info.e2]);
        rep.gadgets.push_back(info);
    }

    // Stage 5: the four face classes.
    VoltageGraph vg{j, 2, alpha};
    {
        std::set<int> loop_set(loops.begin(), loops.end());
        for (const auto& f : trace_faces(j)) {
            int tv = face_total_voltage(vg, f);
            auto ids = f.edge_ids();
            bool has_loop = std::any_of(ids.begin(), ids.end(),
                                        [&](int id) { return loop_set.count(id) > 0; });
            if (f.degree() == 1) {
                if (tv != 1) stage_fail("voltage classes", "monogon with total voltage 0");
            } else if (f.degree() == 2) {
                if (tv != 1) stage_fail("voltage classes", "digon with total voltage 0");
            } else if (f.degree() == 4) {
                if (tv != 0)
                    stage_fail("voltage classes", has_loop ? "loop face with total voltage 1"
                                                           : "quadrilateral with total voltage 1");
            } else {
                stage_fail("voltage classes", "face of degree " + std::to_string(f.degree()));
            }
        }
    }

    // Stage 6: derive over Z_2 and cross-check the lift prediction.
    auto prediction = predict_lift(vg);
    Embedding derived = derived_embedding(vg);
    {
        rep.voltage.predicted_degrees = prediction.face_degrees;
        rep.voltage.predicted_orientable = prediction.orientable;
        rep.voltage.traced_degrees = face_degree_multiset(trace_faces(derived));
        rep.voltage.traced_orientable = orientability(derived).orientable;
        if (!rep.voltage.agree())
            stage_fail("derived embedding", "lift prediction disagrees with the trace");
        if (mode == Orientation::orientable && !rep.voltage.traced_orientable)
            stage_fail("derived embedding", "orientable mode produced a nonorientable lift");
        if (mode == Orientation::nonorientable && rep.voltage.traced_orientable)
            stage_fail("derived embedding", "nonorientable mode produced an orientable lift");
    }

    // Stage 7: replace each lifted loop digon by a single edge.
    Embedding cur = derived;
    for (int loop : loops) {
        int pv = j.graph.endpoints(loop)[0];
        std::string l0 = derived_vertex_label(j.graph.label(pv), 0);
        std::string l1 = derived_vertex_label(j.graph.label(pv), 1);
        int a = cur.graph.index_of(l0), b = cur.graph.index_of(l1);
        std::vector<int> pair;
        for (int eid = 0; eid < cur.graph.num_edges(); ++eid) {
            const auto& ep = cur.graph.endpoints(eid);
            if (std::minmax(ep[0], ep[1]) == std::minmax(a, b)) pair.push_back(eid);
        }
        if (pair.size() != 2)
            stage_fail("digon replacement", "expected exactly two lifted loop edges between " +
                                                l0 + " and " + l1);
        cur = replace_digon_by_single_edge(cur, pair[0], pair[1]);
        ++rep.digons_replaced;
    }

    // Stage 8: relabel to composition labels and verify.
    std::unordered_map<std::string, std::string> relabel;
    for (int u = 0; u < g.num_vertices(); ++u) {
        const std::string& base = g.label(u);
        for (int x = 0; x < 2; ++x) {
            std::string pole = x == 0 ? north_label(base) : south_label(base);
            for (int a = 0; a < 2; ++a)
                relabel[derived_vertex_label(pole, a)] =
                    pair_label(base, std::to_string(2 * x + a));
        }
    }
    Embedding out = cur.relabeled(relabel);
    if (!out.graph.same_labeled_graph(composition(g, Graph::complete(4))))
        stage_fail("final verification", "result is not G[K4] by label");
    require_quadrangular(out, true, "final verification");
    bool ori = orientability(out).orientable;
    if (ori != (mode == Orientation::orientable))
        stage_fail("final verification", "requested orientability not achieved");
    return out;
}

// --- diamond sum --------------------------------------------------------------

namespace {

std::atomic<uint64_t> diamond_invocations{0};
std::atomic<uint64_t> diamond_checks_passed{0};

void switch_vertex(Embedding& e, int v) {
    for (int eid = 0; eid < e.graph.num_edges(); ++eid) {
        const auto& ep = e.graph.endpoints(eid);
        if ((ep[0] == v) != (ep[1] == v)) e.signatures[eid] = -e.signatures[eid];
    }
    std::reverse(e.rotations[v].begin(), e.rotations[v].end());
}

struct DiamondPiece {
    Embedding emb;
    int center;                 // vertex index of the deleted hub
    std::vector<int> nbrs;      // neighbor indices in rotation order
    std::vector<Dart> hub_dart; // dart at each neighbor pointing to the hub
};

DiamondPiece prepare_piece(const Embedding& input, const std::string& hub_label) {
    DiamondPiece p;
    p.emb = input;
    p.center = p.emb.graph.index_of(hub_label);
    if (p.center < 0) throw std::invalid_argument("diamond_sum: no vertex " + hub_label);
    // Normalize: make every hub edge signature +1 by switching neighbors.
    for (int eid : p.emb.graph.incident_edges(p.center)) {
        if (p.emb.graph.is_loop(eid))
            throw std::invalid_argument("diamond_sum: hub vertex carries a loop");
        if (p.emb.signatures[eid] == -1) {
            const auto& ep = p.emb.graph.endpoints(eid);
            switch_vertex(p.emb, ep[0] == p.center ? ep[1] : ep[0]);
        }
    }
    for (Dart d : p.emb.rotations[p.center]) {
        Dart md = dart_mate(d);
        p.nbrs.push_back(p.emb.dart_vertex(md));
        p.hub_dart.push_back(md);
    }
    return p;
}

Embedding splice_candidate(const DiamondPiece& A, const DiamondPiece& B, int offset,
                           bool reflect) {
    int k = static_cast<int>(A.nbrs.size());
    const Graph& ga = A.emb.graph;
    const Graph& gb = B.emb.graph;

    // Pairing: A-neighbor i is identified with B-neighbor pi(i).
    auto partner = [&](int i) {
        int idx = reflect ? (offset - i) % k : (offset + i) % k;
        return ((idx % k) + k) % k;
    };
    std::unordered_map<std::string, std::string> b_rename;
    for (int i = 0; i < k; ++i)
        b_rename[gb.label(B.nbrs[partner(i)])] = ga.label(A.nbrs[i]);

    // Edge lists minus hub edges, A first.
    std::vector<std::array<std::string, 2>> edges;
    std::vector<int> sigs;
    std::vector<int> a_map(ga.num_edges(), -1), b_map(gb.num_edges(), -1);
    for (int e = 0; e < ga.num_edges(); ++e) {
        const auto& ep = ga.endpoints(e);
        if (ep[0] == A.center || ep[1] == A.center) continue;
        a_map[e] = static_cast<int>(edges.size());
        edges.push_back({ga.label(ep[0]), ga.label(ep[1])});
        sigs.push_back(A.emb.signatures[e]);
    }
    auto b_label = [&](int v) {
        auto it = b_rename.find(gb.label(v));
        return it == b_rename.end() ? gb.label(v) : it->second;
    };
    for (int e = 0; e < gb.num_edges(); ++e) {
        const auto& ep = gb.endpoints(e);
        if (ep[0] == B.center || ep[1] == B.center) continue;
        b_map[e] = static_cast<int>(edges.size());
        edges.push_back({b_label(ep[0]), b_label(ep[1])});
        sigs.push_back(B.emb.signatures[e]);
    }

    std::vector<std::string> labels;
    for (int v = 0; v < ga.num_vertices(); ++v)
        if (v != A.center) labels.push_back(ga.label(v));
    for (int v = 0; v < gb.num_vertices(); ++v) {
        if (v == B.center) continue;
        if (b_rename.count(gb.label(v))) continue;
        labels.push_back(gb.label(v));
    }

    auto map_dart = [](const std::vector<int>& m, Dart d) {
        return make_dart(m[dart_edge(d)], dart_end(d));
    };

    std::vector<std::pair<std::string, std::vector<Dart>>> rots;
    std::vector<bool> is_a_nbr(ga.num_vertices(), false);
    for (int v : A.nbrs) is_a_nbr[v] = true;
    for (int v = 0; v < ga.num_vertices(); ++v) {
        if (v == A.center || is_a_nbr[v]) continue;
        std::vector<Dart> rot;
        for (Dart d : A.emb.rotations[v]) rot.push_back(map_dart(a_map, d));
        rots.push_back({ga.label(v), rot});
    }
    std::vector<bool> is_b_nbr(gb.num_vertices(), false);
    for (int v : B.nbrs) is_b_nbr[v] = true;
    for (int v = 0; v < gb.num_vertices(); ++v) {
        if (v == B.center || is_b_nbr[v]) continue;
        std::vector<Dart> rot;
        for (Dart d : B.emb.rotations[v]) rot.push_back(map_dart(b_map, d));
        rots.push_back({gb.label(v), rot});
    }
    // Merged boundary vertices: A rotation with the hub dart replaced by the
    // B-side darts. Identity pairing takes them in reversed cyclic order
    // starting after B's hub dart; the reflected pairing takes them forward.
    for (int i = 0; i < k; ++i) {
        int av = A.nbrs[i];
        int bv = B.nbrs[partner(i)];
        Dart b_hub = B.hub_dart[partner(i)];
        const auto& brot = B.emb.rotations[bv];
        int pos = static_cast<int>(std::find(brot.begin(), brot.end(), b_hub) - brot.begin());
        std::vector<Dart> seq;
        int bdeg = static_cast<int>(brot.size());
        for (int s = 1; s < bdeg; ++s) seq.push_back(brot[(pos + s) % bdeg]);
        if (!reflect) std::reverse(seq.begin(), seq.end());

        std::vector<Dart> rot;
        for (Dart d : A.emb.rotations[av]) {
            if (d == A.hub_dart[i]) {
                for (Dart bd : seq) rot.push_back(map_dart(b_map, bd));
            } else {
                rot.push_back(map_dart(a_map, d));
            }
        }
        rots.push_back({ga.label(av), rot});
    }

    Graph base(labels, {});
    std::vector<std::array<int, 2>> e2;
    for (const auto& e : edges) e2.push_back({base.index_of(e[0]), base.index_of(e[1])});
    Embedding out;
    out.graph = Graph(base.labels(), e2);
    out.signatures = sigs;
    out.rotations.assign(out.graph.num_vertices(), {});
    for (const auto& [label, rot] : rots) out.rotations[out.graph.index_of(label)] = rot;
    out.validate();
    return out;
}

}  // namespace

DiamondSumAudit diamond_sum_audit() {
    return {diamond_invocations.load(), diamond_checks_passed.load()};
}

void reset_diamond_sum_audit() {
    diamond_invocations = 0;
    diamond_checks_passed = 0;
}

Embedding diamond_sum(const Embedding& a, const std::string& va, const Embedding& b,
                      const std::string& vb, std::optional<DiamondAlignment> alignment) {
    ++diamond_invocations;
    if (!a.graph.is_simple() || !b.graph.is_simple())
        throw std::invalid_argument("diamond_sum: inputs must be simple");
    for (const auto& l : b.graph.labels())
        if (a.graph.has_vertex(l))
            throw std::invalid_argument("diamond_sum: vertex labels must be disjoint: " + l);

    DiamondPiece A = prepare_piece(a, va);
    DiamondPiece B = prepare_piece(b, vb);
    if (A.nbrs.empty() || A.nbrs.size() != B.nbrs.size())
        throw std::invalid_argument("diamond_sum: hub degrees differ or are zero");

    int chi_a = surface_of(a).total_chi;
    int chi_b = surface_of(b).total_chi;
    bool ori_a = orientability(a).orientable;
    bool ori_b = orientability(b).orientable;
    bool quad_a = verify_quadrangular(a, false).pass;
    bool quad_b = verify_quadrangular(b, false).pass;

    std::vector<DiamondAlignment> cands;
    if (alignment) {
        cands.push_back(*alignment);
    } else {
        cands.push_back({0, false});
        cands.push_back({0, true});
    }
    std::string why;
    for (const auto& cand : cands) {
        Embedding out = splice_candidate(A, B, cand.offset, cand.reflect);
        auto s = surface_of(out);
        if (s.total_chi != chi_a + chi_b - 2) {
            why = "Euler characteristic not additive";
            continue;
        }
        if (orientability(out).orientable != (ori_a && ori_b)) {
            why = "orientability conjunction violated";
            continue;
        }
        if (quad_a && quad_b && !verify_quadrangular(out, false).pass) {
            why = "quadrangularity not preserved";
            continue;
        }
        ++diamond_checks_passed;
        return out;
    }
    throw std::runtime_error("diamond_sum: no alignment yields a valid gluing (" + why + ")");
}

// --- derived constructions -----------------------------------------------------

namespace {

// Relabel a K_{6,q} embedding so the 6-side keeps 0..5 and the big side is
// 6..6+q-1 in label order.
Embedding canonical_bipartite(const Embedding& e, int q) {
    std::vector<std::string> big;
    for (const auto& l : e.graph.labels()) {
        int v = e.graph.index_of(l);
        bool six_side = l.size() == 1 && l[0] >= '0' && l[0] <= '5';
        if (!six_side) big.push_back(l);
        else if (e.graph.degree(v) != q)
            throw std::runtime_error("k6q: vertex " + l + " has unexpected degree");
    }
    std::sort(big.begin(), big.end(), label_less);
    std::unordered_map<std::string, std::string> map;
    for (size_t i = 0; i < big.size(); ++i) map[big[i]] = atom_label(6 + static_cast<int>(i));
    Embedding out = e.relabeled(map);
    if (!out.graph.same_labeled_graph(Graph::complete_bipartite(6, q)))
        throw std::runtime_error("k6q: result is not K_{6,q} by label");
    return out;
}

}  // namespace

Embedding k6q_embedding(int q, Orientation orientation) {
    if (q < 3) throw std::invalid_argument("k6q_embedding: q >= 3 required");
    Embedding cur = load_fixture(orientation == Orientation::nonorientable ? "k63_klein"
                                                                           : "k63_torus");
    for (int p = 3; p < q; ++p) {
        // Remove the last big-side vertex from the running embedding and one
        // from a fresh torus block, merging the 6-sides.
        Embedding block = load_fixture("k63_torus");
        std::unordered_map<std::string, std::string> prefix;
        for (const auto& l : block.graph.labels()) prefix[l] = "t:" + l;
        block = block.relabeled(prefix);
        std::string va = atom_label(6 + p - 1);
        std::string vb = "t:6";
        cur = diamond_sum(cur, va, block, vb);
        cur = canonical_bipartite(cur, p + 1);
    }
    auto s = surface_of(cur);
    if (s.total_chi != 6 - 2 * q) throw std::runtime_error("k6q: wrong Euler characteristic");
    if (orientation == Orientation::orientable && !s.all_orientable)
        throw std::runtime_error("k6q: expected an orientable chain");
    if (orientation == Orientation::nonorientable && s.all_orientable)
        throw std::runtime_error("k6q: expected a nonorientable chain");
    require_quadrangular(cur, true, "k6q");
    return cur;
}

Embedding k7plus_embedding() { return load_fixture("k7plus_N5"); }

Embedding base_embedding(const std::string& name) {
    if (name != "k4_projective" && name != "k5_torus")
        throw std::invalid_argument("base_embedding: unknown name " + name);
    return load_fixture(name);
}

Embedding extend_by_four(const Embedding& phi) {
    int n = phi.graph.num_vertices();
    if (n < 4) throw std::invalid_argument("extend_by_four: need K_n with n >= 4");
    if (!phi.graph.same_labeled_graph(
            Graph(phi.graph.labels(), Graph::complete(n).edges())))
        throw std::invalid_argument("extend_by_four: input graph is not complete");
    require_quadrangular(phi, true, "extend_by_four input");

    // Phi1: K7+ in N_5 with hub u = vertex 0 (degree 6).
    Embedding phi1 = k7plus_embedding();
    // Phi2: K_{6,n-1}, hub u' = a big-side vertex (degree 6).
    Embedding phi2 = k6q_embedding(n - 1, Orientation::any);
    {
        std::unordered_map<std::string, std::string> prefix;
        for (const auto& l : phi2.graph.labels()) prefix[l] = "b:" + l;
        phi2 = phi2.relabeled(prefix);
    }
    Embedding phi4 = diamond_sum(phi1, "0", phi2, "b:6");
    // w = the subdivision vertex "7"; its degree is now n-1.
    if (phi4.graph.degree(phi4.graph.index_of("7")) != n - 1)
        throw std::runtime_error("extend_by_four: w has unexpected degree");

    Embedding phi3 = phi;
    {
        std::unordered_map<std::string, std::string> prefix;
        for (const auto& l : phi3.graph.labels()) prefix[l] = "a:" + l;
        phi3 = phi3.relabeled(prefix);
    }
    std::string w_prime = phi3.graph.label(0);
    Embedding phi5 = diamond_sum(phi3, w_prime, phi4, "7");

    Embedding out = phi5.canonical_labels();
    if (!out.graph.same_labeled_graph(Graph::complete(n + 4)))
        throw std::runtime_error("extend_by_four: result is not complete");
    require_quadrangular(out, true, "extend_by_four output");
    if (orientability(out).orientable)
        throw std::runtime_error("extend_by_four: result is unexpectedly orientable");
    return out;
}

Embedding complete_quadrangulation(int n, Orientation orientation,
                                   CompositionK4Report* report) {
    if (n < 1) throw std::invalid_argument("complete_quadrangulation: n >= 1 required");
    Embedding out;
    if (orientation == Orientation::orientable) {
        if (n % 8 == 5)
            throw std::invalid_argument(
                "complete_quadrangulation: orientable K_n with n = 5 (mod 8) exists but is not "
                "constructed by this tool; only n = 0 (mod 8) is built here");
        if (n % 8 != 0)
            throw std::invalid_argument(
                "complete_quadrangulation: an orientable quadrangular embedding of K_n requires "
                "n = 0 or 5 (mod 8)");
        Graph g = Graph::complete(n / 4);
        auto m = find_perfect_matching(g);
        if (!m) throw std::runtime_error("complete_quadrangulation: K_{n/4} has no matching");
        out = composition_k4(g, *m, Orientation::orientable, report).canonical_labels();
    } else if (orientation == Orientation::nonorientable) {
        if (n == 1 || n == 5)
            throw std::invalid_argument(
                "complete_quadrangulation: K_" + std::to_string(n) +
                " has no nonorientable quadrangular embedding (the n = 1, 5 cases are the stated "
                "exceptions)");
        if (n % 4 == 0) {
            out = base_embedding("k4_projective");
            for (int cur = 4; cur < n; cur += 4) out = extend_by_four(out);
        } else if (n % 4 == 1 && n >= 9) {
            out = base_embedding("k5_torus");
            for (int cur = 5; cur < n; cur += 4) out = extend_by_four(out);
        } else {
            throw std::invalid_argument(
                "complete_quadrangulation: a nonorientable quadrangular embedding of K_n requires "
                "n = 0 (mod 4), or n = 1 (mod 4) with n >= 9");
        }
    } else {
        throw std::invalid_argument("complete_quadrangulation: choose an orientation");
    }

    // Final verification against the forced surface.
    if ((n * (5 - n)) % 4 != 0)
        throw std::runtime_error("complete_quadrangulation: impossible parameter slipped through");
    int chi = n * (5 - n) / 4;
    if (!out.graph.same_labeled_graph(Graph::complete(n)))
        throw std::runtime_error("complete_quadrangulation: result is not K_n");
    require_quadrangular(out, true, "complete_quadrangulation");
    auto s = surface_of(out);
    if (s.total_chi != chi || s.all_orientable != (orientation == Orientation::orientable))
        throw std::runtime_error("complete_quadrangulation: wrong surface " + s.surface.name);
    return out;
}

}  // namespace quademb
