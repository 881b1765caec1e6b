#include "quademb/embedding.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace quademb {

namespace {

// Position of every dart inside its rotation: dart -> (vertex, index).
struct DartIndex {
    std::vector<int> vertex;
    std::vector<int> pos;

    explicit DartIndex(const Embedding& e) {
        vertex.assign(2 * e.graph.num_edges(), -1);
        pos.assign(2 * e.graph.num_edges(), -1);
        for (int v = 0; v < e.graph.num_vertices(); ++v)
            for (size_t i = 0; i < e.rotations[v].size(); ++i) {
                Dart d = e.rotations[v][i];
                vertex[d] = v;
                pos[d] = static_cast<int>(i);
            }
    }

    Dart step(const Embedding& e, Dart d, int dir) const {
        const auto& rot = e.rotations[vertex[d]];
        int n = static_cast<int>(rot.size());
        return rot[(pos[d] + dir % n + n) % n];
    }
};

}  // namespace

void Embedding::validate() const {
    int n = graph.num_vertices();
    int m = graph.num_edges();
    if (static_cast<int>(rotations.size()) != n)
        throw std::invalid_argument("embedding: rotation table size != vertex count");
    if (static_cast<int>(signatures.size()) != m)
        throw std::invalid_argument("embedding: signature table size != edge count");
    for (int s : signatures)
        if (s != 1 && s != -1) throw std::invalid_argument("embedding: signature must be +1 or -1");
    std::vector<int> seen(2 * m, 0);
    for (int v = 0; v < n; ++v) {
        for (Dart d : rotations[v]) {
            if (d < 0 || d >= 2 * m)
                throw std::invalid_argument("embedding: dart out of range: " + std::to_string(d));
            if (dart_vertex(d) != v)
                throw std::invalid_argument("embedding: dart " + std::to_string(dart_edge(d)) + "." +
                                            std::to_string(dart_end(d)) + " listed at wrong vertex");
            ++seen[d];
        }
    }
    for (int d = 0; d < 2 * m; ++d) {
        if (seen[d] == 0)
            throw std::invalid_argument("embedding: dart missing: " + std::to_string(dart_edge(d)) +
                                        "." + std::to_string(dart_end(d)));
        if (seen[d] > 1)
            throw std::invalid_argument("embedding: dart duplicated: " + std::to_string(dart_edge(d)) +
                                        "." + std::to_string(dart_end(d)));
    }
}

uint64_t Embedding::fingerprint() const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&](uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    auto mix_str = [&](const std::string& s) {
        mix(s.size());
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    mix(graph.num_vertices());
    mix(graph.num_edges());
    for (const auto& l : graph.labels()) mix_str(l);
    for (int e = 0; e < graph.num_edges(); ++e) {
        mix(graph.endpoints(e)[0]);
        mix(graph.endpoints(e)[1]);
        mix(static_cast<uint64_t>(signatures[e] + 2));
    }
    for (const auto& rot : rotations) {
        mix(rot.size());
        for (Dart d : rot) mix(static_cast<uint64_t>(d));
    }
    return h;
}

Embedding Embedding::relabeled(const std::unordered_map<std::string, std::string>& map) const {
    Embedding out;
    out.graph = graph.relabeled(map);
    out.signatures = signatures;
    out.rotations.assign(graph.num_vertices(), {});
    for (int v = 0; v < graph.num_vertices(); ++v) {
        std::string nl = graph.label(v);
        auto it = map.find(nl);
        if (it != map.end()) nl = it->second;
        out.rotations[out.graph.index_of(nl)] = rotations[v];
    }
    return out;
}

Embedding Embedding::canonical_labels() const {
    std::unordered_map<std::string, std::string> map;
    for (int i = 0; i < graph.num_vertices(); ++i) map[graph.label(i)] = atom_label(i);
    return relabeled(map);
}

std::vector<int> FaceWalk::edge_ids() const {
    std::vector<int> out;
    out.reserve(steps.size());
    for (const auto& s : steps) out.push_back(dart_edge(s.first));
    return out;
}

std::vector<int> FaceWalk::vertex_indices(const Embedding& e) const {
    std::vector<int> out;
    out.reserve(steps.size());
    for (const auto& s : steps) out.push_back(e.dart_vertex(s.first));
    return out;
}

std::vector<std::string> FaceWalk::vertex_labels(const Embedding& e) const {
    std::vector<std::string> out;
    for (int v : vertex_indices(e)) out.push_back(e.graph.label(v));
    return out;
}

bool FaceWalk::contains_vertex(const Embedding& e, int v) const {
    for (const auto& s : steps)
        if (e.dart_vertex(s.first) == v) return true;
    return false;
}

std::string FaceWalk::to_string(const Embedding& e) const {
    std::ostringstream out;
    out << "(";
    auto labels = vertex_labels(e);
    for (size_t i = 0; i < labels.size(); ++i) {
        if (i) out << " ";
        out << labels[i];
    }
    out << ")";
    return out.str();
}

// Face tracing over (dart, orientation) states. Traversing dart d with
// orientation o arrives at its mate with o' = o * sig(e); the walk then
// leaves via the rotation successor (o' = +1) or predecessor (o' = -1).
// Orbits of this map come in reverse pairs; each pair is one face.
std::vector<FaceWalk> trace_faces(const Embedding& e) {
    e.validate();
    DartIndex idx(e);
    int m = e.graph.num_edges();
    int nstates = 4 * m;
    auto state_of = [](Dart d, int o) { return 2 * d + (o == 1 ? 0 : 1); };
    auto next_state = [&](int s) {
        Dart d = s / 2;
        int o = (s % 2 == 0) ? 1 : -1;
        int op = o * e.signatures[dart_edge(d)];
        Dart nd = idx.step(e, dart_mate(d), op == 1 ? 1 : -1);
        return state_of(nd, op);
    };
    auto reverse_state = [&](int s) {
        Dart d = s / 2;
        int o = (s % 2 == 0) ? 1 : -1;
        return state_of(dart_mate(d), -o * e.signatures[dart_edge(d)]);
    };

    std::vector<int> orbit_id(nstates, -1);
    std::vector<std::vector<int>> orbits;
    for (int s = 0; s < nstates; ++s) {
        if (orbit_id[s] >= 0) continue;
        std::vector<int> orbit;
        int cur = s;
        while (orbit_id[cur] < 0) {
            orbit_id[cur] = static_cast<int>(orbits.size());
            orbit.push_back(cur);
            cur = next_state(cur);
        }
        if (cur != s) throw std::runtime_error("face tracing: transition map is not a permutation");
        orbits.push_back(std::move(orbit));
    }

    std::vector<FaceWalk> faces;
    std::vector<bool> used(orbits.size(), false);
    for (size_t i = 0; i < orbits.size(); ++i) {
        if (used[i]) continue;
        int partner = orbit_id[reverse_state(orbits[i][0])];
        if (partner == static_cast<int>(i) || used[partner] ||
            orbits[partner].size() != orbits[i].size())
            throw std::runtime_error("face tracing: orbit reversal pairing failed");
        used[i] = used[partner] = true;

        // Canonical representative: least rotation over both traversal
        // directions, compared as state sequences.
        const std::vector<int>* best_seq = nullptr;
        size_t best_rot = 0;
        for (const auto* seq : {&orbits[i], &orbits[partner]}) {
            size_t len = seq->size();
            for (size_t r = 0; r < len; ++r) {
                bool better = false;
                if (!best_seq) {
                    better = true;
                } else {
                    for (size_t k = 0; k < len; ++k) {
                        int a = (*seq)[(r + k) % len];
                        int b = (*best_seq)[(best_rot + k) % best_seq->size()];
                        if (a != b) {
                            better = a < b;
                            break;
                        }
                    }
                }
                if (better) {
                    best_seq = seq;
                    best_rot = r;
                }
            }
        }
        FaceWalk f;
        f.owner = e.fingerprint();
        for (size_t k = 0; k < best_seq->size(); ++k) {
            int s = (*best_seq)[(best_rot + k) % best_seq->size()];
            f.steps.push_back({s / 2, (s % 2 == 0) ? 1 : -1});
        }
        faces.push_back(std::move(f));
    }
    std::sort(faces.begin(), faces.end(),
              [](const FaceWalk& a, const FaceWalk& b) { return a.steps < b.steps; });
    return faces;
}

OrientabilityResult orientability(const Embedding& e) {
    // Balance of the signed graph: propagate a reference sign over a BFS
    // forest, then every non-tree edge must agree. Loops with sign -1 are
    // immediate witnesses.
    int n = e.graph.num_vertices();
    std::vector<int> side(n, 0);
    std::vector<int> parent_edge(n, -1);
    std::vector<int> parent(n, -1);
    for (int eid = 0; eid < e.graph.num_edges(); ++eid)
        if (e.graph.is_loop(eid) && e.signatures[eid] == -1)
            return {false, {eid}};
    for (int root = 0; root < n; ++root) {
        if (side[root] != 0) continue;
        side[root] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int eid : e.graph.incident_edges(v)) {
                if (e.graph.is_loop(eid)) continue;
                const auto& ep = e.graph.endpoints(eid);
                int w = ep[0] == v ? ep[1] : ep[0];
                if (side[w] == 0) {
                    side[w] = side[v] * e.signatures[eid];
                    parent[w] = v;
                    parent_edge[w] = eid;
                    q.push(w);
                } else if (side[w] != side[v] * e.signatures[eid]) {
                    // Tree path v .. w plus eid is an orientation-reversing cycle.
                    std::set<int> vv;
                    for (int x = v; x != -1; x = parent[x]) vv.insert(x);
                    int meet = w;
                    while (!vv.count(meet)) meet = parent[meet];
                    std::vector<int> cyc;
                    for (int x = v; x != meet; x = parent[x]) cyc.push_back(parent_edge[x]);
                    std::vector<int> back;
                    for (int x = w; x != meet; x = parent[x]) back.push_back(parent_edge[x]);
                    std::reverse(back.begin(), back.end());
                    cyc.insert(cyc.end(), back.begin(), back.end());
                    cyc.push_back(eid);
                    return {false, cyc};
                }
            }
        }
    }
    return {true, {}};
}

SurfaceId SurfaceId::of(int chi, bool ori) {
    SurfaceId s;
    s.euler_characteristic = chi;
    s.orientable = ori;
    if (ori) {
        if ((2 - chi) % 2 != 0)
            throw std::runtime_error("orientable surface with odd Euler characteristic");
        s.name = "S_" + std::to_string((2 - chi) / 2);
    } else {
        s.name = "N_" + std::to_string(2 - chi);
    }
    return s;
}

SurfaceReport surface_of(const Embedding& e) {
    auto faces = trace_faces(e);
    auto comp = e.graph.component_of();
    int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<int> nv(ncomp, 0), nm(ncomp, 0), nf(ncomp, 0);
    for (int v = 0; v < e.graph.num_vertices(); ++v) ++nv[comp[v]];
    for (int eid = 0; eid < e.graph.num_edges(); ++eid) ++nm[comp[e.graph.endpoints(eid)[0]]];
    for (const auto& f : faces) ++nf[comp[e.dart_vertex(f.dart(0))]];
    // An isolated vertex carries one face on its own sphere.
    for (int v = 0; v < e.graph.num_vertices(); ++v)
        if (e.graph.degree(v) == 0) ++nf[comp[v]];

    // Per-component orientability via a component-restricted view.
    std::vector<bool> comp_orientable(ncomp, true);
    {
        auto whole = orientability(e);
        if (!whole.orientable) {
            // Recheck each nonorientable component individually.
            for (int c = 0; c < ncomp; ++c) {
                std::vector<std::string> labels;
                std::vector<std::array<int, 2>> edges;
                std::vector<int> sigs;
                std::unordered_map<int, int> vmap;
                for (int v = 0; v < e.graph.num_vertices(); ++v)
                    if (comp[v] == c) {
                        vmap[v] = static_cast<int>(labels.size());
                        labels.push_back(e.graph.label(v));
                    }
                for (int eid = 0; eid < e.graph.num_edges(); ++eid)
                    if (comp[e.graph.endpoints(eid)[0]] == c) {
                        edges.push_back({vmap[e.graph.endpoints(eid)[0]],
                                         vmap[e.graph.endpoints(eid)[1]]});
                        sigs.push_back(e.signatures[eid]);
                    }
                Embedding sub;
                sub.graph = Graph(labels, edges);
                sub.signatures = sigs;
                sub.rotations.assign(labels.size(), {});
                // Rotations are irrelevant for balance; leave them empty but
                // well-formed by collecting darts in order.
                for (int eid = 0; eid < sub.graph.num_edges(); ++eid) {
                    sub.rotations[sub.graph.endpoints(eid)[0]].push_back(make_dart(eid, 0));
                    sub.rotations[sub.graph.endpoints(eid)[1]].push_back(make_dart(eid, 1));
                }
                comp_orientable[c] = orientability(sub).orientable;
            }
        }
    }

    SurfaceReport rep;
    rep.connected = ncomp <= 1;
    rep.total_chi = 0;
    rep.all_orientable = true;
    for (int c = 0; c < ncomp; ++c) {
        int chi = nv[c] - nm[c] + nf[c];
        rep.total_chi += chi;
        rep.all_orientable = rep.all_orientable && comp_orientable[c];
        rep.components.push_back(SurfaceId::of(chi, comp_orientable[c]));
    }
    if (rep.connected && ncomp == 1) rep.surface = rep.components[0];
    return rep;
}

QuadReport verify_quadrangular(const Embedding& e, bool expect_simple) {
    QuadReport rep;
    auto faces = trace_faces(e);
    rep.face_count = static_cast<int>(faces.size());
    bool faces_ok = true;
    for (const auto& f : faces) {
        bool ok = f.degree() == 4;
        if (ok) {
            auto vs = f.vertex_indices(e);
            std::set<int> sv(vs.begin(), vs.end());
            auto es = f.edge_ids();
            std::set<int> se(es.begin(), es.end());
            ok = sv.size() == 4 && se.size() == 4;
        }
        if (!ok) {
            faces_ok = false;
            rep.offending.push_back(f);
        }
    }
    int isolated = 0;
    for (int v = 0; v < e.graph.num_vertices(); ++v)
        if (e.graph.degree(v) == 0) ++isolated;
    if (isolated > 0) faces_ok = false;

    int n = e.graph.num_vertices();
    int m = e.graph.num_edges();
    int chi = n - m + rep.face_count + isolated;
    rep.edge_count_identity = (m == 2 * n - 2 * chi);
    rep.simple = e.graph.is_simple();
    rep.connected = e.graph.is_connected();
    rep.pass = faces_ok && rep.edge_count_identity &&
               (!expect_simple || (rep.simple && rep.connected));

    std::ostringstream sum;
    sum << "faces=" << rep.face_count << " quad=" << (faces_ok ? "yes" : "no")
        << " identity=" << (rep.edge_count_identity ? "yes" : "no")
        << " simple=" << (rep.simple ? "yes" : "no")
        << " connected=" << (rep.connected ? "yes" : "no");
    if (!rep.offending.empty()) {
        sum << " offending=" << rep.offending.front().to_string(e);
    }
    rep.summary = sum.str();
    return rep;
}

// --- editor helpers ---------------------------------------------------------

namespace {

void require_fresh_handle(const Embedding& e, const FaceWalk& f) {
    if (f.owner != e.fingerprint())
        throw std::invalid_argument("stale face handle: embedding was edited since the trace");
}

// Insert `seq` into rot next to dart p: after it when o == +1 (reading order
// p, seq...), before it when o == -1 (reading order ...seq reversed..., p).
void insert_at_corner(std::vector<Dart>& rot, Dart p, int o, const std::vector<Dart>& seq) {
    auto it = std::find(rot.begin(), rot.end(), p);
    if (it == rot.end()) throw std::runtime_error("corner dart not found in rotation");
    if (o == 1) {
        rot.insert(it + 1, seq.begin(), seq.end());
    } else {
        std::vector<Dart> rev(seq.rbegin(), seq.rend());
        rot.insert(it, rev.begin(), rev.end());
    }
}

// Rebuild an embedding after adding vertices/edges; rotations are supplied
// keyed by label so sorted-vertex reindexing stays correct.
Embedding assemble(const std::vector<std::string>& labels,
                   const std::vector<std::array<std::string, 2>>& edges_by_label,
                   const std::vector<int>& sigs,
                   const std::vector<std::pair<std::string, std::vector<Dart>>>& rots) {
    Graph base(labels, {});
    std::vector<std::array<int, 2>> edges;
    for (const auto& e : edges_by_label)
        edges.push_back({base.index_of(e[0]), base.index_of(e[1])});
    Embedding out;
    out.graph = Graph(base.labels(), edges);
    out.signatures = sigs;
    out.rotations.assign(out.graph.num_vertices(), {});
    for (const auto& [label, rot] : rots) out.rotations[out.graph.index_of(label)] = rot;
    out.validate();
    return out;
}

}  // namespace

SplitResult split_edge_into_digon(const Embedding& e, int edge) {
    if (edge < 0 || edge >= e.graph.num_edges())
        throw std::invalid_argument("split_edge_into_digon: no such edge");
    int m = e.graph.num_edges();

    // The new parallel edge is laid alongside `edge` inside its first-listed
    // face F: F keeps the walk with the copy substituted, the strip between
    // the two becomes the digon, and the other face of `edge` is untouched.
    auto faces = trace_faces(e);
    const FaceWalk* F = nullptr;
    int i = -1;
    for (const auto& f : faces) {
        for (int k = 0; k < f.degree() && i < 0; ++k)
            if (dart_edge(f.dart(k)) == edge) {
                F = &f;
                i = k;
            }
        if (F) break;
    }
    if (!F) throw std::runtime_error("split_edge_into_digon: edge missing from trace");

    int deg = F->degree();
    Dart D = F->dart(i);
    int s = dart_end(D);
    int u = e.dart_vertex(D);
    int o_near = F->orientation(i);
    int o_far = F->orientation((i + 1) % deg);
    Dart p_far = dart_mate(D);
    int far_vertex = e.dart_vertex(p_far);

    Embedding out = e;
    {
        std::vector<std::array<int, 2>> edges = out.graph.edges();
        edges.push_back(edges[edge]);
        out.graph = Graph(out.graph.labels(), edges);
    }
    out.signatures.push_back(out.signatures[edge]);

    // Far corner: the copy's dart goes right where F leaves the arrival.
    insert_at_corner(out.rotations[far_vertex], p_far, o_far, {make_dart(m, 1 - s)});
    // Near corner: immediately on F's side of the exit dart D.
    {
        auto& rot = out.rotations[u];
        auto it = std::find(rot.begin(), rot.end(), D);
        if (it == rot.end()) throw std::runtime_error("split_edge_into_digon: exit dart lost");
        rot.insert(o_near == 1 ? it : it + 1, make_dart(m, s));
    }
    out.validate();

    // F, the first-listed former face, now holds the copy; the spec names
    // that side e1, so the ids swap and e1 keeps the original id.
    for (auto& rot : out.rotations)
        for (auto& d : rot) {
            if (dart_edge(d) == edge) d = make_dart(m, dart_end(d));
            else if (dart_edge(d) == m) d = make_dart(edge, dart_end(d));
        }
    out.validate();

    bool digon_found = false;
    for (const auto& f : trace_faces(out)) {
        if (f.degree() != 2) continue;
        auto ids = f.edge_ids();
        if (std::set<int>(ids.begin(), ids.end()) == std::set<int>{edge, m}) digon_found = true;
    }
    if (!digon_found) throw std::runtime_error("split_edge_into_digon: no digon between the pair");
    return {out, edge, m};
}

DigonPairResult insert_digon_pair_in_face(const Embedding& e, const FaceWalk& f,
                                          const std::string& a, const std::string& b) {
    require_fresh_handle(e, f);
    if (f.degree() != 4) throw std::invalid_argument("insert_digon_pair_in_face: face is not a quadrilateral");
    auto vs = f.vertex_indices(e);
    std::set<int> distinct(vs.begin(), vs.end());
    if (distinct.size() != 4)
        throw std::invalid_argument("insert_digon_pair_in_face: face corners are not distinct");
    int ai = e.graph.index_of(a), bi = e.graph.index_of(b);
    int i = -1;
    for (int k = 0; k < 4; ++k)
        if (vs[k] == ai) i = k;
    if (i < 0 || vs[(i + 2) % 4] != bi)
        throw std::invalid_argument("insert_digon_pair_in_face: vertices are not opposite corners of the face");
    int j = (i + 2) % 4;

    int m = e.graph.num_edges();
    int d1 = m, d2 = m + 1;
    Dart p_a = dart_mate(f.dart((i + 3) % 4));
    Dart p_b = dart_mate(f.dart((j + 3) % 4));
    int o_a = f.orientation(i), o_b = f.orientation(j);
    int sig = o_a * o_b;

    Embedding out = e;
    {
        std::vector<std::array<int, 2>> edges = out.graph.edges();
        edges.push_back({ai, bi});
        edges.push_back({ai, bi});
        out.graph = Graph(out.graph.labels(), edges);
    }
    out.signatures.push_back(sig);
    out.signatures.push_back(sig);
    insert_at_corner(out.rotations[ai], p_a, o_a, {make_dart(d1, 0), make_dart(d2, 0)});
    insert_at_corner(out.rotations[bi], p_b, o_b, {make_dart(d2, 1), make_dart(d1, 1)});
    out.validate();

    // The edit must leave triangle(d1) + digon + triangle(d2) where f was.
    auto faces = trace_faces(out);
    bool digon_found = false, t1_found = false, t2_found = false;
    std::set<int> t1 = {dart_edge(f.dart((i + 3) % 4)), d1, dart_edge(f.dart(j))};
    std::set<int> t2 = {dart_edge(f.dart(i)), dart_edge(f.dart((i + 1) % 4)), d2};
    for (const auto& fw : faces) {
        auto ids = fw.edge_ids();
        std::set<int> s(ids.begin(), ids.end());
        if (fw.degree() == 2 && s == std::set<int>{d1, d2}) digon_found = true;
        if (fw.degree() == 3 && s == t1) t1_found = true;
        if (fw.degree() == 3 && s == t2) t2_found = true;
    }
    if (!digon_found || !t1_found || !t2_found)
        throw std::runtime_error("insert_digon_pair_in_face: expected face structure not produced");
    return {out, d1, d2};
}

LoopResult insert_loop_in_face(const Embedding& e, const FaceWalk& f, const std::string& v) {
    require_fresh_handle(e, f);
    int vi = e.graph.index_of(v);
    if (vi < 0) throw std::invalid_argument("insert_loop_in_face: no such vertex");
    auto vs = f.vertex_indices(e);
    int i = -1;
    for (size_t k = 0; k < vs.size(); ++k)
        if (vs[k] == vi) { i = static_cast<int>(k); break; }
    if (i < 0) throw std::invalid_argument("insert_loop_in_face: vertex not on face");

    int m = e.graph.num_edges();
    int deg = f.degree();
    Dart p = dart_mate(f.dart((i + deg - 1) % deg));
    int o = f.orientation(i);

    Embedding out = e;
    {
        std::vector<std::array<int, 2>> edges = out.graph.edges();
        edges.push_back({vi, vi});
        out.graph = Graph(out.graph.labels(), edges);
    }
    out.signatures.push_back(1);
    insert_at_corner(out.rotations[vi], p, o, {make_dart(m, 0), make_dart(m, 1)});
    out.validate();

    auto faces = trace_faces(out);
    bool monogon = false, grown = false;
    for (const auto& fw : faces) {
        if (fw.degree() == 1 && dart_edge(fw.dart(0)) == m) monogon = true;
        if (fw.degree() == deg + 1) {
            auto ids = fw.edge_ids();
            if (std::count(ids.begin(), ids.end(), m) == 1) grown = true;
        }
    }
    if (!monogon || !grown)
        throw std::runtime_error("insert_loop_in_face: expected face structure not produced");
    return {out, m};
}

Embedding replace_digon_by_single_edge(const Embedding& e, int a, int b) {
    int m = e.graph.num_edges();
    if (a < 0 || b < 0 || a >= m || b >= m || a == b)
        throw std::invalid_argument("replace_digon_by_single_edge: bad edge pair");
    auto ea = e.graph.endpoints(a), eb = e.graph.endpoints(b);
    if (std::minmax(ea[0], ea[1]) != std::minmax(eb[0], eb[1]))
        throw std::invalid_argument("replace_digon_by_single_edge: edges are not parallel");
    bool digon = false;
    for (const auto& f : trace_faces(e)) {
        if (f.degree() != 2) continue;
        auto ids = f.edge_ids();
        std::set<int> s(ids.begin(), ids.end());
        if (s == std::set<int>{a, b}) digon = true;
    }
    if (!digon) throw std::invalid_argument("replace_digon_by_single_edge: edges do not bound a digon face");
    if (e.signatures[a] != e.signatures[b])
        throw std::runtime_error("replace_digon_by_single_edge: digon sides with unequal signatures");

    int drop = std::max(a, b);
    Embedding out = e;
    for (auto& rot : out.rotations)
        rot.erase(std::remove_if(rot.begin(), rot.end(),
                                 [&](Dart d) { return dart_edge(d) == drop; }),
                  rot.end());
    std::vector<std::array<int, 2>> edges = out.graph.edges();
    edges.erase(edges.begin() + drop);
    out.signatures.erase(out.signatures.begin() + drop);
    // Compact ids: every edge past `drop` shifts down by one.
    for (auto& rot : out.rotations)
        for (auto& d : rot)
            if (dart_edge(d) > drop) d = make_dart(dart_edge(d) - 1, dart_end(d));
    out.graph = Graph(out.graph.labels(), edges);
    out.validate();
    return out;
}

Degree2Result insert_degree2_vertex_in_face(const Embedding& e, const FaceWalk& f) {
    require_fresh_handle(e, f);
    if (f.degree() != 4) throw std::invalid_argument("insert_degree2_vertex_in_face: face is not a quadrilateral");
    auto vs = f.vertex_indices(e);
    std::set<int> distinct(vs.begin(), vs.end());
    if (distinct.size() != 4)
        throw std::invalid_argument("insert_degree2_vertex_in_face: face corners are not distinct");

    std::string fresh;
    for (int i = e.graph.num_vertices();; ++i) {
        fresh = atom_label(i);
        if (!e.graph.has_vertex(fresh)) break;
    }
    int a = vs[0], b = vs[2];
    Dart p_a = dart_mate(f.dart(3));
    Dart p_b = dart_mate(f.dart(1));
    int o_a = f.orientation(0), o_b = f.orientation(2);
    int m = e.graph.num_edges();

    std::vector<std::string> labels = e.graph.labels();
    labels.push_back(fresh);
    std::vector<std::array<std::string, 2>> edges_by_label;
    for (int i = 0; i < m; ++i)
        edges_by_label.push_back({e.graph.label(e.graph.endpoints(i)[0]),
                                  e.graph.label(e.graph.endpoints(i)[1])});
    edges_by_label.push_back({e.graph.label(a), fresh});
    edges_by_label.push_back({e.graph.label(b), fresh});
    std::vector<int> sigs = e.signatures;
    sigs.push_back(1);
    sigs.push_back(o_a * o_b);

    std::vector<std::pair<std::string, std::vector<Dart>>> rots;
    for (int v = 0; v < e.graph.num_vertices(); ++v) {
        std::vector<Dart> rot = e.rotations[v];
        if (v == a) insert_at_corner(rot, p_a, o_a, {make_dart(m, 0)});
        if (v == b) insert_at_corner(rot, p_b, o_b, {make_dart(m + 1, 0)});
        rots.push_back({e.graph.label(v), rot});
    }
    rots.push_back({fresh, {make_dart(m, 1), make_dart(m + 1, 1)}});
    Embedding out = assemble(labels, edges_by_label, sigs, rots);

    // Both faces at the new vertex must be quadrilaterals using each new
    // edge once.
    int quads = 0;
    int x = out.graph.index_of(fresh);
    for (const auto& fw : trace_faces(out)) {
        if (!fw.contains_vertex(out, x)) continue;
        auto ids = fw.edge_ids();
        if (fw.degree() == 4 && std::count(ids.begin(), ids.end(), m) == 1 &&
            std::count(ids.begin(), ids.end(), m + 1) == 1)
            ++quads;
    }
    if (quads != 2)
        throw std::runtime_error("insert_degree2_vertex_in_face: expected two new quadrilaterals");
    return {out, fresh, m, m + 1};
}

// --- text format -------------------------------------------------------------

std::string encode_emb(const Embedding& e) {
    std::ostringstream out;
    out << "quademb 1\n";
    out << "vertices " << e.graph.num_vertices() << "\n";
    out << "edges " << e.graph.num_edges() << "\n";
    for (int i = 0; i < e.graph.num_edges(); ++i)
        out << "edge " << i << " " << e.graph.label(e.graph.endpoints(i)[0]) << " "
            << e.graph.label(e.graph.endpoints(i)[1]) << " "
            << (e.signatures[i] == 1 ? "+1" : "-1") << "\n";
    for (int v = 0; v < e.graph.num_vertices(); ++v) {
        out << "rot " << e.graph.label(v);
        const auto& rot = e.rotations[v];
        if (!rot.empty()) {
            size_t start = std::min_element(rot.begin(), rot.end()) - rot.begin();
            for (size_t k = 0; k < rot.size(); ++k) {
                Dart d = rot[(start + k) % rot.size()];
                out << " " << dart_edge(d) << "." << dart_end(d);
            }
        }
        out << "\n";
    }
    return out.str();
}

Embedding decode_emb(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto next_line = [&](const char* what) {
        if (!std::getline(in, line))
            throw std::invalid_argument("decode_emb: line " + std::to_string(lineno + 1) +
                                        ": missing " + what);
        ++lineno;
    };
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("decode_emb: line " + std::to_string(lineno) + ": " + msg);
    };

    next_line("header");
    if (line != "quademb 1") fail("expected 'quademb 1'");
    next_line("vertex count");
    int n = 0, m = 0;
    {
        std::istringstream s(line);
        std::string tag;
        if (!(s >> tag >> n) || tag != "vertices") fail("expected 'vertices <n>'");
    }
    next_line("edge count");
    {
        std::istringstream s(line);
        std::string tag;
        if (!(s >> tag >> m) || tag != "edges") fail("expected 'edges <m>'");
    }
    std::vector<std::array<std::string, 2>> raw_edges;
    std::vector<int> sigs;
    for (int i = 0; i < m; ++i) {
        next_line("edge line");
        std::istringstream s(line);
        std::string tag, u, v, sign;
        int id;
        if (!(s >> tag >> id >> u >> v >> sign) || tag != "edge") fail("expected 'edge <id> <u> <v> <sign>'");
        if (id != i) fail("edge ids must be contiguous from 0");
        if (sign == "+1") sigs.push_back(1);
        else if (sign == "-1") sigs.push_back(-1);
        else fail("sign must be +1 or -1");
        raw_edges.push_back({u, v});
    }
    std::vector<std::string> labels;
    std::vector<std::pair<std::string, std::vector<Dart>>> rots;
    std::set<std::string> seen;
    for (int i = 0; i < n; ++i) {
        next_line("rot line");
        std::istringstream s(line);
        std::string tag, v;
        if (!(s >> tag >> v) || tag != "rot") fail("expected 'rot <v> <dart>...'");
        if (!seen.insert(v).second) fail("duplicate rot line for vertex " + v);
        labels.push_back(v);
        std::vector<Dart> rot;
        std::string tok;
        while (s >> tok) {
            auto dot = tok.find('.');
            if (dot == std::string::npos) fail("bad dart token: " + tok);
            int eid, end;
            try {
                eid = std::stoi(tok.substr(0, dot));
                end = std::stoi(tok.substr(dot + 1));
            } catch (...) {
                fail("bad dart token: " + tok);
                return {};
            }
            if (end != 0 && end != 1) fail("dart end must be 0 or 1: " + tok);
            rot.push_back(make_dart(eid, end));
        }
        rots.push_back({v, rot});
    }
    for (const auto& e : raw_edges)
        for (const auto& t : e)
            if (!seen.count(t)) fail("edge references unknown vertex " + t);
    return assemble(labels, raw_edges, sigs, rots);
}

std::map<int, int> face_degree_multiset(const std::vector<FaceWalk>& faces) {
    std::map<int, int> out;
    for (const auto& f : faces) ++out[f.degree()];
    return out;
}

std::vector<std::vector<std::string>> face_label_cycles(const Embedding& e) {
    std::vector<std::vector<std::string>> out;
    for (const auto& f : trace_faces(e)) {
        auto labels = f.vertex_labels(e);
        size_t len = labels.size();
        std::vector<std::string> best;
        for (int refl = 0; refl < 2; ++refl) {
            for (size_t r = 0; r < len; ++r) {
                std::vector<std::string> cand;
                for (size_t k = 0; k < len; ++k) cand.push_back(labels[(r + k) % len]);
                if (best.empty() || cand < best) best = cand;
            }
            std::reverse(labels.begin(), labels.end());
        }
        out.push_back(best);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace quademb
