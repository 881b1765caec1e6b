#include "quademb/voltage.hpp"

#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace quademb {

void VoltageGraph::validate() const {
    base.validate();
    if (group_order < 1) throw std::invalid_argument("voltage graph: group order must be >= 1");
    if (static_cast<int>(assignment.size()) != base.graph.num_edges())
        throw std::invalid_argument("voltage graph: assignment must cover every edge");
    for (int a : assignment)
        if (a < 0 || a >= group_order)
            throw std::invalid_argument("voltage graph: value outside Z_k");
}

int total_voltage(const VoltageGraph& vg, int start_vertex, const std::vector<WalkStep>& walk) {
    vg.validate();
    int at = start_vertex;
    long long sum = 0;
    for (const auto& step : walk) {
        if (step.edge < 0 || step.edge >= vg.base.graph.num_edges())
            throw std::invalid_argument("total_voltage: no such edge");
        const auto& ep = vg.base.graph.endpoints(step.edge);
        int from = step.forward ? ep[0] : ep[1];
        int to = step.forward ? ep[1] : ep[0];
        if (from != at) throw std::invalid_argument("total_voltage: walk discontinuity");
        at = to;
        sum += step.forward ? vg.assignment[step.edge] : -vg.assignment[step.edge];
    }
    int k = vg.group_order;
    return static_cast<int>(((sum % k) + k) % k);
}

int face_total_voltage(const VoltageGraph& vg, const FaceWalk& f) {
    std::vector<WalkStep> walk;
    for (int i = 0; i < f.degree(); ++i) {
        Dart d = f.dart(i);
        walk.push_back({dart_edge(d), dart_end(d) == 0});
    }
    int start = f.degree() ? vg.base.dart_vertex(f.dart(0)) : 0;
    return total_voltage(vg, start, walk);
}

std::string derived_vertex_label(const std::string& base_label, int a) {
    return pair_label(base_label, std::to_string(a));
}

int derived_edge_id(const VoltageGraph& vg, int base_edge, int a) {
    return base_edge * vg.group_order + a;
}

Embedding derived_embedding(const VoltageGraph& vg) {
    vg.validate();
    const Embedding& b = vg.base;
    int k = vg.group_order;
    int n = b.graph.num_vertices();
    int m = b.graph.num_edges();

    std::vector<std::string> labels;
    labels.reserve(n * k);
    for (int v = 0; v < n; ++v)
        for (int a = 0; a < k; ++a) labels.push_back(derived_vertex_label(b.graph.label(v), a));
    Graph shell(labels, {});
    auto vid = [&](int v, int a) {
        return shell.index_of(derived_vertex_label(b.graph.label(v), a));
    };
    std::vector<std::array<int, 2>> edges(m * k);
    std::vector<int> sigs(m * k);
    for (int e = 0; e < m; ++e) {
        const auto& ep = b.graph.endpoints(e);
        for (int a = 0; a < k; ++a) {
            int id = derived_edge_id(vg, e, a);
            edges[id] = {vid(ep[0], a), vid(ep[1], (a + vg.assignment[e]) % k)};
            sigs[id] = b.signatures[e];
        }
    }
    Embedding out;
    out.graph = Graph(shell.labels(), edges);
    out.signatures = sigs;
    out.rotations.assign(n * k, {});
    // Natural bijection: the rotation at (u, a) mirrors the rotation at u.
    // A dart (e, 0) at u lifts to (E(e, a), 0); a dart (e, 1) at u lifts to
    // (E(e, a - alpha(e)), 1) since that copy ends at level a.
    for (int v = 0; v < n; ++v) {
        for (int a = 0; a < k; ++a) {
            std::vector<Dart>& rot = out.rotations[vid(v, a)];
            for (Dart d : b.rotations[v]) {
                int e = dart_edge(d);
                if (dart_end(d) == 0) {
                    rot.push_back(make_dart(derived_edge_id(vg, e, a), 0));
                } else {
                    int level = ((a - vg.assignment[e]) % k + k) % k;
                    rot.push_back(make_dart(derived_edge_id(vg, e, level), 1));
                }
            }
        }
    }
    out.validate();
    return out;
}

LiftPrediction predict_lift(const VoltageGraph& vg) {
    vg.validate();
    int k = vg.group_order;
    LiftPrediction out;
    for (const auto& f : trace_faces(vg.base)) {
        int t = face_total_voltage(vg, f);
        int r = k / std::gcd(k, t);  // order of t in Z_k; gcd(k, 0) == k
        out.face_degrees[f.degree() * r] += k / r;
        out.face_count += k / r;
    }

    // Orientability: reachability over (vertex, orientation class, voltage)
    // states; each component contributes independently.
    auto base_orient = orientability(vg.base);
    if (base_orient.orientable) {
        out.orientable = true;
        return out;
    }
    const Graph& g = vg.base.graph;
    auto comp = g.component_of();
    int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<int> root(ncomp, -1);
    for (int v = g.num_vertices() - 1; v >= 0; --v) root[comp[v]] = v;
    bool derived_nonorientable = false;
    for (int c = 0; c < ncomp && !derived_nonorientable; ++c) {
        int n = g.num_vertices();
        auto state = [&](int v, int s, int a) { return (v * 2 + s) * k + a; };
        std::vector<bool> seen(n * 2 * k, false);
        std::queue<std::array<int, 3>> q;
        q.push({root[c], 0, 0});  // s = 0 orientation-preserving, 1 reversing
        seen[state(root[c], 0, 0)] = true;
        while (!q.empty()) {
            auto [v, s, a] = q.front();
            q.pop();
            for (int e : g.incident_edges(v)) {
                const auto& ep = g.endpoints(e);
                int flip = vg.base.signatures[e] == -1 ? 1 : 0;
                // Loops can be traversed in both directions from v.
                for (int dir = 0; dir < 2; ++dir) {
                    int from = dir == 0 ? ep[0] : ep[1];
                    int to = dir == 0 ? ep[1] : ep[0];
                    if (from != v) continue;
                    int na = ((a + (dir == 0 ? vg.assignment[e] : -vg.assignment[e])) % k + k) % k;
                    int ns = s ^ flip;
                    if (!seen[state(to, ns, na)]) {
                        seen[state(to, ns, na)] = true;
                        q.push({to, ns, na});
                    }
                }
            }
        }
        if (seen[state(root[c], 1, 0)]) derived_nonorientable = true;
    }
    out.orientable = !derived_nonorientable;
    return out;
}

std::string encode_vlt(const VoltageGraph& vg) {
    std::ostringstream out;
    out << "voltages " << vg.group_order << "\n";
    for (int e = 0; e < vg.base.graph.num_edges(); ++e)
        out << "v " << e << " " << vg.assignment[e] << "\n";
    return out.str();
}

VoltageGraph decode_vlt(const std::string& text, const Embedding& base) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("decode_vlt: line " + std::to_string(lineno) + ": " + msg);
    };
    if (!std::getline(in, line)) fail("empty input");
    ++lineno;
    std::istringstream head(line);
    std::string tag;
    int k = 0;
    if (!(head >> tag >> k) || tag != "voltages") fail("expected 'voltages <k>'");
    VoltageGraph vg;
    vg.base = base;
    vg.group_order = k;
    vg.assignment.assign(base.graph.num_edges(), -1);
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream s(line);
        std::string vt;
        int e, val;
        if (!(s >> vt >> e >> val) || vt != "v") fail("expected 'v <edge-id> <value>'");
        if (e < 0 || e >= base.graph.num_edges()) fail("no such edge");
        vg.assignment[e] = val;
    }
    for (int a : vg.assignment)
        if (a < 0) throw std::invalid_argument("decode_vlt: assignment does not cover every edge");
    vg.validate();
    return vg;
}

}  // namespace quademb
