#include "quademb/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace quademb {

std::string pair_label(const std::string& a, const std::string& b) {
    return "(" + a + "," + b + ")";
}

std::string atom_label(int value) { return std::to_string(value); }

bool label_less(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

Graph::Graph(std::vector<std::string> labels, std::vector<std::array<int, 2>> edges)
    : labels_(std::move(labels)), edges_(std::move(edges)) {
    // Vertices are kept sorted so that identical label sets produce identical
    // vertex indexing no matter how the graph was assembled.
    std::vector<int> order(labels_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return label_less(labels_[x], labels_[y]); });
    std::vector<int> where(labels_.size());
    std::vector<std::string> sorted;
    sorted.reserve(labels_.size());
    for (size_t i = 0; i < order.size(); ++i) {
        where[order[i]] = static_cast<int>(i);
        sorted.push_back(labels_[order[i]]);
    }
    labels_ = std::move(sorted);
    for (auto& e : edges_) {
        e[0] = where.at(e[0]);
        e[1] = where.at(e[1]);
    }
    rebuild_index();
    check_edges();
}

void Graph::rebuild_index() {
    index_.clear();
    for (size_t i = 0; i < labels_.size(); ++i) {
        auto [it, fresh] = index_.emplace(labels_[i], static_cast<int>(i));
        if (!fresh) throw std::invalid_argument("duplicate vertex label: " + labels_[i]);
    }
}

void Graph::check_edges() const {
    for (const auto& e : edges_) {
        if (e[0] < 0 || e[0] >= num_vertices() || e[1] < 0 || e[1] >= num_vertices())
            throw std::invalid_argument("edge endpoint outside vertex set");
    }
}

int Graph::index_of(const std::string& label) const {
    auto it = index_.find(label);
    return it == index_.end() ? -1 : it->second;
}

int Graph::degree(int v) const {
    int d = 0;
    for (const auto& e : edges_) {
        if (e[0] == v) ++d;
        if (e[1] == v) ++d;
    }
    return d;
}

std::vector<int> Graph::incident_edges(int v) const {
    std::vector<int> out;
    for (int e = 0; e < num_edges(); ++e)
        if (edges_[e][0] == v || edges_[e][1] == v) out.push_back(e);
    return out;
}

std::vector<int> Graph::neighbors(int v) const {
    std::set<int> nb;
    for (const auto& e : edges_) {
        if (e[0] == v && e[1] != v) nb.insert(e[1]);
        if (e[1] == v && e[0] != v) nb.insert(e[0]);
    }
    return {nb.begin(), nb.end()};
}

int Graph::find_edge(int u, int v) const {
    for (int e = 0; e < num_edges(); ++e) {
        if ((edges_[e][0] == u && edges_[e][1] == v) ||
            (edges_[e][0] == v && edges_[e][1] == u))
            return e;
    }
    return -1;
}

bool Graph::is_simple() const {
    std::set<std::pair<int, int>> seen;
    for (const auto& e : edges_) {
        if (e[0] == e[1]) return false;
        auto key = std::minmax(e[0], e[1]);
        if (!seen.insert({key.first, key.second}).second) return false;
    }
    return true;
}

std::vector<int> Graph::component_of() const {
    std::vector<int> comp(num_vertices(), -1);
    int next = 0;
    for (int s = 0; s < num_vertices(); ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = next;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (const auto& e : edges_) {
                int other = -1;
                if (e[0] == v) other = e[1];
                else if (e[1] == v) other = e[0];
                if (other >= 0 && comp[other] < 0) {
                    comp[other] = next;
                    q.push(other);
                }
            }
        }
        ++next;
    }
    return comp;
}

bool Graph::is_connected() const {
    if (num_vertices() <= 1) return true;
    auto comp = component_of();
    return std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });
}

bool Graph::same_labeled_graph(const Graph& other) const {
    if (labels_ != other.labels_) return false;
    auto pairs = [](const Graph& g) {
        std::multiset<std::pair<int, int>> out;
        for (const auto& e : g.edges_) {
            auto mm = std::minmax(e[0], e[1]);
            out.insert({mm.first, mm.second});
        }
        return out;
    };
    return pairs(*this) == pairs(other);
}

Graph Graph::relabeled(const std::unordered_map<std::string, std::string>& map) const {
    std::vector<std::string> labels;
    labels.reserve(labels_.size());
    for (const auto& l : labels_) {
        auto it = map.find(l);
        labels.push_back(it == map.end() ? l : it->second);
    }
    return Graph(labels, edges_);
}

Graph Graph::canonical() const {
    std::unordered_map<std::string, std::string> map;
    for (int i = 0; i < num_vertices(); ++i) map[labels_[i]] = atom_label(i);
    return relabeled(map);
}

Graph Graph::complete(int n) {
    if (n < 1) throw std::invalid_argument("complete: n >= 1 required");
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(atom_label(i));
    std::vector<std::array<int, 2>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
    return Graph(labels, edges);
}

Graph Graph::complete_bipartite(int a, int b) {
    if (a < 1 || b < 1) throw std::invalid_argument("complete_bipartite: sides >= 1 required");
    std::vector<std::string> labels;
    for (int i = 0; i < a + b; ++i) labels.push_back(atom_label(i));
    std::vector<std::array<int, 2>> edges;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) edges.push_back({i, a + j});
    Graph g(labels, edges);
    return g;
}

Graph Graph::cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle: n >= 3 required for a simple cycle");
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(atom_label(i));
    std::vector<std::array<int, 2>> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    return Graph(labels, edges);
}

Graph Graph::path(int n) {
    if (n < 1) throw std::invalid_argument("path: n >= 1 required");
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(atom_label(i));
    std::vector<std::array<int, 2>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return Graph(labels, edges);
}

Graph Graph::edgeless(int n) {
    if (n < 1) throw std::invalid_argument("edgeless: n >= 1 required");
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(atom_label(i));
    return Graph(labels, {});
}

Graph Graph::from_edge_list(const std::vector<std::string>& labels,
                            const std::vector<std::array<std::string, 2>>& edges) {
    Graph base(labels, {});
    std::vector<std::array<int, 2>> resolved;
    std::set<std::pair<int, int>> seen;
    for (const auto& e : edges) {
        int u = base.index_of(e[0]);
        int v = base.index_of(e[1]);
        if (u < 0 || v < 0)
            throw std::invalid_argument("edge references undeclared vertex: " + e[0] + " " + e[1]);
        if (u == v) throw std::invalid_argument("loop rejected in edge list: " + e[0]);
        auto key = std::minmax(u, v);
        if (!seen.insert({key.first, key.second}).second)
            throw std::invalid_argument("duplicate edge rejected: " + e[0] + " " + e[1]);
        resolved.push_back({u, v});
    }
    return Graph(base.labels(), resolved);
}

Graph composition(const Graph& g, const Graph& h) {
    if (!g.is_simple() || !h.is_simple())
        throw std::invalid_argument("composition requires simple graphs");
    std::vector<std::string> labels;
    for (int a = 0; a < g.num_vertices(); ++a)
        for (int b = 0; b < h.num_vertices(); ++b)
            labels.push_back(pair_label(g.label(a), h.label(b)));
    Graph out(labels, {});
    std::vector<std::array<int, 2>> edges;
    auto idx = [&](int a, int b) {
        return out.index_of(pair_label(g.label(a), h.label(b)));
    };
    // Cross edges along G, then H copies inside each G-vertex.
    std::set<std::pair<int, int>> acc;
    for (const auto& eg : g.edges())
        for (int b1 = 0; b1 < h.num_vertices(); ++b1)
            for (int b2 = 0; b2 < h.num_vertices(); ++b2)
                acc.insert(std::minmax(idx(eg[0], b1), idx(eg[1], b2)));
    for (int a = 0; a < g.num_vertices(); ++a)
        for (const auto& eh : h.edges())
            acc.insert(std::minmax(idx(a, eh[0]), idx(a, eh[1])));
    for (const auto& p : acc) edges.push_back({p.first, p.second});
    return Graph(out.labels(), edges);
}

namespace {

std::pair<Graph, Graph> make_disjoint(const Graph& g, const Graph& h) {
    bool collision = false;
    for (const auto& l : h.labels())
        if (g.has_vertex(l)) collision = true;
    if (!collision) return {g, h};
    std::unordered_map<std::string, std::string> mg, mh;
    for (const auto& l : g.labels()) mg[l] = "0:" + l;
    for (const auto& l : h.labels()) mh[l] = "1:" + l;
    return {g.relabeled(mg), h.relabeled(mh)};
}

}  // namespace

Graph disjoint_union(const Graph& g, const Graph& h) {
    auto [a, b] = make_disjoint(g, h);
    std::vector<std::string> labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    Graph out(labels, {});
    std::vector<std::array<int, 2>> edges;
    for (const auto& e : a.edges())
        edges.push_back({out.index_of(a.label(e[0])), out.index_of(a.label(e[1]))});
    for (const auto& e : b.edges())
        edges.push_back({out.index_of(b.label(e[0])), out.index_of(b.label(e[1]))});
    return Graph(out.labels(), edges);
}

Graph join(const Graph& g, const Graph& h) {
    auto [a, b] = make_disjoint(g, h);
    Graph u = disjoint_union(a, b);
    std::vector<std::array<int, 2>> edges = u.edges();
    for (const auto& la : a.labels())
        for (const auto& lb : b.labels())
            edges.push_back({u.index_of(la), u.index_of(lb)});
    return Graph(u.labels(), edges);
}

namespace {

bool match_rest(const Graph& g, std::vector<bool>& covered, std::vector<int>& chosen) {
    int v = -1;
    for (int i = 0; i < g.num_vertices(); ++i)
        if (!covered[i]) { v = i; break; }
    if (v < 0) return true;
    for (int e = 0; e < g.num_edges(); ++e) {
        const auto& ep = g.endpoints(e);
        int other;
        if (ep[0] == v) other = ep[1];
        else if (ep[1] == v) other = ep[0];
        else continue;
        if (other == v || covered[other]) continue;
        covered[v] = covered[other] = true;
        chosen.push_back(e);
        if (match_rest(g, covered, chosen)) return true;
        chosen.pop_back();
        covered[v] = covered[other] = false;
    }
    return false;
}

}  // namespace

std::optional<Matching> find_perfect_matching(const Graph& g) {
    if (!g.is_simple()) throw std::invalid_argument("find_perfect_matching requires a simple graph");
    if (g.num_vertices() % 2 != 0) return std::nullopt;
    std::vector<bool> covered(g.num_vertices(), false);
    std::vector<int> chosen;
    if (!match_rest(g, covered, chosen)) return std::nullopt;
    std::sort(chosen.begin(), chosen.end());
    return Matching{chosen, true};
}

std::optional<std::vector<int>> find_cycle(const Graph& g) {
    // Loops and parallel pairs first: shortest possible cycles.
    for (int e = 0; e < g.num_edges(); ++e)
        if (g.is_loop(e)) return std::vector<int>{g.endpoints(e)[0]};
    {
        std::set<std::pair<int, int>> seen;
        for (int e = 0; e < g.num_edges(); ++e) {
            auto mm = std::minmax(g.endpoints(e)[0], g.endpoints(e)[1]);
            if (!seen.insert({mm.first, mm.second}).second)
                return std::vector<int>{mm.first, mm.second};
        }
    }
    // BFS forest; the first non-tree edge closes a cycle through tree paths.
    std::vector<int> parent(g.num_vertices(), -2);
    std::vector<int> parent_edge(g.num_vertices(), -1);
    for (int s = 0; s < g.num_vertices(); ++s) {
        if (parent[s] != -2) continue;
        parent[s] = -1;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int e : g.incident_edges(v)) {
                const auto& ep = g.endpoints(e);
                int w = ep[0] == v ? ep[1] : ep[0];
                if (parent[w] == -2) {
                    parent[w] = v;
                    parent_edge[w] = e;
                    q.push(w);
                } else if (e != parent_edge[v] && e != parent_edge[w]) {
                    // Walk both endpoints up to their meeting point.
                    std::vector<int> pv, pw;
                    for (int x = v; x != -1; x = parent[x]) pv.push_back(x);
                    for (int x = w; x != -1; x = parent[x]) pw.push_back(x);
                    std::set<int> on_pv(pv.begin(), pv.end());
                    int meet = -1;
                    for (int x : pw)
                        if (on_pv.count(x)) { meet = x; break; }
                    std::vector<int> cycle;
                    for (int x = v; x != meet; x = parent[x]) cycle.push_back(x);
                    cycle.push_back(meet);
                    std::vector<int> back;
                    for (int x = w; x != meet; x = parent[x]) back.push_back(x);
                    std::reverse(back.begin(), back.end());
                    cycle.insert(cycle.end(), back.begin(), back.end());
                    return cycle;
                }
            }
        }
    }
    return std::nullopt;
}

std::vector<int> cycle_edges(const Graph& g, const std::vector<int>& cycle) {
    std::vector<int> out;
    if (cycle.size() == 1) {
        for (int e = 0; e < g.num_edges(); ++e)
            if (g.is_loop(e) && g.endpoints(e)[0] == cycle[0]) { out.push_back(e); return out; }
        throw std::invalid_argument("cycle_edges: no loop at given vertex");
    }
    if (cycle.size() == 2) {
        // Parallel pair.
        std::vector<int> ids;
        for (int e = 0; e < g.num_edges(); ++e) {
            auto mm = std::minmax(g.endpoints(e)[0], g.endpoints(e)[1]);
            if (mm == std::minmax(cycle[0], cycle[1])) ids.push_back(e);
        }
        if (ids.size() < 2) throw std::invalid_argument("cycle_edges: no parallel pair");
        return {ids[0], ids[1]};
    }
    for (size_t i = 0; i < cycle.size(); ++i) {
        int e = g.find_edge(cycle[i], cycle[(i + 1) % cycle.size()]);
        if (e < 0) throw std::invalid_argument("cycle_edges: vertices not adjacent");
        out.push_back(e);
    }
    return out;
}

Graph subdivide_edge(const Graph& g, int e) {
    if (e < 0 || e >= g.num_edges()) throw std::invalid_argument("subdivide_edge: no such edge");
    std::string fresh;
    for (int i = g.num_vertices();; ++i) {
        fresh = atom_label(i);
        if (!g.has_vertex(fresh)) break;
    }
    std::vector<std::string> labels = g.labels();
    labels.push_back(fresh);
    Graph base(labels, {});
    std::vector<std::array<int, 2>> edges;
    int w = base.index_of(fresh);
    for (int i = 0; i < g.num_edges(); ++i) {
        int a = base.index_of(g.label(g.endpoints(i)[0]));
        int b = base.index_of(g.label(g.endpoints(i)[1]));
        if (i == e) {
            edges.push_back({a, w});
            edges.push_back({w, b});
        } else {
            edges.push_back({a, b});
        }
    }
    return Graph(base.labels(), edges);
}

std::string encode_g(const Graph& g) {
    std::ostringstream out;
    out << "graph " << g.num_vertices() << " " << g.num_edges() << "\n";
    for (int e = 0; e < g.num_edges(); ++e)
        out << "e " << e << " " << g.label(g.endpoints(e)[0]) << " "
            << g.label(g.endpoints(e)[1]) << "\n";
    return out.str();
}

Graph decode_g(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("decode_g: line " + std::to_string(lineno) + ": " + msg);
    };
    if (!std::getline(in, line)) fail("empty input");
    ++lineno;
    std::istringstream head(line);
    std::string tag;
    int n = 0, m = 0;
    if (!(head >> tag >> n >> m) || tag != "graph") fail("expected 'graph <n> <m>'");
    std::vector<std::string> labels;
    std::vector<std::array<std::string, 2>> raw;
    std::set<std::string> seen;
    for (int i = 0; i < m; ++i) {
        if (!std::getline(in, line)) { ++lineno; fail("missing edge line"); }
        ++lineno;
        std::istringstream es(line);
        std::string etag, u, v;
        int id;
        if (!(es >> etag >> id >> u >> v) || etag != "e") fail("expected 'e <id> <u> <v>'");
        if (id != i) fail("edge ids must be contiguous from 0");
        for (const auto& t : {u, v})
            if (seen.insert(t).second) labels.push_back(t);
        raw.push_back({u, v});
    }
    if (static_cast<int>(labels.size()) != n)
        fail("vertex count mismatch: declared " + std::to_string(n) + ", found " +
             std::to_string(labels.size()));
    Graph base(labels, {});
    std::vector<std::array<int, 2>> edges;
    for (const auto& e : raw)
        edges.push_back({base.index_of(e[0]), base.index_of(e[1])});
    return Graph(base.labels(), edges);
}

}  // namespace quademb
