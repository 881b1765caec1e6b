#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "quademb/graph.hpp"

using namespace quademb;

namespace {

// Independent oracle: enumerate every perfect matching by recursion on the
// least uncovered vertex, collecting sorted edge-id lists.
void all_matchings(const Graph& g, std::vector<bool>& covered, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
    int v = -1;
    for (int i = 0; i < g.num_vertices(); ++i)
        if (!covered[i]) { v = i; break; }
    if (v < 0) {
        auto sorted = cur;
        std::sort(sorted.begin(), sorted.end());
        out.push_back(sorted);
        return;
    }
    for (int e = 0; e < g.num_edges(); ++e) {
        const auto& ep = g.endpoints(e);
        int other = ep[0] == v ? ep[1] : (ep[1] == v ? ep[0] : -1);
        if (other < 0 || other == v || covered[other]) continue;
        covered[v] = covered[other] = true;
        cur.push_back(e);
        all_matchings(g, covered, cur, out);
        cur.pop_back();
        covered[v] = covered[other] = false;
    }
}

Graph random_connected(std::mt19937& rng, int nmin = 3, int nmax = 8) {
    std::uniform_int_distribution<int> nd(nmin, nmax);
    int n = nd(rng);
    std::vector<std::array<std::string, 2>> edges;
    std::set<std::pair<int, int>> used;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(atom_label(i));
    for (int i = 1; i < n; ++i) {
        std::uniform_int_distribution<int> pd(0, i - 1);
        int p = pd(rng);
        edges.push_back({labels[p], labels[i]});
        used.insert({p, i});
    }
    std::uniform_int_distribution<int> extra(0, 3);
    int want = extra(rng);
    for (int t = 0; t < 20 && want > 0; ++t) {
        std::uniform_int_distribution<int> vd(0, n - 1);
        int a = vd(rng), b = vd(rng);
        if (a == b) continue;
        auto key = std::minmax(a, b);
        if (used.count({key.first, key.second})) continue;
        used.insert({key.first, key.second});
        edges.push_back({labels[a], labels[b]});
        --want;
    }
    return Graph::from_edge_list(labels, edges);
}

}  // namespace

TEST_CASE("constructors emit the expected counts") {
    CHECK(Graph::complete(4).num_edges() == 6);
    CHECK(Graph::complete(12).num_edges() == 66);
    CHECK(Graph::complete_bipartite(6, 3).num_vertices() == 9);
    CHECK(Graph::complete_bipartite(6, 3).num_edges() == 18);
    CHECK(Graph::path(5).num_edges() == 4);
    CHECK(Graph::cycle(4).num_edges() == 4);
    CHECK_THROWS(Graph::complete(0));
    CHECK_THROWS(Graph::cycle(2));
    CHECK_THROWS(Graph::from_edge_list({"a", "b"}, {{"a", "b"}, {"b", "a"}}));
    CHECK_THROWS(Graph::from_edge_list({"a"}, {{"a", "a"}}));
    CHECK_THROWS(Graph::from_edge_list({"a"}, {{"a", "b"}}));
}

TEST_CASE("composition matches the classical identities") {
    for (int n = 2; n <= 5; ++n) {
        Graph lhs = composition(Graph::complete(n), Graph::complete(2));
        CHECK(lhs.num_vertices() == 2 * n);
        CHECK(lhs.num_edges() == n * (2 * n - 1));
        CHECK(lhs.canonical().same_labeled_graph(Graph::complete(2 * n)));
    }
    for (int n = 2; n <= 4; ++n) {
        Graph lhs = composition(Graph::complete(2), Graph::edgeless(n));
        CHECK(lhs.canonical().same_labeled_graph(Graph::complete_bipartite(n, n).canonical()));
    }
    Graph k8 = composition(Graph::complete(2), Graph::complete(4));
    CHECK(k8.num_vertices() == 8);
    CHECK(k8.num_edges() == 28);
}

TEST_CASE("composition count identities on random graphs") {
    std::mt19937 rng(0);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_connected(rng);
        Graph a = composition(g, Graph::edgeless(2));
        CHECK(a.num_vertices() == 2 * g.num_vertices());
        CHECK(a.num_edges() == 4 * g.num_edges());
        Graph b = composition(g, Graph::complete(4));
        CHECK(b.num_vertices() == 4 * g.num_vertices());
        CHECK(b.num_edges() == 16 * g.num_edges() + 6 * g.num_vertices());
    }
}

TEST_CASE("join and disjoint union") {
    for (int n = 4; n <= 12; ++n) {
        Graph j = join(Graph::complete(5), Graph::complete(n - 1));
        CHECK(j.canonical().same_labeled_graph(Graph::complete(n + 4)));
    }
    Graph du = disjoint_union(Graph::complete(1), Graph::complete(5));
    CHECK(du.num_vertices() == 6);
    CHECK(du.num_edges() == 10);
    // K7+ as a join: (K1 u K5) + bar(K2) has the degree profile of subdivided K7.
    Graph k7p = join(disjoint_union(Graph::complete(1), Graph::complete(5)), Graph::edgeless(2));
    CHECK(k7p.num_vertices() == 8);
    CHECK(k7p.num_edges() == 22);
    Graph alt = subdivide_edge(Graph::complete(7), 0);
    std::multiset<int> da, db;
    for (int v = 0; v < 8; ++v) {
        da.insert(k7p.degree(v));
        db.insert(alt.degree(v));
    }
    CHECK(da == db);
}

TEST_CASE("perfect matching is the lexicographically least") {
    Graph k4 = Graph::complete(4);
    auto m = find_perfect_matching(k4);
    REQUIRE(m.has_value());
    CHECK(m->perfect);
    // Oracle: enumerate all 3 perfect matchings of K4 and take the least.
    std::vector<bool> covered(4, false);
    std::vector<int> cur;
    std::vector<std::vector<int>> all;
    all_matchings(k4, covered, cur, all);
    CHECK(all.size() == 3);
    std::sort(all.begin(), all.end());
    CHECK(m->edge_ids == all.front());
    // Edge 0 = {0,1}, edge 5 = {2,3}.
    CHECK(m->edge_ids == std::vector<int>{0, 5});

    CHECK(find_perfect_matching(Graph::complete(3)) == std::nullopt);
    auto k2 = find_perfect_matching(Graph::complete(2));
    REQUIRE(k2.has_value());
    CHECK(k2->edge_ids == std::vector<int>{0});
}

TEST_CASE("find_cycle") {
    auto c = find_cycle(Graph::complete(4));
    REQUIRE(c.has_value());
    CHECK(c->size() == 3);
    // Verify membership by adjacency.
    Graph k4 = Graph::complete(4);
    for (size_t i = 0; i < c->size(); ++i)
        CHECK(k4.find_edge((*c)[i], (*c)[(i + 1) % c->size()]) >= 0);
    CHECK(find_cycle(Graph::path(5)) == std::nullopt);
    auto c63 = find_cycle(Graph::complete_bipartite(6, 3));
    REQUIRE(c63.has_value());
    CHECK(c63->size() == 4);
    Graph g = Graph::complete_bipartite(6, 3);
    for (size_t i = 0; i < c63->size(); ++i)
        CHECK(g.find_edge((*c63)[i], (*c63)[(i + 1) % c63->size()]) >= 0);
}

TEST_CASE("subdivide_edge") {
    Graph k7p = subdivide_edge(Graph::complete(7), 0);
    CHECK(k7p.num_vertices() == 8);
    CHECK(k7p.num_edges() == 22);
    // K2 with its edge subdivided is a path on three vertices.
    Graph p3 = subdivide_edge(Graph::complete(2), 0);
    CHECK(p3.num_vertices() == 3);
    CHECK(p3.num_edges() == 2);
    std::multiset<int> degs;
    for (int v = 0; v < 3; ++v) degs.insert(p3.degree(v));
    CHECK(degs == std::multiset<int>{1, 1, 2});
    Graph c4 = subdivide_edge(Graph::cycle(3), 0);
    CHECK(c4.num_vertices() == 4);
    CHECK(c4.num_edges() == 4);
    auto cyc = find_cycle(c4);
    REQUIRE(cyc.has_value());
    CHECK(cyc->size() == 4);
    CHECK_THROWS(subdivide_edge(Graph::complete(3), 99));

    std::mt19937 rng(1);
    for (int t = 0; t < 10; ++t) {
        Graph g = random_connected(rng);
        Graph s = subdivide_edge(g, 0);
        CHECK(s.num_vertices() == g.num_vertices() + 1);
        CHECK(s.num_edges() == g.num_edges() + 1);
    }
}

TEST_CASE("graph text format round trip") {
    Graph g = Graph::complete_bipartite(3, 2);
    Graph back = decode_g(encode_g(g));
    CHECK(back.same_labeled_graph(g));
    CHECK(encode_g(back) == encode_g(g));
    CHECK_THROWS(decode_g("nonsense"));
    CHECK_THROWS(decode_g("graph 2 1\ne 1 0 1\n"));  // ids must start at 0
}
