#include <doctest.h>

#include <set>

#include "quademb/search.hpp"

using namespace quademb;

TEST_CASE("K4 nonorientable: three hamilton-cycle faces on N_1") {
    auto out = search_quadrangular(Graph::complete(4), Orientation::nonorientable);
    REQUIRE(out.found());
    const Embedding& e = *out.embedding;
    auto rep = verify_quadrangular(e, true);
    CHECK(rep.pass);
    CHECK(rep.face_count == 3);
    auto s = surface_of(e);
    CHECK(s.surface.name == "N_1");
    // Every face is a hamilton cycle: 4 distinct vertices out of 4.
    for (const auto& f : trace_faces(e)) {
        auto vs = f.vertex_indices(e);
        CHECK(std::set<int>(vs.begin(), vs.end()).size() == 4);
    }
}

TEST_CASE("K5 nonorientable: certified none") {
    auto out = search_quadrangular(Graph::complete(5), Orientation::nonorientable);
    CHECK(out.certified_none());
    CHECK(out.nodes > 0);
}

TEST_CASE("K5 orientable: the torus quadrangulation exists") {
    auto out = search_quadrangular(Graph::complete(5), Orientation::orientable);
    REQUIRE(out.found());
    auto s = surface_of(*out.embedding);
    CHECK(s.surface.name == "S_1");
    CHECK(verify_quadrangular(*out.embedding, true).pass);
}

TEST_CASE("odd edge count certifies none immediately") {
    auto out = search_quadrangular(Graph::complete(6), Orientation::any);  // m = 15
    CHECK(out.certified_none());
    CHECK(out.nodes == 0);
}

TEST_CASE("search results satisfy the forced Euler characteristic") {
    for (auto orientation : {Orientation::orientable, Orientation::nonorientable}) {
        auto out = search_quadrangular(Graph::complete_bipartite(2, 2), orientation);
        if (out.found()) {
            const Embedding& e = *out.embedding;
            int n = e.graph.num_vertices(), m = e.graph.num_edges();
            CHECK(surface_of(e).total_chi == n - m / 2);
        }
    }
    // C4 itself: chi = 4 - 2 = 2, the sphere; nonorientable is impossible.
    auto none = search_quadrangular(Graph::cycle(4), Orientation::nonorientable);
    CHECK(none.certified_none());
    auto sphere = search_quadrangular(Graph::cycle(4), Orientation::orientable);
    REQUIRE(sphere.found());
    CHECK(surface_of(*sphere.embedding).surface.name == "S_0");
}

TEST_CASE("determinism: repeated searches return the identical embedding") {
    auto a = search_quadrangular(Graph::complete(4), Orientation::nonorientable);
    auto b = search_quadrangular(Graph::complete(4), Orientation::nonorientable);
    REQUIRE(a.found());
    REQUIRE(b.found());
    CHECK(*a.embedding == *b.embedding);
    CHECK(encode_emb(*a.embedding) == encode_emb(*b.embedding));
}

TEST_CASE("budget exhaustion is distinct from certified nonexistence") {
    SearchBudget tiny;
    tiny.max_nodes = 1;
    auto out = search_quadrangular(Graph::complete_bipartite(6, 3), Orientation::orientable, tiny);
    CHECK(out.kind == SearchOutcome::Kind::budget_exhausted);
}

TEST_CASE("K_{6,3} searches find both surface types") {
    auto torus = search_quadrangular(Graph::complete_bipartite(6, 3), Orientation::orientable);
    REQUIRE(torus.found());
    CHECK(surface_of(*torus.embedding).surface.name == "S_1");
    auto klein = search_quadrangular(Graph::complete_bipartite(6, 3), Orientation::nonorientable);
    REQUIRE(klein.found());
    CHECK(surface_of(*klein.embedding).surface.name == "N_2");
}
