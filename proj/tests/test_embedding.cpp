#include <doctest.h>

#include <random>
#include <set>
#include <stdexcept>

#include "helpers.hpp"
#include "quademb/embedding.hpp"

using namespace quademb;
using namespace quademb::testing;

TEST_CASE("planar cycle traces to two faces of full degree") {
    Embedding e = embed_cycle_planar(4);
    auto faces = trace_faces(e);
    REQUIRE(faces.size() == 2);
    CHECK(faces[0].degree() == 4);
    CHECK(faces[1].degree() == 4);
    auto rep = verify_quadrangular(e, true);
    CHECK(rep.pass);
    CHECK(rep.face_count == 2);
    auto s = surface_of(e);
    CHECK(s.surface.name == "S_0");
}

TEST_CASE("single loop with signature -1 traces to one face of degree 2") {
    Embedding e = embed_single_loop(-1);
    auto faces = trace_faces(e);
    REQUIRE(faces.size() == 1);
    CHECK(faces[0].degree() == 2);
    auto s = surface_of(e);
    CHECK(s.surface.euler_characteristic == 1);
    CHECK(s.surface.name == "N_1");
    CHECK_FALSE(orientability(e).orientable);
    CHECK(orientability(e).witness_cycle == std::vector<int>{0});
}

TEST_CASE("single loop with signature +1 is a sphere with two monogons") {
    Embedding e = embed_single_loop(1);
    auto faces = trace_faces(e);
    REQUIRE(faces.size() == 2);
    CHECK(faces[0].degree() == 1);
    CHECK(faces[1].degree() == 1);
    CHECK(surface_of(e).surface.name == "S_0");
}

TEST_CASE("planar K4 is a sphere with four triangles") {
    Embedding e = embed_k4_planar();
    auto faces = trace_faces(e);
    REQUIRE(faces.size() == 4);
    for (const auto& f : faces) CHECK(f.degree() == 3);
    CHECK(surface_of(e).surface.name == "S_0");
    CHECK_FALSE(verify_quadrangular(e, true).pass);
}

TEST_CASE("bouquet of two loops: degree-4 face with repeats fails quad check") {
    Embedding e = embed_bouquet_two_loops();
    auto faces = trace_faces(e);
    REQUIRE(faces.size() == 1);
    CHECK(faces[0].degree() == 4);
    CHECK(surface_of(e).surface.name == "S_1");  // torus
    auto rep = verify_quadrangular(e, false);
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.offending.size() == 1);
    CHECK(rep.offending[0].degree() == 4);
}

TEST_CASE("face partition: every edge is traversed exactly twice") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Embedding e = random_embedding(rng);
        auto faces = trace_faces(e);
        std::vector<int> count(e.graph.num_edges(), 0);
        int total_degree = 0;
        for (const auto& f : faces) {
            total_degree += f.degree();
            for (int id : f.edge_ids()) ++count[id];
        }
        CHECK(total_degree == 2 * e.graph.num_edges());
        for (int c : count) CHECK(c == 2);
        // Euler: n - m + f = chi matches the per-component sum.
        auto s = surface_of(e);
        int isolated = 0;
        for (int v = 0; v < e.graph.num_vertices(); ++v)
            if (e.graph.degree(v) == 0) ++isolated;
        CHECK(s.total_chi ==
              e.graph.num_vertices() - e.graph.num_edges() +
                  static_cast<int>(faces.size()) + isolated);
    }
}

TEST_CASE("trace is deterministic and independent of rotation storage phase") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Embedding e = random_embedding(rng);
        Embedding shifted = e;
        for (auto& rot : shifted.rotations)
            if (rot.size() > 1) std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        auto fa = trace_faces(e);
        auto fb = trace_faces(shifted);
        REQUIRE(fa.size() == fb.size());
        for (size_t i = 0; i < fa.size(); ++i) CHECK(fa[i].steps == fb[i].steps);
    }
}

TEST_CASE("orientability is invariant under vertex switching") {
    // Switching at v: negate every non-loop edge at v. 100 randomized trials.
    std::mt19937 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        Embedding e = random_embedding(rng);
        bool before = orientability(e).orientable;
        std::uniform_int_distribution<int> vd(0, e.graph.num_vertices() - 1);
        int v = vd(rng);
        Embedding sw = e;
        for (int eid = 0; eid < e.graph.num_edges(); ++eid) {
            const auto& ep = e.graph.endpoints(eid);
            if ((ep[0] == v) != (ep[1] == v)) sw.signatures[eid] = -sw.signatures[eid];
        }
        CHECK(orientability(sw).orientable == before);
    }
}

TEST_CASE("all-positive signatures are orientable; witness cycles are negative") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        Embedding e = random_embedding(rng, 6, 10, false);
        CHECK(orientability(e).orientable);
    }
    for (int trial = 0; trial < 50; ++trial) {
        Embedding e = random_embedding(rng);
        auto r = orientability(e);
        if (!r.orientable) {
            int prod = 1;
            for (int eid : r.witness_cycle) prod *= e.signatures[eid];
            CHECK(prod == -1);
        }
    }
}

TEST_CASE("surface naming") {
    CHECK(SurfaceId::of(2, true).name == "S_0");
    CHECK(SurfaceId::of(-6, true).name == "S_4");
    CHECK(SurfaceId::of(-44, true).name == "S_23");
    CHECK(SurfaceId::of(1, false).name == "N_1");
    CHECK(SurfaceId::of(-21, false).name == "N_23");
    CHECK_THROWS(SurfaceId::of(1, true));
}

TEST_CASE("disconnected embeddings report per-component surfaces") {
    // A planar triangle plus three isolated vertices: four sphere components.
    Embedding e;
    std::vector<std::string> labels;
    std::vector<std::array<int, 2>> edges;
    for (int i = 0; i < 3; ++i) labels.push_back(atom_label(i));
    for (int i = 0; i < 3; ++i) labels.push_back("b" + atom_label(i));
    for (int i = 0; i < 3; ++i) edges.push_back({i, (i + 1) % 3});
    e.graph = Graph(labels, edges);
    e.signatures.assign(3, 1);
    e.rotations.assign(6, {});
    for (int eid = 0; eid < 3; ++eid) {
        e.rotations[e.graph.endpoints(eid)[0]].push_back(make_dart(eid, 0));
        e.rotations[e.graph.endpoints(eid)[1]].push_back(make_dart(eid, 1));
    }
    e.validate();
    auto s = surface_of(e);
    CHECK_FALSE(s.connected);
    CHECK(s.components.size() == 4);
    CHECK(s.all_orientable);
    CHECK(s.total_chi == 2 * 4);
}

TEST_CASE("embedding text format") {
    Embedding e = embed_k4_planar();
    std::string text = encode_emb(e);
    Embedding back = decode_emb(text);
    CHECK(back == e);
    CHECK(encode_emb(back) == text);

    // Header and counts.
    CHECK(text.rfind("quademb 1\n", 0) == 0);

    // A duplicated dart must be rejected.
    std::string bad =
        "quademb 1\n"
        "vertices 2\n"
        "edges 1\n"
        "edge 0 a b +1\n"
        "rot a 0.0 0.0\n"
        "rot b 0.1\n";
    CHECK_THROWS(decode_emb(bad));

    // Loop embedding round trip; 5 lines total by the format definition.
    Embedding loop = embed_single_loop(1);
    std::string ltext = encode_emb(loop);
    CHECK(std::count(ltext.begin(), ltext.end(), '\n') == 5);
    CHECK(decode_emb(ltext) == loop);
}

TEST_CASE("decode_emb reports line numbers on syntax errors") {
    try {
        decode_emb("quademb 1\nvertices 1\nedges 0\nbadline x\n");
        CHECK(false);
    } catch (const std::invalid_argument& err) {
        CHECK(std::string(err.what()).find("line 4") != std::string::npos);
    }
}
