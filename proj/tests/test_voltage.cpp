#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "quademb/voltage.hpp"

using namespace quademb;
using namespace quademb::testing;

TEST_CASE("total voltage basics") {
    VoltageGraph vg;
    vg.base = embed_cycle_planar(4);
    vg.group_order = 2;
    vg.assignment = {1, 0, 1, 0};
    CHECK(total_voltage(vg, 0, {}) == 0);
    CHECK(total_voltage(vg, 0, {{0, true}, {0, false}}) == 0);
    CHECK_THROWS(total_voltage(vg, 0, {{1, true}}));  // discontinuous
    // Around the whole cycle (edge 3 = {3,0} traversed 3 -> 0 is forward):
    // 1+0+1+0 = 0 in Z_2.
    CHECK(total_voltage(vg, 0, {{0, true}, {1, true}, {2, true}, {3, true}}) == 0);
}

TEST_CASE("digon with voltages {0,1} has face voltage 1") {
    VoltageGraph vg;
    Embedding e;
    e.graph = Graph({"u", "v"}, {{0, 1}, {0, 1}});
    e.signatures = {1, 1};
    e.rotations = {{make_dart(0, 0), make_dart(1, 0)}, {make_dart(0, 1), make_dart(1, 1)}};
    e.validate();
    vg.base = e;
    vg.group_order = 2;
    vg.assignment = {0, 1};
    auto faces = trace_faces(e);
    REQUIRE(faces.size() == 2);
    for (const auto& f : faces) {
        REQUIRE(f.degree() == 2);
        CHECK(face_total_voltage(vg, f) == 1);
    }
}

TEST_CASE("smallest lift: loop with voltage 1 over Z_2 becomes a digon") {
    VoltageGraph vg;
    vg.base = embed_single_loop(1);
    vg.group_order = 2;
    vg.assignment = {1};
    Embedding d = derived_embedding(vg);
    CHECK(d.graph.num_vertices() == 2);
    CHECK(d.graph.num_edges() == 2);
    CHECK_FALSE(d.graph.is_loop(0));
    CHECK_FALSE(d.graph.is_loop(1));
    auto degs = face_degree_multiset(trace_faces(d));
    // Two monogons of voltage 1 lift to one digon each.
    CHECK(degs == std::map<int, int>{{2, 2}});
    auto p = predict_lift(vg);
    CHECK(p.face_degrees == degs);
    CHECK(p.orientable);
}

TEST_CASE("digon lift: voltages {0,1} over Z_2 give four distinct edges") {
    Embedding e;
    e.graph = Graph({"u", "v"}, {{0, 1}, {0, 1}});
    e.signatures = {1, 1};
    e.rotations = {{make_dart(0, 0), make_dart(1, 0)}, {make_dart(0, 1), make_dart(1, 1)}};
    e.validate();
    VoltageGraph vg{e, 2, {0, 1}};
    Embedding d = derived_embedding(vg);
    CHECK(d.graph.num_vertices() == 4);
    CHECK(d.graph.num_edges() == 4);
    CHECK(d.graph.is_simple());
    // Both digon faces have voltage 1 and lift to one quadrilateral each.
    auto p = predict_lift(vg);
    CHECK(p.face_degrees == std::map<int, int>{{4, 2}});
    CHECK(face_degree_multiset(trace_faces(d)) == p.face_degrees);
}

TEST_CASE("monogon of voltage 1 lifts to a digon face") {
    // A loop of voltage 1 inside a triangle face: base from planar K4 plus a
    // loop. Simpler: single +1 loop has two monogons; covered above. Here
    // check the degree arithmetic d*r with d=1, r=2 directly.
    VoltageGraph vg;
    vg.base = embed_single_loop(1);
    vg.group_order = 2;
    vg.assignment = {1};
    auto p = predict_lift(vg);
    CHECK(p.face_degrees == std::map<int, int>{{2, 2}});
    CHECK(p.face_count == 2);
}

TEST_CASE("cross-check: traced derived faces equal prediction on random bases") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        Embedding base = random_embedding(rng, 5, 8);
        std::uniform_int_distribution<int> kd(1, 4);
        VoltageGraph vg;
        vg.base = base;
        vg.group_order = kd(rng);
        std::uniform_int_distribution<int> ad(0, vg.group_order - 1);
        for (int e = 0; e < base.graph.num_edges(); ++e) vg.assignment.push_back(ad(rng));
        Embedding d = derived_embedding(vg);
        CHECK(d.graph.num_vertices() == base.graph.num_vertices() * vg.group_order);
        CHECK(d.graph.num_edges() == base.graph.num_edges() * vg.group_order);
        auto p = predict_lift(vg);
        CHECK(face_degree_multiset(trace_faces(d)) == p.face_degrees);
        CHECK(orientability(d).orientable == p.orientable);
    }
}

TEST_CASE("derived of an orientable base is orientable") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        Embedding base = random_embedding(rng, 5, 8, false);
        VoltageGraph vg;
        vg.base = base;
        vg.group_order = 2;
        std::uniform_int_distribution<int> ad(0, 1);
        for (int e = 0; e < base.graph.num_edges(); ++e) vg.assignment.push_back(ad(rng));
        CHECK(orientability(derived_embedding(vg)).orientable);
    }
}

TEST_CASE("plus directions do not matter over Z_2") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        Embedding base = random_embedding(rng, 5, 8);
        VoltageGraph vg;
        vg.base = base;
        vg.group_order = 2;
        std::uniform_int_distribution<int> ad(0, 1);
        for (int e = 0; e < base.graph.num_edges(); ++e) vg.assignment.push_back(ad(rng));

        // Flip the stored direction of a random subset of edges.
        Embedding flipped = base;
        {
            std::vector<std::array<int, 2>> edges = flipped.graph.edges();
            for (auto& e : edges)
                if (ad(rng)) std::swap(e[0], e[1]);
            // Swapping endpoints renames darts (e,0) <-> (e,1).
            Graph g2(flipped.graph.labels(), edges);
            for (int eid = 0; eid < g2.num_edges(); ++eid) {
                if (edges[eid] == base.graph.edges()[eid]) continue;
                for (auto& rot : flipped.rotations)
                    for (auto& d : rot)
                        if (dart_edge(d) == eid) d = dart_mate(d);
            }
            flipped.graph = g2;
            flipped.validate();
        }
        VoltageGraph vg2{flipped, 2, vg.assignment};

        Embedding d1 = derived_embedding(vg);
        Embedding d2 = derived_embedding(vg2);
        // Same labeled graph and same face structure up to edge numbering.
        CHECK(d1.graph.same_labeled_graph(d2.graph));
        CHECK(face_label_cycles(d1) == face_label_cycles(d2));
        CHECK(orientability(d1).orientable == orientability(d2).orientable);
    }
}

TEST_CASE("voltage file round trip") {
    Embedding base = embed_cycle_planar(4);
    VoltageGraph vg{base, 3, {0, 1, 2, 1}};
    std::string text = encode_vlt(vg);
    VoltageGraph back = decode_vlt(text, base);
    CHECK(back.group_order == 3);
    CHECK(back.assignment == vg.assignment);
    CHECK_THROWS(decode_vlt("voltages 2\nv 0 0\n", base));  // incomplete
}
