#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "quademb/constructions.hpp"

namespace quademb {

namespace {

// Verified search-oracle outputs. tools/make-fixtures regenerates these and
// the .emb copies under fixtures/; the acceptance suite re-searches and
// compares.
constexpr const char* kK4Projective = R"(@K4_PROJECTIVE@)";

constexpr const char* kK5Torus = R"(@K5_TORUS@)";

constexpr const char* kK63Torus = R"(@K63_TORUS@)";

constexpr const char* kK63Klein = R"(@K63_KLEIN@)";

constexpr const char* kK7PlusN5 = R"(@K7PLUS_N5@)";

struct FixtureSpec {
    const char* name;
    const char* text;
    int n, m, f, chi;
    bool orientable;
};

const FixtureSpec kFixtures[] = {
    {"k4_projective", kK4Projective, 4, 6, 3, 1, false},
    {"k5_torus", kK5Torus, 5, 10, 5, 0, true},
    {"k63_torus", kK63Torus, 9, 18, 9, 0, true},
    {"k63_klein", kK63Klein, 9, 18, 9, 0, false},
    {"k7plus_N5", kK7PlusN5, 8, 22, 11, -3, false},
};

const FixtureSpec& spec_of(const std::string& name) {
    for (const auto& s : kFixtures)
        if (name == s.name) return s;
    throw std::invalid_argument("unknown fixture: " + name);
}

Graph expected_graph(const std::string& name) {
    if (name == "k4_projective") return Graph::complete(4);
    if (name == "k5_torus") return Graph::complete(5);
    if (name == "k63_torus" || name == "k63_klein") return Graph::complete_bipartite(6, 3);
    return subdivide_edge(Graph::complete(7), 0);  // k7plus_N5
}

uint64_t fnv64(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

std::vector<std::string> fixture_names() {
    std::vector<std::string> out;
    for (const auto& s : kFixtures) out.push_back(s.name);
    return out;
}

const char* fixture_text(const std::string& name) { return spec_of(name).text; }

uint64_t fixture_checksum(const std::string& name) { return fnv64(spec_of(name).text); }

Embedding load_fixture(const std::string& name) {
    static std::mutex mu;
    static std::unordered_map<std::string, Embedding> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;

    const FixtureSpec& spec = spec_of(name);
    std::string text = spec.text;
    if (const char* dir = std::getenv("QUAD_EMBED_FIXTURES")) {
        std::ifstream in(std::string(dir) + "/" + name + ".emb");
        if (!in) throw std::runtime_error("fixture override dir has no " + name + ".emb");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    if (text.empty() || text[0] == '@')
        throw std::runtime_error("fixture " + name + " is not populated; run tools/make-fixtures");

    Embedding e = decode_emb(text);
    auto rep = verify_quadrangular(e, true);
    if (!rep.pass) throw std::runtime_error("fixture " + name + " failed verification: " + rep.summary);
    auto s = surface_of(e);
    if (e.graph.num_vertices() != spec.n || e.graph.num_edges() != spec.m ||
        rep.face_count != spec.f || s.total_chi != spec.chi ||
        s.all_orientable != spec.orientable)
        throw std::runtime_error("fixture " + name + " does not match its contract");
    if (!e.graph.same_labeled_graph(expected_graph(name)))
        throw std::runtime_error("fixture " + name + " is on the wrong graph");
    cache[name] = e;
    return e;
}

}  // namespace quademb
