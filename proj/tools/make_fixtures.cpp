// Regenerates the shipped fixture embeddings from the search oracle.
// Usage: make-fixtures [output-dir]

#include <filesystem>
#include <fstream>
#include <iostream>

#include "quademb/constructions.hpp"
#include "quademb/search.hpp"

using namespace quademb;

namespace {

struct Target {
    const char* name;
    Graph graph;
    Orientation orientation;
};

}  // namespace

int main(int argc, char** argv) {
    std::string outdir = argc > 1 ? argv[1] : "";
    std::vector<Target> targets = {
        {"k4_projective", Graph::complete(4), Orientation::nonorientable},
        {"k5_torus", Graph::complete(5), Orientation::orientable},
        {"k63_torus", Graph::complete_bipartite(6, 3), Orientation::orientable},
        {"k63_klein", Graph::complete_bipartite(6, 3), Orientation::nonorientable},
        {"k7plus_N5", subdivide_edge(Graph::complete(7), 0), Orientation::nonorientable},
    };
    for (const auto& t : targets) {
        auto outcome = search_quadrangular(t.graph, t.orientation);
        if (!outcome.found()) {
            std::cerr << t.name << ": search failed (" << outcome.space_description << ")\n";
            return 1;
        }
        const Embedding& e = *outcome.embedding;
        auto s = surface_of(e);
        std::string text = encode_emb(e);
        std::cout << "=== " << t.name << " (" << s.surface.name << ", nodes=" << outcome.nodes
                  << ", " << outcome.seconds << "s)\n"
                  << text;
        if (!outdir.empty()) {
            std::filesystem::create_directories(outdir);
            std::ofstream f(outdir + "/" + std::string(t.name) + ".emb");
            f << text;
        }
    }
    return 0;
}
