#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "quademb/embedding.hpp"

namespace quademb {

enum class Orientation { orientable, nonorientable, any };

std::string to_string(Orientation o);

struct SearchBudget {
    uint64_t max_nodes = 1'000'000'000;
    double max_seconds = 600.0;
};

struct SearchOutcome {
    enum class Kind { found, none, budget_exhausted };
    Kind kind = Kind::budget_exhausted;
    std::optional<Embedding> embedding;
    uint64_t nodes = 0;
    double seconds = 0.0;
    std::string space_description;

    bool found() const { return kind == Kind::found; }
    bool certified_none() const { return kind == Kind::none; }
};

// Exhaustive oracle: find a quadrangular embedding of a small simple
// connected graph with the requested orientability, or certify that none
// exists. Face-first: choose 4-cycles covering each edge exactly twice,
// prune on the local rotation (umbrella) condition, then realize a scheme.
// Deterministic: edges are filled in id order and candidate quadrilaterals
// tried in lexicographic order, so the first solution is canonical.
SearchOutcome search_quadrangular(const Graph& g, Orientation orientation,
                                  SearchBudget budget = {});

}  // namespace quademb
