#pragma once

#include <string>
#include <utility>
#include <vector>

namespace quademb {

enum class ReportMode { text, json_lines };

// What a CLI invocation did: echoed command, outcome, artifacts written,
// surface summary and timing. Exit code 0 iff every requested verification
// passed.
struct CommandReport {
    std::string command;
    std::string outcome;  // "ok", "verification-failed", "certified-none", ...
    std::vector<std::string> artifacts;
    std::string surface;  // empty when not applicable
    std::vector<std::pair<std::string, std::string>> details;  // stable order
    double seconds = 0.0;
    int exit_code = 0;
};

// Text mode: one "key: value" line per field. json-lines mode: one JSON
// object per artifact (or a single object when none were written).
std::string format_report(const CommandReport& report, ReportMode mode);

}  // namespace quademb
