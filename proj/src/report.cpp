#include "quademb/report.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>

namespace quademb {

std::string format_report(const CommandReport& report, ReportMode mode) {
    std::ostringstream out;
    if (mode == ReportMode::text) {
        out << "command: " << report.command << "\n";
        out << "outcome: " << report.outcome << "\n";
        if (!report.surface.empty()) out << "surface: " << report.surface << "\n";
        for (const auto& [key, value] : report.details) out << key << ": " << value << "\n";
        for (const auto& a : report.artifacts) out << "artifact: " << a << "\n";
        out << "time: " << std::fixed << std::setprecision(3) << report.seconds << "s\n";
        return out.str();
    }
    auto base = [&]() {
        nlohmann::ordered_json j;
        j["command"] = report.command;
        j["outcome"] = report.outcome;
        if (!report.surface.empty()) j["surface"] = report.surface;
        for (const auto& [key, value] : report.details) j[key] = value;
        j["seconds"] = report.seconds;
        return j;
    };
    if (report.artifacts.empty()) {
        nlohmann::ordered_json j = base();
        j["artifact"] = nullptr;
        out << j.dump() << "\n";
    } else {
        for (const auto& a : report.artifacts) {
            nlohmann::ordered_json j = base();
            j["artifact"] = a;
            out << j.dump() << "\n";
        }
    }
    return out.str();
}

}  // namespace quademb
