#include <doctest.h>

#include <json.hpp>

#include "quademb/report.hpp"

using namespace quademb;

TEST_CASE("text report has stable field order and the surface line") {
    CommandReport rep;
    rep.command = "construct complete 8 --orientation orientable";
    rep.outcome = "ok";
    rep.surface = "S_4";
    rep.details = {{"faces", "14"}};
    rep.artifacts = {"k8.emb"};
    rep.seconds = 0.25;
    std::string text = format_report(rep, ReportMode::text);
    CHECK(text.find("surface: S_4") != std::string::npos);
    CHECK(text.find("command: construct complete 8") != std::string::npos);
    CHECK(text.find("outcome: ok") < text.find("surface: S_4"));
    CHECK(text.find("surface: S_4") < text.find("artifact: k8.emb"));
}

TEST_CASE("json-lines mode emits one parsable object per artifact") {
    CommandReport rep;
    rep.command = "x";
    rep.outcome = "ok";
    rep.artifacts = {"a.emb", "b.emb"};
    std::string text = format_report(rep, ReportMode::json_lines);
    std::istringstream in(text);
    std::string line;
    int count = 0;
    while (std::getline(in, line)) {
        auto j = nlohmann::json::parse(line);
        CHECK(j["command"] == "x");
        CHECK(j["outcome"] == "ok");
        ++count;
    }
    CHECK(count == 2);

    rep.artifacts.clear();
    std::string single = format_report(rep, ReportMode::json_lines);
    auto j = nlohmann::json::parse(single);
    CHECK(j["artifact"].is_null());
}
