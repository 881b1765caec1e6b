// quad-embed: constructions, verification, search and tables for
// quadrangular embeddings of complete graphs and their relatives.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "quademb/constructions.hpp"
#include "quademb/minimality.hpp"
#include "quademb/report.hpp"
#include "quademb/search.hpp"

using namespace quademb;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
}

Orientation parse_orientation(const std::string& s, bool allow_any) {
    if (s == "o" || s == "orientable") return Orientation::orientable;
    if (s == "n" || s == "nonorientable") return Orientation::nonorientable;
    if (allow_any && (s == "any" || s == "a")) return Orientation::any;
    throw std::invalid_argument("bad orientation '" + s + "'");
}

std::string parse_surface_name(const std::string& s) {
    // Accept S4 / S_4 / N23 / N_23; canonical form uses the underscore.
    if (s.size() < 2 || (s[0] != 'S' && s[0] != 'N'))
        throw std::invalid_argument("bad surface name '" + s + "'");
    std::string digits = s.substr(1);
    if (!digits.empty() && digits[0] == '_') digits = digits.substr(1);
    for (char c : digits)
        if (!isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("bad surface name '" + s + "'");
    if (digits.empty()) throw std::invalid_argument("bad surface name '" + s + "'");
    return std::string(1, s[0]) + "_" + digits;
}

struct Ctx {
    ReportMode mode = ReportMode::text;
    unsigned seed = 0;
    std::string command;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    int finish(CommandReport& rep) {
        rep.command = command;
        rep.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << format_report(rep, mode);
        return rep.exit_code;
    }
};

// Re-verify an embedding before reporting success; fills surface + counts.
void attach_verified(CommandReport& rep, const Embedding& e, bool expect_simple) {
    auto q = verify_quadrangular(e, expect_simple);
    auto s = surface_of(e);
    rep.surface = s.connected ? s.surface.name : "(disconnected)";
    rep.details.push_back({"vertices", std::to_string(e.graph.num_vertices())});
    rep.details.push_back({"edges", std::to_string(e.graph.num_edges())});
    rep.details.push_back({"faces", std::to_string(q.face_count)});
    rep.details.push_back({"quadrangular", q.pass ? "yes" : "no"});
    if (!q.pass) {
        rep.outcome = "verification-failed";
        rep.exit_code = 1;
        if (!q.offending.empty())
            rep.details.push_back({"offending-face", q.offending.front().to_string(e)});
    }
}

void write_artifact(CommandReport& rep, const std::string& path, const Embedding& e) {
    if (path.empty()) return;
    write_file(path, encode_emb(e));
    rep.artifacts.push_back(path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadrangular embedding toolkit"};
    app.require_subcommand(1);
    Ctx ctx;
    {
        std::ostringstream cmd;
        for (int i = 1; i < argc; ++i) cmd << (i > 1 ? " " : "") << argv[i];
        ctx.command = cmd.str();
    }
    std::string mode_str = "text";
    app.add_option("--report", mode_str, "report mode: text | json-lines")
        ->check(CLI::IsMember({"text", "json-lines"}));
    app.add_option("--seed", ctx.seed, "seed for randomized property trials");

    // ---- construct ----
    auto* construct = app.add_subcommand("construct", "build a verified embedding");
    construct->require_subcommand(1);

    auto* c_complete = construct->add_subcommand("complete", "quadrangular K_n");
    int cc_n = 0;
    std::string cc_orient, cc_out;
    c_complete->add_option("n", cc_n, "order of the complete graph")->required();
    c_complete->add_option("--orientation", cc_orient, "o|orientable / n|nonorientable")
        ->required();
    c_complete->add_option("-o,--output", cc_out, "output .emb path");

    auto* c_k4 = construct->add_subcommand("composition-k4", "quadrangular G[K4]");
    std::string ck_graph, ck_orient = "orientable", ck_matching = "auto", ck_out;
    c_k4->add_option("graph", ck_graph, "input .g file")->required();
    c_k4->add_option("--orientation", ck_orient, "o|orientable / n|nonorientable");
    c_k4->add_option("--matching", ck_matching, "auto or comma-separated edge ids");
    c_k4->add_option("-o,--output", ck_out, "output .emb path");

    auto* c_gs = construct->add_subcommand("graphical", "G[bar(K2)] on the graphical surface");
    std::string cg_graph, cg_out;
    std::vector<int> cg_twists;
    c_gs->add_option("graph", cg_graph, "input .g file")->required();
    c_gs->add_option("--twist", cg_twists, "edge ids carried by twisted tubes");
    c_gs->add_option("-o,--output", cg_out, "output .emb path");

    // ---- diamond-sum ----
    auto* dsum = app.add_subcommand("diamond-sum", "diamond sum of two embeddings");
    std::string ds_a, ds_b, ds_out;
    std::vector<std::string> ds_at;
    dsum->add_option("a", ds_a, "first .emb")->required();
    dsum->add_option("b", ds_b, "second .emb")->required();
    dsum->add_option("--at", ds_at, "the two hub vertex labels")->expected(2)->required();
    dsum->add_option("-o,--output", ds_out, "output .emb path");

    // ---- derive ----
    auto* derive = app.add_subcommand("derive", "derived embedding of a voltage graph");
    std::string dv_base, dv_volt, dv_out;
    derive->add_option("base", dv_base, "base .emb")->required();
    derive->add_option("voltages", dv_volt, ".vlt file")->required();
    derive->add_option("-o,--output", dv_out, "output .emb path");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "verify an .emb file");
    std::string vf_path, vf_surface;
    bool vf_quad = false, vf_simple = false;
    verify->add_option("embedding", vf_path, ".emb file")->required();
    verify->add_flag("--expect-quad", vf_quad, "require quadrangularity");
    verify->add_flag("--expect-simple", vf_simple, "require a simple connected graph");
    verify->add_option("--expect-surface", vf_surface, "require this surface (e.g. S_4)");

    // ---- search ----
    auto* search = app.add_subcommand("search", "exhaustive quadrangular embedding search");
    std::string se_graph, se_orient = "any", se_out;
    uint64_t se_budget = 1'000'000'000ull;
    search->add_option("graph", se_graph, "input .g file")->required();
    search->add_option("--orientation", se_orient, "o / n / any");
    search->add_option("--budget", se_budget, "node budget");
    search->add_option("-o,--output", se_out, "output .emb path");

    // ---- minimal-table ----
    auto* table = app.add_subcommand("minimal-table", "minimal quadrangulation table row");
    std::string mt_family;
    int mt_p1 = 0, mt_p2 = 0;
    table->add_option("family", mt_family, "gs or k4")->required()
        ->check(CLI::IsMember({"gs", "k4"}));
    table->add_option("p1", mt_p1, "k (gs) or l (k4)")->required();
    table->add_option("p2", mt_p2, "p (gs) or q (k4)")->required();

    // ---- certify-minimal ----
    auto* certify = app.add_subcommand("certify-minimal", "minimality certificate for an .emb");
    std::string cm_path;
    certify->add_option("embedding", cm_path, ".emb file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (mode_str == "json-lines") ctx.mode = ReportMode::json_lines;

    try {
        CommandReport rep;
        rep.outcome = "ok";

        if (c_complete->parsed()) {
            Embedding e = complete_quadrangulation(cc_n, parse_orientation(cc_orient, false));
            attach_verified(rep, e, true);
            if (rep.exit_code == 0) write_artifact(rep, cc_out, e);
        } else if (c_k4->parsed()) {
            Graph g = decode_g(read_file(ck_graph));
            Matching m;
            if (ck_matching == "auto") {
                auto found = find_perfect_matching(g);
                if (!found) throw std::invalid_argument("graph has no perfect matching");
                m = *found;
            } else {
                std::istringstream ids(ck_matching);
                std::string tok;
                while (std::getline(ids, tok, ',')) m.edge_ids.push_back(std::stoi(tok));
                m.perfect = true;
            }
            Embedding e = composition_k4(g, m, parse_orientation(ck_orient, false));
            attach_verified(rep, e, true);
            if (rep.exit_code == 0) write_artifact(rep, ck_out, e);
        } else if (c_gs->parsed()) {
            Graph g = decode_g(read_file(cg_graph));
            GraphicalSurfaceOptions opts;
            opts.twisted_edges.insert(cg_twists.begin(), cg_twists.end());
            Embedding e = graphical_surface_embedding(g, opts);
            attach_verified(rep, e, true);
            if (rep.exit_code == 0) write_artifact(rep, cg_out, e);
        } else if (dsum->parsed()) {
            Embedding a = decode_emb(read_file(ds_a));
            Embedding b = decode_emb(read_file(ds_b));
            Embedding e = diamond_sum(a, ds_at[0], b, ds_at[1]);
            auto s = surface_of(e);
            rep.surface = s.connected ? s.surface.name : "(disconnected)";
            rep.details.push_back({"vertices", std::to_string(e.graph.num_vertices())});
            rep.details.push_back({"edges", std::to_string(e.graph.num_edges())});
            write_artifact(rep, ds_out, e);
        } else if (derive->parsed()) {
            Embedding base = decode_emb(read_file(dv_base));
            VoltageGraph vg = decode_vlt(read_file(dv_volt), base);
            Embedding e = derived_embedding(vg);
            auto prediction = predict_lift(vg);
            bool agree = face_degree_multiset(trace_faces(e)) == prediction.face_degrees &&
                         orientability(e).orientable == prediction.orientable;
            rep.details.push_back({"lift-crosscheck", agree ? "agree" : "DISAGREE"});
            if (!agree) {
                rep.outcome = "verification-failed";
                rep.exit_code = 1;
            }
            auto s = surface_of(e);
            rep.surface = s.connected ? s.surface.name : "(disconnected)";
            if (rep.exit_code == 0) write_artifact(rep, dv_out, e);
        } else if (verify->parsed()) {
            Embedding e = decode_emb(read_file(vf_path));
            auto q = verify_quadrangular(e, vf_simple);
            auto s = surface_of(e);
            rep.surface = s.connected ? s.surface.name : "(disconnected)";
            rep.details.push_back({"faces", std::to_string(q.face_count)});
            rep.details.push_back({"quadrangular", q.pass ? "yes" : "no"});
            rep.details.push_back({"simple", q.simple ? "yes" : "no"});
            rep.details.push_back({"connected", q.connected ? "yes" : "no"});
            bool ok = true;
            if (vf_quad && !q.pass) ok = false;
            if (vf_simple && !(q.simple && q.connected)) ok = false;
            if (!vf_surface.empty()) {
                std::string want = parse_surface_name(vf_surface);
                rep.details.push_back({"expected-surface", want});
                if (!s.connected || s.surface.name != want) ok = false;
            }
            if (!ok) {
                rep.outcome = "verification-failed";
                rep.exit_code = 1;
                if (!q.offending.empty())
                    rep.details.push_back({"offending-face", q.offending.front().to_string(e)});
            }
        } else if (search->parsed()) {
            Graph g = decode_g(read_file(se_graph));
            SearchBudget budget;
            budget.max_nodes = se_budget;
            auto outcome = search_quadrangular(g, parse_orientation(se_orient, true), budget);
            rep.details.push_back({"nodes", std::to_string(outcome.nodes)});
            rep.details.push_back({"space", outcome.space_description});
            if (outcome.found()) {
                attach_verified(rep, *outcome.embedding, true);
                if (rep.exit_code == 0) write_artifact(rep, se_out, *outcome.embedding);
            } else if (outcome.certified_none()) {
                rep.outcome = "certified-none";
            } else {
                rep.outcome = "budget-exhausted";
                rep.exit_code = 1;
            }
        } else if (table->parsed()) {
            MinimalTableRow row = mt_family == "gs" ? minimal_table_gs(mt_p1, mt_p2)
                                                    : minimal_table_k4(mt_p1, mt_p2);
            std::cout << to_tsv(row) << "\n";
            rep.details.push_back({"orientable-genus", std::to_string(row.orientable_genus)});
            rep.details.push_back({"nonorientable-genus",
                                   std::to_string(row.nonorientable_genus)});
            rep.details.push_back({"order", std::to_string(row.order)});
        } else if (certify->parsed()) {
            Embedding e = decode_emb(read_file(cm_path));
            auto cert = minimality_certificate(e);
            rep.details.push_back(
                {"verdict", cert.verdict == MinimalityVerdict::minimal ? "minimal"
                                                                       : "inconclusive"});
            rep.details.push_back({"n", std::to_string(cert.n)});
            rep.details.push_back({"deleted-edges", std::to_string(cert.deleted)});
            rep.details.push_back({"chi", std::to_string(cert.chi)});
            rep.details.push_back({"slack", std::to_string(cert.slack)});
            rep.details.push_back({"certificate", cert.explanation});
        }
        return ctx.finish(rep);
    } catch (const std::invalid_argument& e) {
        CommandReport rep;
        rep.outcome = std::string("usage-error: ") + e.what();
        rep.exit_code = 2;
        return ctx.finish(rep);
    } catch (const std::exception& e) {
        CommandReport rep;
        rep.outcome = std::string("failed: ") + e.what();
        rep.exit_code = 1;
        return ctx.finish(rep);
    }
}
