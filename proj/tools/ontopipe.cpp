// ontopipe command-line interface.
//
// Subcommands:
//   generate     run the full prompt pipeline (live-record or replay)
//   categorize   split the profile keywords into category groups via the model
//   merge        merge a foundation ontology with addition ontologies
//   metrics      print the count metrics of a Turtle file
//   verify       check a Turtle file for consistency problems and pitfalls
//   align        match two ontologies and report count and average similarity
//   replay-check validate a transcript against the templates without writing
//
// Exit codes: 0 success / clean, 1 findings or validation failures,
// 2 operational errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ontopipe/align.hpp"
#include "ontopipe/http_transport.hpp"
#include "ontopipe/merge.hpp"
#include "ontopipe/metrics.hpp"
#include "ontopipe/pipeline.hpp"
#include "ontopipe/turtle.hpp"
#include "ontopipe/verify.hpp"

using namespace ontopipe;
namespace fs = std::filesystem;

#ifndef ONTOPIPE_TEMPLATE_DIR
#define ONTOPIPE_TEMPLATE_DIR "templates"
#endif

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

OntologyGraph load_graph(const fs::path& path) { return parse_turtle(read_file(path)); }

struct CommonFlags {
    std::string config_path;
    std::string mode;
    std::string templates;
    std::string category;
    std::string categories_path;
    int jobs = 0;
};

RunConfig resolve_config(const CommonFlags& flags) {
    RunConfig config = load_run_config(flags.config_path);
    if (flags.mode == "replay") config.mode = RunMode::Replay;
    else if (flags.mode == "live-record") config.mode = RunMode::LiveRecord;
    else if (!flags.mode.empty()) throw Error("unknown mode: " + flags.mode);
    if (!flags.templates.empty()) config.template_dir = flags.templates;
    if (config.template_dir.empty()) config.template_dir = ONTOPIPE_TEMPLATE_DIR;
    if (flags.jobs > 0) config.jobs = flags.jobs;
    return config;
}

// Categories file: the same `Name: k1, k2, ...` lines a categorize run prints.
CategoryPlan load_plan(const fs::path& path, const DomainProfile& profile) {
    return plan_categories(profile.keywords, read_file(path));
}

void print_summary(const RunSummary& summary) {
    for (const StageStatus& status : summary.stages)
        std::cout << stage_stem(status.stage) << ": " << (status.ok ? "ok" : "failed") << " ("
                  << status.note << ")\n";
    for (const std::string& warning : summary.warnings) std::cout << "warning: " << warning << "\n";
    if (!summary.ok) {
        std::cout << "failed at " << summary.failed_stage << ": " << summary.error << "\n";
        return;
    }
    std::cout << "verification: " << (summary.verification.clean ? "clean" : "has findings")
              << "\n";
    std::cout << "output: " << summary.output_dir.string() << "\n";
}

int cmd_generate(const CommonFlags& flags) {
    RunConfig config = resolve_config(flags);
    std::shared_ptr<Transport> transport;
    if (config.mode == RunMode::LiveRecord) transport = std::make_shared<HttpTransport>();

    if (!flags.categories_path.empty()) {
        DomainProfile profile = load_profile(config.profile_path);
        CategoryPlan plan = load_plan(flags.categories_path, profile);
        if (!flags.category.empty()) {
            CategoryPlan restricted;
            for (const Category& c : plan.categories)
                if (c.name == flags.category) restricted.categories.push_back(c);
            if (restricted.categories.empty())
                throw Error("category not in plan: " + flags.category);
            plan = restricted;
        }
        CategoryRunSummary summary = generate_by_category(config, plan, transport);
        for (const CategoryRun& run : summary.categories)
            std::cout << "category " << run.category_name << ": "
                      << (run.ok ? "ok" : "failed: " + run.error) << "\n";
        for (const std::string& warning : summary.warnings)
            std::cout << "warning: " << warning << "\n";
        std::cout << "merged metrics:\n";
        for (auto [name, value] : summary.merged_metrics.as_pairs())
            std::cout << "  " << name << ": " << value << "\n";
        bool all_ok = true;
        for (const CategoryRun& run : summary.categories) all_ok = all_ok && run.ok;
        return all_ok ? 0 : 1;
    }

    RunSummary summary = generate(config, transport);
    print_summary(summary);
    if (!summary.ok) return 2;
    return summary.verification.clean ? 0 : 1;
}

int cmd_categorize(const CommonFlags& flags) {
    RunConfig config = resolve_config(flags);
    std::shared_ptr<Transport> transport;
    if (config.mode == RunMode::LiveRecord) transport = std::make_shared<HttpTransport>();
    CategoryPlan plan = categorize(config, transport);
    for (const Category& category : plan.categories) {
        std::cout << category.name << ": ";
        for (size_t i = 0; i < category.keywords.size(); ++i)
            std::cout << (i ? ", " : "") << category.keywords[i];
        std::cout << "\n";
    }
    return 0;
}

int cmd_metrics(const std::string& path) {
    OntologyMetrics m = compute_metrics(load_graph(path));
    for (auto [name, value] : m.as_pairs()) std::cout << name << ": " << value << "\n";
    return 0;
}

int cmd_verify(const std::string& path, double duplicate_threshold) {
    OntologyGraph graph;
    try {
        graph = load_graph(path);
    } catch (const SyntaxError& e) {
        std::cout << "SYNTAX PARSE " << e.issue().to_string() << "\n";
        return 1;
    }
    PitfallConfig config;
    config.duplicate_threshold = duplicate_threshold;
    VerificationReport report = verify_graph(graph, config);
    for (const Finding& finding : report.findings)
        std::cout << detail::render_finding_line(finding) << "\n";
    return report.clean ? 0 : 1;
}

int cmd_align(const std::string& generated_path, const std::string& gold_path, double threshold,
              bool classes_only) {
    AlignOptions options;
    options.include_properties = !classes_only;
    AlignmentResult result =
        align(load_graph(generated_path), load_graph(gold_path), threshold, options);
    std::printf("matched=%d average=%.3f\n", result.matched_count, result.average_score);
    for (const MatchPair& pair : result.pairs)
        std::printf("%s\t%s\t%.6f\n", pair.generated.c_str(), pair.gold.c_str(), pair.score);
    return 0;
}

int cmd_merge(const std::string& foundation_path, const std::vector<std::string>& addition_paths,
              const std::string& output_path, const std::string& precedence, bool dedup,
              double threshold) {
    MergePolicy policy;
    if (precedence == "foundation-wins")
        policy.annotation_precedence = AnnotationPrecedence::FoundationWins;
    else if (precedence == "addition-wins")
        policy.annotation_precedence = AnnotationPrecedence::AdditionWins;
    else throw Error("unknown precedence: " + precedence);
    policy.dedup_properties = dedup;
    policy.duplicate_threshold = threshold;

    OntologyGraph foundation = load_graph(foundation_path);
    std::vector<OntologyGraph> additions;
    for (const std::string& path : addition_paths) additions.push_back(load_graph(path));
    OntologyGraph merged = merge(foundation, additions, policy);

    std::ofstream out(output_path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + output_path);
    out << serialize(merged);
    std::cout << "merged " << (1 + additions.size()) << " graphs, " << merged.size()
              << " triples -> " << output_path << "\n";
    return 0;
}

int cmd_replay_check(const CommonFlags& flags) {
    RunConfig config = resolve_config(flags);
    RunSummary summary = replay_check(config);
    if (summary.ok) {
        std::cout << "transcript matches the templates (" << summary.stages.size()
                  << " stages)\n";
        return 0;
    }
    std::cout << "replay check failed at " << summary.failed_stage << ": " << summary.error
              << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ontology generation pipeline with verification, merging, and alignment"};
    app.require_subcommand(1);

    CommonFlags flags;

    auto add_common = [&](CLI::App* cmd, bool with_category = false) {
        cmd->add_option("--config", flags.config_path, "Run configuration JSON")->required();
        cmd->add_option("--mode", flags.mode, "live-record or replay (overrides config)");
        cmd->add_option("--templates", flags.templates, "Template directory (overrides config)");
        cmd->add_option("--jobs", flags.jobs, "Concurrent category runs");
        if (with_category) {
            cmd->add_option("--categories", flags.categories_path,
                            "Category plan file; runs one pipeline per category and merges");
            cmd->add_option("--category", flags.category, "Restrict to one category of the plan");
        }
    };

    CLI::App* generate_cmd = app.add_subcommand("generate", "Run the full pipeline");
    add_common(generate_cmd, true);

    CLI::App* categorize_cmd =
        app.add_subcommand("categorize", "Group the profile keywords into categories");
    add_common(categorize_cmd);

    CLI::App* replay_cmd =
        app.add_subcommand("replay-check", "Validate a transcript against the templates");
    add_common(replay_cmd);

    std::string in_a, in_b, out_path;
    double threshold = 0.8;
    bool classes_only = false;

    CLI::App* metrics_cmd = app.add_subcommand("metrics", "Print ontology count metrics");
    metrics_cmd->add_option("file", in_a, "Turtle file")->required();

    double verify_threshold = 0.9;
    CLI::App* verify_cmd = app.add_subcommand("verify", "Report findings for a Turtle file");
    verify_cmd->add_option("file", in_a, "Turtle file")->required();
    verify_cmd->add_option("--duplicate-threshold", verify_threshold,
                           "Similarity threshold for duplicate properties");

    CLI::App* align_cmd = app.add_subcommand("align", "Match two ontologies");
    align_cmd->add_option("generated", in_a, "Generated Turtle file")->required();
    align_cmd->add_option("gold", in_b, "Gold Turtle file")->required();
    align_cmd->add_option("--threshold", threshold, "Match threshold");
    align_cmd->add_flag("--classes-only", classes_only, "Match classes only");

    std::vector<std::string> additions;
    std::string precedence = "foundation-wins";
    bool dedup = false;
    double dup_threshold = 0.9;
    CLI::App* merge_cmd = app.add_subcommand("merge", "Merge ontologies");
    merge_cmd->add_option("foundation", in_a, "Foundation Turtle file")->required();
    merge_cmd->add_option("additions", additions, "Addition Turtle files")->required();
    merge_cmd->add_option("--out", out_path, "Output Turtle file")->required();
    merge_cmd->add_option("--annotation-precedence", precedence,
                          "foundation-wins or addition-wins");
    merge_cmd->add_flag("--dedup-properties", dedup, "Collapse near-duplicate properties");
    merge_cmd->add_option("--duplicate-threshold", dup_threshold,
                          "Similarity threshold for property dedup");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate_cmd->parsed()) return cmd_generate(flags);
        if (categorize_cmd->parsed()) return cmd_categorize(flags);
        if (replay_cmd->parsed()) return cmd_replay_check(flags);
        if (metrics_cmd->parsed()) return cmd_metrics(in_a);
        if (verify_cmd->parsed()) return cmd_verify(in_a, verify_threshold);
        if (align_cmd->parsed()) return cmd_align(in_a, in_b, threshold, classes_only);
        if (merge_cmd->parsed())
            return cmd_merge(in_a, additions, out_path, precedence, dedup, dup_threshold);
    } catch (const SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
