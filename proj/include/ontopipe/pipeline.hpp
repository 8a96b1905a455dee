#pragma once
// Run orchestration: executes the staged prompt pipeline against a chat
// session (live-record or replay), aggregates the working ontology, runs the
// corrective loop, and writes a self-contained run directory:
//
//   profile.snapshot     the profile that drove the run
//   transcripts/         one JSONL session file per stage range
//   ontology.final.ttl   canonical serialization of the result
//   metrics.txt          one `name: value` line per metric field
//   gaps.txt             per-metric deficits against the profile targets
//   verification.txt     findings, or "clean"
//
// A failed stage leaves a PARTIAL_RUN marker naming it. Replay runs are fully
// deterministic and byte-identical across repetitions.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "ontopipe/align.hpp"
#include "ontopipe/gateway.hpp"
#include "ontopipe/merge.hpp"
#include "ontopipe/metrics.hpp"
#include "ontopipe/prompt.hpp"
#include "ontopipe/turtle.hpp"
#include "ontopipe/verify.hpp"

namespace ontopipe {

enum class RunMode { LiveRecord, Replay };

struct RunConfig {
    std::filesystem::path profile_path;
    ProviderConfig provider;
    RunMode mode = RunMode::Replay;
    std::filesystem::path transcript_dir;
    std::filesystem::path output_dir;
    int correction_max_rounds = 3;
    double duplicate_threshold = 0.9;
    double align_threshold = 0.8;
    std::filesystem::path template_dir;
    MergePolicy merge_policy;  // applied when merging per-category results
    int jobs = 1;
};

inline RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config: " + path.string());
    nlohmann::json j = nlohmann::json::parse(in);
    RunConfig cfg;
    std::filesystem::path base = path.parent_path();
    auto resolve = [&](const std::string& key) -> std::filesystem::path {
        std::filesystem::path p = j.at(key).get<std::string>();
        return p.is_absolute() ? p : base / p;
    };
    cfg.profile_path = resolve("profile_path");
    if (j.contains("transcript_dir")) cfg.transcript_dir = resolve("transcript_dir");
    if (j.contains("output_dir")) cfg.output_dir = resolve("output_dir");
    if (j.contains("template_dir")) cfg.template_dir = resolve("template_dir");
    std::string mode = j.value("mode", "replay");
    if (mode == "replay") cfg.mode = RunMode::Replay;
    else if (mode == "live-record") cfg.mode = RunMode::LiveRecord;
    else throw Error("unknown mode: " + mode);
    cfg.correction_max_rounds = j.value("correction_max_rounds", 3);
    cfg.duplicate_threshold = j.value("duplicate_threshold", 0.9);
    cfg.align_threshold = j.value("align_threshold", 0.8);
    cfg.jobs = j.value("jobs", 1);
    if (j.contains("provider")) {
        const nlohmann::json& p = j.at("provider");
        cfg.provider.endpoint = p.value("endpoint", cfg.provider.endpoint);
        cfg.provider.model_id = p.value("model_id", cfg.provider.model_id);
        cfg.provider.max_output_tokens = p.value("max_output_tokens", cfg.provider.max_output_tokens);
        cfg.provider.temperature = p.value("temperature", cfg.provider.temperature);
        cfg.provider.request_timeout =
            std::chrono::seconds(p.value("request_timeout_seconds", 120));
        cfg.provider.max_retries = p.value("max_retries", cfg.provider.max_retries);
        cfg.provider.credential_env_var =
            p.value("credential_env_var", cfg.provider.credential_env_var);
        cfg.provider.response_content_pointer =
            p.value("response_content_pointer", cfg.provider.response_content_pointer);
        cfg.provider.context_window = p.value("context_window", cfg.provider.context_window);
        if (cfg.provider.max_output_tokens <= 0) throw Error("max_output_tokens must be positive");
    }
    if (j.contains("merge")) {
        const nlohmann::json& m = j.at("merge");
        std::string precedence = m.value("annotation_precedence", "foundation-wins");
        if (precedence == "foundation-wins")
            cfg.merge_policy.annotation_precedence = AnnotationPrecedence::FoundationWins;
        else if (precedence == "addition-wins")
            cfg.merge_policy.annotation_precedence = AnnotationPrecedence::AdditionWins;
        else throw Error("unknown annotation_precedence: " + precedence);
        cfg.merge_policy.dedup_properties = m.value("dedup_properties", false);
    }
    cfg.merge_policy.duplicate_threshold = cfg.duplicate_threshold;
    return cfg;
}

struct StageStatus {
    Stage stage;
    bool ok = false;
    std::string note;  // chars in/out, warnings
};

struct RunSummary {
    bool ok = false;
    std::filesystem::path output_dir;
    std::vector<StageStatus> stages;
    OntologyGraph final_graph;
    OntologyMetrics final_metrics;
    VerificationReport verification;
    std::vector<std::string> warnings;
    std::string failed_stage;
    std::string error;
};

namespace detail {

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
}

inline std::string render_metrics_text(const OntologyMetrics& m) {
    std::string out;
    for (auto [name, value] : m.as_pairs())
        out += std::string(name) + ": " + std::to_string(value) + "\n";
    return out;
}

inline std::string render_gaps_text(const GapReport& report) {
    std::string out;
    for (const MetricGap& gap : report.per_metric)
        out += gap.name + ": actual=" + std::to_string(gap.actual) +
               " target=" + std::to_string(gap.target) +
               " deficit=" + std::to_string(gap.deficit) + "\n";
    out += std::string("subclass_rule: ") +
           (report.subclass_rule_satisfied ? "satisfied" : "violated") +
           " deficit=" + std::to_string(report.subclass_rule_deficit) + "\n";
    return out;
}

inline std::string render_finding_line(const Finding& f) {
    std::string out = std::string(finding_kind_name(f.kind)) + " " + f.code;
    for (const std::string& iri : f.affected) out += " <" + iri + ">";
    out += " " + f.message;
    return out;
}

inline std::string render_verification_text(const VerificationReport& report) {
    if (report.clean) return "clean\n";
    std::string out;
    for (const Finding& f : report.findings) out += render_finding_line(f) + "\n";
    return out;
}

inline std::string category_slug(const std::string& name) {
    std::string out;
    for (char c : name) {
        unsigned char u = static_cast<unsigned char>(c);
        if (std::isalnum(u)) out += static_cast<char>(std::tolower(u));
        else if (!out.empty() && out.back() != '_') out += '_';
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    return out.empty() ? "category" : out;
}

inline std::filesystem::path session_file(const std::filesystem::path& dir,
                                          const std::string& stage_range) {
    return dir / ("session_" + stage_range + ".jsonl");
}

}  // namespace detail

// Opens the session for one run. Replay sessions read from transcript_dir and
// never construct a transport; live sessions record to record_dir.
inline std::unique_ptr<ChatSession> open_session(const RunConfig& config,
                                                 const std::string& stage_range,
                                                 const std::filesystem::path& transcript_subdir,
                                                 const std::filesystem::path& record_dir,
                                                 std::shared_ptr<Transport> transport) {
    if (config.mode == RunMode::Replay) {
        std::filesystem::path dir = config.transcript_dir / transcript_subdir;
        if (!std::filesystem::exists(dir))
            throw Error("replay mode requires transcript dir: " + dir.string());
        return ReplaySession::open(detail::session_file(dir, stage_range));
    }
    if (!transport) throw Error("live-record mode requires a transport");
    return std::make_unique<LiveSession>(config.provider, std::move(transport),
                                         detail::session_file(record_dir, stage_range));
}

namespace detail {

// Aggregates a model fragment, retrying through the fix-syntax stage when the
// fragment does not parse.
inline PipelineState aggregate_with_syntax_retry(PipelineState state, ChatSession& session,
                                                 const PromptLibrary& library,
                                                 const std::string& reply, int budget,
                                                 std::vector<std::string>& warnings) {
    std::string text = reply;
    for (int attempt = 0;; ++attempt) {
        try {
            // Aggregate a copy: a parse failure must leave `state` intact for
            // the retry prompt and the next attempt.
            PipelineState candidate = state;
            return aggregate_fragment(std::move(candidate), text);
        } catch (const SyntaxError& e) {
            if (attempt >= budget) throw;
            warnings.push_back("fragment failed to parse (" + e.issue().to_string() +
                               "); requesting a syntax fix");
            ErrorContext context{e.issue().to_string(), text};
            text = session.send(library.render(Stage::FixSyntax, state, context));
        }
    }
}

inline void process_stage_reply(PipelineState& state, ChatSession& session,
                                const PromptLibrary& library, const RunConfig& config, Stage stage,
                                const std::string& reply, std::vector<std::string>& warnings) {
    switch (stage) {
        case Stage::CompetencyQuestions:
            state.competency_questions = parse_competency_questions(reply);
            if (state.competency_questions.empty())
                warnings.push_back("no competency questions recognized in the response");
            break;
        case Stage::Extraction: {
            ExtractionParse parsed = parse_extraction_response(reply);
            ExtractionParse kept;
            kept.blocks_seen = parsed.blocks_seen;
            for (ExtractionRecord& r : parsed.records) {
                if (r.cq_index >= 1 &&
                    r.cq_index <= static_cast<int>(state.competency_questions.size())) {
                    kept.records.push_back(std::move(r));
                } else {
                    warnings.push_back("extraction block cq" + std::to_string(r.cq_index) +
                                       " references no known competency question; dropped");
                }
            }
            kept.blocks_parsed = static_cast<int>(kept.records.size());
            state.extracted = std::move(kept);
            break;
        }
        case Stage::ConceptualModel:
            state.conceptual_triples = parse_conceptual_model(reply);
            break;
        case Stage::Requirements:
        case Stage::Reuse:
            break;  // conversation context only
        default:
            // Implementation and enrichment stages emit Turtle fragments.
            state = aggregate_with_syntax_retry(std::move(state), session, library, reply,
                                                config.correction_max_rounds, warnings);
            break;
    }
}

inline void write_partial_run_marker(const std::filesystem::path& output_dir,
                                     const std::string& stage, const std::string& error) {
    std::error_code ec;
    std::filesystem::create_directories(output_dir, ec);
    write_text_file(output_dir / "PARTIAL_RUN", "failed_stage: " + stage + "\nerror: " + error + "\n");
}

}  // namespace detail

// Runs stages P1-P16 plus the corrective loop for one profile, writing the
// run directory unless dry_run. The session name is "p01-p19".
inline RunSummary generate_with_profile(const RunConfig& config, const DomainProfile& profile,
                                        const std::filesystem::path& transcript_subdir = {},
                                        std::shared_ptr<Transport> transport = nullptr,
                                        bool dry_run = false) {
    RunSummary summary;
    summary.output_dir = config.output_dir;
    const std::string stage_range = "p01-p19";

    std::string current_stage = "startup";
    try {
        PromptLibrary library = PromptLibrary::load(config.template_dir);
        std::filesystem::path transcripts_out =
            config.output_dir / "transcripts" / transcript_subdir;
        if (!dry_run) std::filesystem::create_directories(transcripts_out);

        std::unique_ptr<ChatSession> session =
            open_session(config, stage_range, transcript_subdir, transcripts_out, transport);

        PipelineState state;
        state.profile = profile;

        for (int number = 1; number <= kLastGenerationStage; ++number) {
            Stage stage = static_cast<Stage>(number);
            current_stage = stage_stem(stage);
            std::string prompt = library.render(stage, state);
            if (estimate_tokens(prompt) + config.provider.max_output_tokens >
                config.provider.context_window)
                summary.warnings.push_back(std::string(stage_stem(stage)) +
                                           ": prompt plus expected output may exceed the "
                                           "provider context window");
            state.stage = number;
            std::string reply = session->send(prompt);
            detail::process_stage_reply(state, *session, library, config, stage, reply,
                                        summary.warnings);
            StageStatus status;
            status.stage = stage;
            status.ok = true;
            status.note = std::to_string(prompt.size()) + " chars out, " +
                          std::to_string(reply.size()) + " chars in";
            summary.stages.push_back(std::move(status));
        }

        current_stage = "correction_loop";
        PitfallConfig pitfall_config;
        pitfall_config.duplicate_threshold = config.duplicate_threshold;
        CorrectionOutcome corrected = correction_loop(std::move(state), *session, library,
                                                      config.correction_max_rounds, pitfall_config);
        for (const std::string& note : corrected.notes) summary.warnings.push_back(note);
        summary.final_graph = corrected.state.working_graph;
        summary.final_metrics = compute_metrics(summary.final_graph);
        summary.verification = corrected.report;

        if (!dry_run) {
            current_stage = "write_outputs";
            // Snapshot the exact profile that drove the run.
            nlohmann::json snapshot = profile;
            detail::write_text_file(config.output_dir / "profile.snapshot", snapshot.dump(2) + "\n");
            std::string turtle = serialize(summary.final_graph);
            detail::write_text_file(config.output_dir / "ontology.final.ttl", turtle);
            detail::write_text_file(config.output_dir / "metrics.txt",
                                    detail::render_metrics_text(summary.final_metrics));
            detail::write_text_file(
                config.output_dir / "gaps.txt",
                detail::render_gaps_text(gap_report(summary.final_metrics, profile.target_metrics)));
            detail::write_text_file(config.output_dir / "verification.txt",
                                    detail::render_verification_text(summary.verification));
            if (config.mode == RunMode::Replay) {
                // Keep the run directory self-contained for future replays.
                std::filesystem::copy_file(
                    detail::session_file(config.transcript_dir / transcript_subdir, stage_range),
                    detail::session_file(transcripts_out, stage_range),
                    std::filesystem::copy_options::overwrite_existing);
            }

            // Every artifact the run writes must re-parse.
            parse_turtle(turtle);
            read_transcript(detail::session_file(transcripts_out, stage_range));
        }
        summary.ok = true;
    } catch (const std::exception& e) {
        summary.ok = false;
        summary.failed_stage = current_stage;
        summary.error = e.what();
        if (!dry_run) detail::write_partial_run_marker(config.output_dir, current_stage, e.what());
    }
    return summary;
}

inline RunSummary generate(const RunConfig& config, std::shared_ptr<Transport> transport = nullptr,
                           bool dry_run = false) {
    DomainProfile profile = load_profile(config.profile_path);
    return generate_with_profile(config, profile, {}, std::move(transport), dry_run);
}

struct CategoryRun {
    std::string category_name;
    std::vector<std::string> keywords;
    std::filesystem::path result_graph_path;
    OntologyMetrics metrics;
    bool ok = false;
    std::string error;
};

struct CategoryRunSummary {
    bool ok = false;  // true when the merge step ran (even over fewer categories)
    std::vector<CategoryRun> categories;
    OntologyGraph merged_graph;
    OntologyMetrics merged_metrics;
    std::vector<std::string> warnings;
    std::filesystem::path output_dir;
};

// Derives the per-category profile: the category's keywords, with the
// category name qualifying the domain name.
inline DomainProfile category_profile(const DomainProfile& base, const Category& category) {
    DomainProfile p = base;
    p.domain_name = base.domain_name + " / " + category.name;
    p.keywords = category.keywords;
    return p;
}

// One generate run per category (each independently recordable/replayable),
// then a merge of all successful category graphs under the configured policy.
inline CategoryRunSummary generate_by_category(const RunConfig& config, const CategoryPlan& plan,
                                               std::shared_ptr<Transport> transport = nullptr) {
    CategoryRunSummary summary;
    summary.output_dir = config.output_dir;
    DomainProfile base_profile = load_profile(config.profile_path);

    struct Slot {
        Category category;
        RunConfig config;
        std::filesystem::path subdir;
        RunSummary run;
    };
    std::vector<Slot> slots;
    for (const Category& category : plan.categories) {
        Slot slot;
        slot.category = category;
        slot.subdir = detail::category_slug(category.name);
        slot.config = config;
        slot.config.output_dir = config.output_dir / "categories" / slot.subdir;
        slots.push_back(std::move(slot));
    }

    // Category runs are independent; run them on a bounded pool.
    std::atomic<size_t> next{0};
    int jobs = std::max(1, config.jobs);
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= slots.size()) return;
            Slot& slot = slots[i];
            DomainProfile profile = category_profile(base_profile, slot.category);
            slot.run = generate_with_profile(slot.config, profile, slot.subdir, transport);
        }
    };
    if (jobs == 1 || slots.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        size_t pool_size = std::min(static_cast<size_t>(jobs), slots.size());
        for (size_t t = 0; t < pool_size; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    std::vector<OntologyGraph> graphs;
    for (Slot& slot : slots) {
        CategoryRun run;
        run.category_name = slot.category.name;
        run.keywords = slot.category.keywords;
        run.ok = slot.run.ok;
        if (slot.run.ok) {
            run.result_graph_path = slot.config.output_dir / "ontology.final.ttl";
            run.metrics = slot.run.final_metrics;
            graphs.push_back(slot.run.final_graph);
        } else {
            run.error = slot.run.error;
            summary.warnings.push_back("category '" + slot.category.name +
                                       "' failed at " + slot.run.failed_stage + ": " +
                                       slot.run.error);
        }
        summary.categories.push_back(std::move(run));
    }

    if (graphs.empty()) {
        summary.warnings.push_back("no category runs succeeded; merged ontology is empty");
        summary.merged_graph = OntologyGraph{};
    } else {
        std::vector<OntologyGraph> additions(graphs.begin() + 1, graphs.end());
        summary.merged_graph = merge(graphs.front(), additions, config.merge_policy);
    }
    summary.merged_metrics = compute_metrics(summary.merged_graph);

    std::filesystem::create_directories(config.output_dir);
    detail::write_text_file(config.output_dir / "ontology.final.ttl",
                            serialize(summary.merged_graph));
    detail::write_text_file(config.output_dir / "metrics.txt",
                            detail::render_metrics_text(summary.merged_metrics));
    detail::write_text_file(
        config.output_dir / "gaps.txt",
        detail::render_gaps_text(gap_report(summary.merged_metrics, base_profile.target_metrics)));
    if (!summary.warnings.empty()) {
        std::string text;
        for (const std::string& w : summary.warnings) text += w + "\n";
        detail::write_text_file(config.output_dir / "warnings.txt", text);
    }
    summary.ok = true;
    return summary;
}

// Sends the categorization prompt over its own session and validates the
// response against the profile keywords.
inline CategoryPlan categorize(const RunConfig& config,
                               std::shared_ptr<Transport> transport = nullptr) {
    DomainProfile profile = load_profile(config.profile_path);
    PromptLibrary library = PromptLibrary::load(config.template_dir);
    std::filesystem::path transcripts_out = config.output_dir / "transcripts";
    if (config.mode == RunMode::LiveRecord) std::filesystem::create_directories(transcripts_out);
    std::unique_ptr<ChatSession> session =
        open_session(config, "categorize", {}, transcripts_out, std::move(transport));
    std::string reply = session->send(library.render_categorize(profile));
    return plan_categories(profile.keywords, reply);
}

// Validates a recorded transcript against the templates by replaying the full
// pipeline without writing any outputs.
inline RunSummary replay_check(RunConfig config) {
    config.mode = RunMode::Replay;
    return generate(config, nullptr, /*dry_run=*/true);
}

}  // namespace ontopipe
