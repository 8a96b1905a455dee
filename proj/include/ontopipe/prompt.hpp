#pragma once
// The staged prompt pipeline: domain profiles, the 19 stage templates with
// {{placeholder}} substitution, parsers for each stage's model response, and
// fragment aggregation into the working graph.
//
// Templates are data files (p01_requirements.txt ... p19_fix_pitfall.txt plus
// categorize.txt), editable without rebuilding. Rendering is deterministic:
// equal inputs produce byte-identical prompts.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ontopipe/model.hpp"
#include "ontopipe/turtle.hpp"

namespace ontopipe {

enum class Stage : int {
    Requirements = 1,        // P1
    Reuse = 2,               // P2
    CompetencyQuestions = 3, // P3
    Extraction = 4,          // P4
    ConceptualModel = 5,     // P5
    ImplementTurtle = 6,     // P6
    EnrichInverse = 7,       // P7
    EnrichReflexive = 8,     // P8
    EnrichSymmetric = 9,     // P9
    EnrichFunctional = 10,   // P10
    EnrichTransitive = 11,   // P11
    DataProperties = 12,     // P12
    Individuals = 13,        // P13
    Metadata = 14,           // P14
    Comments = 15,           // P15
    HierarchyRefinement = 16,// P16
    FixSyntax = 17,          // P17
    FixInconsistency = 18,   // P18
    FixPitfall = 19,         // P19
};

inline constexpr int kStageCount = 19;
inline constexpr int kLastGenerationStage = 16;

inline const char* stage_stem(Stage s) {
    switch (s) {
        case Stage::Requirements: return "p01_requirements";
        case Stage::Reuse: return "p02_reuse";
        case Stage::CompetencyQuestions: return "p03_competency_questions";
        case Stage::Extraction: return "p04_extraction";
        case Stage::ConceptualModel: return "p05_conceptual_model";
        case Stage::ImplementTurtle: return "p06_implement_turtle";
        case Stage::EnrichInverse: return "p07_enrich_inverse";
        case Stage::EnrichReflexive: return "p08_enrich_reflexive";
        case Stage::EnrichSymmetric: return "p09_enrich_symmetric";
        case Stage::EnrichFunctional: return "p10_enrich_functional";
        case Stage::EnrichTransitive: return "p11_enrich_transitive";
        case Stage::DataProperties: return "p12_data_properties";
        case Stage::Individuals: return "p13_individuals";
        case Stage::Metadata: return "p14_metadata";
        case Stage::Comments: return "p15_comments";
        case Stage::HierarchyRefinement: return "p16_hierarchy_refinement";
        case Stage::FixSyntax: return "p17_fix_syntax";
        case Stage::FixInconsistency: return "p18_fix_inconsistency";
        case Stage::FixPitfall: return "p19_fix_pitfall";
    }
    return "";
}

struct CqFewshot {
    std::string question;
    std::vector<std::string> entities;
    std::vector<std::string> properties;
};

struct ReuseExample {
    std::string resource_name;
    std::string resource_description;
    std::string hierarchy_text;  // arrow-notation lines: "-> x", "--> y", ...

    // Arrow depth may increase by at most one between consecutive lines.
    void validate() const {
        int prev_depth = 0;
        std::istringstream in(hierarchy_text);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            size_t first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;
            size_t dashes = 0;
            while (first + dashes < line.size() && line[first + dashes] == '-') ++dashes;
            if (dashes == 0 || first + dashes >= line.size() || line[first + dashes] != '>')
                throw Error("reuse example '" + resource_name + "' line " +
                            std::to_string(line_no) + " is not arrow notation: " + line);
            int depth = static_cast<int>(dashes);
            if (depth > prev_depth + 1)
                throw Error("reuse example '" + resource_name + "' line " +
                            std::to_string(line_no) + " jumps arrow depth from " +
                            std::to_string(prev_depth) + " to " + std::to_string(depth));
            prev_depth = depth;
        }
    }
};

// Everything that determines prompt rendering for one domain.
struct DomainProfile {
    std::string persona;
    std::string domain_name;
    std::string domain_description;
    std::vector<std::string> keywords;
    OntologyMetrics target_metrics;
    std::vector<CqFewshot> cq_fewshots;
    std::vector<std::string> data_property_fewshots;  // Turtle snippets
    std::vector<std::string> individual_fewshots;     // Turtle snippets
    std::vector<ReuseExample> reuse_examples;

    // Keywords must be unique after case-folding; every few-shot Turtle
    // snippet must parse; reuse examples must be well-formed arrow text.
    void validate() const {
        if (keywords.empty()) throw Error("profile has no keywords");
        std::set<std::string> folded;
        for (const std::string& k : keywords) {
            std::string f = k;
            for (char& c : f) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            if (!folded.insert(f).second) throw Error("duplicate keyword after case-folding: " + k);
        }
        for (const std::string& snippet : data_property_fewshots) parse_turtle(snippet);
        for (const std::string& snippet : individual_fewshots) parse_turtle(snippet);
        for (const ReuseExample& example : reuse_examples) example.validate();
    }
};

inline void from_json(const nlohmann::json& j, CqFewshot& f) {
    j.at("question").get_to(f.question);
    j.at("entities").get_to(f.entities);
    j.at("properties").get_to(f.properties);
}

inline void to_json(nlohmann::json& j, const CqFewshot& f) {
    j = {{"question", f.question}, {"entities", f.entities}, {"properties", f.properties}};
}

inline void from_json(const nlohmann::json& j, ReuseExample& r) {
    j.at("resource_name").get_to(r.resource_name);
    j.at("resource_description").get_to(r.resource_description);
    j.at("hierarchy_text").get_to(r.hierarchy_text);
}

inline void to_json(nlohmann::json& j, const ReuseExample& r) {
    j = {{"resource_name", r.resource_name},
         {"resource_description", r.resource_description},
         {"hierarchy_text", r.hierarchy_text}};
}

inline void from_json(const nlohmann::json& j, OntologyMetrics& m) {
    for (auto [name, value] : m.as_pairs()) {
        (void)value;
        std::string key(name);
        if (j.contains(key)) *m.field_by_name(name) = j.at(key).get<long long>();
    }
}

inline void to_json(nlohmann::json& j, const OntologyMetrics& m) {
    j = nlohmann::json::object();
    for (auto [name, value] : m.as_pairs()) j[std::string(name)] = value;
}

inline void from_json(const nlohmann::json& j, DomainProfile& p) {
    j.at("persona").get_to(p.persona);
    j.at("domain_name").get_to(p.domain_name);
    j.at("domain_description").get_to(p.domain_description);
    j.at("keywords").get_to(p.keywords);
    if (j.contains("target_metrics")) j.at("target_metrics").get_to(p.target_metrics);
    if (j.contains("cq_fewshots")) j.at("cq_fewshots").get_to(p.cq_fewshots);
    if (j.contains("data_property_fewshots"))
        j.at("data_property_fewshots").get_to(p.data_property_fewshots);
    if (j.contains("individual_fewshots")) j.at("individual_fewshots").get_to(p.individual_fewshots);
    if (j.contains("reuse_examples")) j.at("reuse_examples").get_to(p.reuse_examples);
}

inline void to_json(nlohmann::json& j, const DomainProfile& p) {
    j = {{"persona", p.persona},
         {"domain_name", p.domain_name},
         {"domain_description", p.domain_description},
         {"keywords", p.keywords},
         {"target_metrics", p.target_metrics},
         {"cq_fewshots", p.cq_fewshots},
         {"data_property_fewshots", p.data_property_fewshots},
         {"individual_fewshots", p.individual_fewshots},
         {"reuse_examples", p.reuse_examples}};
}

inline DomainProfile load_profile(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open profile: " + path.string());
    nlohmann::json j = nlohmann::json::parse(in);
    DomainProfile profile = j.get<DomainProfile>();
    profile.validate();
    return profile;
}

struct ExtractionRecord {
    int cq_index = 0;
    std::vector<std::string> entities;
    std::vector<std::string> properties;

    friend bool operator==(const ExtractionRecord&, const ExtractionRecord&) = default;
};

struct ExtractionParse {
    std::vector<ExtractionRecord> records;
    int blocks_seen = 0;
    int blocks_parsed = 0;

    double success_ratio() const {
        return blocks_seen == 0 ? 1.0
                                : static_cast<double>(blocks_parsed) /
                                      static_cast<double>(blocks_seen);
    }
};

struct ConceptTriple {
    std::string subject;
    std::string relation;
    std::string object;

    friend bool operator==(const ConceptTriple&, const ConceptTriple&) = default;
};

// Error context for the correction stages P17-P19.
struct ErrorContext {
    std::string message;
    std::string fragment;
};

// State threaded through one pipeline run. `stage` is the highest P1-P16
// stage started so far (0 before the run begins).
struct PipelineState {
    int stage = 0;
    DomainProfile profile;
    std::vector<std::string> competency_questions;
    ExtractionParse extracted;
    std::vector<ConceptTriple> conceptual_triples;
    OntologyGraph working_graph;
    std::map<std::string, int> correction_rounds_used;  // by finding kind name
};

namespace detail {

inline std::string join(const std::vector<std::string>& items, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

inline std::string quoted_list(const std::vector<std::string>& items) {
    std::string out = "[";
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += "\"" + items[i] + "\"";
    }
    return out + "]";
}

inline std::string render_target_metrics(const OntologyMetrics& m) {
    std::string out;
    bool first = true;
    for (auto [name, value] : m.as_pairs()) {
        if (!first) out += ", ";
        out += std::string(name) + "=" + std::to_string(value);
        first = false;
    }
    return out;
}

inline std::string render_cq_fewshots(const std::vector<CqFewshot>& fewshots) {
    std::string out;
    for (size_t i = 0; i < fewshots.size(); ++i) {
        if (i) out += "\n";
        out += "\"cq" + std::to_string(i + 1) + "\": \"" + fewshots[i].question + "\"\n";
        out += "Entity: " + quoted_list(fewshots[i].entities) + "\n";
        out += "Property: " + quoted_list(fewshots[i].properties) + "\n";
    }
    return out;
}

inline std::string render_reuse_resource(const std::vector<ReuseExample>& examples) {
    std::vector<std::string> parts;
    for (const ReuseExample& e : examples)
        parts.push_back(e.resource_name + ": " + e.resource_description);
    return join(parts, "; ");
}

inline std::string render_reuse_examples(const std::vector<ReuseExample>& examples) {
    std::vector<std::string> parts;
    for (const ReuseExample& e : examples) parts.push_back(e.hierarchy_text);
    return join(parts, "\n");
}

}  // namespace detail

// Loads the bundled stage templates from a directory and renders them.
class PromptLibrary {
public:
    static PromptLibrary load(const std::filesystem::path& dir) {
        PromptLibrary lib;
        lib.dir_ = dir;
        for (int i = 1; i <= kStageCount; ++i) {
            Stage s = static_cast<Stage>(i);
            lib.templates_[i] = read_file(dir / (std::string(stage_stem(s)) + ".txt"));
        }
        lib.categorize_template_ = read_file(dir / "categorize.txt");
        return lib;
    }

    // Renders a stage prompt. P1-P16 must be rendered in strictly ascending
    // order relative to state.stage; P17-P19 require an error context.
    std::string render(Stage stage, const PipelineState& state,
                       const std::optional<ErrorContext>& extra = std::nullopt) const {
        int number = static_cast<int>(stage);
        if (number <= kLastGenerationStage && number <= state.stage)
            throw StageOrderError("stage " + std::string(stage_stem(stage)) +
                                  " rendered out of order (current stage " +
                                  std::to_string(state.stage) + ")");

        std::map<std::string, std::string> values;
        const DomainProfile& p = state.profile;
        values["persona"] = p.persona;
        values["domain_name"] = p.domain_name;
        values["domain_description"] = p.domain_description;
        values["keywords"] = detail::join(p.keywords, ", ");
        values["target_metrics"] = detail::render_target_metrics(p.target_metrics);
        if (!p.cq_fewshots.empty())
            values["cq_fewshots"] = detail::render_cq_fewshots(p.cq_fewshots);
        if (!p.data_property_fewshots.empty())
            values["data_property_fewshots"] = detail::join(p.data_property_fewshots, "\n");
        if (!p.individual_fewshots.empty())
            values["individual_fewshots"] = detail::join(p.individual_fewshots, "\n");
        if (!p.reuse_examples.empty()) {
            values["reuse_resource"] = detail::render_reuse_resource(p.reuse_examples);
            values["reuse_examples"] = detail::render_reuse_examples(p.reuse_examples);
        }
        if (extra) {
            values["error_message"] = extra->message;
            values["affected_fragment"] = extra->fragment;
        }
        return substitute(templates_.at(number), values);
    }

    std::string render_categorize(const DomainProfile& profile) const {
        std::map<std::string, std::string> values;
        values["keywords"] = detail::join(profile.keywords, ", ");
        return substitute(categorize_template_, values);
    }

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
    std::map<int, std::string> templates_;
    std::string categorize_template_;

    static std::string read_file(const std::filesystem::path& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error("cannot open template: " + path.string());
        std::ostringstream out;
        out << in.rdbuf();
        return out.str();
    }

    static std::string substitute(const std::string& tpl,
                                  const std::map<std::string, std::string>& values) {
        std::string out;
        out.reserve(tpl.size());
        size_t pos = 0;
        while (pos < tpl.size()) {
            size_t open = tpl.find("{{", pos);
            if (open == std::string::npos) {
                out.append(tpl, pos, std::string::npos);
                break;
            }
            out.append(tpl, pos, open - pos);
            size_t close = tpl.find("}}", open + 2);
            if (close == std::string::npos)
                throw Error("unterminated {{placeholder}} in template");
            std::string name = tpl.substr(open + 2, close - open - 2);
            auto it = values.find(name);
            if (it == values.end()) throw MissingPlaceholderError(name);
            out += it->second;
            pos = close + 2;
        }
        return out;
    }
};

// P3 responses: any numbered or bulleted list, one question per line ending
// in '?'. Bullet and numbering prefixes are stripped.
inline std::vector<std::string> parse_competency_questions(const std::string& text) {
    std::vector<std::string> questions;
    std::istringstream in(text);
    std::string line;
    static const std::regex bullet(R"(^\s*(?:[-*+]|\(?\d+[.)\]:]?)\s*)");
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line.back() != '?') continue;
        // UTF-8 bullet dot, then ASCII bullets and numbering.
        size_t lead = line.find_first_not_of(" \t");
        if (lead != std::string::npos && line.compare(lead, 3, "\xe2\x80\xa2") == 0)
            line = line.substr(lead + 3);
        std::string stripped =
            std::regex_replace(line, bullet, "", std::regex_constants::format_first_only);
        size_t first = stripped.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        questions.push_back(stripped.substr(first));
    }
    return questions;
}

// P4 responses: blocks of `"cqK": "..."` / `Entity: [...]` / `Property: [...]`.
// Unparseable blocks are skipped and counted.
inline ExtractionParse parse_extraction_response(const std::string& text) {
    ExtractionParse result;
    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            lines.push_back(line);
        }
    }

    static const std::regex header(R"re(^\s*"?cq(\d+)"?\s*:.*$)re", std::regex::icase);
    static const std::regex entity(R"re(^\s*Entit(?:y|ies)\s*:\s*\[(.*)\]\s*,?\s*$)re",
                                   std::regex::icase);
    static const std::regex property(R"re(^\s*Propert(?:y|ies)\s*:\s*\[(.*)\]\s*,?\s*$)re",
                                     std::regex::icase);

    auto split_items = [](const std::string& body) {
        std::vector<std::string> items;
        std::string current;
        bool in_quotes = false;
        for (char c : body) {
            if (c == '"') {
                in_quotes = !in_quotes;
                continue;
            }
            if (c == ',' && !in_quotes) {
                items.push_back(current);
                current.clear();
                continue;
            }
            current += c;
        }
        items.push_back(current);
        std::vector<std::string> cleaned;
        for (std::string& item : items) {
            size_t a = item.find_first_not_of(" \t'");
            size_t b = item.find_last_not_of(" \t'");
            if (a == std::string::npos) continue;
            cleaned.push_back(item.substr(a, b - a + 1));
        }
        return cleaned;
    };

    for (size_t i = 0; i < lines.size(); ++i) {
        std::smatch m;
        if (!std::regex_match(lines[i], m, header)) continue;
        ++result.blocks_seen;
        ExtractionRecord record;
        try {
            record.cq_index = std::stoi(m[1]);
        } catch (const std::out_of_range&) {
            continue;  // absurd index; treat the block as unparseable
        }

        // The Entity line, then the Property line, each on the next non-blank line.
        size_t j = i + 1;
        while (j < lines.size() && lines[j].find_first_not_of(" \t") == std::string::npos) ++j;
        std::smatch em;
        if (j >= lines.size() || !std::regex_match(lines[j], em, entity)) continue;
        size_t k = j + 1;
        while (k < lines.size() && lines[k].find_first_not_of(" \t") == std::string::npos) ++k;
        std::smatch pm;
        if (k >= lines.size() || !std::regex_match(lines[k], pm, property)) continue;

        record.entities = split_items(em[1]);
        record.properties = split_items(pm[1]);
        result.records.push_back(std::move(record));
        ++result.blocks_parsed;
        i = k;
    }
    return result;
}

// P5 responses: every line of the form `X -- r --> Y` becomes a concept
// triple of trimmed tokens; other lines are ignored.
inline std::vector<ConceptTriple> parse_conceptual_model(const std::string& text) {
    std::vector<ConceptTriple> triples;
    static const std::regex arrow(R"(^\s*(.+?)\s*--\s*(.+?)\s*-->\s*(.+?)\s*$)");
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::smatch m;
        if (std::regex_match(line, m, arrow)) triples.push_back({m[1], m[2], m[3]});
    }
    return triples;
}

inline std::string format_concept_triple(const ConceptTriple& t) {
    return t.subject + " -- " + t.relation + " --> " + t.object;
}

// Parses a Turtle fragment (fence-tolerant), merges its prefixes (a label
// re-bound to a different IRI is a conflict), and unions its triples into the
// working graph.
inline PipelineState aggregate_fragment(PipelineState state, const std::string& fragment_text) {
    if (state.stage < static_cast<int>(Stage::ImplementTurtle))
        throw StageOrderError("aggregate_fragment before the implementation stage");
    OntologyGraph fragment = parse_turtle(fragment_text);
    state.working_graph.prefixes().merge(fragment.prefixes());
    for (const Triple& t : fragment.triples()) state.working_graph.insert(t);
    return state;
}

struct Category {
    std::string name;
    std::vector<std::string> keywords;
};

struct CategoryPlan {
    std::vector<Category> categories;
};

// Parses a categorization response of `Category Name: k1, k2, ...` lines and
// validates it against the keyword list (case-folded). Throws PlanError on
// unassigned keywords, unknown keywords, or an empty category.
inline CategoryPlan plan_categories(const std::vector<std::string>& keywords,
                                    const std::string& model_response) {
    auto fold = [](const std::string& s) {
        std::string out = s;
        for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        size_t a = out.find_first_not_of(" \t");
        size_t b = out.find_last_not_of(" \t");
        return a == std::string::npos ? std::string() : out.substr(a, b - a + 1);
    };

    std::map<std::string, std::string> canonical;  // folded -> original casing
    for (const std::string& k : keywords) canonical[fold(k)] = k;

    CategoryPlan plan;
    std::set<std::string> assigned;
    std::vector<std::string> unknown;

    static const std::regex bullet(R"(^\s*(?:[-*+]|\(?\d+[.)\]]?)\s+)");
    std::istringstream in(model_response);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string body =
            std::regex_replace(line, bullet, "", std::regex_constants::format_first_only);
        auto colon = body.find(':');
        if (colon == std::string::npos) continue;
        std::string name = body.substr(0, colon);
        size_t a = name.find_first_not_of(" \t");
        size_t b = name.find_last_not_of(" \t");
        if (a == std::string::npos) continue;
        name = name.substr(a, b - a + 1);

        Category category;
        category.name = name;
        std::istringstream items(body.substr(colon + 1));
        std::string item;
        while (std::getline(items, item, ',')) {
            std::string folded = fold(item);
            if (folded.empty()) continue;
            auto it = canonical.find(folded);
            if (it == canonical.end()) {
                unknown.push_back(folded);
                continue;
            }
            category.keywords.push_back(it->second);
            assigned.insert(folded);
        }
        if (category.keywords.empty())
            throw PlanError(PlanError::Kind::EmptyCategory, {name},
                            "category '" + name + "' has no keywords");
        plan.categories.push_back(std::move(category));
    }

    if (!unknown.empty())
        throw PlanError(PlanError::Kind::UnknownKeywords, unknown,
                        "response assigns keywords not in the profile: " +
                            detail::join(unknown, ", "));
    std::vector<std::string> missing;
    for (const auto& [folded, original] : canonical)
        if (!assigned.count(folded)) missing.push_back(original);
    if (!missing.empty())
        throw PlanError(PlanError::Kind::UnassignedKeywords, missing,
                        "keywords not assigned to any category: " + detail::join(missing, ", "));
    return plan;
}

}  // namespace ontopipe
