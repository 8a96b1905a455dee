#include <catch2/catch.hpp>

#include "ontopipe/prompt.hpp"

using namespace ontopipe;

namespace {

DomainProfile small_profile() {
    DomainProfile p;
    p.persona = "expert aquatic ecologist and knowledge engineer";
    p.domain_name = "AquaDiva";
    p.domain_description = "the study of groundwater ecosystems";
    p.keywords = {"habitat", "aquifer", "groundwater"};
    p.target_metrics.axiom_count = 78840;
    p.target_metrics.class_count = 8892;
    p.target_metrics.object_property_count = 245;
    p.cq_fewshots.push_back({"What measurement is associated with an observation?",
                             {"Observation", "Measurement"},
                             {"hasMeasurement"}});
    p.data_property_fewshots.push_back(
        "@prefix : <http://example.org/aquadiva#> .\n"
        "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n"
        "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
        ":hasMeasurementValue rdf:type owl:DatatypeProperty .\n");
    p.individual_fewshots.push_back(
        "@prefix : <http://example.org/aquadiva#> .\n"
        "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n"
        "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
        ":Exbio_Antibodies rdf:type :Company, owl:NamedIndividual .\n");
    ReuseExample reuse;
    reuse.resource_name = "ENVO";
    reuse.resource_description = "the Environment Ontology";
    reuse.hierarchy_text =
        "-> biological_process\n"
        "--> biodegradation\n"
        "--> cellular process\n"
        "---> cellular metabolic process\n"
        "----> cellular alkane metabolic process\n"
        "----> photosynthesis";
    p.reuse_examples.push_back(reuse);
    return p;
}

PromptLibrary library() { return PromptLibrary::load(ONTOPIPE_TEMPLATE_DIR); }

PipelineState state_with(const DomainProfile& profile, int stage = 0) {
    PipelineState s;
    s.profile = profile;
    s.stage = stage;
    return s;
}

}  // namespace

TEST_CASE("stage one contains persona, all keywords, and the subclass rule") {
    auto lib = library();
    auto profile = small_profile();
    std::string prompt = lib.render(Stage::Requirements, state_with(profile));
    CHECK(prompt.find(profile.persona) != std::string::npos);
    for (const std::string& keyword : profile.keywords)
        CHECK(prompt.find(keyword) != std::string::npos);
    CHECK(prompt.find("subclass count should at least be n-1") != std::string::npos);
    CHECK(prompt.find("axiom_count=78840") != std::string::npos);
    CHECK(prompt.find("class_count=8892") != std::string::npos);
    CHECK(prompt.find("{{") == std::string::npos);
}

TEST_CASE("enrichment stages ask for only the new triples") {
    auto lib = library();
    auto profile = small_profile();
    std::string prompt = lib.render(Stage::EnrichInverse, state_with(profile));
    CHECK(prompt.find("inverse") != std::string::npos);
    CHECK(prompt.find("Print only the new triples") != std::string::npos);
}

TEST_CASE("fix stages demand an error context") {
    auto lib = library();
    auto profile = small_profile();
    PipelineState s = state_with(profile, 6);
    CHECK_THROWS_AS(lib.render(Stage::FixSyntax, s), MissingPlaceholderError);
    std::string prompt = lib.render(Stage::FixSyntax, s, ErrorContext{"boom", ":A :p :B ."});
    CHECK(prompt.find("boom") != std::string::npos);
    CHECK(prompt.find(":A :p :B .") != std::string::npos);
}

TEST_CASE("every stage renders without leftover placeholders") {
    auto lib = library();
    auto profile = small_profile();
    for (int number = 1; number <= kStageCount; ++number) {
        Stage stage = static_cast<Stage>(number);
        PipelineState s = state_with(profile, number - 1);
        std::optional<ErrorContext> extra;
        if (number >= 17) extra = ErrorContext{"error message", "fragment"};
        std::string prompt = lib.render(stage, s, extra);
        INFO(stage_stem(stage));
        CHECK(prompt.find("{{") == std::string::npos);
        CHECK_FALSE(prompt.empty());
    }
}

TEST_CASE("rendering is deterministic") {
    auto lib = library();
    auto profile = small_profile();
    auto s = state_with(profile);
    CHECK(lib.render(Stage::Requirements, s) == lib.render(Stage::Requirements, s));
}

TEST_CASE("consistency checklist appears on implementation stages") {
    auto lib = library();
    auto profile = small_profile();
    for (int number = 6; number <= 13; ++number) {
        PipelineState s = state_with(profile, number - 1);
        std::string prompt = lib.render(static_cast<Stage>(number), s);
        INFO("stage " << number);
        CHECK(prompt.find("circular axioms, missing disjointness") != std::string::npos);
    }
}

TEST_CASE("reuse stages embed the hierarchy text") {
    auto lib = library();
    auto profile = small_profile();
    for (Stage stage : {Stage::Reuse, Stage::HierarchyRefinement}) {
        PipelineState s = state_with(profile, static_cast<int>(stage) - 1);
        std::string prompt = lib.render(stage, s);
        CHECK(prompt.find("-> biological_process") != std::string::npos);
        CHECK(prompt.find("ENVO") != std::string::npos);
    }
}

TEST_CASE("generation stages must be rendered in ascending order") {
    auto lib = library();
    auto profile = small_profile();
    PipelineState s = state_with(profile, 6);  // implementation already started
    CHECK_THROWS_AS(lib.render(Stage::ConceptualModel, s), StageOrderError);
    CHECK_NOTHROW(lib.render(Stage::EnrichInverse, s));
}

TEST_CASE("arrow depth may increase by at most one") {
    ReuseExample bad;
    bad.resource_name = "X";
    bad.resource_description = "d";
    bad.hierarchy_text = "-> a\n---> jump";
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("profile validation rejects duplicate keywords and bad snippets") {
    DomainProfile p = small_profile();
    p.keywords = {"Habitat", "habitat"};
    CHECK_THROWS_AS(p.validate(), Error);

    p = small_profile();
    p.data_property_fewshots = {"not turtle at all ("};
    CHECK_THROWS_AS(p.validate(), SyntaxError);
}

TEST_CASE("competency question parsing accepts numbered and bulleted lists") {
    std::string text =
        "Here are the questions:\n"
        "1. What habitats does an aquifer contain?\n"
        "2) Which microbes inhabit a biofilm?\n"
        "- What is measured by an observation?\n"
        "* Where does nitrogen cycling occur?\n"
        "not a question line\n"
        "Plain question without bullet?\n";
    auto questions = parse_competency_questions(text);
    REQUIRE(questions.size() == 5);
    CHECK(questions[0] == "What habitats does an aquifer contain?");
    CHECK(questions[1] == "Which microbes inhabit a biofilm?");
    CHECK(questions[2] == "What is measured by an observation?");
    CHECK(questions[4] == "Plain question without bullet?");
}

TEST_CASE("extraction response block parses into a record") {
    std::string text =
        "\"cq1\": \"What measurement is associated with an observation?\"\n"
        "Entity: [\"Observation\", \"Measurement\"]\n"
        "Property: [\"hasMeasurement\"]\n";
    ExtractionParse parsed = parse_extraction_response(text);
    REQUIRE(parsed.records.size() == 1);
    CHECK(parsed.blocks_seen == 1);
    CHECK(parsed.blocks_parsed == 1);
    CHECK(parsed.records[0].cq_index == 1);
    CHECK(parsed.records[0].entities == std::vector<std::string>{"Observation", "Measurement"});
    CHECK(parsed.records[0].properties == std::vector<std::string>{"hasMeasurement"});
}

TEST_CASE("extraction parsing over empty text reports zero blocks") {
    ExtractionParse parsed = parse_extraction_response("");
    CHECK(parsed.records.empty());
    CHECK(parsed.blocks_seen == 0);
    CHECK(parsed.success_ratio() == 1.0);
}

TEST_CASE("extraction block with an empty property list yields zero properties") {
    std::string text =
        "\"cq2\": \"Which aquifers exist?\"\n"
        "Entity: [\"Aquifer\"]\n"
        "Property: []\n";
    ExtractionParse parsed = parse_extraction_response(text);
    REQUIRE(parsed.records.size() == 1);
    CHECK(parsed.records[0].properties.empty());
}

TEST_CASE("malformed extraction blocks are skipped and counted") {
    std::string text =
        "\"cq1\": \"ok?\"\n"
        "Entity: [\"A\"]\n"
        "Property: [\"p\"]\n"
        "\n"
        "\"cq2\": \"broken block\"\n"
        "no entity line here\n";
    ExtractionParse parsed = parse_extraction_response(text);
    CHECK(parsed.blocks_seen == 2);
    CHECK(parsed.blocks_parsed == 1);
    CHECK(parsed.success_ratio() == 0.5);
}

TEST_CASE("conceptual model lines parse into concept triples") {
    auto triples = parse_conceptual_model(
        "Observation -- hasMeasurement --> Measurement\n"
        "no arrows here\n"
        "  Aquifer -- contains --> Groundwater  \n");
    REQUIRE(triples.size() == 2);
    CHECK(triples[0] == ConceptTriple{"Observation", "hasMeasurement", "Measurement"});
    CHECK(triples[1] == ConceptTriple{"Aquifer", "contains", "Groundwater"});
}

TEST_CASE("conceptual model parsing inverts formatting") {
    std::vector<ConceptTriple> triples = {{"Observation", "hasMeasurement", "Measurement"},
                                          {"Aquifer", "contains", "Groundwater"},
                                          {"Microbe", "inhabits", "Biofilm"}};
    std::string text;
    for (const ConceptTriple& t : triples) text += format_concept_triple(t) + "\n";
    CHECK(parse_conceptual_model(text) == triples);
}

TEST_CASE("aggregate_fragment unions disjoint fragments") {
    PipelineState s;
    s.stage = static_cast<int>(Stage::ImplementTurtle);
    s = aggregate_fragment(std::move(s),
                           "@prefix : <http://example.org/a#> .\n:A :p :B .\n:B :p :C .\n");
    CHECK(s.working_graph.size() == 2);
    s = aggregate_fragment(std::move(s),
                           "@prefix : <http://example.org/a#> .\n:X :q :Y .\n:Y :q :Z .\n:Z :q :X .\n");
    CHECK(s.working_graph.size() == 5);
}

TEST_CASE("aggregate_fragment deduplicates repeated triples") {
    PipelineState s;
    s.stage = static_cast<int>(Stage::ImplementTurtle);
    s = aggregate_fragment(std::move(s), "@prefix : <http://example.org/a#> .\n:A :p :B .\n");
    s = aggregate_fragment(std::move(s), "@prefix : <http://example.org/a#> .\n:A :p :B .\n");
    CHECK(s.working_graph.size() == 1);
}

TEST_CASE("aggregate_fragment rejects prefix re-binding") {
    PipelineState s;
    s.stage = static_cast<int>(Stage::ImplementTurtle);
    s = aggregate_fragment(std::move(s), "@prefix : <http://example.org/a#> .\n:A :p :B .\n");
    CHECK_THROWS_AS(aggregate_fragment(std::move(s),
                                       "@prefix : <http://example.org/b#> .\n:A :p :B .\n"),
                    PrefixConflictError);
}

TEST_CASE("aggregate_fragment requires the implementation stage") {
    PipelineState s;
    s.stage = static_cast<int>(Stage::ConceptualModel);
    CHECK_THROWS_AS(aggregate_fragment(std::move(s), ":A :p :B ."), StageOrderError);
}

TEST_CASE("aggregation is order-independent for non-conflicting fragments") {
    std::vector<std::string> fragments = {
        "@prefix : <http://example.org/a#> .\n:A :p :B .\n",
        "@prefix : <http://example.org/a#> .\n@prefix x: <http://example.org/x#> .\nx:Q :p :B .\n",
        "@prefix : <http://example.org/a#> .\n:A :p :C .\n:C :r \"lit\" .\n",
    };
    auto run = [&](const std::vector<int>& order) {
        PipelineState s;
        s.stage = static_cast<int>(Stage::ImplementTurtle);
        for (int i : order) s = aggregate_fragment(std::move(s), fragments[i]);
        return s.working_graph;
    };
    OntologyGraph a = run({0, 1, 2});
    OntologyGraph b = run({2, 0, 1});
    OntologyGraph c = run({1, 2, 0});
    CHECK(equal_graphs(a, b));
    CHECK(equal_graphs(b, c));
}

TEST_CASE("category plan parses and validates") {
    std::vector<std::string> keywords = {"habitat", "aquifer", "karst", "biofilm"};
    CategoryPlan plan = plan_categories(keywords,
                                        "Habitats: habitat, biofilm\n"
                                        "Geology: aquifer, karst\n");
    REQUIRE(plan.categories.size() == 2);
    CHECK(plan.categories[0].name == "Habitats");
    CHECK(plan.categories[0].keywords == std::vector<std::string>{"habitat", "biofilm"});
    CHECK(plan.categories[1].keywords == std::vector<std::string>{"aquifer", "karst"});
}

TEST_CASE("category plan flags unassigned keywords") {
    try {
        plan_categories({"habitat", "aquifer", "karst"}, "Geo: aquifer, karst\n");
        FAIL("expected PlanError");
    } catch (const PlanError& e) {
        CHECK(e.kind() == PlanError::Kind::UnassignedKeywords);
        REQUIRE(e.items().size() == 1);
        CHECK(e.items()[0] == "habitat");
    }
}

TEST_CASE("category plan flags unknown keywords and empty categories") {
    try {
        plan_categories({"habitat"}, "Geo: habitat, lava\n");
        FAIL("expected PlanError");
    } catch (const PlanError& e) {
        CHECK(e.kind() == PlanError::Kind::UnknownKeywords);
    }
    try {
        plan_categories({"habitat"}, "Empty:\nAll: habitat\n");
        FAIL("expected PlanError");
    } catch (const PlanError& e) {
        CHECK(e.kind() == PlanError::Kind::EmptyCategory);
    }
}

TEST_CASE("a 222-keyword transcript categorizes into 22 full categories") {
    // Scale fixture: 222 keywords split across 22 categories.
    std::vector<std::string> keywords;
    std::string response;
    int k = 0;
    for (int c = 0; c < 22; ++c) {
        std::string line = "Category " + std::to_string(c + 1) + ":";
        int size = 10 + (c < 2 ? 1 : 0);  // 2 * 11 + 20 * 10 = 222
        for (int i = 0; i < size; ++i) {
            std::string kw = "keyword" + std::to_string(k++);
            keywords.push_back(kw);
            line += (i ? ", " : " ") + kw;
        }
        response += line + "\n";
    }
    REQUIRE(keywords.size() == 222);
    CategoryPlan plan = plan_categories(keywords, response);
    REQUIRE(plan.categories.size() == 22);
    size_t covered = 0;
    for (const Category& c : plan.categories) {
        CHECK_FALSE(c.keywords.empty());
        covered += c.keywords.size();
    }
    CHECK(covered == 222);
}
