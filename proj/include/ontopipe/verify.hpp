#pragma once
// Structural verification: subclass-cycle and disjointness checks, the
// pitfall rule catalog, and the corrective re-prompt loop that feeds findings
// back through the fix-syntax / fix-inconsistency / fix-pitfall stages.
//
// Correction semantics: a round extracts the radius-1 fragment around the
// batch's affected IRIs, asks the model for a corrected fragment, and
// replaces the extracted triples with the reply. A round whose result lowers
// class_count or object_property_count is rejected and retried once with the
// guard violation appended to the prompt; if it still shrinks, the pre-round
// graph is kept.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ontopipe/entities.hpp"
#include "ontopipe/gateway.hpp"
#include "ontopipe/metrics.hpp"
#include "ontopipe/model.hpp"
#include "ontopipe/prompt.hpp"
#include "ontopipe/turtle.hpp"

namespace ontopipe {

enum class FindingKind : int { Syntax = 0, Inconsistency = 1, Pitfall = 2 };

inline const char* finding_kind_name(FindingKind k) {
    switch (k) {
        case FindingKind::Syntax: return "SYNTAX";
        case FindingKind::Inconsistency: return "INCONSISTENCY";
        case FindingKind::Pitfall: return "PITFALL";
    }
    return "";
}

struct Finding {
    FindingKind kind = FindingKind::Pitfall;
    std::string code;               // CYCLE, DISJOINT_VIOLATION, MISSING_LABEL, ...
    std::string message;
    std::vector<std::string> affected;  // sorted IRIs; non-empty except for syntax

    friend bool operator==(const Finding&, const Finding&) = default;
};

struct VerificationReport {
    std::vector<Finding> findings;
    bool clean = true;
};

namespace detail {

inline void sort_findings(std::vector<Finding>& findings) {
    for (Finding& f : findings) std::sort(f.affected.begin(), f.affected.end());
    std::sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        if (a.code != b.code) return a.code < b.code;
        if (a.affected != b.affected) return a.affected < b.affected;
        return a.message < b.message;
    });
}

inline std::string short_name(const std::string& iri) {
    auto hash = iri.rfind('#');
    if (hash != std::string::npos && hash + 1 < iri.size()) return iri.substr(hash + 1);
    auto slash = iri.rfind('/');
    if (slash != std::string::npos && slash + 1 < iri.size()) return iri.substr(slash + 1);
    return iri;
}

// Declared disjoint pairs, symmetric closure, as ordered pairs.
inline std::set<std::pair<std::string, std::string>> disjoint_pairs(const OntologyGraph& g) {
    std::set<std::pair<std::string, std::string>> pairs;
    for (const Triple& t : g.triples()) {
        if (t.predicate.value != vocab::OWL_DISJOINT_WITH) continue;
        if (!t.subject.is_iri() || !t.object.is_iri()) continue;
        pairs.emplace(t.subject.value, t.object.value);
        pairs.emplace(t.object.value, t.subject.value);
    }
    return pairs;
}

// Reflexive-transitive superclass closure; tolerates cycles.
inline std::set<std::string> closure_up(const std::map<std::string, std::set<std::string>>& edges,
                                        const std::string& start) {
    std::set<std::string> seen{start};
    std::vector<std::string> frontier{start};
    while (!frontier.empty()) {
        std::string node = frontier.back();
        frontier.pop_back();
        auto it = edges.find(node);
        if (it == edges.end()) continue;
        for (const std::string& parent : it->second)
            if (seen.insert(parent).second) frontier.push_back(parent);
    }
    return seen;
}

inline bool closures_disjoint(const std::set<std::pair<std::string, std::string>>& pairs,
                              const std::set<std::string>& a, const std::set<std::string>& b,
                              std::pair<std::string, std::string>* which) {
    for (const auto& [x, y] : pairs) {
        if (a.count(x) && b.count(y)) {
            if (which) *which = {x, y};
            return true;
        }
    }
    return false;
}

}  // namespace detail

// Structural consistency rules:
//  CYCLE              - rdfs:subClassOf cycles, one finding per cycle,
//                       smallest-IRI-first rotation
//  DISJOINT_VIOLATION - an individual typed by two classes that are declared
//                       (or entailed via subClassOf) disjoint
//  DOMAIN_CLASH       - an individual used as subject of a property whose
//                       declared domain is disjoint with one of its types
inline std::vector<Finding> check_consistency(const OntologyGraph& graph) {
    std::vector<Finding> findings;
    auto edges = detail::subclass_edges(graph);

    // Cycles: peel them off one at a time so overlapping cycles in one
    // tangle are each reported once.
    {
        auto working = edges;
        while (true) {
            auto cycle = detail::find_subclass_cycle(working);
            if (cycle.empty()) break;
            Finding f;
            f.kind = FindingKind::Inconsistency;
            f.code = "CYCLE";
            f.message = "subClassOf cycle: " + detail::render_cycle(cycle);
            f.affected.assign(cycle.begin(), cycle.end() - 1);
            findings.push_back(std::move(f));
            // Remove one edge of the reported cycle and look again.
            working[cycle[0]].erase(cycle[1]);
        }
    }

    auto pairs = detail::disjoint_pairs(graph);
    EntitySets sets = collect_entities(graph);

    // Direct types per individual.
    std::map<std::string, std::set<std::string>> types;
    for (const Triple& t : graph.triples()) {
        if (t.predicate.value != vocab::RDF_TYPE || !t.subject.is_iri() || !t.object.is_iri())
            continue;
        if (!sets.individuals.count(t.subject.value)) continue;
        if (!sets.classes.count(t.object.value)) continue;
        types[t.subject.value].insert(t.object.value);
    }

    std::map<std::string, std::set<std::string>> closures;
    auto closure_of = [&](const std::string& cls) -> const std::set<std::string>& {
        auto it = closures.find(cls);
        if (it == closures.end())
            it = closures.emplace(cls, detail::closure_up(edges, cls)).first;
        return it->second;
    };

    if (!pairs.empty()) {
        for (const auto& [individual, direct] : types) {
            std::vector<std::string> ts(direct.begin(), direct.end());
            for (size_t i = 0; i < ts.size(); ++i) {
                for (size_t j = i + 1; j < ts.size(); ++j) {
                    std::pair<std::string, std::string> clash;
                    if (!detail::closures_disjoint(pairs, closure_of(ts[i]), closure_of(ts[j]),
                                                   &clash))
                        continue;
                    Finding f;
                    f.kind = FindingKind::Inconsistency;
                    f.code = "DISJOINT_VIOLATION";
                    f.message = "individual " + detail::short_name(individual) + " is typed " +
                                detail::short_name(ts[i]) + " and " + detail::short_name(ts[j]) +
                                ", which are disjoint via " + detail::short_name(clash.first) +
                                " owl:disjointWith " + detail::short_name(clash.second);
                    f.affected = {individual, ts[i], ts[j]};
                    findings.push_back(std::move(f));
                }
            }
        }

        // Domain clashes.
        std::map<std::string, std::set<std::string>> domains;
        for (const Triple& t : graph.triples())
            if (t.predicate.value == vocab::RDFS_DOMAIN && t.subject.is_iri() && t.object.is_iri())
                domains[t.subject.value].insert(t.object.value);

        std::set<std::pair<std::string, std::string>> reported;
        for (const Triple& t : graph.triples()) {
            if (!t.subject.is_iri()) continue;
            auto ti = types.find(t.subject.value);
            if (ti == types.end()) continue;
            auto di = domains.find(t.predicate.value);
            if (di == domains.end()) continue;
            if (reported.count({t.subject.value, t.predicate.value})) continue;
            for (const std::string& domain : di->second) {
                bool clashed = false;
                for (const std::string& type : ti->second) {
                    std::pair<std::string, std::string> clash;
                    if (!detail::closures_disjoint(pairs, closure_of(type), closure_of(domain),
                                                   &clash))
                        continue;
                    Finding f;
                    f.kind = FindingKind::Inconsistency;
                    f.code = "DOMAIN_CLASH";
                    f.message = "individual " + detail::short_name(t.subject.value) +
                                " is subject of " + detail::short_name(t.predicate.value) +
                                " whose domain " + detail::short_name(domain) +
                                " is disjoint with its type " + detail::short_name(type);
                    f.affected = {t.subject.value, t.predicate.value, domain, type};
                    findings.push_back(std::move(f));
                    reported.insert({t.subject.value, t.predicate.value});
                    clashed = true;
                    break;
                }
                if (clashed) break;
            }
        }
    }

    detail::sort_findings(findings);
    return findings;
}

struct PitfallConfig {
    double duplicate_threshold = 0.9;
    bool require_labels = true;
    bool require_comments = true;
    bool require_domain_range = true;
    bool require_sibling_disjointness = true;
};

// Pitfall rule catalog:
//  MISSING_DISJOINTNESS - >= 2 sibling classes under a common parent with no
//                         pairwise disjointness anywhere among them (fires
//                         once per sibling group)
//  MISSING_LABEL / MISSING_COMMENT - declared class or property without
//                         rdfs:label / rdfs:comment
//  DUPLICATE_PROPERTY   - near-duplicate property labels at the threshold
//  MISSING_DOMAIN_RANGE - declared object/data property lacking domain or range
inline std::vector<Finding> detect_pitfalls(const OntologyGraph& graph,
                                            const PitfallConfig& config = {}) {
    std::vector<Finding> findings;
    EntitySets sets = collect_entities(graph);

    std::set<std::string> has_label, has_comment, has_domain, has_range;
    std::map<std::string, std::set<std::string>> children;  // parent -> direct subclasses
    for (const Triple& t : graph.triples()) {
        const std::string& p = t.predicate.value;
        if (p == vocab::RDFS_LABEL && t.subject.is_iri()) has_label.insert(t.subject.value);
        else if (p == vocab::RDFS_COMMENT && t.subject.is_iri()) has_comment.insert(t.subject.value);
        else if (p == vocab::RDFS_DOMAIN && t.subject.is_iri()) has_domain.insert(t.subject.value);
        else if (p == vocab::RDFS_RANGE && t.subject.is_iri()) has_range.insert(t.subject.value);
        else if (p == vocab::RDFS_SUBCLASSOF && t.subject.is_iri() && t.object.is_iri() &&
                 t.object.value != vocab::OWL_THING)
            children[t.object.value].insert(t.subject.value);
    }

    if (config.require_sibling_disjointness) {
        auto pairs = detail::disjoint_pairs(graph);
        for (const auto& [parent, kids] : children) {
            if (kids.size() < 2) continue;
            bool any_disjoint = false;
            for (auto it = kids.begin(); it != kids.end() && !any_disjoint; ++it)
                for (auto jt = std::next(it); jt != kids.end() && !any_disjoint; ++jt)
                    if (pairs.count({*it, *jt})) any_disjoint = true;
            if (any_disjoint) continue;
            Finding f;
            f.kind = FindingKind::Pitfall;
            f.code = "MISSING_DISJOINTNESS";
            f.message = "subclasses of " + detail::short_name(parent) +
                        " have no pairwise disjointness declared";
            f.affected.assign(kids.begin(), kids.end());
            findings.push_back(std::move(f));
        }
    }

    std::vector<std::string> annotated_entities(sets.classes.begin(), sets.classes.end());
    annotated_entities.insert(annotated_entities.end(), sets.object_properties.begin(),
                              sets.object_properties.end());
    annotated_entities.insert(annotated_entities.end(), sets.data_properties.begin(),
                              sets.data_properties.end());
    annotated_entities.insert(annotated_entities.end(), sets.annotation_properties.begin(),
                              sets.annotation_properties.end());
    std::sort(annotated_entities.begin(), annotated_entities.end());
    annotated_entities.erase(std::unique(annotated_entities.begin(), annotated_entities.end()),
                             annotated_entities.end());

    for (const std::string& entity : annotated_entities) {
        if (config.require_labels && !has_label.count(entity)) {
            Finding f;
            f.kind = FindingKind::Pitfall;
            f.code = "MISSING_LABEL";
            f.message = detail::short_name(entity) + " has no rdfs:label";
            f.affected = {entity};
            findings.push_back(std::move(f));
        }
        if (config.require_comments && !has_comment.count(entity)) {
            Finding f;
            f.kind = FindingKind::Pitfall;
            f.code = "MISSING_COMMENT";
            f.message = detail::short_name(entity) + " has no rdfs:comment";
            f.affected = {entity};
            findings.push_back(std::move(f));
        }
    }

    if (config.require_domain_range) {
        std::vector<std::string> typed_props(sets.object_properties.begin(),
                                             sets.object_properties.end());
        typed_props.insert(typed_props.end(), sets.data_properties.begin(),
                           sets.data_properties.end());
        std::sort(typed_props.begin(), typed_props.end());
        for (const std::string& prop : typed_props) {
            bool d = has_domain.count(prop), r = has_range.count(prop);
            if (d && r) continue;
            Finding f;
            f.kind = FindingKind::Pitfall;
            f.code = "MISSING_DOMAIN_RANGE";
            f.message = detail::short_name(prop) + " lacks " +
                        (!d && !r ? "rdfs:domain and rdfs:range"
                                  : (!d ? "rdfs:domain" : "rdfs:range"));
            f.affected = {prop};
            findings.push_back(std::move(f));
        }
    }

    for (const DuplicatePropertyPair& pair :
         duplicate_property_candidates(graph, config.duplicate_threshold)) {
        Finding f;
        f.kind = FindingKind::Pitfall;
        f.code = "DUPLICATE_PROPERTY";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", pair.normalized_similarity);
        f.message = "properties " + detail::short_name(pair.first) + " and " +
                    detail::short_name(pair.second) + " look like duplicates (similarity " + buf +
                    ")";
        f.affected = {pair.first, pair.second};
        findings.push_back(std::move(f));
    }

    detail::sort_findings(findings);
    return findings;
}

inline VerificationReport make_report(std::vector<Finding> findings) {
    VerificationReport report;
    report.findings = std::move(findings);
    report.clean = report.findings.empty();
    return report;
}

struct CorrectionOutcome {
    PipelineState state;
    VerificationReport report;
    int rounds_used = 0;
    std::vector<std::string> notes;  // guard rejections, exhaustion, parse retries
};

namespace detail {

inline std::string batch_message(const std::vector<Finding>& batch) {
    std::string out;
    for (const Finding& f : batch) {
        if (!out.empty()) out += "\n";
        out += f.code + ": " + f.message;
    }
    return out;
}

inline std::set<std::string> batch_affected(const std::vector<Finding>& batch) {
    std::set<std::string> out;
    for (const Finding& f : batch) out.insert(f.affected.begin(), f.affected.end());
    return out;
}

inline OntologyGraph without_triples(const OntologyGraph& g, const OntologyGraph& removed) {
    OntologyGraph out;
    out.prefixes() = g.prefixes();
    for (const Triple& t : g.triples())
        if (!removed.contains(t)) out.insert(t);
    return out;
}

}  // namespace detail

// Runs the corrective loop until the graph verifies clean or the per-kind
// round budget is exhausted. Consistency findings are addressed before
// pitfalls; a correction reply that fails to parse becomes a fix-syntax round
// of its own.
inline CorrectionOutcome correction_loop(PipelineState state, ChatSession& session,
                                         const PromptLibrary& library, int max_rounds,
                                         const PitfallConfig& pitfall_config = {}) {
    CorrectionOutcome outcome;
    std::optional<ErrorContext> pending_syntax;  // a reply that failed to parse

    auto rounds = [&](FindingKind kind) -> int& {
        return state.correction_rounds_used[finding_kind_name(kind)];
    };

    // One exchange: render the fix prompt, apply the reply with replacement
    // semantics, enforce the Occam's-razor guard. Returns the guard note when
    // the round was rejected.
    auto run_round = [&](Stage stage, const std::vector<Finding>& batch) {
        OntologyGraph before = state.working_graph;
        OntologyMetrics before_metrics = compute_metrics(before);
        std::string fragment =
            extract_fragment(before, detail::batch_affected(batch), 1);
        ErrorContext context{detail::batch_message(batch), fragment};
        OntologyGraph removed;
        if (!fragment.empty()) removed = parse_turtle(fragment);

        std::string prompt = library.render(stage, state, context);
        for (int attempt = 0; attempt < 2; ++attempt) {
            std::string reply = session.send(prompt);
            OntologyGraph corrected;
            try {
                corrected = parse_turtle(reply);
            } catch (const SyntaxError& e) {
                pending_syntax = ErrorContext{e.issue().to_string(), reply};
                return;
            }
            OntologyGraph candidate = detail::without_triples(before, removed);
            candidate.prefixes().merge(corrected.prefixes());
            for (const Triple& t : corrected.triples()) candidate.insert(t);

            OntologyMetrics after_metrics = compute_metrics(candidate);
            if (after_metrics.class_count < before_metrics.class_count ||
                after_metrics.object_property_count < before_metrics.object_property_count) {
                std::string note = "correction round rejected: class count " +
                                   std::to_string(before_metrics.class_count) + " -> " +
                                   std::to_string(after_metrics.class_count) +
                                   ", object property count " +
                                   std::to_string(before_metrics.object_property_count) + " -> " +
                                   std::to_string(after_metrics.object_property_count);
                outcome.notes.push_back(note);
                if (attempt == 0) {
                    prompt += "\n\nYour previous correction removed classes or object "
                              "properties. Keep every existing class and object property; "
                              "only fix the reported problem. (" + note + ")";
                    continue;
                }
                return;  // keep the pre-round graph
            }
            state.working_graph = std::move(candidate);
            return;
        }
    };

    while (true) {
        if (pending_syntax) {
            if (rounds(FindingKind::Syntax) >= max_rounds) break;
            ++rounds(FindingKind::Syntax);
            ++outcome.rounds_used;
            ErrorContext context = *pending_syntax;
            pending_syntax.reset();
            std::string prompt = library.render(Stage::FixSyntax, state, context);
            std::string reply = session.send(prompt);
            try {
                PipelineState candidate = state;  // survive a parse failure intact
                state = aggregate_fragment(std::move(candidate), reply);
            } catch (const SyntaxError& e) {
                pending_syntax = ErrorContext{e.issue().to_string(), reply};
            }
            continue;
        }

        std::vector<Finding> inconsistencies = check_consistency(state.working_graph);
        if (!inconsistencies.empty()) {
            if (rounds(FindingKind::Inconsistency) >= max_rounds) break;
            ++rounds(FindingKind::Inconsistency);
            ++outcome.rounds_used;
            run_round(Stage::FixInconsistency, inconsistencies);
            continue;
        }

        std::vector<Finding> pitfalls = detect_pitfalls(state.working_graph, pitfall_config);
        if (!pitfalls.empty()) {
            if (rounds(FindingKind::Pitfall) >= max_rounds) break;
            ++rounds(FindingKind::Pitfall);
            ++outcome.rounds_used;
            run_round(Stage::FixPitfall, pitfalls);
            continue;
        }
        break;
    }

    // Final report: whatever is still outstanding.
    std::vector<Finding> remaining = check_consistency(state.working_graph);
    std::vector<Finding> pitfalls = detect_pitfalls(state.working_graph, pitfall_config);
    remaining.insert(remaining.end(), pitfalls.begin(), pitfalls.end());
    if (pending_syntax) {
        Finding f;
        f.kind = FindingKind::Syntax;
        f.code = "PARSE";
        f.message = pending_syntax->message;
        remaining.push_back(std::move(f));
    }
    detail::sort_findings(remaining);
    if (!remaining.empty())
        outcome.notes.push_back("correction rounds exhausted with " +
                                std::to_string(remaining.size()) + " finding(s) outstanding");
    outcome.report = make_report(std::move(remaining));
    outcome.state = std::move(state);
    return outcome;
}

// Full verification of a parsed graph without any re-prompting.
inline VerificationReport verify_graph(const OntologyGraph& graph,
                                       const PitfallConfig& config = {}) {
    std::vector<Finding> findings = check_consistency(graph);
    std::vector<Finding> pitfalls = detect_pitfalls(graph, config);
    findings.insert(findings.end(), pitfalls.begin(), pitfalls.end());
    detail::sort_findings(findings);
    return make_report(std::move(findings));
}

}  // namespace ontopipe
