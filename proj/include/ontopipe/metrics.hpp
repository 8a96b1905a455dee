#pragma once
// Count metrics over a graph, gap evaluation against target metrics
// (including the subclass-count rule "at least n-1 for n classes"),
// hierarchy depth, and near-duplicate property detection.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ontopipe/align.hpp"
#include "ontopipe/entities.hpp"
#include "ontopipe/model.hpp"

namespace ontopipe {

// Axioms are all triples (prefix bookkeeping never becomes a triple).
// Logical axioms are triples whose predicate is subClassOf / equivalentClass /
// disjointWith / domain / range / inverseOf, plus rdf:type assertions to
// owl:Class, to a property characteristic, or to a member of the class set.
inline OntologyMetrics compute_metrics(const OntologyGraph& graph) {
    EntitySets sets = collect_entities(graph);
    OntologyMetrics m;
    m.axiom_count = static_cast<long long>(graph.size());
    m.class_count = static_cast<long long>(sets.classes.size());
    m.object_property_count = static_cast<long long>(sets.object_properties.size());
    m.data_property_count = static_cast<long long>(sets.data_properties.size());
    m.annotation_property_count = static_cast<long long>(sets.annotation_properties.size());
    m.individual_count = static_cast<long long>(sets.individuals.size());

    for (const Triple& t : graph.triples()) {
        const std::string& p = t.predicate.value;
        if (p == vocab::RDFS_SUBCLASSOF) {
            ++m.subclass_of_count;
            ++m.logical_axiom_count;
        } else if (p == vocab::OWL_EQUIVALENT_CLASS) {
            ++m.equivalent_classes_count;
            ++m.logical_axiom_count;
        } else if (p == vocab::OWL_DISJOINT_WITH) {
            ++m.disjoint_classes_count;
            ++m.logical_axiom_count;
        } else if (p == vocab::RDFS_DOMAIN || p == vocab::RDFS_RANGE ||
                   p == vocab::OWL_INVERSE_OF) {
            ++m.logical_axiom_count;
        } else if (p == vocab::RDF_TYPE && t.object.is_iri()) {
            const std::string& o = t.object.value;
            if (o == vocab::OWL_CLASS || vocab::is_property_characteristic(o) ||
                sets.classes.count(o))
                ++m.logical_axiom_count;
        }
    }
    return m;
}

struct MetricGap {
    std::string name;
    long long actual = 0;
    long long target = 0;
    long long deficit = 0;  // max(0, target - actual)
};

struct GapReport {
    std::vector<MetricGap> per_metric;  // fixed OntologyMetrics field order
    bool subclass_rule_satisfied = false;
    long long subclass_rule_deficit = 0;  // max(0, (class_count - 1) - subclass_of_count)
};

inline GapReport gap_report(const OntologyMetrics& actual, const OntologyMetrics& target) {
    GapReport report;
    auto actual_pairs = actual.as_pairs();
    auto target_pairs = target.as_pairs();
    for (size_t i = 0; i < actual_pairs.size(); ++i) {
        MetricGap gap;
        gap.name = std::string(actual_pairs[i].first);
        gap.actual = actual_pairs[i].second;
        gap.target = target_pairs[i].second;
        gap.deficit = std::max(0LL, gap.target - gap.actual);
        report.per_metric.push_back(std::move(gap));
    }
    long long wanted = std::max(0LL, actual.class_count - 1);
    report.subclass_rule_satisfied = actual.subclass_of_count >= wanted;
    report.subclass_rule_deficit = std::max(0LL, wanted - actual.subclass_of_count);
    return report;
}

namespace detail {

// subClassOf edges between IRIs, with owl:Thing dropped.
inline std::map<std::string, std::set<std::string>> subclass_edges(const OntologyGraph& graph) {
    std::map<std::string, std::set<std::string>> edges;  // child -> parents
    for (const Triple& t : graph.triples()) {
        if (t.predicate.value != vocab::RDFS_SUBCLASSOF) continue;
        if (!t.subject.is_iri() || !t.object.is_iri()) continue;
        if (t.subject.value == vocab::OWL_THING || t.object.value == vocab::OWL_THING) continue;
        edges[t.subject.value].insert(t.object.value);
    }
    return edges;
}

// One subClassOf cycle, smallest-IRI-first, as a node sequence ending where
// it started; empty when the subclass relation is acyclic.
inline std::vector<std::string> find_subclass_cycle(
    const std::map<std::string, std::set<std::string>>& edges) {
    std::map<std::string, int> state;  // 0 new, 1 on stack, 2 done
    std::vector<std::string> stack;
    std::vector<std::string> cycle;

    std::function<bool(const std::string&)> visit = [&](const std::string& node) -> bool {
        state[node] = 1;
        stack.push_back(node);
        auto it = edges.find(node);
        if (it != edges.end()) {
            for (const std::string& parent : it->second) {
                int s = state.count(parent) ? state[parent] : 0;
                if (s == 1) {
                    auto from = std::find(stack.begin(), stack.end(), parent);
                    cycle.assign(from, stack.end());
                    return true;
                }
                if (s == 0 && visit(parent)) return true;
            }
        }
        stack.pop_back();
        state[node] = 2;
        return false;
    };

    for (const auto& [node, _] : edges) {
        if ((state.count(node) ? state[node] : 0) == 0 && visit(node)) break;
    }
    if (cycle.empty()) return {};

    // Rotate so the smallest IRI leads, then close the loop.
    auto smallest = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), smallest, cycle.end());
    cycle.push_back(cycle.front());
    return cycle;
}

inline std::string render_cycle(const std::vector<std::string>& cycle) {
    std::string out;
    for (size_t i = 0; i < cycle.size(); ++i) {
        if (i) out += " -> ";
        out += cycle[i];
    }
    return out;
}

}  // namespace detail

// Longest rdfs:subClassOf chain, measured in classes: a single class has
// depth 1, an empty graph depth 0. Throws CyclicHierarchyError on a cycle.
inline long long hierarchy_depth(const OntologyGraph& graph) {
    EntitySets sets = collect_entities(graph);
    if (sets.classes.empty()) return 0;
    auto edges = detail::subclass_edges(graph);

    auto cycle = detail::find_subclass_cycle(edges);
    if (!cycle.empty())
        throw CyclicHierarchyError(cycle, detail::render_cycle(cycle));

    std::map<std::string, long long> memo;
    std::function<long long(const std::string&)> depth_of = [&](const std::string& node) {
        auto it = memo.find(node);
        if (it != memo.end()) return it->second;
        long long best = 1;
        auto e = edges.find(node);
        if (e != edges.end()) {
            for (const std::string& parent : e->second) {
                if (!sets.classes.count(parent)) continue;
                best = std::max(best, 1 + depth_of(parent));
            }
        }
        memo[node] = best;
        return best;
    };

    long long depth = 0;
    for (const std::string& cls : sets.classes) depth = std::max(depth, depth_of(cls));
    return depth;
}

struct DuplicatePropertyPair {
    std::string first;   // lexicographically smaller IRI
    std::string second;  // larger IRI
    double normalized_similarity = 0.0;

    friend bool operator==(const DuplicatePropertyPair&, const DuplicatePropertyPair&) = default;
};

// All unordered pairs of declared object/data properties whose normalized
// label similarity reaches the threshold, sorted by descending similarity.
inline std::vector<DuplicatePropertyPair> duplicate_property_candidates(const OntologyGraph& graph,
                                                                        double threshold) {
    EntitySets sets = collect_entities(graph);
    std::vector<std::string> props(sets.object_properties.begin(), sets.object_properties.end());
    props.insert(props.end(), sets.data_properties.begin(), sets.data_properties.end());
    std::sort(props.begin(), props.end());
    props.erase(std::unique(props.begin(), props.end()), props.end());

    std::vector<std::string> labels;
    labels.reserve(props.size());
    for (const std::string& p : props)
        labels.push_back(normalize_label(detail::best_label(graph, p)));

    std::vector<DuplicatePropertyPair> out;
    for (size_t i = 0; i < props.size(); ++i) {
        for (size_t j = i + 1; j < props.size(); ++j) {
            double s = similarity(labels[i], labels[j]);
            if (s >= threshold) out.push_back({props[i], props[j], s});
        }
    }
    std::sort(out.begin(), out.end(), [](const DuplicatePropertyPair& a,
                                         const DuplicatePropertyPair& b) {
        if (a.normalized_similarity != b.normalized_similarity)
            return a.normalized_similarity > b.normalized_similarity;
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    return out;
}

}  // namespace ontopipe
