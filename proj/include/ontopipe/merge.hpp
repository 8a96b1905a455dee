#pragma once
// Graph merging: a foundation graph absorbs unique and complementary content
// from addition graphs under a precedence policy. Logical axioms are always
// unioned; only conflicting annotation literals are resolved by precedence.
// Optional property deduplication collapses near-duplicate property IRIs to
// the lexicographically smaller one, rewriting all uses.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ontopipe/metrics.hpp"
#include "ontopipe/model.hpp"

namespace ontopipe {

enum class AnnotationPrecedence { FoundationWins, AdditionWins };

struct MergePolicy {
    AnnotationPrecedence annotation_precedence = AnnotationPrecedence::FoundationWins;
    bool dedup_properties = false;
    double duplicate_threshold = 0.9;  // meaningful only when dedup_properties
};

namespace detail {

inline bool is_annotation_predicate(const std::string& iri) {
    static const std::set<std::string> annotations = {
        vocab::RDFS_LABEL,
        vocab::RDFS_COMMENT,
        vocab::OWL_VERSION_INFO,
        "http://purl.org/dc/terms/description",
        "http://purl.org/dc/elements/1.1/description",
    };
    return annotations.count(iri) > 0;
}

}  // namespace detail

// Triple-set union of the foundation and the additions (input 0 is the
// foundation). Prefix maps must reconcile (same label, same IRI). For a
// (subject, annotation-predicate) pair with differing literal objects across
// inputs, only the winning input's values survive: the first input holding a
// value under foundation-wins, the last under addition-wins.
inline OntologyGraph merge(const OntologyGraph& foundation,
                           const std::vector<OntologyGraph>& additions,
                           const MergePolicy& policy = {}) {
    std::vector<const OntologyGraph*> inputs;
    inputs.push_back(&foundation);
    for (const OntologyGraph& g : additions) inputs.push_back(&g);

    PrefixMap prefixes = foundation.prefixes();
    for (const OntologyGraph& g : additions) prefixes.merge(g.prefixes());

    // Winning input per (subject, annotation predicate) with literal objects.
    std::map<std::pair<std::string, std::string>, std::set<std::string>> values_seen;
    std::map<std::pair<std::string, std::string>, size_t> winner;
    for (size_t i = 0; i < inputs.size(); ++i) {
        for (const Triple& t : inputs[i]->triples()) {
            if (!t.object.is_literal() || !detail::is_annotation_predicate(t.predicate.value))
                continue;
            std::pair<std::string, std::string> key{t.subject.sort_key(), t.predicate.value};
            values_seen[key].insert(t.object.sort_key());
            if (policy.annotation_precedence == AnnotationPrecedence::AdditionWins ||
                !winner.count(key))
                winner[key] = i;
        }
    }

    OntologyGraph result;
    result.prefixes() = prefixes;
    for (size_t i = 0; i < inputs.size(); ++i) {
        for (const Triple& t : inputs[i]->triples()) {
            if (t.object.is_literal() && detail::is_annotation_predicate(t.predicate.value)) {
                std::pair<std::string, std::string> key{t.subject.sort_key(), t.predicate.value};
                if (values_seen[key].size() > 1 && winner[key] != i) continue;
            }
            result.insert(t);
        }
    }

    if (policy.dedup_properties) {
        auto pairs = duplicate_property_candidates(result, policy.duplicate_threshold);
        if (!pairs.empty()) {
            // Union-find each cluster down to its lexicographically smallest IRI.
            std::map<std::string, std::string> canon;
            std::function<std::string(const std::string&)> find =
                [&](const std::string& iri) -> std::string {
                auto it = canon.find(iri);
                if (it == canon.end() || it->second == iri) return iri;
                std::string root = find(it->second);
                canon[iri] = root;
                return root;
            };
            for (const DuplicatePropertyPair& pair : pairs) {
                std::string a = find(pair.first), b = find(pair.second);
                if (a == b) continue;
                if (b < a) std::swap(a, b);
                canon[b] = a;
            }

            auto rewrite = [&](const Term& t) {
                if (!t.is_iri()) return t;
                std::string root = find(t.value);
                return root == t.value ? t : Term::iri(root);
            };
            OntologyGraph rewritten;
            rewritten.prefixes() = result.prefixes();
            for (const Triple& t : result.triples())
                rewritten.insert({rewrite(t.subject), rewrite(t.predicate), rewrite(t.object)});
            result = std::move(rewritten);
        }
    }
    return result;
}

}  // namespace ontopipe
