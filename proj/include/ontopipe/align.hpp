#pragma once
// Lexical ontology alignment: label normalization, normalized Levenshtein
// similarity, and greedy one-to-one matching between the entities of two
// graphs. Reports matched-pair count and average similarity.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "ontopipe/entities.hpp"
#include "ontopipe/model.hpp"

namespace ontopipe {

// Case-folds, turns underscores/hyphens/camel-case boundaries into single
// spaces, trims, and collapses internal whitespace runs.
inline std::string normalize_label(const std::string& raw) {
    std::string spaced;
    spaced.reserve(raw.size() + 8);
    for (size_t i = 0; i < raw.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(raw[i]);
        if (c == '_' || c == '-') {
            spaced += ' ';
            continue;
        }
        if (std::isupper(c) && i > 0) {
            unsigned char prev = static_cast<unsigned char>(raw[i - 1]);
            unsigned char next = i + 1 < raw.size() ? static_cast<unsigned char>(raw[i + 1]) : '\0';
            bool after_lower = std::islower(prev) || std::isdigit(prev);
            bool upper_run_end = std::isupper(prev) && next != '\0' && std::islower(next);
            if (after_lower || upper_run_end) spaced += ' ';
        }
        spaced += static_cast<char>(std::tolower(c));
    }

    std::string out;
    out.reserve(spaced.size());
    bool in_space = true;  // swallows leading whitespace
    for (char c : spaced) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            if (!in_space) out += ' ';
            in_space = true;
        } else {
            out += c;
            in_space = false;
        }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

inline size_t levenshtein(const std::string& a, const std::string& b) {
    const size_t n = a.size(), m = b.size();
    if (n == 0) return m;
    if (m == 0) return n;
    std::vector<size_t> prev(m + 1), cur(m + 1);
    for (size_t j = 0; j <= m; ++j) prev[j] = j;
    for (size_t i = 1; i <= n; ++i) {
        cur[0] = i;
        for (size_t j = 1; j <= m; ++j) {
            size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

// 1 - levenshtein/max-length on already-normalized inputs; 1.0 when both empty.
inline double similarity(const std::string& a, const std::string& b) {
    size_t longest = std::max(a.size(), b.size());
    if (longest == 0) return 1.0;
    return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

struct MatchPair {
    std::string generated;  // IRI in the generated ontology
    std::string gold;       // IRI in the gold ontology
    double score = 0.0;

    friend bool operator==(const MatchPair&, const MatchPair&) = default;
};

struct AlignmentResult {
    std::vector<MatchPair> pairs;
    int matched_count = 0;
    double average_score = 0.0;  // 0 when no pairs
};

struct AlignOptions {
    bool include_properties = true;  // classes-only matching when false
};

namespace detail {

inline std::string iri_local_name(const std::string& iri) {
    auto hash = iri.rfind('#');
    if (hash != std::string::npos && hash + 1 < iri.size()) return iri.substr(hash + 1);
    auto slash = iri.rfind('/');
    if (slash != std::string::npos && slash + 1 < iri.size()) return iri.substr(slash + 1);
    return iri;
}

// Preferred display label: lexicographically smallest rdfs:label literal,
// else the IRI local name.
inline std::string best_label(const OntologyGraph& g, const std::string& iri) {
    const std::string* best = nullptr;
    for (const Triple& t : g.triples()) {
        if (!t.subject.is_iri() || t.subject.value != iri) continue;
        if (t.predicate.value != vocab::RDFS_LABEL || !t.object.is_literal()) continue;
        if (!best || t.object.value < *best) best = &t.object.value;
    }
    return best ? *best : iri_local_name(iri);
}

// Declared classes plus (optionally) declared properties, as sorted IRIs.
inline std::vector<std::string> alignment_entities(const OntologyGraph& g,
                                                   const AlignOptions& opts) {
    EntitySets sets = collect_entities(g);
    std::vector<std::string> out(sets.classes.begin(), sets.classes.end());
    if (opts.include_properties) {
        out.insert(out.end(), sets.object_properties.begin(), sets.object_properties.end());
        out.insert(out.end(), sets.data_properties.begin(), sets.data_properties.end());
        out.insert(out.end(), sets.annotation_properties.begin(), sets.annotation_properties.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

// Greedy one-to-one matching in descending score order, ties broken by
// (generated IRI, gold IRI); pairs below threshold are discarded.
inline AlignmentResult align(const OntologyGraph& generated, const OntologyGraph& gold,
                             double threshold, const AlignOptions& opts = {}) {
    std::vector<std::string> gen_entities = detail::alignment_entities(generated, opts);
    std::vector<std::string> gold_entities = detail::alignment_entities(gold, opts);

    struct Candidate {
        double score;
        const std::string* gen;
        const std::string* gold;
    };
    std::vector<std::pair<std::string, std::string>> gen_labels, gold_labels;
    gen_labels.reserve(gen_entities.size());
    for (const auto& e : gen_entities)
        gen_labels.emplace_back(e, normalize_label(detail::best_label(generated, e)));
    for (const auto& e : gold_entities)
        gold_labels.emplace_back(e, normalize_label(detail::best_label(gold, e)));

    std::vector<Candidate> candidates;
    for (const auto& [ge, gl] : gen_labels) {
        for (const auto& [oe, ol] : gold_labels) {
            double s = similarity(gl, ol);
            if (s >= threshold) candidates.push_back({s, &ge, &oe});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) return a.score > b.score;
        if (*a.gen != *b.gen) return *a.gen < *b.gen;
        return *a.gold < *b.gold;
    });

    AlignmentResult result;
    std::set<std::string> used_gen, used_gold;
    for (const Candidate& c : candidates) {
        if (used_gen.count(*c.gen) || used_gold.count(*c.gold)) continue;
        used_gen.insert(*c.gen);
        used_gold.insert(*c.gold);
        result.pairs.push_back({*c.gen, *c.gold, c.score});
    }
    result.matched_count = static_cast<int>(result.pairs.size());
    if (!result.pairs.empty()) {
        double sum = 0.0;
        for (const MatchPair& p : result.pairs) sum += p.score;
        result.average_score = sum / static_cast<double>(result.pairs.size());
    }
    return result;
}

}  // namespace ontopipe
