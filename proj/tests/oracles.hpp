#pragma once
// Independent reference implementations used as test oracles. These are
// deliberately naive (plain scans, exhaustive enumeration) and must stay
// decoupled from the library code paths they check.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ontopipe/model.hpp"

namespace oracles {

using ontopipe::OntologyGraph;
using ontopipe::OntologyMetrics;
using ontopipe::Term;
using ontopipe::Triple;

inline const std::string kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const std::string kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline const std::string kOwl = "http://www.w3.org/2002/07/owl#";
inline const std::string kXsd = "http://www.w3.org/2001/XMLSchema#";

inline bool oracle_builtin(const std::string& iri) {
    return iri.rfind(kRdf, 0) == 0 || iri.rfind(kRdfs, 0) == 0 || iri.rfind(kOwl, 0) == 0 ||
           iri.rfind(kXsd, 0) == 0;
}

// Naive one-pass-at-a-time metric counter, written straight from the
// counting rules without reusing library entity analysis.
inline OntologyMetrics naive_metrics(const OntologyGraph& g) {
    const std::string type = kRdf + "type";
    const std::string sub = kRdfs + "subClassOf";
    const std::string equiv = kOwl + "equivalentClass";
    const std::string disj = kOwl + "disjointWith";
    const std::string dom = kRdfs + "domain";
    const std::string rng = kRdfs + "range";
    const std::string inv = kOwl + "inverseOf";
    const std::string owl_class = kOwl + "Class";
    const std::string owl_thing = kOwl + "Thing";
    const std::string named = kOwl + "NamedIndividual";
    const std::set<std::string> characteristics = {
        kOwl + "FunctionalProperty", kOwl + "InverseFunctionalProperty",
        kOwl + "TransitiveProperty", kOwl + "SymmetricProperty",
        kOwl + "AsymmetricProperty", kOwl + "ReflexiveProperty",
        kOwl + "IrreflexiveProperty"};

    std::set<std::string> classes;
    for (const Triple& t : g.triples())
        if (t.predicate.value == type && t.subject.is_iri() && t.object.is_iri() &&
            t.object.value == owl_class)
            classes.insert(t.subject.value);
    for (const Triple& t : g.triples())
        if (t.predicate.value == type && t.subject.is_iri() && t.object.is_iri() &&
            !oracle_builtin(t.object.value))
            classes.insert(t.object.value);
    for (const Triple& t : g.triples())
        if (t.predicate.value == sub) {
            if (t.subject.is_iri()) classes.insert(t.subject.value);
            if (t.object.is_iri()) classes.insert(t.object.value);
        }
    classes.erase(owl_thing);

    std::set<std::string> obj_props, data_props, ann_props;
    for (const Triple& t : g.triples()) {
        if (t.predicate.value != type || !t.subject.is_iri() || !t.object.is_iri()) continue;
        if (t.object.value == kOwl + "ObjectProperty") obj_props.insert(t.subject.value);
        if (t.object.value == kOwl + "DatatypeProperty") data_props.insert(t.subject.value);
        if (t.object.value == kOwl + "AnnotationProperty") ann_props.insert(t.subject.value);
    }

    std::set<std::string> individuals;
    for (const Triple& t : g.triples()) {
        if (t.predicate.value != type || !t.subject.is_iri() || !t.object.is_iri()) continue;
        if (t.object.value != named && !classes.count(t.object.value)) continue;
        const std::string& s = t.subject.value;
        if (classes.count(s) || obj_props.count(s) || data_props.count(s) || ann_props.count(s))
            continue;
        individuals.insert(s);
    }

    OntologyMetrics m;
    m.axiom_count = static_cast<long long>(g.size());
    m.class_count = static_cast<long long>(classes.size());
    m.object_property_count = static_cast<long long>(obj_props.size());
    m.data_property_count = static_cast<long long>(data_props.size());
    m.annotation_property_count = static_cast<long long>(ann_props.size());
    m.individual_count = static_cast<long long>(individuals.size());
    for (const Triple& t : g.triples()) {
        const std::string& p = t.predicate.value;
        if (p == sub) ++m.subclass_of_count;
        if (p == equiv) ++m.equivalent_classes_count;
        if (p == disj) ++m.disjoint_classes_count;
        bool logical = p == sub || p == equiv || p == disj || p == dom || p == rng || p == inv;
        if (p == type && t.object.is_iri() &&
            (t.object.value == owl_class || characteristics.count(t.object.value) ||
             classes.count(t.object.value)))
            logical = true;
        if (logical) ++m.logical_axiom_count;
    }
    return m;
}

// Longest subClassOf chain (counted in classes) by exhaustive simple-path
// enumeration. Only usable on small acyclic graphs.
inline long long depth_by_enumeration(const OntologyGraph& g) {
    const std::string type = kRdf + "type";
    const std::string sub = kRdfs + "subClassOf";
    const std::string owl_class = kOwl + "Class";
    const std::string owl_thing = kOwl + "Thing";

    std::set<std::string> nodes;
    std::multimap<std::string, std::string> up;
    for (const Triple& t : g.triples()) {
        if (t.predicate.value == sub && t.subject.is_iri() && t.object.is_iri() &&
            t.subject.value != owl_thing && t.object.value != owl_thing)
            up.emplace(t.subject.value, t.object.value);
        if (t.predicate.value == type && t.subject.is_iri() && t.object.is_iri() &&
            t.object.value == owl_class)
            nodes.insert(t.subject.value);
        if (t.predicate.value == type && t.subject.is_iri() && t.object.is_iri() &&
            !oracle_builtin(t.object.value))
            nodes.insert(t.object.value);
        if (t.predicate.value == sub) {
            if (t.subject.is_iri()) nodes.insert(t.subject.value);
            if (t.object.is_iri()) nodes.insert(t.object.value);
        }
    }
    nodes.erase(owl_thing);
    if (nodes.empty()) return 0;

    long long best = 1;
    std::function<void(const std::string&, std::set<std::string>&, long long)> walk =
        [&](const std::string& node, std::set<std::string>& seen, long long length) {
            best = std::max(best, length);
            auto range = up.equal_range(node);
            for (auto it = range.first; it != range.second; ++it) {
                if (!nodes.count(it->second) || seen.count(it->second)) continue;
                seen.insert(it->second);
                walk(it->second, seen, length + 1);
                seen.erase(it->second);
            }
        };
    for (const std::string& n : nodes) {
        std::set<std::string> seen{n};
        walk(n, seen, 1);
    }
    return best;
}

// Textbook full-matrix Levenshtein.
inline size_t reference_levenshtein(const std::string& a, const std::string& b) {
    std::vector<std::vector<size_t>> d(a.size() + 1, std::vector<size_t>(b.size() + 1, 0));
    for (size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
    for (size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
    for (size_t i = 1; i <= a.size(); ++i)
        for (size_t j = 1; j <= b.size(); ++j)
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                                d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    return d[a.size()][b.size()];
}

// Brute-force reflexive-transitive superclass closure of one class.
inline std::set<std::string> superclass_closure(const OntologyGraph& g, const std::string& cls) {
    const std::string sub = kRdfs + "subClassOf";
    std::set<std::string> closure{cls};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const Triple& t : g.triples()) {
            if (t.predicate.value != sub || !t.subject.is_iri() || !t.object.is_iri()) continue;
            if (closure.count(t.subject.value) && !closure.count(t.object.value)) {
                closure.insert(t.object.value);
                grew = true;
            }
        }
    }
    return closure;
}

// Deterministic random ontology-ish graph for property tests.
inline OntologyGraph random_graph(unsigned seed, int max_triples = 200) {
    std::mt19937 rng(seed);
    OntologyGraph g;
    g.prefixes().bind("", "http://example.org/rand#");
    g.prefixes().bind("rdf", kRdf);
    g.prefixes().bind("rdfs", kRdfs);
    g.prefixes().bind("owl", kOwl);
    g.prefixes().bind("xsd", kXsd);

    auto iri = [&](const std::string& local) { return Term::iri("http://example.org/rand#" + local); };
    std::uniform_int_distribution<int> count_dist(0, max_triples);
    std::uniform_int_distribution<int> id_dist(0, 25);
    std::uniform_int_distribution<int> kind_dist(0, 11);
    int n = count_dist(rng);
    for (int i = 0; i < n; ++i) {
        std::string a = "N" + std::to_string(id_dist(rng));
        std::string b = "N" + std::to_string(id_dist(rng));
        // Blank labels draw from a small pool so bijection search stays cheap.
        std::string blank = "x" + std::to_string(id_dist(rng) % 6);
        switch (kind_dist(rng)) {
            case 0: g.insert({iri(a), Term::iri(kRdf + "type"), Term::iri(kOwl + "Class")}); break;
            case 1: g.insert({iri(a), Term::iri(kRdfs + "subClassOf"), iri(b)}); break;
            case 2: g.insert({iri(a), Term::iri(kRdf + "type"), Term::iri(kOwl + "ObjectProperty")}); break;
            case 3: g.insert({iri(a), Term::iri(kRdf + "type"), Term::iri(kOwl + "DatatypeProperty")}); break;
            case 4: g.insert({iri("i" + a), Term::iri(kRdf + "type"), iri(b)}); break;
            case 5: g.insert({iri("i" + a), Term::iri(kRdf + "type"), Term::iri(kOwl + "NamedIndividual")}); break;
            case 6: g.insert({iri(a), Term::iri(kRdfs + "label"), Term::lang_literal("label " + a, "en")}); break;
            case 7: g.insert({iri(a), Term::iri(kOwl + "disjointWith"), iri(b)}); break;
            case 8: g.insert({iri(a), Term::iri(kRdfs + "domain"), iri(b)}); break;
            case 9: g.insert({Term::blank(blank), iri("p"), iri(b)}); break;
            case 10: g.insert({iri(a), iri("q"), Term::blank(blank)}); break;
            default: g.insert({iri(a), Term::iri(kRdfs + "comment"), Term::literal("about " + a)}); break;
        }
    }
    return g;
}

}  // namespace oracles
