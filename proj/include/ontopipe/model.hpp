#pragma once
// Core RDF data model: terms, triples, prefix maps, graphs, and the
// ontology count-metric vector.
//
// Graphs behave as values: mutating operations (add_triple, merge) return a
// graph observationally distinct from their input, so read-only sharing
// across workers is safe. Triples are kept in insertion order with set
// semantics (duplicates ignored). Blank node identity is label-based, and
// the parser assigns deterministic labels b0, b1, ... in order of first
// appearance.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ontopipe/errors.hpp"

namespace ontopipe {

namespace vocab {

inline constexpr std::string_view RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view OWL_NS = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view XSD_NS = "http://www.w3.org/2001/XMLSchema#";

inline const std::string RDF_TYPE = std::string(RDF_NS) + "type";
inline const std::string RDFS_SUBCLASSOF = std::string(RDFS_NS) + "subClassOf";
inline const std::string RDFS_DOMAIN = std::string(RDFS_NS) + "domain";
inline const std::string RDFS_RANGE = std::string(RDFS_NS) + "range";
inline const std::string RDFS_LABEL = std::string(RDFS_NS) + "label";
inline const std::string RDFS_COMMENT = std::string(RDFS_NS) + "comment";
inline const std::string OWL_CLASS = std::string(OWL_NS) + "Class";
inline const std::string OWL_THING = std::string(OWL_NS) + "Thing";
inline const std::string OWL_ONTOLOGY = std::string(OWL_NS) + "Ontology";
inline const std::string OWL_NAMED_INDIVIDUAL = std::string(OWL_NS) + "NamedIndividual";
inline const std::string OWL_OBJECT_PROPERTY = std::string(OWL_NS) + "ObjectProperty";
inline const std::string OWL_DATATYPE_PROPERTY = std::string(OWL_NS) + "DatatypeProperty";
inline const std::string OWL_ANNOTATION_PROPERTY = std::string(OWL_NS) + "AnnotationProperty";
inline const std::string OWL_EQUIVALENT_CLASS = std::string(OWL_NS) + "equivalentClass";
inline const std::string OWL_DISJOINT_WITH = std::string(OWL_NS) + "disjointWith";
inline const std::string OWL_INVERSE_OF = std::string(OWL_NS) + "inverseOf";
inline const std::string OWL_VERSION_INFO = std::string(OWL_NS) + "versionInfo";
inline const std::string OWL_FUNCTIONAL_PROPERTY = std::string(OWL_NS) + "FunctionalProperty";
inline const std::string OWL_INVERSE_FUNCTIONAL_PROPERTY = std::string(OWL_NS) + "InverseFunctionalProperty";
inline const std::string OWL_TRANSITIVE_PROPERTY = std::string(OWL_NS) + "TransitiveProperty";
inline const std::string OWL_SYMMETRIC_PROPERTY = std::string(OWL_NS) + "SymmetricProperty";
inline const std::string OWL_ASYMMETRIC_PROPERTY = std::string(OWL_NS) + "AsymmetricProperty";
inline const std::string OWL_REFLEXIVE_PROPERTY = std::string(OWL_NS) + "ReflexiveProperty";
inline const std::string OWL_IRREFLEXIVE_PROPERTY = std::string(OWL_NS) + "IrreflexiveProperty";
inline const std::string XSD_STRING = std::string(XSD_NS) + "string";
inline const std::string XSD_INTEGER = std::string(XSD_NS) + "integer";
inline const std::string XSD_DECIMAL = std::string(XSD_NS) + "decimal";
inline const std::string XSD_DOUBLE = std::string(XSD_NS) + "double";
inline const std::string XSD_BOOLEAN = std::string(XSD_NS) + "boolean";
inline const std::string XSD_FLOAT = std::string(XSD_NS) + "float";

// Property-characteristic classes; rdf:type assertions to these count as
// logical axioms.
inline const std::array<const std::string*, 7> PROPERTY_CHARACTERISTICS = {
    &OWL_FUNCTIONAL_PROPERTY,  &OWL_INVERSE_FUNCTIONAL_PROPERTY, &OWL_TRANSITIVE_PROPERTY,
    &OWL_SYMMETRIC_PROPERTY,   &OWL_ASYMMETRIC_PROPERTY,         &OWL_REFLEXIVE_PROPERTY,
    &OWL_IRREFLEXIVE_PROPERTY,
};

inline bool is_builtin_namespace(std::string_view iri) {
    return iri.rfind(RDF_NS, 0) == 0 || iri.rfind(RDFS_NS, 0) == 0 ||
           iri.rfind(OWL_NS, 0) == 0 || iri.rfind(XSD_NS, 0) == 0;
}

inline bool is_property_characteristic(std::string_view iri) {
    for (const std::string* c : PROPERTY_CHARACTERISTICS)
        if (iri == *c) return true;
    return false;
}

}  // namespace vocab

// True when the string starts with a URI scheme ("http:", "urn:", ...).
inline bool has_iri_scheme(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (size_t i = 1; i < s.size(); ++i) {
        char c = s[i];
        if (c == ':') return true;
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.')
            return false;
    }
    return false;
}

enum class TermKind : uint8_t { Iri, Blank, Literal };

struct Term {
    TermKind kind = TermKind::Iri;
    std::string value;     // IRI string, blank label (without "_:"), or literal lexical form
    std::string datatype;  // literal datatype IRI; empty when none
    std::string language;  // literal language tag; empty when none

    static Term iri(std::string v) { return {TermKind::Iri, std::move(v), "", ""}; }
    static Term blank(std::string label) { return {TermKind::Blank, std::move(label), "", ""}; }
    static Term literal(std::string lex) { return {TermKind::Literal, std::move(lex), "", ""}; }
    static Term typed_literal(std::string lex, std::string datatype_iri) {
        return {TermKind::Literal, std::move(lex), std::move(datatype_iri), ""};
    }
    static Term lang_literal(std::string lex, std::string tag) {
        return {TermKind::Literal, std::move(lex), "", std::move(tag)};
    }

    bool is_iri() const { return kind == TermKind::Iri; }
    bool is_blank() const { return kind == TermKind::Blank; }
    bool is_literal() const { return kind == TermKind::Literal; }

    friend bool operator==(const Term&, const Term&) = default;

    // Total order key used for deterministic serialization. Kind letter first
    // so IRIs, blanks and literals never interleave.
    std::string sort_key() const {
        char k = kind == TermKind::Iri ? 'I' : kind == TermKind::Blank ? 'B' : 'L';
        std::string out;
        out.reserve(value.size() + datatype.size() + language.size() + 4);
        out.push_back(k);
        out += value;
        out.push_back('\x1f');
        out += datatype;
        out.push_back('\x1f');
        out += language;
        return out;
    }

    friend bool operator<(const Term& a, const Term& b) { return a.sort_key() < b.sort_key(); }
};

struct Triple {
    Term subject;
    Term predicate;
    Term object;

    friend bool operator==(const Triple&, const Triple&) = default;

    std::string sort_key() const {
        return subject.sort_key() + '\x1e' + predicate.sort_key() + '\x1e' + object.sort_key();
    }

    friend bool operator<(const Triple& a, const Triple& b) { return a.sort_key() < b.sort_key(); }

    // Shape rules: the predicate is an IRI, the subject is never a literal.
    void validate() const {
        if (!predicate.is_iri())
            throw MalformedTripleError("triple predicate must be an IRI");
        if (subject.is_literal())
            throw MalformedTripleError("triple subject must not be a literal");
    }
};

inline Triple make_triple(Term s, Term p, Term o) {
    Triple t{std::move(s), std::move(p), std::move(o)};
    t.validate();
    return t;
}

// Prefix-label to namespace-IRI map. A label never maps to two different
// IRIs; re-binding the same label to the same IRI is a no-op.
class PrefixMap {
public:
    void bind(const std::string& label, const std::string& iri) {
        auto it = entries_.find(label);
        if (it != entries_.end()) {
            if (it->second != iri) throw PrefixConflictError(label, it->second, iri);
            return;
        }
        entries_.emplace(label, iri);
    }

    std::optional<std::string> find(const std::string& label) const {
        auto it = entries_.find(label);
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    bool contains(const std::string& label) const { return entries_.count(label) > 0; }

    // "rdf:type" -> full IRI. Throws UnboundPrefixError when the label is not bound.
    std::string expand(const std::string& prefixed_name) const {
        auto colon = prefixed_name.find(':');
        if (colon == std::string::npos) throw UnboundPrefixError(prefixed_name);
        std::string label = prefixed_name.substr(0, colon);
        auto ns = find(label);
        if (!ns) throw UnboundPrefixError(label);
        return *ns + prefixed_name.substr(colon + 1);
    }

    // Longest-namespace match; returns "label:local" when the remainder is a
    // well-formed local name, nullopt otherwise.
    std::optional<std::string> compact(const std::string& iri) const {
        const std::string* best_ns = nullptr;
        const std::string* best_label = nullptr;
        for (const auto& [label, ns] : entries_) {
            if (ns.empty() || iri.size() < ns.size()) continue;
            if (iri.compare(0, ns.size(), ns) != 0) continue;
            if (!best_ns || ns.size() > best_ns->size()) {
                best_ns = &ns;
                best_label = &label;
            }
        }
        if (!best_ns) return std::nullopt;
        std::string local = iri.substr(best_ns->size());
        if (!valid_local_name(local)) return std::nullopt;
        return *best_label + ":" + local;
    }

    void merge(const PrefixMap& other) {
        for (const auto& [label, iri] : other.entries_) bind(label, iri);
        if (base_.empty()) base_ = other.base_;
    }

    const std::map<std::string, std::string>& entries() const { return entries_; }

    const std::string& base() const { return base_; }
    void set_base(std::string iri) { base_ = std::move(iri); }

    static bool valid_local_name(std::string_view local) {
        if (local.empty()) return true;
        if (local.front() == '.' || local.back() == '.') return false;
        if (local.front() == '-') return false;
        for (char c : local) {
            unsigned char u = static_cast<unsigned char>(c);
            if (std::isalnum(u) || c == '_' || c == '-' || c == '.' || u >= 0x80) continue;
            return false;
        }
        return true;
    }

private:
    std::map<std::string, std::string> entries_;
    std::string base_;
};

// Insertion-ordered, deduplicated triple set plus its prefix map.
class OntologyGraph {
public:
    // Inserts with set semantics; returns false when the triple was already
    // present. Throws MalformedTripleError on shape violations.
    bool insert(Triple t) {
        t.validate();
        auto [it, added] = index_.insert(t.sort_key());
        (void)it;
        if (added) triples_.push_back(std::move(t));
        return added;
    }

    bool contains(const Triple& t) const { return index_.count(t.sort_key()) > 0; }

    const std::vector<Triple>& triples() const { return triples_; }
    size_t size() const { return triples_.size(); }
    bool empty() const { return triples_.empty(); }

    PrefixMap& prefixes() { return prefixes_; }
    const PrefixMap& prefixes() const { return prefixes_; }

private:
    std::vector<Triple> triples_;
    std::unordered_set<std::string> index_;
    PrefixMap prefixes_;
};

// Value-semantics insertion: the input graph is left untouched.
inline OntologyGraph add_triple(const OntologyGraph& graph, Triple t) {
    OntologyGraph out = graph;
    out.insert(std::move(t));
    return out;
}

namespace detail {

// Collects the distinct blank labels of a graph in insertion order.
inline std::vector<std::string> blank_labels(const OntologyGraph& g) {
    std::vector<std::string> labels;
    std::unordered_set<std::string> seen;
    auto note = [&](const Term& t) {
        if (t.is_blank() && seen.insert(t.value).second) labels.push_back(t.value);
    };
    for (const Triple& t : g.triples()) {
        note(t.subject);
        note(t.object);
    }
    return labels;
}

inline Term map_blank(const Term& t, const std::unordered_map<std::string, std::string>& m) {
    if (!t.is_blank()) return t;
    auto it = m.find(t.value);
    return Term::blank(it == m.end() ? t.value : it->second);
}

}  // namespace detail

// Triple-set equality modulo blank-node relabeling. Exhaustive bijection
// search, intended for graphs with at most ~20 blank nodes; beyond that the
// comparison falls back to label-identical equality.
inline bool equal_graphs(const OntologyGraph& a, const OntologyGraph& b) {
    if (a.size() != b.size()) return false;

    std::set<std::string> ground_a, ground_b;
    std::vector<Triple> blanky_a;
    std::set<std::string> blanky_b_keys;
    for (const Triple& t : a.triples()) {
        if (t.subject.is_blank() || t.object.is_blank())
            blanky_a.push_back(t);
        else
            ground_a.insert(t.sort_key());
    }
    for (const Triple& t : b.triples()) {
        if (t.subject.is_blank() || t.object.is_blank())
            blanky_b_keys.insert(t.sort_key());
        else
            ground_b.insert(t.sort_key());
    }
    if (ground_a != ground_b) return false;
    if (blanky_a.size() != blanky_b_keys.size()) return false;
    if (blanky_a.empty()) return true;

    std::vector<std::string> labels_a = detail::blank_labels(a);
    std::vector<std::string> labels_b = detail::blank_labels(b);
    if (labels_a.size() != labels_b.size()) return false;

    if (labels_a.size() > 20) {
        // Too many blanks for bijection search; require identical labels.
        for (const Triple& t : blanky_a)
            if (!blanky_b_keys.count(t.sort_key())) return false;
        return true;
    }

    std::unordered_map<std::string, std::string> mapping;
    std::unordered_set<std::string> used_b;

    // All blank triples whose labels are fully mapped must exist in b.
    auto consistent = [&]() {
        for (const Triple& t : blanky_a) {
            bool s_ok = !t.subject.is_blank() || mapping.count(t.subject.value);
            bool o_ok = !t.object.is_blank() || mapping.count(t.object.value);
            if (!s_ok || !o_ok) continue;
            Triple mapped{detail::map_blank(t.subject, mapping), t.predicate,
                          detail::map_blank(t.object, mapping)};
            if (!blanky_b_keys.count(mapped.sort_key())) return false;
        }
        return true;
    };

    std::function<bool(size_t)> assign = [&](size_t i) -> bool {
        if (i == labels_a.size()) return consistent();
        for (const std::string& lb : labels_b) {
            if (used_b.count(lb)) continue;
            mapping[labels_a[i]] = lb;
            used_b.insert(lb);
            if (consistent() && assign(i + 1)) return true;
            mapping.erase(labels_a[i]);
            used_b.erase(lb);
        }
        return false;
    };
    return assign(0);
}

inline bool operator==(const OntologyGraph& a, const OntologyGraph& b) {
    return equal_graphs(a, b);
}

// The count vector reported per pipeline run.
struct OntologyMetrics {
    long long axiom_count = 0;
    long long logical_axiom_count = 0;
    long long class_count = 0;
    long long subclass_of_count = 0;
    long long equivalent_classes_count = 0;
    long long disjoint_classes_count = 0;
    long long object_property_count = 0;
    long long data_property_count = 0;
    long long annotation_property_count = 0;
    long long individual_count = 0;

    friend bool operator==(const OntologyMetrics&, const OntologyMetrics&) = default;

    // Field order is the fixed reporting order.
    std::array<std::pair<std::string_view, long long>, 10> as_pairs() const {
        return {{{"axiom_count", axiom_count},
                 {"logical_axiom_count", logical_axiom_count},
                 {"class_count", class_count},
                 {"subclass_of_count", subclass_of_count},
                 {"equivalent_classes_count", equivalent_classes_count},
                 {"disjoint_classes_count", disjoint_classes_count},
                 {"object_property_count", object_property_count},
                 {"data_property_count", data_property_count},
                 {"annotation_property_count", annotation_property_count},
                 {"individual_count", individual_count}}};
    }

    long long* field_by_name(std::string_view name) {
        if (name == "axiom_count") return &axiom_count;
        if (name == "logical_axiom_count") return &logical_axiom_count;
        if (name == "class_count") return &class_count;
        if (name == "subclass_of_count") return &subclass_of_count;
        if (name == "equivalent_classes_count") return &equivalent_classes_count;
        if (name == "disjoint_classes_count") return &disjoint_classes_count;
        if (name == "object_property_count") return &object_property_count;
        if (name == "data_property_count") return &data_property_count;
        if (name == "annotation_property_count") return &annotation_property_count;
        if (name == "individual_count") return &individual_count;
        return nullptr;
    }
};

}  // namespace ontopipe
