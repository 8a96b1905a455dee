#pragma once
// Entity classification shared by the metric counter, the alignment matcher
// and the verification rules.
//
// Counting rules:
//  - classes: subjects declared owl:Class, plus any IRI used as the object of
//    an rdf:type assertion outside the built-in vocabularies, plus any IRI on
//    either side of rdfs:subClassOf; owl:Thing is excluded.
//  - properties: subjects declared owl:ObjectProperty / owl:DatatypeProperty /
//    owl:AnnotationProperty.
//  - individuals: IRI subjects typed owl:NamedIndividual or typed by a member
//    of the class set, and not themselves classes or properties.

#include <set>
#include <string>

#include "ontopipe/model.hpp"

namespace ontopipe {

struct EntitySets {
    std::set<std::string> classes;
    std::set<std::string> object_properties;
    std::set<std::string> data_properties;
    std::set<std::string> annotation_properties;
    std::set<std::string> individuals;

    bool is_property(const std::string& iri) const {
        return object_properties.count(iri) || data_properties.count(iri) ||
               annotation_properties.count(iri);
    }
};

inline EntitySets collect_entities(const OntologyGraph& graph) {
    EntitySets out;
    for (const Triple& t : graph.triples()) {
        if (t.predicate.value == vocab::RDF_TYPE && t.subject.is_iri() && t.object.is_iri()) {
            const std::string& o = t.object.value;
            if (o == vocab::OWL_CLASS) out.classes.insert(t.subject.value);
            else if (o == vocab::OWL_OBJECT_PROPERTY) out.object_properties.insert(t.subject.value);
            else if (o == vocab::OWL_DATATYPE_PROPERTY) out.data_properties.insert(t.subject.value);
            else if (o == vocab::OWL_ANNOTATION_PROPERTY)
                out.annotation_properties.insert(t.subject.value);
            else if (!vocab::is_builtin_namespace(o))
                out.classes.insert(o);  // a type assertion implies its object is a class
        } else if (t.predicate.value == vocab::RDFS_SUBCLASSOF) {
            if (t.subject.is_iri()) out.classes.insert(t.subject.value);
            if (t.object.is_iri()) out.classes.insert(t.object.value);
        }
    }
    out.classes.erase(vocab::OWL_THING);

    for (const Triple& t : graph.triples()) {
        if (t.predicate.value != vocab::RDF_TYPE || !t.subject.is_iri() || !t.object.is_iri())
            continue;
        const std::string& s = t.subject.value;
        const std::string& o = t.object.value;
        if (o != vocab::OWL_NAMED_INDIVIDUAL && !out.classes.count(o)) continue;
        if (out.classes.count(s) || out.is_property(s)) continue;
        out.individuals.insert(s);
    }
    return out;
}

}  // namespace ontopipe
