#pragma once
// Seeded verification corpus: a clean base ontology plus, per defect type,
// an injected variant and a matching clean control. Used by the verify suite
// and the acceptance runner.

#include <string>
#include <utility>
#include <vector>

#include "ontopipe/turtle.hpp"

namespace corpus {

inline const std::string kPrefixes =
    "@prefix : <http://example.org/seed#> .\n"
    "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n"
    "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
    "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
    "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n";

// Fully annotated, consistent, pitfall-free.
inline const std::string kBase =
    ":Alpha rdf:type owl:Class ; rdfs:label \"Alpha\" ; rdfs:comment \"Top level concept.\" .\n"
    ":Beta rdf:type owl:Class ; rdfs:subClassOf :Alpha ; rdfs:label \"Beta\" ; rdfs:comment \"First branch.\" .\n"
    ":Gamma rdf:type owl:Class ; rdfs:subClassOf :Alpha ; rdfs:label \"Gamma\" ; rdfs:comment \"Second branch.\" .\n"
    ":Beta owl:disjointWith :Gamma .\n"
    ":Delta rdf:type owl:Class ; rdfs:subClassOf :Beta ; rdfs:label \"Delta\" ; rdfs:comment \"Leaf concept.\" .\n"
    ":relatesTo rdf:type owl:ObjectProperty ; rdfs:label \"relates to\" ; rdfs:comment \"Generic relation.\" ; rdfs:domain :Alpha ; rdfs:range :Alpha .\n"
    ":hasSize rdf:type owl:DatatypeProperty ; rdfs:label \"has size\" ; rdfs:comment \"Size in units.\" ; rdfs:domain :Alpha ; rdfs:range xsd:integer .\n"
    ":item1 rdf:type :Delta, owl:NamedIndividual ; rdfs:label \"Item 1\" .\n"
    ":item2 rdf:type :Gamma, owl:NamedIndividual ; rdfs:label \"Item 2\" .\n"
    ":item1 :relatesTo :item2 .\n";

struct SeededCase {
    std::string name;
    std::string expected_code;  // empty for clean controls
    std::string turtle;
};

inline std::vector<SeededCase> seeded_cases() {
    std::vector<SeededCase> cases;
    auto doc = [](const std::string& extra) { return kPrefixes + kBase + extra; };

    // Cycle.
    cases.push_back({"cycle_injected", "CYCLE", doc(":Alpha rdfs:subClassOf :Delta .\n")});
    cases.push_back({"cycle_control", "",
                     doc(":Epsilon rdf:type owl:Class ; rdfs:subClassOf :Gamma ; rdfs:label "
                         "\"Epsilon\" ; rdfs:comment \"Acyclic extension.\" .\n")});

    // Disjointness violation.
    cases.push_back({"disjoint_injected", "DISJOINT_VIOLATION", doc(":item2 rdf:type :Beta .\n")});
    cases.push_back({"disjoint_control", "",
                     doc(":item3 rdf:type :Beta, owl:NamedIndividual ; rdfs:label \"Item 3\" .\n")});

    // Missing label.
    cases.push_back({"label_injected", "MISSING_LABEL",
                     doc(":Epsilon rdf:type owl:Class ; rdfs:subClassOf :Gamma ; rdfs:comment "
                         "\"Commented but unlabeled.\" .\n")});
    cases.push_back({"label_control", "",
                     doc(":Epsilon rdf:type owl:Class ; rdfs:subClassOf :Gamma ; rdfs:label "
                         "\"Epsilon\" ; rdfs:comment \"Fully annotated.\" .\n")});

    // Duplicate properties.
    cases.push_back(
        {"duplicate_injected", "DUPLICATE_PROPERTY",
         doc(":interactWith rdf:type owl:ObjectProperty ; rdfs:label \"interact with\" ; "
             "rdfs:comment \"One of a near-duplicate pair.\" ; rdfs:domain :Alpha ; rdfs:range :Alpha .\n"
             ":interactsWith rdf:type owl:ObjectProperty ; rdfs:label \"interacts with\" ; "
             "rdfs:comment \"Other of a near-duplicate pair.\" ; rdfs:domain :Alpha ; rdfs:range :Alpha .\n")});
    cases.push_back(
        {"duplicate_control", "",
         doc(":interactWith rdf:type owl:ObjectProperty ; rdfs:label \"interact with\" ; "
             "rdfs:comment \"Interaction relation.\" ; rdfs:domain :Alpha ; rdfs:range :Alpha .\n"
             ":feedsOn rdf:type owl:ObjectProperty ; rdfs:label \"feeds on\" ; "
             "rdfs:comment \"Feeding relation.\" ; rdfs:domain :Alpha ; rdfs:range :Alpha .\n")});

    // Missing domain/range.
    cases.push_back({"domain_range_injected", "MISSING_DOMAIN_RANGE",
                     doc(":connectedTo rdf:type owl:ObjectProperty ; rdfs:label \"connected to\" ; "
                         "rdfs:comment \"Link without a range.\" ; rdfs:domain :Alpha .\n")});
    cases.push_back({"domain_range_control", "",
                     doc(":connectedTo rdf:type owl:ObjectProperty ; rdfs:label \"connected to\" ; "
                         "rdfs:comment \"Fully declared link.\" ; rdfs:domain :Alpha ; rdfs:range :Alpha .\n")});

    // Missing sibling disjointness.
    cases.push_back(
        {"sibling_injected", "MISSING_DISJOINTNESS",
         doc(":Eta rdf:type owl:Class ; rdfs:label \"Eta\" ; rdfs:comment \"Parent of two.\" .\n"
             ":Theta rdf:type owl:Class ; rdfs:subClassOf :Eta ; rdfs:label \"Theta\" ; rdfs:comment \"First sibling.\" .\n"
             ":Iota rdf:type owl:Class ; rdfs:subClassOf :Eta ; rdfs:label \"Iota\" ; rdfs:comment \"Second sibling.\" .\n")});
    cases.push_back(
        {"sibling_control", "",
         doc(":Eta rdf:type owl:Class ; rdfs:label \"Eta\" ; rdfs:comment \"Parent of two.\" .\n"
             ":Theta rdf:type owl:Class ; rdfs:subClassOf :Eta ; rdfs:label \"Theta\" ; rdfs:comment \"First sibling.\" .\n"
             ":Iota rdf:type owl:Class ; rdfs:subClassOf :Eta ; rdfs:label \"Iota\" ; rdfs:comment \"Second sibling.\" .\n"
             ":Theta owl:disjointWith :Iota .\n")});

    return cases;
}

}  // namespace corpus
