#pragma once
// Error types shared across the library. Every ontopipe exception derives
// from ontopipe::Error so callers can catch the whole family at once.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ontopipe {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A triple violating the shape rules (literal subject, non-IRI predicate).
class MalformedTripleError : public Error {
public:
    explicit MalformedTripleError(const std::string& what) : Error(what) {}
};

class UnboundPrefixError : public Error {
public:
    explicit UnboundPrefixError(std::string label)
        : Error("unbound prefix: '" + label + "'"), label_(std::move(label)) {}
    const std::string& label() const { return label_; }

private:
    std::string label_;
};

// A prefix label bound to two different namespace IRIs.
class PrefixConflictError : public Error {
public:
    PrefixConflictError(std::string label, std::string old_iri, std::string new_iri)
        : Error("prefix conflict: '" + label + "' bound to <" + old_iri + "> and <" + new_iri + ">"),
          label_(std::move(label)), old_iri_(std::move(old_iri)), new_iri_(std::move(new_iri)) {}
    const std::string& label() const { return label_; }
    const std::string& old_iri() const { return old_iri_; }
    const std::string& new_iri() const { return new_iri_; }

private:
    std::string label_;
    std::string old_iri_;
    std::string new_iri_;
};

// Location-bearing report of the first parse failure; line/column are
// 1-based and point into the original input text.
struct SyntaxIssue {
    int line = 1;
    int column = 1;
    std::string message;
    std::string excerpt;  // the offending source line

    std::string to_string() const {
        return "line " + std::to_string(line) + ", column " + std::to_string(column) +
               ": " + message + (excerpt.empty() ? "" : "\n  " + excerpt);
    }
};

class SyntaxError : public Error {
public:
    explicit SyntaxError(SyntaxIssue issue)
        : Error("turtle syntax error at " + issue.to_string()), issue_(std::move(issue)) {}
    const SyntaxIssue& issue() const { return issue_; }

private:
    SyntaxIssue issue_;
};

class CyclicHierarchyError : public Error {
public:
    explicit CyclicHierarchyError(std::vector<std::string> cycle, const std::string& rendered)
        : Error("cyclic subclass hierarchy: " + rendered), cycle_(std::move(cycle)) {}
    const std::vector<std::string>& cycle() const { return cycle_; }

private:
    std::vector<std::string> cycle_;
};

class MissingPlaceholderError : public Error {
public:
    explicit MissingPlaceholderError(std::string name)
        : Error("missing placeholder value: '" + name + "'"), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class StageOrderError : public Error {
public:
    explicit StageOrderError(const std::string& what) : Error(what) {}
};

// Category plan validation failures (unassigned/unknown keywords, empty category).
class PlanError : public Error {
public:
    enum class Kind { UnassignedKeywords, UnknownKeywords, EmptyCategory };

    PlanError(Kind kind, std::vector<std::string> items, const std::string& what)
        : Error(what), kind_(kind), items_(std::move(items)) {}
    Kind kind() const { return kind_; }
    const std::vector<std::string>& items() const { return items_; }

private:
    Kind kind_;
    std::vector<std::string> items_;
};

class TransportError : public Error {
public:
    explicit TransportError(const std::string& what) : Error(what) {}
};

class CredentialMissingError : public Error {
public:
    explicit CredentialMissingError(std::string env_var)
        : Error("credential environment variable not set: " + env_var), env_var_(std::move(env_var)) {}
    const std::string& env_var() const { return env_var_; }

private:
    std::string env_var_;
};

// Replay prompt did not match the recorded user turn byte-for-byte.
class ReplayDivergenceError : public Error {
public:
    ReplayDivergenceError(int index, std::string expected_prefix, std::string actual_prefix)
        : Error("replay divergence at turn " + std::to_string(index) +
                ": expected \"" + expected_prefix + "\" got \"" + actual_prefix + "\""),
          index_(index),
          expected_prefix_(std::move(expected_prefix)),
          actual_prefix_(std::move(actual_prefix)) {}
    int index() const { return index_; }
    const std::string& expected_prefix() const { return expected_prefix_; }
    const std::string& actual_prefix() const { return actual_prefix_; }

private:
    int index_;
    std::string expected_prefix_;
    std::string actual_prefix_;
};

}  // namespace ontopipe
