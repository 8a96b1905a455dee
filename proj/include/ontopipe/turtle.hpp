#pragma once
// Turtle subset parser and deterministic serializer.
//
// Parsing supports @prefix/@base directives, the `a` keyword, prefixed names,
// absolute IRIs, string/typed/language literals, numeric and boolean literal
// shorthands, object lists, predicate-object lists, blank-node property lists
// and comments. Inputs wrapped in Markdown code fences are unwrapped first,
// with reported line numbers mapped back to the original text.
//
// Serialization is canonical: prefixes sorted by label, one statement per
// triple, triples sorted by (subject, predicate, object) after expansion,
// blank nodes relabeled b0, b1, ... in output order, a single trailing
// newline. Numeric/boolean shorthands re-serialize as quoted typed literals.

#include <cctype>
#include <cstdio>
#include <deque>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ontopipe/model.hpp"

namespace ontopipe {

namespace detail {

// Strips a leading ``` fence (``` or ```turtle) and its closing fence.
// Returns the inner text and the number of lines skipped before it.
inline std::pair<std::string, int> unwrap_code_fence(const std::string& text) {
    size_t pos = 0;
    int line_offset = 0;
    // Skip leading blank lines.
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line(text.data() + pos, (eol == std::string::npos ? text.size() : eol) - pos);
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos) {
            if (eol == std::string::npos) return {text, 0};
            pos = eol + 1;
            ++line_offset;
            continue;
        }
        if (line.substr(first, 3) != "```") return {text, 0};
        // Fence found: body starts on the next line.
        size_t body_start = (eol == std::string::npos) ? text.size() : eol + 1;
        ++line_offset;
        size_t search = body_start;
        while (search <= text.size()) {
            size_t line_end = text.find('\n', search);
            size_t stop = (line_end == std::string::npos) ? text.size() : line_end;
            std::string_view body_line(text.data() + search, stop - search);
            size_t f = body_line.find_first_not_of(" \t\r");
            if (f != std::string_view::npos && body_line.substr(f, 3) == "```")
                return {text.substr(body_start, search - body_start), line_offset};
            if (line_end == std::string::npos) break;
            search = line_end + 1;
        }
        return {text.substr(body_start), line_offset};
    }
    return {text, 0};
}

inline std::string source_line(const std::string& text, int line) {
    int current = 1;
    size_t start = 0;
    while (current < line) {
        size_t eol = text.find('\n', start);
        if (eol == std::string::npos) return "";
        start = eol + 1;
        ++current;
    }
    size_t eol = text.find('\n', start);
    std::string out = text.substr(start, eol == std::string::npos ? std::string::npos : eol - start);
    if (!out.empty() && out.back() == '\r') out.pop_back();
    return out;
}

class TurtleParser {
public:
    TurtleParser(std::string text, const std::string& original, int line_offset)
        : text_(std::move(text)), original_(original), line_offset_(line_offset) {}

    OntologyGraph parse() {
        skip_ws();
        while (!at_end()) {
            if (peek() == '@') {
                parse_directive();
            } else {
                parse_statement();
            }
            skip_ws();
        }
        return std::move(graph_);
    }

private:
    std::string text_;
    const std::string& original_;
    int line_offset_ = 0;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    int token_end_line_ = 1;  // position right after the last token character
    int token_end_col_ = 1;
    bool in_whitespace_ = false;
    OntologyGraph graph_;
    std::unordered_map<std::string, std::string> blank_names_;
    int next_blank_ = 0;

    [[noreturn]] void fail(const std::string& message, int line, int col) const {
        SyntaxIssue issue;
        issue.line = line + line_offset_;
        issue.column = col;
        issue.message = message;
        issue.excerpt = source_line(original_, issue.line);
        throw SyntaxError(std::move(issue));
    }

    [[noreturn]] void fail_here(const std::string& message) const { fail(message, line_, col_); }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char peek_at(size_t off) const { return pos_ + off < text_.size() ? text_[pos_ + off] : '\0'; }

    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        if (!in_whitespace_) {
            token_end_line_ = line_;
            token_end_col_ = col_;
        }
        return c;
    }

    void skip_ws() {
        in_whitespace_ = true;
        while (!at_end()) {
            char c = peek();
            if (c == '#') {
                while (!at_end() && peek() != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
        in_whitespace_ = false;
    }

    void expect(char c, const std::string& what) {
        skip_ws();
        // Report EOF at the end of the last token rather than past trailing
        // whitespace, so the issue stays on the offending statement's line.
        if (at_end())
            fail("expected '" + std::string(1, c) + "' " + what, token_end_line_, token_end_col_);
        if (peek() != c) fail_here("expected '" + std::string(1, c) + "' " + what);
        advance();
    }

    static bool name_start(char c) {
        unsigned char u = static_cast<unsigned char>(c);
        return std::isalpha(u) || c == '_' || u >= 0x80;
    }
    static bool name_char(char c) {
        unsigned char u = static_cast<unsigned char>(c);
        return std::isalnum(u) || c == '_' || c == '-' || c == '.' || u >= 0x80;
    }

    void parse_directive() {
        int dline = line_, dcol = col_;
        advance();  // '@'
        std::string word;
        while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) word += advance();
        if (word == "prefix") {
            skip_ws();
            std::string label = parse_prefix_label();
            skip_ws();
            std::string iri = parse_iri_ref();
            try {
                graph_.prefixes().bind(label, iri);
            } catch (const PrefixConflictError& e) {
                fail(e.what(), dline, dcol);
            }
            expect('.', "after @prefix directive");
        } else if (word == "base") {
            skip_ws();
            std::string iri = parse_iri_ref();
            graph_.prefixes().set_base(iri);
            expect('.', "after @base directive");
        } else {
            fail("unknown directive '@" + word + "'", dline, dcol);
        }
    }

    // Reads "label:" and returns the label (possibly empty).
    std::string parse_prefix_label() {
        int sline = line_, scol = col_;
        std::string label;
        while (!at_end() && peek() != ':') {
            char c = peek();
            if (!name_char(c)) fail("invalid character in prefix label", line_, col_);
            label += advance();
        }
        if (at_end()) fail("expected ':' after prefix label", sline, scol);
        advance();  // ':'
        return label;
    }

    std::string parse_iri_ref() {
        skip_ws();
        int sline = line_, scol = col_;
        if (at_end() || peek() != '<') fail("expected IRI reference", sline, scol);
        advance();
        std::string iri;
        while (!at_end() && peek() != '>') {
            char c = advance();
            if (static_cast<unsigned char>(c) <= 0x20)
                fail("IRI reference contains whitespace or control characters", sline, scol);
            iri += c;
        }
        if (at_end()) fail("unterminated IRI reference", sline, scol);
        advance();  // '>'
        if (!has_iri_scheme(iri)) {
            iri = resolve_against_base(iri, sline, scol);
        }
        return iri;
    }

    std::string resolve_against_base(const std::string& rel, int sline, int scol) {
        const std::string& base = graph_.prefixes().base();
        if (base.empty())
            fail("relative IRI <" + rel + "> with no @base in effect", sline, scol);
        if (rel.empty()) return base;
        if (rel.front() == '#') {
            auto frag = base.find('#');
            return base.substr(0, frag) + rel;
        }
        if (base.back() == '/' || base.back() == '#') return base + rel;
        auto slash = base.rfind('/');
        if (slash == std::string::npos) return base + "/" + rel;
        return base.substr(0, slash + 1) + rel;
    }

    Term fresh_blank(const std::string& parsed_label) {
        auto it = blank_names_.find(parsed_label);
        if (it != blank_names_.end()) return Term::blank(it->second);
        std::string name = "b" + std::to_string(next_blank_++);
        blank_names_.emplace(parsed_label, name);
        return Term::blank(name);
    }

    Term anonymous_blank() { return Term::blank("b" + std::to_string(next_blank_++)); }

    void parse_statement() {
        skip_ws();
        // A blank-node property list may stand alone as a whole statement.
        bool bracket_subject = !at_end() && peek() == '[';
        Term subject = parse_subject();
        skip_ws();
        if (bracket_subject && !at_end() && peek() == '.') {
            advance();
            return;
        }
        parse_predicate_object_list(subject);
        expect('.', "at end of statement");
    }

    Term parse_subject() {
        skip_ws();
        if (at_end()) fail_here("expected subject");
        char c = peek();
        if (c == '<') return Term::iri(parse_iri_ref());
        if (c == '_' && peek_at(1) == ':') return parse_blank_label();
        if (c == '[') return parse_blank_property_list();
        return parse_prefixed_name_term();
    }

    Term parse_blank_label() {
        advance();
        advance();  // "_:"
        int sline = line_, scol = col_;
        std::string label;
        while (!at_end() && name_char(peek())) label += advance();
        // A label never ends in '.'; an adjacent dot terminates the statement.
        while (!label.empty() && label.back() == '.') {
            label.pop_back();
            --pos_;
            --col_;
        }
        if (label.empty()) fail("expected blank node label after '_:'", sline, scol);
        return fresh_blank(label);
    }

    Term parse_blank_property_list() {
        advance();  // '['
        Term node = anonymous_blank();
        skip_ws();
        if (!at_end() && peek() == ']') {
            advance();
            return node;
        }
        parse_predicate_object_list(node);
        expect(']', "to close blank node property list");
        return node;
    }

    Term parse_prefixed_name_term() {
        int sline = line_, scol = col_;
        std::string token;
        while (!at_end()) {
            char c = peek();
            if (c == ':' || name_char(c)) {
                token += advance();
            } else {
                break;
            }
        }
        if (token.empty()) fail("unexpected character '" + std::string(1, peek()) + "'", sline, scol);
        // Dots terminate statements; a trailing dot belongs to the statement,
        // not the name.
        while (!token.empty() && token.back() == '.') {
            token.pop_back();
            --pos_;
            --col_;
        }
        if (token.empty()) fail("unexpected '.'", sline, scol);
        auto colon = token.find(':');
        if (colon == std::string::npos)
            fail("expected prefixed name, found '" + token + "'", sline, scol);
        std::string label = token.substr(0, colon);
        auto ns = graph_.prefixes().find(label);
        if (!ns) fail("unbound prefix '" + label + "'", sline, scol);
        return Term::iri(*ns + token.substr(colon + 1));
    }

    void parse_predicate_object_list(const Term& subject) {
        while (true) {
            Term predicate = parse_predicate();
            parse_object_list(subject, predicate);
            skip_ws();
            if (!at_end() && peek() == ';') {
                advance();
                skip_ws();
                // Trailing ';' before '.' or ']' is tolerated.
                if (!at_end() && (peek() == '.' || peek() == ']')) return;
                continue;
            }
            return;
        }
    }

    Term parse_predicate() {
        skip_ws();
        if (at_end()) fail_here("expected predicate");
        char c = peek();
        if (c == 'a') {
            char next = peek_at(1);
            if (next == ' ' || next == '\t' || next == '\n' || next == '\r' || next == '<' ||
                next == '"' || next == '[' || next == '_' || next == '#') {
                advance();
                return Term::iri(vocab::RDF_TYPE);
            }
        }
        if (c == '<') return Term::iri(parse_iri_ref());
        Term t = parse_prefixed_name_term();
        return t;
    }

    void parse_object_list(const Term& subject, const Term& predicate) {
        while (true) {
            Term object = parse_object();
            int tline = line_, tcol = col_;
            try {
                graph_.insert(make_triple(subject, predicate, object));
            } catch (const MalformedTripleError& e) {
                fail(e.what(), tline, tcol);
            }
            skip_ws();
            if (!at_end() && peek() == ',') {
                advance();
                continue;
            }
            return;
        }
    }

    Term parse_object() {
        skip_ws();
        if (at_end()) fail_here("expected object");
        char c = peek();
        if (c == '<') return Term::iri(parse_iri_ref());
        if (c == '_' && peek_at(1) == ':') return parse_blank_label();
        if (c == '[') return parse_blank_property_list();
        if (c == '"' || c == '\'') return parse_string_literal();
        if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c)))
            return parse_numeric_literal();
        if (text_.compare(pos_, 4, "true") == 0 && !name_char(peek_at(4))) {
            for (int i = 0; i < 4; ++i) advance();
            return Term::typed_literal("true", vocab::XSD_BOOLEAN);
        }
        if (text_.compare(pos_, 5, "false") == 0 && !name_char(peek_at(5))) {
            for (int i = 0; i < 5; ++i) advance();
            return Term::typed_literal("false", vocab::XSD_BOOLEAN);
        }
        return parse_prefixed_name_term();
    }

    Term parse_string_literal() {
        int sline = line_, scol = col_;
        char quote = advance();
        bool long_string = false;
        if (peek() == quote && peek_at(1) == quote) {
            advance();
            advance();
            long_string = true;
        }
        std::string lex;
        while (true) {
            if (at_end()) fail("unterminated string literal", sline, scol);
            char c = peek();
            if (c == quote) {
                if (!long_string) {
                    advance();
                    break;
                }
                if (peek_at(1) == quote && peek_at(2) == quote) {
                    advance();
                    advance();
                    advance();
                    break;
                }
                lex += advance();
                continue;
            }
            if (c == '\\') {
                advance();
                if (at_end()) fail("unterminated escape sequence", sline, scol);
                char e = advance();
                switch (e) {
                    case 't': lex += '\t'; break;
                    case 'n': lex += '\n'; break;
                    case 'r': lex += '\r'; break;
                    case '"': lex += '"'; break;
                    case '\'': lex += '\''; break;
                    case '\\': lex += '\\'; break;
                    case 'u': lex += parse_unicode_escape(4, sline, scol); break;
                    case 'U': lex += parse_unicode_escape(8, sline, scol); break;
                    default: fail("unsupported escape '\\" + std::string(1, e) + "'", sline, scol);
                }
                continue;
            }
            if (!long_string && c == '\n') fail("newline inside string literal", sline, scol);
            lex += advance();
        }
        // Optional language tag or datatype.
        if (!at_end() && peek() == '@') {
            advance();
            std::string tag;
            while (!at_end() &&
                   (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-'))
                tag += advance();
            if (tag.empty()) fail("expected language tag after '@'", sline, scol);
            return Term::lang_literal(lex, tag);
        }
        if (!at_end() && peek() == '^' && peek_at(1) == '^') {
            advance();
            advance();
            skip_ws();
            if (!at_end() && peek() == '<') return Term::typed_literal(lex, parse_iri_ref());
            Term dt = parse_prefixed_name_term();
            return Term::typed_literal(lex, dt.value);
        }
        return Term::literal(lex);
    }

    std::string parse_unicode_escape(int digits, int sline, int scol) {
        unsigned long code = 0;
        for (int i = 0; i < digits; ++i) {
            if (at_end() || !std::isxdigit(static_cast<unsigned char>(peek())))
                fail("invalid unicode escape", sline, scol);
            char c = advance();
            code = code * 16 + (std::isdigit(static_cast<unsigned char>(c))
                                    ? c - '0'
                                    : std::tolower(static_cast<unsigned char>(c)) - 'a' + 10);
        }
        std::string out;
        if (code < 0x80) {
            out += static_cast<char>(code);
        } else if (code < 0x800) {
            out += static_cast<char>(0xC0 | (code >> 6));
            out += static_cast<char>(0x80 | (code & 0x3F));
        } else if (code < 0x10000) {
            out += static_cast<char>(0xE0 | (code >> 12));
            out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (code & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (code >> 18));
            out += static_cast<char>(0x80 | ((code >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (code & 0x3F));
        }
        return out;
    }

    Term parse_numeric_literal() {
        int sline = line_, scol = col_;
        std::string lex;
        if (peek() == '+' || peek() == '-') lex += advance();
        bool has_digits = false, has_dot = false, has_exp = false;
        while (!at_end()) {
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                has_digits = true;
                lex += advance();
            } else if (c == '.' && !has_dot && !has_exp &&
                       std::isdigit(static_cast<unsigned char>(peek_at(1)))) {
                has_dot = true;
                lex += advance();
            } else if ((c == 'e' || c == 'E') && has_digits && !has_exp) {
                has_exp = true;
                lex += advance();
                if (!at_end() && (peek() == '+' || peek() == '-')) lex += advance();
            } else {
                break;
            }
        }
        if (!has_digits) fail("malformed numeric literal", sline, scol);
        const std::string& dt =
            has_exp ? vocab::XSD_DOUBLE : (has_dot ? vocab::XSD_DECIMAL : vocab::XSD_INTEGER);
        return Term::typed_literal(lex, dt);
    }
};

inline std::string escape_literal(const std::string& lex) {
    std::string out;
    out.reserve(lex.size() + 2);
    for (char c : lex) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string render_term(const Term& t, const PrefixMap& prefixes,
                               const std::unordered_map<std::string, std::string>* blank_rename) {
    switch (t.kind) {
        case TermKind::Iri: {
            if (t.value == vocab::RDF_TYPE) return "a";
            if (auto c = prefixes.compact(t.value)) return *c;
            return "<" + t.value + ">";
        }
        case TermKind::Blank: {
            if (blank_rename) {
                auto it = blank_rename->find(t.value);
                if (it != blank_rename->end()) return "_:" + it->second;
            }
            return "_:" + t.value;
        }
        case TermKind::Literal: {
            std::string out = "\"" + escape_literal(t.value) + "\"";
            if (!t.language.empty()) return out + "@" + t.language;
            if (!t.datatype.empty()) {
                if (auto c = prefixes.compact(t.datatype)) return out + "^^" + *c;
                return out + "^^<" + t.datatype + ">";
            }
            return out;
        }
    }
    return "";
}

}  // namespace detail

// Parses the supported Turtle subset; code fences are unwrapped first.
// Throws SyntaxError with the first failure location.
inline OntologyGraph parse_turtle(const std::string& text) {
    auto [body, line_offset] = detail::unwrap_code_fence(text);
    detail::TurtleParser parser(std::move(body), text, line_offset);
    return parser.parse();
}

namespace detail {

// Canonical blank-node labels derived from each node's structural signature
// (two refinement rounds over incident triples), so the labeling does not
// depend on the labels the graph arrived with. Structurally interchangeable
// blanks may receive either label; their rendered statements are identical,
// so the serialized bytes are unaffected.
inline std::unordered_map<std::string, std::string> canonical_blank_labels(
    const OntologyGraph& graph) {
    std::unordered_map<std::string, std::vector<std::string>> incident;
    for (const Triple& t : graph.triples()) {
        bool sb = t.subject.is_blank(), ob = t.object.is_blank();
        if (sb)
            incident[t.subject.value].push_back(
                "S\x1f" + t.predicate.value + "\x1f" + (ob ? "\x01" + t.object.value : t.object.sort_key()));
        if (ob)
            incident[t.object.value].push_back(
                "O\x1f" + t.predicate.value + "\x1f" + (sb ? "\x01" + t.subject.value : t.subject.sort_key()));
    }

    auto signature = [&](const std::unordered_map<std::string, std::string>* previous) {
        std::unordered_map<std::string, std::string> sigs;
        for (auto& [label, tuples] : incident) {
            std::vector<std::string> parts = tuples;
            if (previous) {
                for (std::string& part : parts) {
                    auto mark = part.find('\x01');
                    if (mark == std::string::npos) continue;
                    std::string other = part.substr(mark + 1);
                    auto it = previous->find(other);
                    part = part.substr(0, mark) + (it == previous->end() ? "?" : it->second);
                }
            }
            std::sort(parts.begin(), parts.end());
            std::string sig;
            for (const std::string& part : parts) {
                sig += part;
                sig += '\x1e';
            }
            sigs[label] = std::move(sig);
        }
        return sigs;
    };

    std::unordered_map<std::string, std::string> round1 = signature(nullptr);
    std::unordered_map<std::string, std::string> round2 = signature(&round1);

    std::vector<std::string> labels;
    labels.reserve(incident.size());
    for (auto& [label, _] : incident) labels.push_back(label);
    std::sort(labels.begin(), labels.end(), [&](const std::string& a, const std::string& b) {
        if (round2[a] != round2[b]) return round2[a] < round2[b];
        if (round1[a] != round1[b]) return round1[a] < round1[b];
        return a < b;  // interchangeable nodes; choice does not affect output
    });

    std::unordered_map<std::string, std::string> rename;
    for (size_t i = 0; i < labels.size(); ++i) rename[labels[i]] = "b" + std::to_string(i);
    return rename;
}

}  // namespace detail

// Canonical Turtle text for a graph. Pure function; graphs equal modulo
// blank-node relabeling produce byte-identical output.
inline std::string serialize(const OntologyGraph& graph) {
    std::string out;
    for (const auto& [label, iri] : graph.prefixes().entries())
        out += "@prefix " + label + ": <" + iri + "> .\n";

    std::unordered_map<std::string, std::string> rename =
        detail::canonical_blank_labels(graph);
    auto renamed_key = [&](const Term& t) {
        if (!t.is_blank()) return t.sort_key();
        return "B" + rename.at(t.value);
    };

    const auto& triples = graph.triples();
    std::vector<size_t> order(graph.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        const Triple& ta = triples[a];
        const Triple& tb = triples[b];
        std::string ka = renamed_key(ta.subject) + '\x1e' + ta.predicate.sort_key() + '\x1e' +
                         renamed_key(ta.object);
        std::string kb = renamed_key(tb.subject) + '\x1e' + tb.predicate.sort_key() + '\x1e' +
                         renamed_key(tb.object);
        return ka < kb;
    });

    if (!graph.prefixes().entries().empty() && !triples.empty()) out += "\n";
    for (size_t i : order) {
        const Triple& t = triples[i];
        out += detail::render_term(t.subject, graph.prefixes(), &rename) + " " +
               detail::render_term(t.predicate, graph.prefixes(), &rename) + " " +
               detail::render_term(t.object, graph.prefixes(), &rename) + " .\n";
    }
    return out;
}

// Turtle text of all triples whose subject or object lies within `radius`
// graph hops of any focus IRI; radius 0 selects triples mentioning a focus
// IRI directly. Returns "" when nothing is selected.
inline std::string extract_fragment(const OntologyGraph& graph,
                                    const std::set<std::string>& focus_iris, int radius) {
    auto node_key = [](const Term& t) -> std::string {
        if (t.is_iri()) return "I" + t.value;
        if (t.is_blank()) return "B" + t.value;
        return "";
    };

    std::unordered_map<std::string, int> dist;
    std::deque<std::string> frontier;
    for (const std::string& iri : focus_iris) {
        dist["I" + iri] = 0;
        frontier.push_back("I" + iri);
    }
    while (!frontier.empty()) {
        std::string node = frontier.front();
        frontier.pop_front();
        int d = dist[node];
        if (d >= radius) continue;
        for (const Triple& t : graph.triples()) {
            std::string s = node_key(t.subject);
            std::string o = node_key(t.object);
            if (s == node && !o.empty() && !dist.count(o)) {
                dist[o] = d + 1;
                frontier.push_back(o);
            }
            if (o == node && !dist.count(s)) {
                dist[s] = d + 1;
                frontier.push_back(s);
            }
        }
    }

    OntologyGraph fragment;
    fragment.prefixes() = graph.prefixes();
    for (const Triple& t : graph.triples()) {
        auto ds = dist.find(node_key(t.subject));
        std::string ok = node_key(t.object);
        auto dob = ok.empty() ? dist.end() : dist.find(ok);
        bool in_s = ds != dist.end() && ds->second <= radius;
        bool in_o = dob != dist.end() && dob->second <= radius;
        if (in_s || in_o) fragment.insert(t);
    }
    if (fragment.empty()) return "";
    return serialize(fragment);
}

}  // namespace ontopipe
