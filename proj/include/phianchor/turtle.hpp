#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace phianchor {

// Supported Turtle subset: @prefix directives, subject blocks with
// ';'-separated predicate-object pairs terminated by '.', the keyword 'a',
// quoted string literals, prefixed names, <iri> references and '#' comments.
// No blank nodes, collections, multi-line literals or datatype/lang tags.

enum class TermKind { Iri, Prefixed, Literal, A };

struct RdfTerm {
    TermKind kind = TermKind::Prefixed;
    std::string value;  // Iri: without angle brackets; Literal: unescaped text

    friend bool operator==(const RdfTerm&, const RdfTerm&) = default;

    static RdfTerm iri(std::string v) { return {TermKind::Iri, std::move(v)}; }
    static RdfTerm prefixed(std::string v) { return {TermKind::Prefixed, std::move(v)}; }
    static RdfTerm literal(std::string v) { return {TermKind::Literal, std::move(v)}; }
    static RdfTerm type_keyword() { return {TermKind::A, "a"}; }
};

struct Triple {
    RdfTerm subject;
    RdfTerm predicate;
    RdfTerm object;

    friend bool operator==(const Triple&, const Triple&) = default;
};

class PrefixMap {
public:
    // Re-binding a label to a different base is rejected (SyntaxError);
    // repeating an identical binding is a no-op.
    void add(const std::string& label, const std::string& iri_base);

    bool contains(std::string_view label) const;
    const std::string* base_for(std::string_view label) const;

    // "ex:Name" -> full IRI. Errors: UnknownPrefix.
    std::string expand(std::string_view prefixed_name) const;

    // Longest-base match back to "label:local"; nullopt when no base applies.
    std::optional<std::string> compact(std::string_view iri) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

private:
    std::map<std::string, std::string> entries_;  // label -> IRI base, sorted
};

struct TurtleDocument {
    PrefixMap prefixes;
    std::vector<Triple> triples;
};

// Parses the subset above, returning triples in document order.
// Errors: SyntaxError (with line/column), UnknownPrefix.
TurtleDocument parse_turtle(std::string_view text);

// Deterministic form: prefixes sorted by label, subjects grouped in
// first-appearance order, predicates in input order. Re-parsing yields an
// equal triple set; re-serializing that parse yields identical bytes.
std::string serialize_turtle(const PrefixMap& prefixes, const std::vector<Triple>& triples);
std::string serialize_turtle(const TurtleDocument& doc);

// Prefix-independent comparison key (expands prefixed names).
std::string term_key(const RdfTerm& term, const PrefixMap& prefixes);

// Triple-multiset equality modulo prefix compaction.
bool same_triple_set(const TurtleDocument& a, const TurtleDocument& b);

} // namespace phianchor
