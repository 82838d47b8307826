#pragma once

#include <string>

#include "phianchor/registry.hpp"
#include "phianchor/turtle.hpp"

namespace phianchor {

// Vocabulary IRIs for the interchange schema. The base is configurable;
// the default matches the bundled fixtures.
struct RdfSchema {
    std::string base = "http://purl.org/iso/639/2023/schema#";

    std::string base_language() const { return base + "BaseLanguage"; }
    std::string drifted_language() const { return base + "DriftedLanguage"; }
    std::string resolved_anchor() const { return base + "ResolvedAnchor"; }
    std::string iso_code() const { return base + "isoCode"; }
    std::string phi_index() const { return base + "phiIndex"; }
    std::string has_drift() const { return base + "hasDrift"; }
    std::string is_fallback_of() const { return base + "isFallbackOf"; }
    std::string equivalent_to() const { return base + "equivalentTo"; }
    std::string resolved_to() const { return base + "resolvedTo"; }
    std::string confidence() const { return base + "confidence"; }
};

PrefixMap default_prefixes(const RdfSchema& schema = {});

// Renders a node id back into a term: absolute IRIs keep the <> form,
// everything else is treated as a prefixed name.
RdfTerm term_for_id(const std::string& node_id);

// Compact against the prefix map when possible, else emit the full IRI.
RdfTerm term_for_iri(const std::string& iri, const PrefixMap& prefixes);

// Builds a registry from vocabulary triples. One node per typed subject,
// one edge per hasDrift; isFallbackOf links either derive the inverse edge
// or are checked to point at an ancestor on the drift chain. Structural
// problems beyond that surface through validate() on the result.
// Errors: MissingType, MissingPhiIndex, InverseMismatch, UnknownTarget,
// plus phi parsing errors.
AnchorRegistry registry_from_triples(const TurtleDocument& doc, const RdfSchema& schema = {});

// Emits the full vocabulary for a registry, normalizing every edge to a
// hasDrift / isFallbackOf pair. Round-trips through registry_from_triples
// node- and edge-isomorphically.
TurtleDocument triples_from_registry(const AnchorRegistry& registry, PrefixMap prefixes,
                                     const RdfSchema& schema = {});
TurtleDocument triples_from_registry(const AnchorRegistry& registry);

} // namespace phianchor
