#include "phianchor/rdf_convert.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "phianchor/errors.hpp"

namespace phianchor {

PrefixMap default_prefixes(const RdfSchema& schema) {
    PrefixMap prefixes;
    prefixes.add("iso639", schema.base);
    prefixes.add("ex", "http://example.org/lang#");
    return prefixes;
}

RdfTerm term_for_id(const std::string& node_id) {
    if (node_id.find("://") != std::string::npos) return RdfTerm::iri(node_id);
    return RdfTerm::prefixed(node_id);
}

RdfTerm term_for_iri(const std::string& iri, const PrefixMap& prefixes) {
    if (auto compacted = prefixes.compact(iri)) return RdfTerm::prefixed(*compacted);
    return RdfTerm::iri(iri);
}

namespace {

// Node id as written in the document: prefixed names stay compact, raw IRIs
// keep their full text.
std::string id_for_term(const RdfTerm& term) {
    return term.value;
}

std::string expand_term(const RdfTerm& term, const PrefixMap& prefixes) {
    if (term.kind == TermKind::Iri) return term.value;
    if (term.kind == TermKind::Prefixed) return prefixes.expand(term.value);
    return term.value;
}

struct SubjectData {
    std::optional<NodeKind> kind;
    std::optional<std::string> iso_code;
    std::optional<PhiIndex> phi;
    std::optional<std::string> equivalent_to;
    bool has_vocab_property = false;
    bool foreign_type = false;  // typed, but not one of our node classes
};

} // namespace

AnchorRegistry registry_from_triples(const TurtleDocument& doc, const RdfSchema& schema) {
    const PrefixMap& prefixes = doc.prefixes;

    // Pass 1: subject classification and datatype properties.
    std::vector<std::string> subject_order;
    std::map<std::string, SubjectData> subjects;
    auto touch = [&](const std::string& id) -> SubjectData& {
        auto it = subjects.find(id);
        if (it == subjects.end()) {
            subject_order.push_back(id);
            it = subjects.emplace(id, SubjectData{}).first;
        }
        return it->second;
    };

    for (const auto& triple : doc.triples) {
        std::string subject_id = id_for_term(triple.subject);
        if (triple.predicate.kind == TermKind::A) {
            std::string type_iri = expand_term(triple.object, prefixes);
            SubjectData& data = touch(subject_id);
            if (type_iri == schema.base_language()) {
                data.kind = NodeKind::Base;
            } else if (type_iri == schema.drifted_language()) {
                data.kind = NodeKind::Drifted;
            } else {
                data.foreign_type = true;
            }
            continue;
        }
        std::string pred_iri = expand_term(triple.predicate, prefixes);
        if (pred_iri == schema.iso_code()) {
            SubjectData& data = touch(subject_id);
            data.has_vocab_property = true;
            data.iso_code = triple.object.value;
        } else if (pred_iri == schema.phi_index()) {
            SubjectData& data = touch(subject_id);
            data.has_vocab_property = true;
            data.phi = parse_phi(triple.object.value);
        } else if (pred_iri == schema.equivalent_to()) {
            SubjectData& data = touch(subject_id);
            data.has_vocab_property = true;
            data.equivalent_to = id_for_term(triple.object);
        } else if (pred_iri == schema.has_drift() || pred_iri == schema.is_fallback_of()) {
            touch(subject_id).has_vocab_property = true;
        }
        // Anything else (including ResolvedAnchor exports) is ignored.
    }

    std::vector<LanguageNode> nodes;
    std::set<std::string> node_ids;
    for (const auto& id : subject_order) {
        const SubjectData& data = subjects[id];
        if (!data.kind) {
            if (data.foreign_type) continue;
            if (data.has_vocab_property) {
                throw Error(ErrorCode::MissingType, "subject '" + id + "' uses the vocabulary but has no language class");
            }
            continue;
        }
        if (!data.phi) {
            throw Error(ErrorCode::MissingPhiIndex, "subject '" + id + "' has no phiIndex");
        }
        if (id == AnchorRegistry::kUndId) {
            continue;  // merged with the built-in sentinel
        }
        LanguageNode node;
        node.id = id;
        node.kind = *data.kind;
        node.phi = *data.phi;
        node.iso_code = data.iso_code;
        node.equivalent_to = data.equivalent_to;
        nodes.push_back(std::move(node));
        node_ids.insert(id);
    }

    // Pass 2: edges from hasDrift, in document order.
    std::vector<DriftEdge> edges;
    std::set<std::pair<std::string, std::string>> edge_set;
    auto require_node = [&](const std::string& id, const char* role) {
        if (!node_ids.count(id) && id != AnchorRegistry::kUndId) {
            throw Error(ErrorCode::UnknownTarget, std::string(role) + " '" + id + "' is not a declared language node");
        }
    };
    auto add_edge = [&](const std::string& from, const std::string& to) {
        if (edge_set.emplace(from, to).second) edges.push_back({from, to, DriftVector::zero()});
    };

    for (const auto& triple : doc.triples) {
        if (triple.predicate.kind == TermKind::A) continue;
        if (expand_term(triple.predicate, prefixes) != schema.has_drift()) continue;
        std::string from = id_for_term(triple.subject);
        std::string to = id_for_term(triple.object);
        require_node(from, "hasDrift source");
        require_node(to, "hasDrift target");
        add_edge(from, to);
    }

    // Pass 3: isFallbackOf. Without an incoming hasDrift the link supplies
    // the inverse edge; otherwise it must point somewhere on the subject's
    // existing fallback chain (the bundled fixtures link straight to the
    // anchor across one intermediate drift step).
    std::map<std::string, std::vector<std::string>> parents;
    for (const auto& e : edges) parents[e.to].push_back(e.from);

    auto ancestors_of = [&](const std::string& id) {
        std::set<std::string> seen;
        std::vector<std::string> stack{id};
        while (!stack.empty()) {
            std::string current = stack.back();
            stack.pop_back();
            for (const auto& parent : parents[current]) {
                if (seen.insert(parent).second) stack.push_back(parent);
            }
        }
        return seen;
    };

    for (const auto& triple : doc.triples) {
        if (triple.predicate.kind == TermKind::A) continue;
        if (expand_term(triple.predicate, prefixes) != schema.is_fallback_of()) continue;
        std::string from = id_for_term(triple.subject);  // the drifted node
        std::string to = id_for_term(triple.object);     // its claimed fallback
        require_node(from, "isFallbackOf subject");
        require_node(to, "isFallbackOf target");
        if (parents.find(from) == parents.end() || parents[from].empty()) {
            add_edge(to, from);
            parents[from].push_back(to);
            continue;
        }
        auto up = ancestors_of(from);
        if (!up.count(to)) {
            throw Error(ErrorCode::InverseMismatch,
                        "'" + from + "' declares fallback '" + to + "' but its drift chain never reaches it");
        }
    }

    // The built-in sentinel goes first; a declared und block was merged above.
    std::vector<LanguageNode> seeded;
    seeded.reserve(nodes.size() + 1);
    LanguageNode und;
    und.id = std::string(AnchorRegistry::kUndId);
    und.kind = NodeKind::Base;
    und.phi = PhiIndex::undetermined();
    und.iso_code = "und";
    und.display_name = "Undetermined";
    seeded.push_back(std::move(und));
    for (auto& n : nodes) seeded.push_back(std::move(n));
    return AnchorRegistry::from_parts(std::move(seeded), std::move(edges));
}

TurtleDocument triples_from_registry(const AnchorRegistry& registry, PrefixMap prefixes,
                                     const RdfSchema& schema) {
    prefixes.add("iso639", schema.base);

    TurtleDocument doc;
    doc.prefixes = prefixes;

    auto vocab = [&](const std::string& iri) { return term_for_iri(iri, doc.prefixes); };

    for (const auto& node : registry.nodes()) {
        RdfTerm subject = term_for_id(node.id);
        RdfTerm type = vocab(node.kind == NodeKind::Base ? schema.base_language() : schema.drifted_language());
        doc.triples.push_back({subject, RdfTerm::type_keyword(), type});
        if (node.iso_code) {
            doc.triples.push_back({subject, vocab(schema.iso_code()), RdfTerm::literal(*node.iso_code)});
        }
        doc.triples.push_back({subject, vocab(schema.phi_index()), RdfTerm::literal(format_phi(node.phi))});
        if (node.equivalent_to) {
            doc.triples.push_back({subject, vocab(schema.equivalent_to()), term_for_id(*node.equivalent_to)});
        }
        const auto& parents = registry.parents_of(node.id);
        if (parents.size() == 1) {
            doc.triples.push_back({subject, vocab(schema.is_fallback_of()), term_for_id(parents.front())});
        }
        for (const auto& child : registry.children_of(node.id)) {
            doc.triples.push_back({subject, vocab(schema.has_drift()), term_for_id(child)});
        }
    }
    return doc;
}

TurtleDocument triples_from_registry(const AnchorRegistry& registry) {
    return triples_from_registry(registry, default_prefixes());
}

} // namespace phianchor
