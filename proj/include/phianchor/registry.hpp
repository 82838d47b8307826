#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "phianchor/phi_index.hpp"

namespace phianchor {

enum class NodeKind { Base, Drifted };

// A base or drifted language state. A Base node is its own anchor; a
// Drifted node must have exactly one fallback path ending at a Base node.
struct LanguageNode {
    std::string id;                            // IRI-like, e.g. "ex:English"
    NodeKind kind = NodeKind::Base;
    PhiIndex phi;
    std::optional<std::string> iso_code;       // 2-3 letter code when known
    std::optional<std::string> display_name;
    std::optional<std::string> equivalent_to;  // stored metadata, no resolution semantics
};

// Directed drift step from an anchor-side node to a more drifted one.
// Identity self-loops are implicit and never stored.
struct DriftEdge {
    std::string from;
    std::string to;
    DriftVector delta;
};

enum class FindingLevel { Warning, Error };

enum class FindingCode {
    CycleDetected,
    UnanchoredNode,
    CrossAnchorEdge,
    MultipleAnchors,
    DuplicateBaseIdentity,
    SentinelViolation,
    DuplicateVariant,
};

std::string_view to_string(FindingLevel level);
std::string_view to_string(FindingCode code);

struct Finding {
    FindingLevel level;
    FindingCode code;
    std::string node_id;
    std::string message;

    // Line form "LEVEL CODE node-id message" used by the CLI.
    std::string line() const;
};

struct ValidationReport {
    std::vector<Finding> findings;

    bool ok() const;          // no error-level findings
    bool empty() const { return findings.empty(); }
    std::vector<std::string> lines() const;
};

// The validated graph of language nodes and drift edges.
//
// Construction is single-writer; once validated the registry is treated as
// immutable and may be shared freely across threads. Taking a copy before
// mutating gives snapshot semantics.
class AnchorRegistry {
public:
    static constexpr std::string_view kUndId = "iso639:und";

    // Seeds the built-in und sentinel (phi99.9, code "und").
    AnchorRegistry();

    // Raw assembly for deserializers and tests. Resolves edge endpoints and
    // rejects duplicate ids, but performs no structural validation; callers
    // are expected to run validate(). Does not inject the sentinel.
    static AnchorRegistry from_parts(std::vector<LanguageNode> nodes, std::vector<DriftEdge> edges);

    // Inserts a Base node as its own anchor.
    // Errors: DuplicateId, SentinelReserved.
    void add_base(LanguageNode node);

    // Inserts a Drifted node plus the edge fallback_of -> node, recording
    // the drift step and its inverse fallback link in one move.
    // Errors: UnknownTarget, DuplicateId, SentinelReserved, CycleDetected.
    void add_drifted(LanguageNode node, const std::string& fallback_of, DriftVector delta = {});

    bool contains(const std::string& id) const;
    const LanguageNode* find(const std::string& id) const;
    const LanguageNode& node(const std::string& id) const;  // UnknownNode
    const LanguageNode& und() const;

    const std::vector<LanguageNode>& nodes() const { return nodes_; }
    const std::vector<DriftEdge>& edges() const { return edges_; }

    // Edge targets of `id` in insertion order; empty for leaves.
    std::vector<std::string> children_of(const std::string& id) const;
    // Sources of edges into `id`; more than one entry marks a hybrid node.
    const std::vector<std::string>& parents_of(const std::string& id) const;

    // The unique Base node reached along fallback links; a Base node is its
    // own anchor. O(1) via the memoized index.
    // Errors: UnknownNode, UnanchoredNode (corrupt registry).
    const LanguageNode& anchor_of(const std::string& id) const;

    // Hop count to the anchor; 0 iff Base.
    int drift_distance(const std::string& id) const;

    // [node, ..., anchor, und]; the und node itself yields [und].
    std::vector<LanguageNode> fallback_chain(const std::string& id) const;

    // All nodes whose phi.family matches, insertion order.
    std::vector<LanguageNode> family_query(int family) const;

    // The node itself when Base or phi.variant <= threshold, else its anchor.
    // threshold must lie in 0..9.
    const LanguageNode& collapse_index(const std::string& id, int threshold) const;

    // Checks every structural invariant and reports findings as data:
    // acyclicity, anchor totality and uniqueness, same-anchor edges,
    // single-parent fallback, base identity uniqueness, sentinel presence.
    ValidationReport validate() const;

private:
    std::vector<LanguageNode> nodes_;
    std::vector<DriftEdge> edges_;
    std::unordered_map<std::string, std::size_t> index_;            // id -> nodes_ slot
    std::unordered_map<std::string, std::string> anchor_index_;    // id -> base id, memoized
    std::unordered_map<std::string, std::vector<std::string>> parents_;
    std::unordered_map<std::string, std::vector<std::string>> children_;

    void insert_node(LanguageNode node);
    void insert_edge(DriftEdge edge);
    void rebuild_anchor_index();
};

} // namespace phianchor
