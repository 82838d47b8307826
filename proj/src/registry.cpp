#include "phianchor/registry.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "phianchor/errors.hpp"

namespace phianchor {

std::string_view to_string(FindingLevel level) {
    return level == FindingLevel::Error ? "ERROR" : "WARNING";
}

std::string_view to_string(FindingCode code) {
    switch (code) {
        case FindingCode::CycleDetected: return "CycleDetected";
        case FindingCode::UnanchoredNode: return "UnanchoredNode";
        case FindingCode::CrossAnchorEdge: return "CrossAnchorEdge";
        case FindingCode::MultipleAnchors: return "MultipleAnchors";
        case FindingCode::DuplicateBaseIdentity: return "DuplicateBaseIdentity";
        case FindingCode::SentinelViolation: return "SentinelViolation";
        case FindingCode::DuplicateVariant: return "DuplicateVariant";
    }
    return "UnknownFinding";
}

std::string Finding::line() const {
    std::string out(to_string(level));
    out += ' ';
    out += to_string(code);
    out += ' ';
    out += node_id.empty() ? "-" : node_id;
    out += ' ';
    out += message;
    return out;
}

bool ValidationReport::ok() const {
    return std::none_of(findings.begin(), findings.end(),
                        [](const Finding& f) { return f.level == FindingLevel::Error; });
}

std::vector<std::string> ValidationReport::lines() const {
    std::vector<std::string> out;
    out.reserve(findings.size());
    for (const auto& f : findings) out.push_back(f.line());
    return out;
}

AnchorRegistry::AnchorRegistry() {
    LanguageNode und;
    und.id = std::string(kUndId);
    und.kind = NodeKind::Base;
    und.phi = PhiIndex::undetermined();
    und.iso_code = "und";
    und.display_name = "Undetermined";
    insert_node(std::move(und));
    anchor_index_[std::string(kUndId)] = std::string(kUndId);
}

AnchorRegistry AnchorRegistry::from_parts(std::vector<LanguageNode> nodes, std::vector<DriftEdge> edges) {
    AnchorRegistry reg;
    reg.nodes_.clear();
    reg.index_.clear();
    reg.anchor_index_.clear();
    for (auto& node : nodes) {
        if (reg.contains(node.id)) {
            throw Error(ErrorCode::DuplicateId, "node '" + node.id + "' declared twice");
        }
        reg.insert_node(std::move(node));
    }
    std::set<std::pair<std::string, std::string>> seen;
    for (auto& edge : edges) {
        if (!reg.contains(edge.from)) {
            throw Error(ErrorCode::UnknownTarget, "edge source '" + edge.from + "' is not a node");
        }
        if (!reg.contains(edge.to)) {
            throw Error(ErrorCode::UnknownTarget, "edge target '" + edge.to + "' is not a node");
        }
        if (!seen.emplace(edge.from, edge.to).second) continue;
        reg.insert_edge(std::move(edge));
    }
    reg.rebuild_anchor_index();
    return reg;
}

void AnchorRegistry::add_base(LanguageNode node) {
    if (contains(node.id)) {
        throw Error(ErrorCode::DuplicateId, "node '" + node.id + "' already present");
    }
    if (is_undetermined(node.phi)) {
        throw Error(ErrorCode::SentinelReserved, "phi99.9 is reserved for '" + std::string(kUndId) + "'");
    }
    if (!is_valid(node.phi)) {
        throw Error(ErrorCode::OutOfRange, "phi index of '" + node.id + "' out of bounds");
    }
    node.kind = NodeKind::Base;
    std::string id = node.id;
    insert_node(std::move(node));
    anchor_index_[id] = id;
}

void AnchorRegistry::add_drifted(LanguageNode node, const std::string& fallback_of, DriftVector delta) {
    if (node.id == fallback_of) {
        throw Error(ErrorCode::CycleDetected, "'" + node.id + "' cannot fall back to itself");
    }
    if (!contains(fallback_of)) {
        throw Error(ErrorCode::UnknownTarget, "fallback target '" + fallback_of + "' is not a node");
    }
    if (contains(node.id)) {
        throw Error(ErrorCode::DuplicateId, "node '" + node.id + "' already present");
    }
    if (is_undetermined(node.phi)) {
        throw Error(ErrorCode::SentinelReserved, "phi99.9 is reserved for '" + std::string(kUndId) + "'");
    }
    if (!is_valid(node.phi)) {
        throw Error(ErrorCode::OutOfRange, "phi index of '" + node.id + "' out of bounds");
    }
    node.kind = NodeKind::Drifted;
    std::string id = node.id;
    insert_node(std::move(node));
    insert_edge({fallback_of, id, std::move(delta)});
    // The parent is already anchored, so the new node inherits in O(1).
    auto it = anchor_index_.find(fallback_of);
    if (it != anchor_index_.end()) anchor_index_[id] = it->second;
}

bool AnchorRegistry::contains(const std::string& id) const {
    return index_.count(id) != 0;
}

const LanguageNode* AnchorRegistry::find(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &nodes_[it->second];
}

const LanguageNode& AnchorRegistry::node(const std::string& id) const {
    const LanguageNode* n = find(id);
    if (!n) throw Error(ErrorCode::UnknownNode, "no node '" + id + "'");
    return *n;
}

const LanguageNode& AnchorRegistry::und() const {
    return node(std::string(kUndId));
}

std::vector<std::string> AnchorRegistry::children_of(const std::string& id) const {
    auto it = children_.find(id);
    return it == children_.end() ? std::vector<std::string>{} : it->second;
}

const std::vector<std::string>& AnchorRegistry::parents_of(const std::string& id) const {
    static const std::vector<std::string> kNone;
    auto it = parents_.find(id);
    return it == parents_.end() ? kNone : it->second;
}

const LanguageNode& AnchorRegistry::anchor_of(const std::string& id) const {
    if (!contains(id)) throw Error(ErrorCode::UnknownNode, "no node '" + id + "'");
    auto it = anchor_index_.find(id);
    if (it == anchor_index_.end()) {
        throw Error(ErrorCode::UnanchoredNode, "'" + id + "' has no reachable base node");
    }
    return node(it->second);
}

int AnchorRegistry::drift_distance(const std::string& id) const {
    const LanguageNode* current = &node(id);
    int hops = 0;
    std::set<std::string> visited;
    while (current->kind != NodeKind::Base) {
        if (!visited.insert(current->id).second) {
            throw Error(ErrorCode::UnanchoredNode, "'" + id + "' sits on a drift cycle");
        }
        const auto& parents = parents_of(current->id);
        if (parents.size() != 1) {
            throw Error(ErrorCode::UnanchoredNode, "'" + id + "' lacks a unique fallback path");
        }
        current = &node(parents.front());
        ++hops;
    }
    return hops;
}

std::vector<LanguageNode> AnchorRegistry::fallback_chain(const std::string& id) const {
    std::vector<LanguageNode> chain;
    const LanguageNode* current = &node(id);
    std::set<std::string> visited;
    chain.push_back(*current);
    while (current->kind != NodeKind::Base) {
        if (!visited.insert(current->id).second) {
            throw Error(ErrorCode::UnanchoredNode, "'" + id + "' sits on a drift cycle");
        }
        const auto& parents = parents_of(current->id);
        if (parents.size() != 1) {
            throw Error(ErrorCode::UnanchoredNode, "'" + id + "' lacks a unique fallback path");
        }
        current = &node(parents.front());
        chain.push_back(*current);
    }
    if (chain.back().id != kUndId) chain.push_back(und());
    return chain;
}

std::vector<LanguageNode> AnchorRegistry::family_query(int family) const {
    std::vector<LanguageNode> out;
    for (const auto& n : nodes_) {
        if (n.phi.family == family) out.push_back(n);
    }
    return out;
}

const LanguageNode& AnchorRegistry::collapse_index(const std::string& id, int threshold) const {
    if (threshold < 0 || threshold > kMaxVariant) {
        throw std::invalid_argument("collapse threshold must lie in 0..9");
    }
    const LanguageNode& n = node(id);
    if (n.kind == NodeKind::Base || n.phi.variant <= threshold) return n;
    return anchor_of(id);
}

void AnchorRegistry::insert_node(LanguageNode node) {
    index_[node.id] = nodes_.size();
    nodes_.push_back(std::move(node));
}

void AnchorRegistry::insert_edge(DriftEdge edge) {
    parents_[edge.to].push_back(edge.from);
    children_[edge.from].push_back(edge.to);
    edges_.push_back(std::move(edge));
}

void AnchorRegistry::rebuild_anchor_index() {
    anchor_index_.clear();
    for (const auto& start : nodes_) {
        const LanguageNode* current = &start;
        std::set<std::string> visited;
        bool broken = false;
        while (current->kind != NodeKind::Base) {
            if (!visited.insert(current->id).second) { broken = true; break; }
            const auto& parents = parents_of(current->id);
            if (parents.size() != 1) { broken = true; break; }
            current = &node(parents.front());
        }
        if (!broken) anchor_index_[start.id] = current->id;
    }
}

namespace {

// Base nodes reached by walking fallback links upward, stopping at the
// first base on each branch. Shared between validate() and nothing else;
// the memoized anchor_index_ is the fast path for valid registries.
std::set<std::string> anchor_set(const AnchorRegistry& reg, const std::string& id,
                                 std::set<std::string>& visiting) {
    const LanguageNode& n = reg.node(id);
    if (n.kind == NodeKind::Base) return {id};
    if (!visiting.insert(id).second) return {};
    std::set<std::string> out;
    for (const auto& parent : reg.parents_of(id)) {
        auto up = anchor_set(reg, parent, visiting);
        out.insert(up.begin(), up.end());
    }
    visiting.erase(id);
    return out;
}

} // namespace

ValidationReport AnchorRegistry::validate() const {
    ValidationReport report;
    auto add = [&](FindingLevel level, FindingCode code, const std::string& node_id, std::string message) {
        report.findings.push_back({level, code, node_id, std::move(message)});
    };

    // Cycle detection: iterative DFS with three colors over drift edges.
    std::set<std::string> on_cycle;
    {
        std::unordered_map<std::string, int> color;  // 0 white, 1 gray, 2 black
        std::vector<std::string> stack;
        std::function<void(const std::string&)> visit = [&](const std::string& id) {
            color[id] = 1;
            stack.push_back(id);
            for (const auto& child : children_of(id)) {
                int c = color[child];
                if (c == 0) {
                    visit(child);
                } else if (c == 1) {
                    // Everything from the child's stack slot onward is cyclic.
                    auto it = std::find(stack.begin(), stack.end(), child);
                    for (; it != stack.end(); ++it) on_cycle.insert(*it);
                }
            }
            stack.pop_back();
            color[id] = 2;
        };
        for (const auto& n : nodes_) {
            if (color[n.id] == 0) visit(n.id);
        }
    }
    for (const auto& n : nodes_) {
        if (on_cycle.count(n.id)) {
            add(FindingLevel::Error, FindingCode::CycleDetected, n.id, "participates in a drift cycle");
        }
    }

    // Anchor sets per node, then per-node and per-edge checks.
    std::map<std::string, std::set<std::string>> anchors;
    for (const auto& n : nodes_) {
        std::set<std::string> visiting;
        anchors[n.id] = anchor_set(*this, n.id, visiting);
    }
    for (const auto& n : nodes_) {
        if (n.kind == NodeKind::Drifted && anchors[n.id].empty()) {
            add(FindingLevel::Error, FindingCode::UnanchoredNode, n.id, "no base node reachable via fallback links");
        }
        if (parents_of(n.id).size() > 1) {
            add(FindingLevel::Error, FindingCode::MultipleAnchors, n.id,
                "hybrid drift: " + std::to_string(parents_of(n.id).size()) + " fallback parents");
        }
    }
    for (const auto& edge : edges_) {
        const auto& from_anchors = anchors[edge.from];
        const auto& to_anchors = anchors[edge.to];
        if (!from_anchors.empty() && !to_anchors.empty() && from_anchors != to_anchors) {
            add(FindingLevel::Error, FindingCode::CrossAnchorEdge, edge.from,
                "edge to '" + edge.to + "' joins nodes with different anchors");
        }
    }

    // Base identity uniqueness on (iso_code, phi).
    {
        std::map<std::pair<std::string, PhiIndex>, std::string> seen;
        for (const auto& n : nodes_) {
            if (n.kind != NodeKind::Base || !n.iso_code) continue;
            auto key = std::make_pair(*n.iso_code, n.phi);
            auto [it, inserted] = seen.emplace(key, n.id);
            if (!inserted) {
                add(FindingLevel::Error, FindingCode::DuplicateBaseIdentity, n.id,
                    "same (iso_code, phi) as '" + it->second + "'");
            }
        }
    }

    // Exactly one sentinel carrier, and it must be the und base node.
    {
        std::vector<const LanguageNode*> sentinels;
        for (const auto& n : nodes_) {
            if (is_undetermined(n.phi)) sentinels.push_back(&n);
        }
        if (sentinels.empty()) {
            add(FindingLevel::Error, FindingCode::SentinelViolation, "", "no undetermined sentinel node present");
        } else if (sentinels.size() > 1) {
            for (std::size_t i = 1; i < sentinels.size(); ++i) {
                add(FindingLevel::Error, FindingCode::SentinelViolation, sentinels[i]->id,
                    "phi99.9 already carried by '" + sentinels[0]->id + "'");
            }
        }
        if (!sentinels.empty()) {
            const LanguageNode* s = sentinels.front();
            if (s->kind != NodeKind::Base || !s->iso_code || *s->iso_code != "und") {
                add(FindingLevel::Error, FindingCode::SentinelViolation, s->id,
                    "sentinel must be a base node with iso code 'und'");
            }
        }
    }

    // Duplicate phi within a family is suspicious but legal.
    {
        std::map<PhiIndex, std::string> seen;
        for (const auto& n : nodes_) {
            auto [it, inserted] = seen.emplace(n.phi, n.id);
            if (!inserted) {
                add(FindingLevel::Warning, FindingCode::DuplicateVariant, n.id,
                    "phi index " + format_phi(n.phi) + " also used by '" + it->second + "'");
            }
        }
    }

    return report;
}

} // namespace phianchor
