#pragma once

// Shared test machinery: fixture loading, random registry generators and a
// brute-force structural checker kept independent of the library's
// validate() implementation.

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "phianchor/rdf_convert.hpp"
#include "phianchor/registry.hpp"
#include "phianchor/turtle.hpp"

namespace phianchor::testsupport {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline std::string fixture_path(const std::string& name) {
    return std::string(PHIANCHOR_FIXTURE_DIR) + "/" + name;
}

inline TurtleDocument load_fixture_doc() {
    return parse_turtle(read_file(fixture_path("languages.ttl")));
}

inline AnchorRegistry load_fixture_registry() {
    return registry_from_triples(load_fixture_doc());
}

// Random registry built exclusively through the checked mutation API:
// per family one base plus a drift tree of bounded depth.
inline AnchorRegistry random_valid_registry(std::mt19937& rng, int families, int nodes_per_family,
                                            int max_depth = 9) {
    AnchorRegistry reg;
    std::uniform_int_distribution<int> variant_dist(0, 9);
    std::uniform_int_distribution<int> coin(0, 1);

    for (int f = 1; f <= families; ++f) {
        int family_number = f % 99;  // leave 99 for the sentinel
        std::string base_id = "ex:B" + std::to_string(f);
        LanguageNode base;
        base.id = base_id;
        base.phi = {family_number, variant_dist(rng)};
        if (base.phi == PhiIndex::undetermined()) base.phi.variant = 0;
        if (coin(rng)) base.iso_code = "l" + std::to_string(f % 100);
        reg.add_base(base);

        std::vector<std::pair<std::string, int>> pool{{base_id, 0}};  // id, depth
        for (int i = 0; i < nodes_per_family - 1; ++i) {
            std::vector<std::size_t> eligible;
            for (std::size_t p = 0; p < pool.size(); ++p)
                if (pool[p].second < max_depth) eligible.push_back(p);
            if (eligible.empty()) break;
            std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
            auto [parent, depth] = pool[eligible[pick(rng)]];
            LanguageNode child;
            child.id = base_id + "v" + std::to_string(i);
            child.phi = {family_number, variant_dist(rng)};
            if (child.phi == PhiIndex::undetermined()) child.phi.variant = 0;
            DriftVector delta;
            delta.label = "step" + std::to_string(i);
            reg.add_drifted(child, parent, delta);
            pool.push_back({child.id, depth + 1});
        }
    }
    return reg;
}

// Arbitrary structure assembled raw: roughly half the samples start from a
// valid registry (optionally hit by one random mutation), the rest are
// fully random node/edge soup. Keeps both verdicts well represented.
inline AnchorRegistry random_arbitrary_registry(std::mt19937& rng, int max_nodes = 12) {
    std::uniform_int_distribution<int> percent(0, 99);
    std::uniform_int_distribution<int> variant_dist(0, 9);

    if (percent(rng) < 45) {
        AnchorRegistry valid = random_valid_registry(rng, 1 + percent(rng) % 2, 2 + percent(rng) % 4);
        std::vector<LanguageNode> nodes = valid.nodes();
        std::vector<DriftEdge> edges = valid.edges();
        if (nodes.size() > static_cast<std::size_t>(max_nodes)) nodes.resize(max_nodes);

        if (percent(rng) < 50 && !nodes.empty()) {
            std::uniform_int_distribution<std::size_t> node_pick(0, nodes.size() - 1);
            switch (percent(rng) % 5) {
                case 0:  // extra edge, often a cycle or hybrid parent
                    edges.push_back({nodes[node_pick(rng)].id, nodes[node_pick(rng)].id, {}});
                    break;
                case 1: {  // duplicate base identity
                    LanguageNode clone = nodes[node_pick(rng)];
                    clone.id += "_dup";
                    clone.kind = NodeKind::Base;
                    nodes.push_back(clone);
                    break;
                }
                case 2:  // sentinel abuse on an ordinary node
                    nodes[node_pick(rng)].phi = PhiIndex::undetermined();
                    break;
                case 3:  // drop the sentinel
                    nodes.erase(nodes.begin());
                    break;
                default: {  // orphaned drifted node
                    LanguageNode orphan;
                    orphan.id = "ex:orphan";
                    orphan.kind = NodeKind::Drifted;
                    orphan.phi = {3, variant_dist(rng)};
                    nodes.push_back(orphan);
                }
            }
        }

        // Mutations may have orphaned edge endpoints; keep only valid refs.
        std::set<std::string> ids;
        for (const auto& n : nodes) ids.insert(n.id);
        std::vector<DriftEdge> kept;
        for (auto& e : edges) {
            if (ids.count(e.from) && ids.count(e.to)) kept.push_back(std::move(e));
        }
        return AnchorRegistry::from_parts(std::move(nodes), std::move(kept));
    }

    std::uniform_int_distribution<int> count_dist(1, max_nodes);
    int n = count_dist(rng);
    std::vector<LanguageNode> nodes;

    bool with_sentinel = percent(rng) < 90;
    if (with_sentinel) {
        LanguageNode und;
        und.id = std::string(AnchorRegistry::kUndId);
        und.kind = NodeKind::Base;
        und.phi = PhiIndex::undetermined();
        und.iso_code = "und";
        nodes.push_back(und);
    }

    for (int i = 0; i < n; ++i) {
        LanguageNode node;
        node.id = "ex:N" + std::to_string(i);
        node.kind = percent(rng) < 35 ? NodeKind::Base : NodeKind::Drifted;
        node.phi = {percent(rng) % 12, variant_dist(rng)};
        if (percent(rng) < 4) node.phi = PhiIndex::undetermined();  // sentinel abuse
        if (percent(rng) < 50) node.iso_code = std::string(1, char('a' + percent(rng) % 4)) + "aa";
        nodes.push_back(node);
    }

    std::vector<DriftEdge> edges;
    std::set<std::pair<std::string, std::string>> seen;
    int edge_count = percent(rng) % (n + 3);
    std::uniform_int_distribution<std::size_t> node_pick(0, nodes.size() - 1);
    for (int i = 0; i < edge_count; ++i) {
        const std::string& from = nodes[node_pick(rng)].id;
        const std::string& to = nodes[node_pick(rng)].id;
        if (seen.emplace(from, to).second) edges.push_back({from, to, {}});
    }
    return AnchorRegistry::from_parts(std::move(nodes), std::move(edges));
}

// ---------------------------------------------------------------------------
// Brute-force checker. Works from the raw node/edge lists only: reachability
// through boolean matrix powers and first-base anchor sets through full
// upward path enumeration.
// ---------------------------------------------------------------------------

struct OracleView {
    std::vector<const LanguageNode*> nodes;
    std::map<std::string, std::size_t> slot;
    std::vector<std::vector<bool>> edge;  // edge[i][j]: drift step i -> j
};

inline OracleView oracle_view(const AnchorRegistry& reg) {
    OracleView view;
    for (const auto& n : reg.nodes()) {
        view.slot[n.id] = view.nodes.size();
        view.nodes.push_back(&n);
    }
    std::size_t n = view.nodes.size();
    view.edge.assign(n, std::vector<bool>(n, false));
    for (const auto& e : reg.edges()) {
        view.edge[view.slot.at(e.from)][view.slot.at(e.to)] = true;
    }
    return view;
}

// Any walk of length 1..n returning to its start marks a cycle.
inline bool oracle_has_cycle(const OracleView& view) {
    std::size_t n = view.nodes.size();
    std::vector<std::vector<bool>> reach = view.edge;
    for (std::size_t step = 1; step < n; ++step) {
        std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                if (reach[i][k])
                    for (std::size_t j = 0; j < n; ++j)
                        if (view.edge[k][j]) next[i][j] = true;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (next[i][j]) reach[i][j] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (reach[i][i]) return true;
    return false;
}

// First base hit on every upward simple path from `start`.
inline void oracle_collect_anchors(const OracleView& view, std::size_t current,
                                   std::vector<bool>& on_path, std::set<std::size_t>& out) {
    std::size_t n = view.nodes.size();
    for (std::size_t parent = 0; parent < n; ++parent) {
        if (!view.edge[parent][current] || on_path[parent]) continue;
        if (view.nodes[parent]->kind == NodeKind::Base) {
            out.insert(parent);
            continue;
        }
        on_path[parent] = true;
        oracle_collect_anchors(view, parent, on_path, out);
        on_path[parent] = false;
    }
}

inline std::set<std::size_t> oracle_anchors(const OracleView& view, std::size_t start) {
    if (view.nodes[start]->kind == NodeKind::Base) return {start};
    std::set<std::size_t> out;
    std::vector<bool> on_path(view.nodes.size(), false);
    on_path[start] = true;
    oracle_collect_anchors(view, start, on_path, out);
    return out;
}

inline bool oracle_accepts(const AnchorRegistry& reg) {
    OracleView view = oracle_view(reg);
    std::size_t n = view.nodes.size();

    if (oracle_has_cycle(view)) return false;

    std::vector<std::set<std::size_t>> anchors(n);
    for (std::size_t i = 0; i < n; ++i) anchors[i] = oracle_anchors(view, i);

    for (std::size_t i = 0; i < n; ++i) {
        if (view.nodes[i]->kind == NodeKind::Drifted && anchors[i].empty()) return false;
        std::size_t in_degree = 0;
        for (std::size_t p = 0; p < n; ++p)
            if (view.edge[p][i]) ++in_degree;
        if (in_degree > 1) return false;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (view.edge[i][j] && !anchors[i].empty() && !anchors[j].empty() && anchors[i] != anchors[j])
                return false;

    std::set<std::pair<std::string, std::pair<int, int>>> base_identity;
    for (std::size_t i = 0; i < n; ++i) {
        const LanguageNode* node = view.nodes[i];
        if (node->kind != NodeKind::Base || !node->iso_code) continue;
        if (!base_identity.emplace(*node->iso_code, std::make_pair(node->phi.family, node->phi.variant)).second)
            return false;
    }

    std::vector<const LanguageNode*> sentinels;
    for (std::size_t i = 0; i < n; ++i)
        if (is_undetermined(view.nodes[i]->phi)) sentinels.push_back(view.nodes[i]);
    if (sentinels.size() != 1) return false;
    const LanguageNode* s = sentinels.front();
    if (s->kind != NodeKind::Base || !s->iso_code || *s->iso_code != "und") return false;

    return true;
}

// Same node ids carrying the same kind/phi/iso/equivalence, same edge pairs.
inline bool registries_isomorphic(const AnchorRegistry& a, const AnchorRegistry& b) {
    auto node_keys = [](const AnchorRegistry& r) {
        std::set<std::string> out;
        for (const auto& n : r.nodes()) {
            out.insert(n.id + "|" + (n.kind == NodeKind::Base ? "B" : "D") + "|" + format_phi(n.phi) +
                       "|" + n.iso_code.value_or("-") + "|" + n.equivalent_to.value_or("-"));
        }
        return out;
    };
    auto edge_keys = [](const AnchorRegistry& r) {
        std::set<std::string> out;
        for (const auto& e : r.edges()) out.insert(e.from + "->" + e.to);
        return out;
    };
    return node_keys(a) == node_keys(b) && edge_keys(a) == edge_keys(b);
}

} // namespace phianchor::testsupport
