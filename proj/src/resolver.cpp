#include "phianchor/resolver.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <deque>
#include <fstream>
#include <stdexcept>

#include "phianchor/errors.hpp"

namespace phianchor {

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        // Strip punctuation off both edges, keep interior marks.
        std::size_t begin = 0, end = current.size();
        while (begin < end && std::ispunct(static_cast<unsigned char>(current[begin]))) ++begin;
        while (end > begin && std::ispunct(static_cast<unsigned char>(current[end - 1]))) --end;
        if (end > begin) tokens.push_back(current.substr(begin, end - begin));
        current.clear();
    };
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else {
            current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    flush();
    return tokens;
}

double WordlistEstimator::estimate(std::string_view text, const LanguageNode& hypothesis) const {
    std::vector<std::string> tokens = tokenize(text);
    std::set<std::string> unique(tokens.begin(), tokens.end());
    if (unique.empty()) return 0.0;
    auto it = lexicons_.find(hypothesis.id);
    if (it == lexicons_.end()) return 0.0;
    std::size_t hits = 0;
    for (const auto& token : unique) {
        if (it->second.count(token)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(unique.size());
}

WordlistEstimator WordlistEstimator::from_directory(const std::filesystem::path& dir) {
    std::map<std::string, std::set<std::string>> lexicons;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".lex") continue;
        std::string node_id = entry.path().stem().string();
        std::ifstream in(entry.path());
        std::string line;
        auto& lexicon = lexicons[node_id];
        while (std::getline(in, line)) {
            for (auto& token : tokenize(line)) lexicon.insert(std::move(token));
        }
    }
    return WordlistEstimator(std::move(lexicons));
}

namespace {

void check_config(const ResolverConfig& config) {
    if (config.min_confidence < 0.0 || config.min_confidence > 1.0) {
        throw std::invalid_argument("min_confidence must lie in [0,1]");
    }
    if (config.max_drift < 0 || config.max_drift > kMaxVariant) {
        throw std::invalid_argument("max_drift must lie in 0..9");
    }
    if (config.improvement_margin < 0.0) {
        throw std::invalid_argument("improvement_margin must be non-negative");
    }
}

struct ScoredBase {
    const LanguageNode* node;
    double score;
};

// Argmax over base hypotheses, excluding the sentinel; und with score 0
// when nothing scores above zero.
ScoredBase best_base(std::string_view text, const AnchorRegistry& registry,
                     const ConfidenceEstimator& estimator) {
    const LanguageNode* best = nullptr;
    double best_score = 0.0;
    bool any_base = false;
    for (const auto& n : registry.nodes()) {
        if (n.kind != NodeKind::Base) continue;
        any_base = true;
        if (n.id == AnchorRegistry::kUndId) continue;
        double score = estimator.estimate(text, n);
        if (score <= 0.0) continue;
        if (!best || score > best_score || (score == best_score && n.id < best->id)) {
            best = &n;
            best_score = score;
        }
    }
    if (!any_base) {
        throw Error(ErrorCode::EmptyRegistry, "registry holds no base language");
    }
    if (!best) {
        return {&registry.und(), 0.0};
    }
    return {best, best_score};
}

// Children ordered by ascending variant, ties by id.
std::vector<std::string> ordered_children(const AnchorRegistry& registry, const std::string& id) {
    std::vector<std::string> children = registry.children_of(id);
    std::sort(children.begin(), children.end(), [&](const std::string& a, const std::string& b) {
        const LanguageNode& na = registry.node(a);
        const LanguageNode& nb = registry.node(b);
        if (na.phi.variant != nb.phi.variant) return na.phi.variant < nb.phi.variant;
        return a < b;
    });
    return children;
}

} // namespace

const LanguageNode& detect_initial(std::string_view text, const AnchorRegistry& registry,
                                   const ConfidenceEstimator& estimator) {
    return *best_base(text, registry, estimator).node;
}

ResolutionOutcome resolve_language(std::string_view text, const AnchorRegistry& registry,
                                   const ConfidenceEstimator& estimator,
                                   const ResolverConfig& config) {
    check_config(config);

    ScoredBase initial = best_base(text, registry, estimator);
    const LanguageNode* best = initial.node;
    double best_confidence = initial.score;

    ResolutionOutcome outcome;
    outcome.trace.push_back({best->id, best->phi, best_confidence});

    std::deque<std::string> queue;
    for (auto& child : ordered_children(registry, best->id)) queue.push_back(std::move(child));

    while (best_confidence < config.min_confidence && outcome.steps < config.max_drift &&
           !queue.empty()) {
        std::string id = std::move(queue.front());
        queue.pop_front();
        ++outcome.steps;

        const LanguageNode& hypothesis = registry.node(id);
        double confidence = estimator.estimate(text, hypothesis);
        outcome.trace.push_back({hypothesis.id, hypothesis.phi, confidence});

        if (confidence > best_confidence && confidence >= best_confidence + config.improvement_margin) {
            best = &hypothesis;
            best_confidence = confidence;
        }
        for (auto& child : ordered_children(registry, id)) queue.push_back(std::move(child));
    }

    if (best_confidence < config.min_confidence) {
        // Budget or hypotheses exhausted: maximal drift, undetermined.
        const LanguageNode& und = registry.und();
        const TraceEntry& last = outcome.trace.back();
        if (last.node_id != und.id || last.confidence != 0.0) {
            ++outcome.steps;
            outcome.trace.push_back({und.id, und.phi, 0.0});
        }
        outcome.node = und;
        outcome.phi = und.phi;
        outcome.confidence = 0.0;
        return outcome;
    }

    outcome.node = *best;
    outcome.phi = best->phi;
    outcome.confidence = best_confidence;
    return outcome;
}

std::vector<std::string> trace_lines(const ResolutionOutcome& outcome) {
    std::vector<std::string> lines;
    lines.reserve(outcome.trace.size());
    for (std::size_t i = 0; i < outcome.trace.size(); ++i) {
        const TraceEntry& entry = outcome.trace[i];
        lines.push_back("STEP " + std::to_string(i) + " " + entry.node_id + " " +
                        format_phi(entry.phi) + " " + format_confidence(entry.confidence));
    }
    return lines;
}

std::string format_confidence(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.9g", value);
    std::string out(buffer);
    if (out.find('.') == std::string::npos && out.find('e') == std::string::npos &&
        out.find("inf") == std::string::npos && out.find("nan") == std::string::npos) {
        out += ".0";
    }
    return out;
}

TurtleDocument export_trace(const ResolutionOutcome& outcome, const AnchorRegistry& registry,
                            PrefixMap prefixes, const std::string& subject_id,
                            const RdfSchema& schema) {
    prefixes.add("iso639", schema.base);
    if (subject_id.rfind("ex:", 0) == 0 && !prefixes.contains("ex")) {
        prefixes.add("ex", "http://example.org/lang#");
    }

    TurtleDocument doc;
    doc.prefixes = prefixes;
    RdfTerm subject = term_for_id(subject_id);
    const LanguageNode& anchor = registry.anchor_of(outcome.node.id);

    doc.triples.push_back({subject, RdfTerm::type_keyword(), term_for_iri(schema.resolved_anchor(), doc.prefixes)});
    doc.triples.push_back({subject, term_for_iri(schema.resolved_to(), doc.prefixes), term_for_id(anchor.id)});
    doc.triples.push_back({subject, term_for_iri(schema.phi_index(), doc.prefixes),
                           RdfTerm::literal(format_phi(outcome.phi))});
    doc.triples.push_back({subject, term_for_iri(schema.confidence(), doc.prefixes),
                           RdfTerm::literal(format_confidence(outcome.confidence))});
    return doc;
}

} // namespace phianchor
