#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "phianchor/rdf_convert.hpp"
#include "phianchor/registry.hpp"
#include "phianchor/turtle.hpp"

namespace phianchor {

struct ResolverConfig {
    double min_confidence = 0.6;
    int max_drift = 9;                 // bounded by the variant digit
    double improvement_margin = 0.1;   // "improves significantly" cutoff
};

// Pluggable scorer; must be deterministic and total over registry nodes.
class ConfidenceEstimator {
public:
    virtual ~ConfidenceEstimator() = default;
    virtual double estimate(std::string_view text, const LanguageNode& hypothesis) const = 0;
};

// Token-overlap scorer over per-node wordlists:
// |tokens(text) ∩ lexicon| / |tokens(text)|, 0 for empty text or unlisted nodes.
class WordlistEstimator final : public ConfidenceEstimator {
public:
    explicit WordlistEstimator(std::map<std::string, std::set<std::string>> lexicons)
        : lexicons_(std::move(lexicons)) {}

    double estimate(std::string_view text, const LanguageNode& hypothesis) const override;

    // Loads every "<node-id>.lex" file in the directory, one token per line.
    static WordlistEstimator from_directory(const std::filesystem::path& dir);

private:
    std::map<std::string, std::set<std::string>> lexicons_;
};

// Whitespace split, case-folded, punctuation stripped from token edges.
std::vector<std::string> tokenize(std::string_view text);

struct TraceEntry {
    std::string node_id;
    PhiIndex phi;
    double confidence;
};

struct ResolutionOutcome {
    LanguageNode node;
    PhiIndex phi;
    double confidence = 0.0;
    int steps = 0;
    std::vector<TraceEntry> trace;  // steps + 1 entries, last one is the result
};

// Highest-scoring base hypothesis; ties go to the lexicographically
// smaller id, zero evidence everywhere yields und.
// Errors: EmptyRegistry.
const LanguageNode& detect_initial(std::string_view text, const AnchorRegistry& registry,
                                   const ConfidenceEstimator& estimator);

// Iterative widening: start at the initial base hypothesis, then walk its
// drift subtree breadth-first in ascending variant order while confidence
// stays below the threshold, accepting only hypotheses that beat the best
// score by the improvement margin. Exhausting the budget falls back to und.
// Errors: EmptyRegistry.
ResolutionOutcome resolve_language(std::string_view text, const AnchorRegistry& registry,
                                   const ConfidenceEstimator& estimator,
                                   const ResolverConfig& config = {});

// "STEP <n> <node-id> <phi> <confidence>" per trace entry.
std::vector<std::string> trace_lines(const ResolutionOutcome& outcome);

// Decimal rendering with at least one fractional digit ("0.0", "0.5").
std::string format_confidence(double value);

// One ResolvedAnchor subject: type, resolvedTo (the outcome's anchor),
// final phiIndex and confidence literals.
TurtleDocument export_trace(const ResolutionOutcome& outcome, const AnchorRegistry& registry,
                            PrefixMap prefixes, const std::string& subject_id = "ex:resolution1",
                            const RdfSchema& schema = {});

} // namespace phianchor
