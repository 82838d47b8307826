// Command-line front door: validation, anchor chains, text resolution,
// family queries and format conversion over Turtle registry files.
//
// Exit codes: 0 success, 1 domain finding, 2 usage or parse error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "phianchor/bcp47.hpp"
#include "phianchor/errors.hpp"
#include "phianchor/rdf_convert.hpp"
#include "phianchor/registry.hpp"
#include "phianchor/resolver.hpp"
#include "phianchor/turtle.hpp"

namespace {

using namespace phianchor;

constexpr int kExitOk = 0;
constexpr int kExitFinding = 1;
constexpr int kExitUsage = 2;

struct LoadedRegistry {
    AnchorRegistry registry;
    TurtleDocument document;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::SyntaxError, "cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

LoadedRegistry load_registry(const std::string& path) {
    TurtleDocument doc = parse_turtle(read_file(path));
    AnchorRegistry registry = registry_from_triples(doc);
    return {std::move(registry), std::move(doc)};
}

// Selector priority: node id, then iso code, then canonical phi text.
const LanguageNode* select_node(const AnchorRegistry& registry, const std::string& selector) {
    if (const LanguageNode* n = registry.find(selector)) return n;
    for (const auto& n : registry.nodes()) {
        if (n.iso_code && *n.iso_code == selector) return &n;
    }
    try {
        PhiIndex phi = parse_phi(selector);
        for (const auto& n : registry.nodes()) {
            if (n.phi == phi) return &n;
        }
    } catch (const Error&) {
        // not a phi selector; fall through
    }
    return nullptr;
}

std::string node_line(const LanguageNode& n) {
    std::string line = format_phi(n.phi) + " " + n.id;
    if (n.iso_code) line += " " + *n.iso_code;
    return line;
}

int cmd_validate(const std::string& registry_path) {
    LoadedRegistry loaded = load_registry(registry_path);
    ValidationReport report = loaded.registry.validate();
    for (const auto& line : report.lines()) std::cout << line << "\n";
    return report.ok() ? kExitOk : kExitFinding;
}

int cmd_anchor(const std::string& registry_path, const std::string& selector,
               std::optional<int> threshold) {
    LoadedRegistry loaded = load_registry(registry_path);
    const LanguageNode* n = select_node(loaded.registry, selector);
    if (!n) {
        std::cerr << "error: no node matches '" << selector << "'\n";
        return kExitFinding;
    }
    std::string id = n->id;
    if (threshold) id = loaded.registry.collapse_index(id, *threshold).id;
    for (const auto& link : loaded.registry.fallback_chain(id)) {
        std::cout << node_line(link) << "\n";
    }
    return kExitOk;
}

int cmd_resolve(const std::string& registry_path, const std::string& lexicon_dir,
                const std::string& text, const ResolverConfig& config, bool export_rdf) {
    LoadedRegistry loaded = load_registry(registry_path);
    WordlistEstimator estimator = WordlistEstimator::from_directory(lexicon_dir);
    ResolutionOutcome outcome = resolve_language(text, loaded.registry, estimator, config);

    const std::string& shown = outcome.node.iso_code ? *outcome.node.iso_code : outcome.node.id;
    std::cout << shown << " " << format_phi(outcome.phi) << " " << format_confidence(outcome.confidence)
              << "\n";
    for (const auto& line : trace_lines(outcome)) std::cout << line << "\n";

    if (export_rdf) {
        TurtleDocument doc = export_trace(outcome, loaded.registry, loaded.document.prefixes);
        std::cout << serialize_turtle(doc);
    }
    return kExitOk;
}

int cmd_family(const std::string& registry_path, int family) {
    LoadedRegistry loaded = load_registry(registry_path);
    for (const auto& n : loaded.registry.family_query(family)) {
        std::cout << node_line(n) << "\n";
    }
    return kExitOk;
}

int cmd_convert(const std::string& registry_path, bool to_bcp47, bool normalize,
                std::optional<int> threshold) {
    if (to_bcp47 == normalize) {
        std::cerr << "error: convert needs exactly one of --to-bcp47 / --normalize\n";
        return kExitUsage;
    }
    if (normalize) {
        TurtleDocument doc = parse_turtle(read_file(registry_path));
        std::cout << serialize_turtle(doc);
        return kExitOk;
    }
    LoadedRegistry loaded = load_registry(registry_path);
    for (const auto& n : loaded.registry.nodes()) {
        std::string id = n.id;
        if (threshold) id = loaded.registry.collapse_index(id, *threshold).id;
        std::string tag;
        try {
            tag = encode_bcp47(loaded.registry, id);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NoIsoCode) throw;
            tag = "-";
        }
        std::cout << n.id << "\t" << tag << "\n";
    }
    return kExitOk;
}

int cmd_parse(const std::string& text) {
    PhiIndex phi = parse_phi(text);
    std::cout << format_phi(phi) << " family=" << phi.family << " variant=" << phi.variant;
    if (is_undetermined(phi)) std::cout << " undetermined";
    std::cout << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Anchored language identity registry: validation, resolution and interchange"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string registry_path;
    std::string lexicon_dir;
    ResolverConfig config;
    int threshold = -1;
    app.add_option("--registry", registry_path, "Turtle registry file");
    app.add_option("--lexicons", lexicon_dir, "directory of <node-id>.lex wordlists");
    app.add_option("--min-confidence", config.min_confidence, "resolution acceptance threshold");
    app.add_option("--max-drift", config.max_drift, "maximum drift hypotheses to try");
    app.add_option("--margin", config.improvement_margin, "required confidence improvement");
    app.add_option("--threshold", threshold, "collapse variants above this digit to their anchor");

    auto* validate = app.add_subcommand("validate", "check registry invariants");
    auto* anchor = app.add_subcommand("anchor", "print the fallback chain of a node");
    std::string selector;
    anchor->add_option("selector", selector, "node id, iso code or phi text")->required();
    auto* resolve = app.add_subcommand("resolve", "resolve text to a language identity");
    std::vector<std::string> words;
    bool export_rdf = false;
    resolve->add_option("text", words, "input text");
    resolve->add_flag("--export-rdf", export_rdf, "also emit the resolution as Turtle");
    auto* family = app.add_subcommand("family", "list nodes of a phi family");
    int family_number = 0;
    family->add_option("number", family_number, "family number")->required();
    auto* convert = app.add_subcommand("convert", "emit BCP 47 tags or normalized Turtle");
    bool to_bcp47 = false, normalize = false;
    convert->add_flag("--to-bcp47", to_bcp47, "print <id>\\t<tag> per node");
    convert->add_flag("--normalize", normalize, "re-serialize the registry deterministically");
    auto* parse = app.add_subcommand("parse", "parse a phi index");
    std::string phi_text;
    parse->add_option("text", phi_text, "phi index text")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    std::optional<int> collapse;
    if (threshold >= 0) {
        if (threshold > kMaxVariant) {
            std::cerr << "error: --threshold must lie in 0..9\n";
            return kExitUsage;
        }
        collapse = threshold;
    }

    auto need_registry = [&]() -> bool {
        if (registry_path.empty()) {
            std::cerr << "error: --registry is required for this command\n";
            return false;
        }
        return true;
    };

    try {
        if (*parse) return cmd_parse(phi_text);
        if (!need_registry()) return kExitUsage;
        if (*validate) return cmd_validate(registry_path);
        if (*anchor) return cmd_anchor(registry_path, selector, collapse);
        if (*resolve) {
            if (lexicon_dir.empty()) {
                std::cerr << "error: --lexicons is required for resolve\n";
                return kExitUsage;
            }
            std::string text;
            for (std::size_t i = 0; i < words.size(); ++i) {
                if (i) text += " ";
                text += words[i];
            }
            return cmd_resolve(registry_path, lexicon_dir, text, config, export_rdf);
        }
        if (*family) {
            if (family_number < 0 || family_number > kMaxFamily) {
                std::cerr << "error: family number must lie in 0..99\n";
                return kExitUsage;
            }
            return cmd_family(registry_path, family_number);
        }
        if (*convert) return cmd_convert(registry_path, to_bcp47, normalize, collapse);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case ErrorCode::SyntaxError:
            case ErrorCode::UnknownPrefix:
            case ErrorCode::MissingType:
            case ErrorCode::MissingPhiIndex:
            case ErrorCode::InverseMismatch:
            case ErrorCode::MalformedIndex:
            case ErrorCode::OutOfRange:
                return kExitUsage;
            default:
                return kExitFinding;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
