#include "phianchor/bcp47.hpp"

#include "phianchor/errors.hpp"

namespace phianchor {

namespace {

constexpr std::string_view kPrivateUse = "-x-";

const LanguageNode* base_for_code(const AnchorRegistry& registry, std::string_view code) {
    for (const auto& n : registry.nodes()) {
        if (n.kind == NodeKind::Base && n.iso_code && *n.iso_code == code) return &n;
    }
    return nullptr;
}

} // namespace

std::string encode_bcp47(const AnchorRegistry& registry, const std::string& node_id) {
    const LanguageNode& n = registry.node(node_id);
    const LanguageNode& anchor = registry.anchor_of(node_id);
    if (!anchor.iso_code) {
        throw Error(ErrorCode::NoIsoCode, "anchor '" + anchor.id + "' carries no iso code");
    }
    if (n.kind == NodeKind::Base) return *anchor.iso_code;
    return *anchor.iso_code + std::string(kPrivateUse) + format_phi(n.phi);
}

DecodedTag decode_bcp47(const AnchorRegistry& registry, std::string_view tag) {
    auto ext = tag.find(kPrivateUse);
    std::string_view code = tag.substr(0, ext);

    const LanguageNode* base = base_for_code(registry, code);
    if (!base) {
        throw Error(ErrorCode::UnknownCode, "no base language with code '" + std::string(code) + "'");
    }
    if (ext == std::string_view::npos) {
        return {base, false};
    }

    PhiIndex phi = parse_phi(tag.substr(ext + kPrivateUse.size()));
    for (const auto& n : registry.nodes()) {
        if (n.phi == phi && registry.anchor_of(n.id).id == base->id) {
            return {&n, false};
        }
    }
    return {base, true};
}

} // namespace phianchor
