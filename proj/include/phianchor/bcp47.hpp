#pragma once

#include <string>
#include <string_view>

#include "phianchor/registry.hpp"

namespace phianchor {

struct DecodedTag {
    const LanguageNode* node;  // borrowed from the registry
    bool unknown_variant;      // tag named a phi no registry node carries
};

// "<anchor iso>" for base nodes, "<anchor iso>-x-<phi text>" for drifted
// ones; the dot stays, keeping every private-use subtag within 8 chars.
// Errors: UnknownNode, NoIsoCode (anchor carries no code).
std::string encode_bcp47(const AnchorRegistry& registry, const std::string& node_id);

// Inverse lookup: a bare code resolves to the base node carrying it, a
// "-x-" extension to the node under that anchor with the matching phi.
// An unknown phi over a known code degrades to the anchor with the
// unknown_variant flag set. Errors: UnknownCode, phi parsing errors.
DecodedTag decode_bcp47(const AnchorRegistry& registry, std::string_view tag);

} // namespace phianchor
