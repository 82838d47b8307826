#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>

namespace phianchor {

// Two-part drift coordinate: family number (0..99) and variant digit (0..9).
// (99,9) is the reserved "undetermined" sentinel; only the built-in und node
// may carry it.
struct PhiIndex {
    int family = 0;
    int variant = 0;

    friend auto operator<=>(const PhiIndex&, const PhiIndex&) = default;

    static constexpr PhiIndex undetermined() { return {99, 9}; }
};

inline constexpr int kMaxFamily = 99;
inline constexpr int kMaxVariant = 9;

bool is_valid(PhiIndex p);
bool is_undetermined(PhiIndex p);

// Accepts the canonical form `phi<family>.<variant>` and the display alias
// with the Greek letter in place of "phi". Digits carry no padding.
// Throws Error{MalformedIndex} on shape violations, Error{OutOfRange} when
// the digits parse but exceed the bounds.
PhiIndex parse_phi(std::string_view text);

// Canonical text form; parse_phi(format_phi(p)) == p for every valid p.
std::string format_phi(PhiIndex p);

// Labeled description of a semantic change. Deliberately opaque: a short
// label plus free-form descriptor tags, no numeric coordinates.
struct DriftVector {
    std::string label;
    std::map<std::string, std::string> features;
    bool invertible = true;

    friend bool operator==(const DriftVector&, const DriftVector&) = default;

    static DriftVector zero() { return {}; }
};

bool is_zero(const DriftVector& v);

// Associative combination. The zero vector is a two-sided identity.
// Labels concatenate with '+', features merge with the right side winning
// on key conflicts, invertibility is the conjunction of both flags.
DriftVector compose_drift(const DriftVector& first, const DriftVector& second);

} // namespace phianchor
