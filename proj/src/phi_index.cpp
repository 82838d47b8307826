#include "phianchor/phi_index.hpp"

#include "phianchor/errors.hpp"

namespace phianchor {

namespace {

// UTF-8 bytes of the lowercase Greek phi used as display alias.
constexpr std::string_view kGreekPhi = "\xcf\x86";

bool all_digits(std::string_view s) {
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return !s.empty();
}

// Parses a digit run with the no-padding rule. `limit` is the largest legal
// value; longer-than-needed runs are OutOfRange once they are known to be
// pure digits, anything else is MalformedIndex.
int parse_component(std::string_view digits, int limit, std::string_view whole) {
    if (!all_digits(digits)) {
        throw Error(ErrorCode::MalformedIndex, "expected decimal digits in '" + std::string(whole) + "'");
    }
    if (digits.size() > 1 && digits.front() == '0') {
        throw Error(ErrorCode::MalformedIndex, "padded digits in '" + std::string(whole) + "'");
    }
    // limit <= 99, so any run of 3+ digits is numerically out of range.
    if (digits.size() > 2) {
        throw Error(ErrorCode::OutOfRange, "'" + std::string(whole) + "' exceeds the index bounds");
    }
    int value = 0;
    for (char c : digits) value = value * 10 + (c - '0');
    if (value > limit) {
        throw Error(ErrorCode::OutOfRange, "'" + std::string(whole) + "' exceeds the index bounds");
    }
    return value;
}

} // namespace

bool is_valid(PhiIndex p) {
    return p.family >= 0 && p.family <= kMaxFamily && p.variant >= 0 && p.variant <= kMaxVariant;
}

bool is_undetermined(PhiIndex p) {
    return p == PhiIndex::undetermined();
}

PhiIndex parse_phi(std::string_view text) {
    std::string_view rest = text;
    if (rest.substr(0, 3) == "phi") {
        rest.remove_prefix(3);
    } else if (rest.substr(0, kGreekPhi.size()) == kGreekPhi) {
        rest.remove_prefix(kGreekPhi.size());
    } else {
        throw Error(ErrorCode::MalformedIndex, "'" + std::string(text) + "' lacks the phi prefix");
    }

    auto dot = rest.find('.');
    if (dot == std::string_view::npos) {
        throw Error(ErrorCode::MalformedIndex, "'" + std::string(text) + "' lacks the family.variant separator");
    }
    int family = parse_component(rest.substr(0, dot), kMaxFamily, text);
    int variant = parse_component(rest.substr(dot + 1), kMaxVariant, text);
    return {family, variant};
}

std::string format_phi(PhiIndex p) {
    return "phi" + std::to_string(p.family) + "." + std::to_string(p.variant);
}

bool is_zero(const DriftVector& v) {
    return v.label.empty() && v.features.empty() && v.invertible;
}

DriftVector compose_drift(const DriftVector& first, const DriftVector& second) {
    DriftVector out;
    if (first.label.empty()) {
        out.label = second.label;
    } else if (second.label.empty()) {
        out.label = first.label;
    } else {
        out.label = first.label + "+" + second.label;
    }
    out.features = first.features;
    for (const auto& [key, value] : second.features) {
        out.features[key] = value;
    }
    out.invertible = first.invertible && second.invertible;
    return out;
}

} // namespace phianchor
