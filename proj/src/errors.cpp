#include "phianchor/errors.hpp"

namespace phianchor {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedIndex: return "MalformedIndex";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::SentinelReserved: return "SentinelReserved";
        case ErrorCode::UnknownTarget: return "UnknownTarget";
        case ErrorCode::CycleDetected: return "CycleDetected";
        case ErrorCode::UnknownNode: return "UnknownNode";
        case ErrorCode::UnanchoredNode: return "UnanchoredNode";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UnknownPrefix: return "UnknownPrefix";
        case ErrorCode::MissingPhiIndex: return "MissingPhiIndex";
        case ErrorCode::MissingType: return "MissingType";
        case ErrorCode::InverseMismatch: return "InverseMismatch";
        case ErrorCode::NoIsoCode: return "NoIsoCode";
        case ErrorCode::UnknownCode: return "UnknownCode";
        case ErrorCode::EmptyRegistry: return "EmptyRegistry";
    }
    return "UnknownError";
}

} // namespace phianchor
