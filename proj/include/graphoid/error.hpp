#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace graphoid {

enum class ErrorCode {
    UnknownDimension,
    UnknownLevel,
    UnknownMember,
    UnreachableLevel,
    UnknownType,
    UnknownSlot,
    ArityMismatch,
    DuplicateNode,
    DuplicateType,
    ValueOutsideDomain,
    UnknownEndpoint,
    EmptyNodeSet,
    EmptyEdge,
    TargetLacksDimension,
    LevelMismatch,
    UnknownMeasure,
    TypeMismatch,
    UnorderedComparison,
    CannotRollDown,
    MissingLineage,
    InvalidSchema,
    InvalidInstance,
    MalformedStar,
    MalformedInput,
    Parse,
    UnknownBinding,
    Rebinding,
    Overflow,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// One line per violated invariant; empty means valid.
using ValidationReport = std::vector<std::string>;

} // namespace graphoid
