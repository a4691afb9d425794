#pragma once

#include <stdexcept>
#include <string>

namespace kroncalc {

enum class ErrorKind {
    Input,
    UnderdeterminedCoset,
    InconsistentSamples,
    NotRational,
    NonUnitInversion,
    RankDeficient,
    EnumerationCapExceeded,
    NotRegular,
    DirectionSingular,
    TruncationInsufficient,
    SingularCoordinateChange,
    NegativeMultiplicity,
    UnboundedCone,
    CapExceeded,
    NonregularX,
    ReconstructionFailed,
    OracleMismatch,
};

const char* error_name(ErrorKind k);

// 2 input error, 3 internal inconsistency, 4 cap exceeded
int exit_code(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace kroncalc
