#ifndef PM4COVER_ERROR_HPP
#define PM4COVER_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pm4cover {

enum class Err {
    EvenOrder,
    SpokeClash,
    ChordCoverage,
    LoopChord,
    WrongProfile,
    RoleUnavailable,
    InvalidCircuit,
    ImproperInput,
    InternalProofViolation,
    ColouringUnavailable,
    OddCircuit,
    UnequalBoundary,
    DegenerateReduction,
    SizeCap,
    InfeasibleSpec,
    RejectionBudgetExceeded,
    Syntax,
    Validation,
    Degree,
    Reference,
    NoQualifyingTwoFactor,
};

const char* err_name(Err code);

struct Error : std::runtime_error {
    Err code;
    Error(Err c, const std::string& msg)
        : std::runtime_error(std::string(err_name(c)) + ": " + msg), code(c) {}
};

// Internal invariants that the construction guarantees. A failure here is a
// bug in the engine, never a property of the input.
inline void internal_check(bool cond, const char* what) {
    if (!cond) throw Error(Err::InternalProofViolation, what);
}

} // namespace pm4cover

#endif
