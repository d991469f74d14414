#pragma once

#include <stdexcept>
#include <string>

namespace sblob {

// A hook product would divide by a bracket that vanishes at the active
// specialization.
struct HookUndefined : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};

// Polynomial division that was expected to be exact left a remainder.
struct InexactDivision : std::domain_error {
    using std::domain_error::domain_error;
};

struct NonUnitParameter : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CharacterRankDeficiency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConditionUnsatisfied : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace sblob
