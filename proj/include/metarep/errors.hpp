#pragma once

#include <stdexcept>
#include <string>

namespace metarep {

// Error hierarchy; every named failure mode gets its own type so callers
// (and the CLI exit-code mapping) can discriminate without string matching.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// input / parsing
struct ParseError : Error { using Error::Error; };
struct MultiComponentLink : Error { using Error::Error; };
struct InvalidPD : Error { using Error::Error; };
struct NotCoprime : Error { using Error::Error; };
struct UnknownKnot : Error { using Error::Error; };
struct MissingLongitude : Error { using Error::Error; };

// algebraic preconditions
struct NormalizationFailure : Error { using Error::Error; };
struct InfiniteFamily : Error { using Error::Error; };
struct Intractable : Error { using Error::Error; };
struct RelatorViolation : Error { using Error::Error; };
struct DecompositionMismatch : Error { using Error::Error; };
struct SingularDenominator : Error { using Error::Error; };
struct NotRegular : Error { using Error::Error; };

// numerics
struct ToleranceAmbiguous : Error { using Error::Error; };

struct ObstructionNonzero : Error {
    int order;
    ObstructionNonzero(int k, const std::string& msg) : Error(msg), order(k) {}
};

struct NewtonDiverged : Error {
    double t_value;
    NewtonDiverged(double t, const std::string& msg) : Error(msg), t_value(t) {}
};

} // namespace metarep
