#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fptzone {

// Base class for all toolkit errors. `code()` is a stable machine-readable
// identifier used in CLI error output.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual const char* code() const { return "error"; }
};

// Malformed expression text. `position` is a 0-based byte offset into the input.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& expected)
        : Error("syntax error at offset " + std::to_string(position) + ": expected " + expected),
          position(position),
          expected(expected) {}
    const char* code() const override { return "syntax_error"; }

    std::size_t position;
    std::string expected;
};

// An identifier that is neither `t` nor a known function name.
class UnknownIdentifier : public Error {
public:
    UnknownIdentifier(std::size_t position, const std::string& name)
        : Error("unknown identifier '" + name + "' at offset " + std::to_string(position)),
          position(position),
          name(name) {}
    const char* code() const override { return "unknown_identifier"; }

    std::size_t position;
    std::string name;
};

#define FPTZONE_DEFINE_ERROR(Name, id)                                  \
    class Name : public Error {                                         \
    public:                                                             \
        explicit Name(const std::string& what) : Error(what) {}         \
        const char* code() const override { return id; }                \
    }

// Expression evaluation left the real domain (ln of a non-positive value,
// division by zero, non-finite result, ...).
FPTZONE_DEFINE_ERROR(EvalError, "eval_error");

// Parameter constraints violated (sigma <= 0, K >= V0, alpha out of range, ...).
FPTZONE_DEFINE_ERROR(InvalidParams, "invalid_params");

// Inflation adjustment does not satisfy ln A(0) = 0.
FPTZONE_DEFINE_ERROR(InvalidInflation, "invalid_inflation");

// Declared asymptotic profile outside the supported taxonomy.
FPTZONE_DEFINE_ERROR(UnsupportedProfile, "unsupported_profile");

// Probe grid too coarse or wrongly placed for tail estimation.
FPTZONE_DEFINE_ERROR(DegenerateGrid, "degenerate_grid");

// Asymptotic limits violate their partial order; no zone can be assigned.
FPTZONE_DEFINE_ERROR(InconsistentLimits, "inconsistent_limits");

// Tail domination past the scan horizon was neither attested nor implied
// by a declared profile.
FPTZONE_DEFINE_ERROR(UnattestedTail, "unattested_tail");

// The barrier stays below the critical reference through the end of the scan.
FPTZONE_DEFINE_ERROR(NoDomination, "no_domination");

// Chord support condition violated on the switch interval.
FPTZONE_DEFINE_ERROR(ChordViolation, "chord_violation");

// A function handle attested monotone was observed to decrease.
FPTZONE_DEFINE_ERROR(NotMonotone, "not_monotone");

// A monotone function never reaches the requested level within the search range.
FPTZONE_DEFINE_ERROR(NoCrossing, "no_crossing");

// Pathwise comparison requested for barriers that are not ordered.
FPTZONE_DEFINE_ERROR(NotDominated, "not_dominated");

// Simulation configuration out of range.
FPTZONE_DEFINE_ERROR(ConfigError, "config_error");

// Too few samples for the requested estimate.
FPTZONE_DEFINE_ERROR(DegenerateSamples, "degenerate_samples");

// Malformed input document (JSON schema violations, unreadable files).
FPTZONE_DEFINE_ERROR(InputError, "input_error");

#undef FPTZONE_DEFINE_ERROR

}  // namespace fptzone
