#pragma once

#include <stdexcept>
#include <string>

namespace qfhe {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid LweParams (modulus too small for the declared budget, bad p, ...).
struct ParameterError : Error {
    using Error::Error;
};

// Operands or keys live at different key levels.
struct KeyLevelError : Error {
    using Error::Error;
};

// A homomorphic combination would exceed the correctness budget.
struct NoiseError : Error {
    using Error::Error;
};

// Malformed caller input (arity mismatch, out-of-range symbol, ...).
struct InputError : Error {
    using Error::Error;
};

// Exhaustive analysis requested on an instance that is too large.
struct SizeError : Error {
    using Error::Error;
};

// Water-flow or flow-function construction hit inconsistent wiring.
struct FlowError : Error {
    using Error::Error;
};

struct ScheduleError : Error {
    using Error::Error;
};

// Register or instance size beyond what the simulators support.
struct ResourceError : Error {
    using Error::Error;
};

// Forcing a zero-probability measurement branch.
struct MeasurementError : Error {
    using Error::Error;
};

// Circuit T budget exceeded.
struct DepthError : Error {
    using Error::Error;
};

}  // namespace qfhe
