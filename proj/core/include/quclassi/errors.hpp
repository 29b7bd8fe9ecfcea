#pragma once

#include <stdexcept>
#include <string>

namespace quclassi {

// Error taxonomy used across the library. Each maps to a distinct failure
// mode so callers (and the CLI exit codes) can tell them apart.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct IndexError : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct LayoutError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct CheckpointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace quclassi
