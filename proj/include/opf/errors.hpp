#pragma once

#include <stdexcept>
#include <string>

namespace opf {

// Bad data handed to an operation (empty window, malformed pattern, ...).
struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad run configuration (non-positive minsup, conflicting flags, ...).
struct InvalidConfig : std::runtime_error {
    explicit InvalidConfig(const std::string& msg) : std::runtime_error(msg) {}
};

// An input file that could not be read as a dataset / report.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// A state the algorithms must never reach; indicates a bug, not bad input.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace opf
