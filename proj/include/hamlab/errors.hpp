#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hamlab {

// Invalid argument values or violated preconditions (exit code 1 in the CLI).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input is legal in principle but exceeds a documented size cap of this tool.
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed serialized data.  `offset` is the byte position of the problem
// within the offending line / buffer.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (byte " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// Cooperative cancellation was requested while a long search was running.
class CancelledError : public std::runtime_error {
public:
    CancelledError() : std::runtime_error("operation cancelled") {}
};

}  // namespace hamlab
