#pragma once

#include <stdexcept>

namespace poolsim {

// Malformed input text: config documents, network/demand files.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Structurally readable input that violates a model contract
// (disconnected graph, origin == destination, bad parameter range).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Filesystem trouble: unreadable input, unwritable output.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace poolsim
