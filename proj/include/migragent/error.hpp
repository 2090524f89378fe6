#pragma once

#include <stdexcept>
#include <string>

namespace migragent {

// Failure categories. These map one-to-one onto the status codes of the C API.
enum class ErrorKind {
    InvalidArgument,
    Config,
    Capacity,
    Precondition,
    Io,
    Schema,
    Singular,
    Domain,
    Render,
    Shape,
    Runtime,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace migragent
