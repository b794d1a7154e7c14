#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pmx {

enum class ErrorKind {
    format,
    domain,
    input,
    divisibility,
    precondition,
    unsupported,
    budget,
    cache,
    io,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so the CLI can map it
// onto an exit code without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string & message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string & message);

} // namespace pmx
