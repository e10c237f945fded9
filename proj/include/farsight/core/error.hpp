#pragma once

#include <stdexcept>
#include <string>

namespace farsight {

// Broad failure classes; the CLI maps these onto process exit codes
// (InvalidInput -> 2, Io -> 3).
enum class ErrorKind {
    InvalidInput,
    Io,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string msg)
        : std::runtime_error(std::move(msg)), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_invalid(const std::string& msg) {
    throw Error(ErrorKind::InvalidInput, msg);
}

[[noreturn]] inline void fail_io(const std::string& msg) {
    throw Error(ErrorKind::Io, msg);
}

}  // namespace farsight
