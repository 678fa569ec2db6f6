#pragma once

#include <stdexcept>
#include <string>

namespace ecmobius {

/// Broad failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
    config,      // bad input file, bad flag, precondition on user data
    singular,    // discriminant vanishes
    domain,      // argument outside the domain of a function
    numerical,   // quadrature / tail / accuracy failure
    io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace ecmobius
