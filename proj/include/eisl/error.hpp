#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eisl {

enum class ErrorKind {
    pole,             // argument at a pole / undefined point
    domain,           // precondition on the input violated
    non_convergence,  // a numerical self-consistency check failed
    budget_exceeded,  // enumeration work or output size over the cap
    memory_cap,       // residue table would exceed the memory cap
    ill_conditioned,  // fit has too few points
    round_trip,       // transform round trip over tolerance
    calibration,      // test-function calibration failed
    tolerance,        // acceptance tolerance failed
    parse,            // bad CLI / config / file input
    io,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace eisl
