#pragma once

#include <stdexcept>
#include <string>

namespace symdom {

enum class ErrorKind {
    InvalidParameter,
    DomainViolation,
    SingularEvaluation,
    IndexOutOfRange,
    ConvergenceFailure,
    DegenerateSample,
    InvalidCutoff,
    Unsupported,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool ok, ErrorKind kind, const char* what) {
    if (!ok) fail(kind, what);
}

} // namespace symdom
