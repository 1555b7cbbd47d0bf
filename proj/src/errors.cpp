#include "symdom/errors.hpp"

namespace symdom {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::DomainViolation: return "domain-violation";
    case ErrorKind::SingularEvaluation: return "singular-evaluation";
    case ErrorKind::IndexOutOfRange: return "index-out-of-range";
    case ErrorKind::ConvergenceFailure: return "failure-to-converge";
    case ErrorKind::DegenerateSample: return "degenerate-sample";
    case ErrorKind::InvalidCutoff: return "invalid-cutoff";
    case ErrorKind::Unsupported: return "unsupported";
    }
    return "unknown";
}

void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

} // namespace symdom
