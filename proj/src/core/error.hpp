#pragma once

#include <stdexcept>
#include <string>

namespace radscf {

// Error categories map one-to-one onto the process exit codes and the C API
// status values, so they are fixed numbers rather than an enum class count.
enum class ErrorCode : int {
    input = 2,     // malformed files, impossible charge/multiplicity, bad flags
    scf = 3,       // SCF did not converge where convergence is required
    internal = 4,  // broken invariant; indicates a bug, not a user mistake
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

struct InputError : Error {
    explicit InputError(const std::string& what) : Error(ErrorCode::input, what) {}
};

struct ScfError : Error {
    explicit ScfError(const std::string& what) : Error(ErrorCode::scf, what) {}
};

struct InternalError : Error {
    explicit InternalError(const std::string& what) : Error(ErrorCode::internal, what) {}
};

}  // namespace radscf
