#pragma once

// Error taxonomy shared by the whole library. Every throw site uses a stable
// code string (e.g. "OverlappingBlocks", "PreconditionViolated") so callers
// and tests can dispatch without parsing messages. Categories map to CLI
// exit codes: input -> 1, precondition -> 2, internal -> 3.

#include <stdexcept>
#include <string>
#include <utility>

namespace itrans {

class error : public std::runtime_error {
public:
    enum class category { input, precondition, internal };

    error(category cat, std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), cat_(cat), code_(std::move(code)) {}

    category cat() const { return cat_; }
    const std::string& code() const { return code_; }

private:
    category cat_;
    std::string code_;
};

[[noreturn]] inline void fail_input(const std::string& code, const std::string& message) {
    throw error(error::category::input, code, message);
}

[[noreturn]] inline void fail_precondition(const std::string& detail) {
    throw error(error::category::precondition, "PreconditionViolated", detail);
}

[[noreturn]] inline void fail_internal(const std::string& code, const std::string& message) {
    throw error(error::category::internal, code, message);
}

// Always-on invariant check (independent of NDEBUG): the engines' derived
// sequences and counting identities are part of the contract, so violating
// them must surface in release runs of the test suites as well.
#define ITRANS_CHECK(cond, message)                                            \
    do {                                                                       \
        if (!(cond)) ::itrans::fail_internal("InvariantViolated", (message));  \
    } while (0)

} // namespace itrans
