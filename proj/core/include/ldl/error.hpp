#pragma once

#include <stdexcept>
#include <string>

namespace ldl {

enum class ErrorKind {
    domain,
    precondition,
    resource,
    unsupported,
    consistency,
    incomplete_support,
    catalog,
    config,
    dependency,
    divergence,
    empty_table,
    degenerate_sieve,
    width,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Thrown by evaluate_S / pnt_weighted_sum when the prime limit does not
// exhaust the support of phi-hat.  Carries the limit that would.
class IncompleteSupport : public Error {
public:
    IncompleteSupport(const std::string& what, double required)
        : Error(ErrorKind::incomplete_support, what), required_(required) {}
    double required_limit() const noexcept { return required_; }

private:
    double required_;
};

} // namespace ldl
