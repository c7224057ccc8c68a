#ifndef UNIFACT_ERRORS_HPP
#define UNIFACT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace unifact {

// Error taxonomy mirrored by the CLI exit codes:
//   domain -> 1, numeric -> 2, io -> 3.
class Error : public std::runtime_error {
public:
    enum class Kind { domain = 1, numeric = 2, io = 3 };

    Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(Kind::domain, what) {}
};

// Convergence / tracking / resource failures.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(Kind::numeric, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(Kind::io, what) {}
};

} // namespace unifact

#endif
