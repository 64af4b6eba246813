#ifndef ROTCLUS_ERROR_HPP
#define ROTCLUS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rotclus {

// Failure categories, mirrored by the C API status codes and the CLI
// exit codes: precondition -> 2, io -> 1, policy -> 3.
enum class ErrorKind {
    precondition,
    io,
    policy,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace rotclus

#endif
