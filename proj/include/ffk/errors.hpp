#pragma once

#include <stdexcept>
#include <string>

namespace ffk {

/// Invalid input parameters (CLI exit code 2).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configured resource cap was exceeded (CLI exit code 3).
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A mathematical identity that must hold did not (CLI exit code 4).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A linear system has no solution for the given right-hand side.
class NoSolution : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ffk

namespace ffk {

/// Process exit status for an exception escaping a command: 2 parameter,
/// 3 resource cap, 4 contract violation, 1 otherwise.
inline int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const ParameterError*>(&e) != nullptr) return 2;
    if (dynamic_cast<const CapExceeded*>(&e) != nullptr) return 3;
    if (dynamic_cast<const ContractViolation*>(&e) != nullptr) return 4;
    if (dynamic_cast<const NoSolution*>(&e) != nullptr) return 4;
    return 1;
}

}  // namespace ffk
