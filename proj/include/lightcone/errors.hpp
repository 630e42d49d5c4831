#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lightcone {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

class DegenerateInputError : public Error {
public:
    using Error::Error;
};

// Raised when a point would have to be rescaled through the infinity boundary of a quadric.
class InfinityBoundaryError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class SingularParametrizationError : public Error {
public:
    using Error::Error;
};

class DegenerateConfigurationError : public Error {
public:
    using Error::Error;
};

class ComplexConfigurationError : public Error {
public:
    using Error::Error;
};

class ExcludedCaseError : public Error {
public:
    using Error::Error;
};

class BranchAmbiguityError : public Error {
public:
    using Error::Error;
};

class DegenerateQuarticError : public Error {
public:
    using Error::Error;
};

class InconsistentGaugeError : public Error {
public:
    using Error::Error;
};

// Errors tied to a specific grid node carry its flat index.
class NodeError : public Error {
public:
    NodeError(const std::string& what, std::size_t node)
        : Error(what + " (node " + std::to_string(node) + ")"), node_(node) {}
    std::size_t node() const { return node_; }

private:
    std::size_t node_;
};

class ImmersionFailureError : public NodeError {
public:
    using NodeError::NodeError;
};

class NotTriplyOrthogonalError : public NodeError {
public:
    using NodeError::NodeError;
};

class DivergenceError : public NodeError {
public:
    using NodeError::NodeError;
};

class InconsistentAnsatzError : public Error {
public:
    using Error::Error;
};

class SingularNetError : public Error {
public:
    using Error::Error;
};

}  // namespace lightcone
