#ifndef CTQW_ERRORS_HPP
#define CTQW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ctqw {

// Two families of failures: bad input (validation) and numerical trouble.
// The CLI maps them to exit codes 1 and 2 respectively.

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
public:
    ParseError(const std::string& what, int line)
        : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

class ConnectivityError : public ValidationError {
public:
    explicit ConnectivityError(int unreachable_node)
        : ValidationError("network is disconnected: node " + std::to_string(unreachable_node) +
                          " is unreachable from node 1"),
          node_(unreachable_node) {}

    /// 1-based index of the first node not reached from node 1.
    int unreachable_node() const noexcept { return node_; }

private:
    int node_;
};

class SpectrumMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InsufficientData : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NoPlateau : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace ctqw

#endif // CTQW_ERRORS_HPP
