#pragma once

#include <stdexcept>
#include <string>

namespace moyal {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live on different symplectic structures.
class StructureMismatch : public Error {
public:
    StructureMismatch() : Error("operands belong to different symplectic structures") {}
};

/// A coordinate or generator index is outside 1..D.
class IndexError : public Error {
public:
    using Error::Error;
};

/// An argument violates an operation's precondition.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Expression or file syntax error. `column` is 1-based (0 when unknown).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t column)
        : Error(column > 0 ? what + " at column " + std::to_string(column) : what),
          column_(column) {}

    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

}  // namespace moyal
