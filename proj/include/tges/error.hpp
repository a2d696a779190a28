#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tges {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A structural precondition on a graph was violated (cycle, bad node index, ...).
class GraphError : public Error {
public:
    using Error::Error;
};

/// Raised by consistent_extension and everything built on it.
class ExtensionError : public Error {
public:
    enum class Kind { NoConsistentExtension, NoKnowledgeEncodingExtension };

    ExtensionError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

class KnowledgeError : public Error {
public:
    using Error::Error;
};

/// Parent covariance submatrix is singular.
class CollinearParentsError : public Error {
public:
    using Error::Error;
};

/// Malformed text input. Line and column are 1-based; column 0 means "whole line".
class ParseError : public Error {
public:
    ParseError(std::string source, std::size_t line, std::size_t column, const std::string& msg)
        : Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          source_(std::move(source)),
          line_(line),
          column_(column) {}

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string source_;
    std::size_t line_;
    std::size_t column_;
};

/// Names in one input (e.g. a tier file) do not match the names in another (the data).
class LabelMismatchError : public Error {
public:
    using Error::Error;
};

}  // namespace tges
