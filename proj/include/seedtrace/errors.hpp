#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace seedtrace {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter is outside its documented range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Input data (a tree, a placement, a config file) is malformed.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A combinatorial enumeration exceeded its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

enum class TreeErrorKind {
  kEmpty,
  kOutOfRange,
  kSelfLoop,
  kDuplicateEdge,
  kCycle,
  kDisconnected,
  kParse,
};

const char* to_string(TreeErrorKind kind);

class TreeError : public InputError {
 public:
  TreeError(TreeErrorKind kind, const std::string& what,
            std::optional<std::size_t> line = std::nullopt);

  TreeErrorKind kind() const { return kind_; }
  /// 1-based line of the offending record when the tree came from a file.
  std::optional<std::size_t> line() const { return line_; }

 private:
  TreeErrorKind kind_;
  std::optional<std::size_t> line_;
};

}  // namespace seedtrace
