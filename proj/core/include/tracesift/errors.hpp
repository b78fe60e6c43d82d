#pragma once

#include <stdexcept>
#include <string>

namespace tracesift {

/// Two traces were compared that do not share a call universe.
class UniverseMismatchError : public std::invalid_argument {
public:
  explicit UniverseMismatchError(const std::string& what)
      : std::invalid_argument(what) {}
};

/// An operation was given fewer calls/samples than it needs.
class InsufficientDataError : public std::invalid_argument {
public:
  explicit InsufficientDataError(const std::string& what)
      : std::invalid_argument(what) {}
};

/// A file could not be parsed against its expected format.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A trace mentions a call type absent from the model's universe.
class UnknownCallError : public std::runtime_error {
public:
  explicit UnknownCallError(const std::string& call)
      : std::runtime_error("unknown call type: " + call), call_(call) {}
  const std::string& call() const { return call_; }

private:
  std::string call_;
};

}  // namespace tracesift
