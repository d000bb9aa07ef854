#pragma once

#include <stdexcept>
#include <string>

namespace robot {

// Base for all toolkit errors. CLI maps these to exit code 1 (domain)
// or 2 (config/usage).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& msg) : Error(msg) {}
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& msg) : Error(msg) {}
};

class IndexError : public ArgumentError {
 public:
  explicit IndexError(const std::string& msg) : ArgumentError(msg) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Operation requires state the object does not have (e.g. unscored suite).
class StateError : public Error {
 public:
  explicit StateError(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

class BadMagicError : public ParseError {
 public:
  explicit BadMagicError(const std::string& msg) : ParseError(msg) {}
};

class TruncatedFileError : public ParseError {
 public:
  explicit TruncatedFileError(const std::string& msg) : ParseError(msg) {}
};

class CountMismatchError : public ParseError {
 public:
  explicit CountMismatchError(const std::string& msg) : ParseError(msg) {}
};

}  // namespace robot
