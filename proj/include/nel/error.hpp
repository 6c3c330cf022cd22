#pragma once

#include <stdexcept>
#include <string>

namespace nel {

// Base class for all library errors so callers can catch everything in one arm.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file. Carries path and 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& msg)
      : Error(path + ":" + std::to_string(line) + ": " + msg), path_(path), line_(line) {}
  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

// Two entity records share an id.
class DuplicateIdError : public Error {
 public:
  explicit DuplicateIdError(const std::string& id) : Error("duplicate entity id: " + id) {}
};

// An id was referenced that no loaded entity carries.
class UnknownIdError : public Error {
 public:
  explicit UnknownIdError(const std::string& id) : Error("unknown entity id: " + id) {}
};

// Training data contains only one label class.
class SingleClassError : public Error {
 public:
  SingleClassError() : Error("training set must contain both a positive and a negative sample") {}
};

// Feature vector length does not match the model.
class DimensionError : public Error {
 public:
  DimensionError(std::size_t expected, std::size_t got)
      : Error("feature dimension mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(got)) {}
};

// Invalid configuration value or inconsistent artifacts (e.g. model vs. KB ontology).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace nel
