#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qgrnn {

// Invalid arguments are reported with std::invalid_argument and domain
// violations (e.g. cosine of a zero vector) with std::domain_error. The types
// below cover file and data problems.

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LookupError : public std::runtime_error {
 public:
  LookupError(const std::string& key, const std::string& what)
      : std::runtime_error(what + ": '" + key + "'"), key_(key) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace qgrnn
