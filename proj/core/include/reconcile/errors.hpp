#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace reconcile {

/// Error categories; they map 1:1 onto the CLI exit-code contract
/// (parse/schema -> 2, domain -> 3, resource -> 4).
enum class ErrorKind { Parse, Schema, Domain, Resource };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Formula syntax error carrying the byte offset and the token set the
/// parser would have accepted at that position.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected,
              std::string message)
      : Error(ErrorKind::Parse, std::move(message)),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace reconcile
