#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace topicfilter {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition was violated by the caller.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A pipeline stage was asked to run before its upstream artifact exists.
class MissingArtifact : public Error {
 public:
  explicit MissingArtifact(std::string path)
      : Error("missing upstream artifact: " + path), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Configuration rejected; lists every offending key.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> keys, const std::string& detail = {})
      : Error(format(keys, detail)), keys_(std::move(keys)) {}

  const std::vector<std::string>& keys() const noexcept { return keys_; }

 private:
  static std::string format(const std::vector<std::string>& keys, const std::string& detail) {
    std::string msg = "invalid configuration:";
    for (const auto& k : keys) msg += " " + k;
    if (!detail.empty()) msg += " (" + detail + ")";
    return msg;
  }

  std::vector<std::string> keys_;
};

}  // namespace topicfilter
