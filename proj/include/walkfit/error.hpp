#pragma once

#include <stdexcept>
#include <string>

namespace walkfit {

// Base of every error thrown by the library. `is_user_error()` separates bad
// input (exit code 2 in the CLI) from internal failures (exit code 1).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, bool user_error = true)
      : std::runtime_error(what), user_error_(user_error) {}
  bool is_user_error() const { return user_error_; }

 private:
  bool user_error_;
};

class InvalidGeometry : public Error {
 public:
  explicit InvalidGeometry(const std::string& what) : Error("invalid geometry: " + what) {}
};

class InvalidQuery : public Error {
 public:
  explicit InvalidQuery(const std::string& what) : Error("invalid query: " + what) {}
};

class SamplingFailure : public Error {
 public:
  explicit SamplingFailure(const std::string& what) : Error("sampling failure: " + what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("configuration error: " + what) {}
};

// Schema violations carry the JSON pointer of the offending node.
class SchemaError : public Error {
 public:
  SchemaError(std::string pointer, const std::string& what)
      : Error("schema error at " + (pointer.empty() ? std::string("/") : pointer) + ": " + what),
        pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string raw)
      : Error("parse error: " + what), raw_(std::move(raw)) {}
  const std::string& raw() const { return raw_; }

 private:
  std::string raw_;
};

class CatalogMiss : public Error {
 public:
  explicit CatalogMiss(std::string name)
      : Error("asset not in catalog: " + name), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class ProviderError : public Error {
 public:
  explicit ProviderError(const std::string& what) : Error("provider error: " + what, false) {}
};

}  // namespace walkfit
