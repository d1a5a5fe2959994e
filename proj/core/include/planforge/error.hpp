#pragma once

#include <stdexcept>
#include <string>

namespace planforge {

// Two failure classes with stable CLI exit codes: bad or missing input (1)
// and a geometric stage that cannot produce a valid result (2).
enum class ErrorKind { input = 1, geometry = 2 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string stage, const std::string& what)
      : std::runtime_error(what), kind_(kind), stage_(std::move(stage)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& stage() const noexcept { return stage_; }

 private:
  ErrorKind kind_;
  std::string stage_;
};

class InputError : public Error {
 public:
  InputError(std::string stage, const std::string& what)
      : Error(ErrorKind::input, std::move(stage), what) {}
};

class GeometryError : public Error {
 public:
  GeometryError(std::string stage, const std::string& what)
      : Error(ErrorKind::geometry, std::move(stage), what) {}
};

}  // namespace planforge
