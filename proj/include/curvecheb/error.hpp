#pragma once

#include <stdexcept>
#include <string>

namespace curvecheb {

enum class ErrorKind {
  InvalidInput,  // bad curve, descriptor, class or argument
  Numerical,     // a numerical routine could not produce a result
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void invalid(const std::string& what) {
  throw Error(ErrorKind::InvalidInput, what);
}

[[noreturn]] inline void numerical(const std::string& what) {
  throw Error(ErrorKind::Numerical, what);
}

}  // namespace curvecheb
