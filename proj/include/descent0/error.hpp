#pragma once

#include <stdexcept>
#include <string>

namespace descent0 {

enum class ErrorKind {
  ZeroInput,
  EvenModulus,
  NonPositiveModulus,
  NonResidue,
  DegenerateSpace,
  DepthExceeded,
  BudgetExceeded,
  SingularCurve,
  InvalidTwist,
  InvalidInput,
  BadModulus,
  EmptyInput,
  DuplicateCurve,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace descent0
