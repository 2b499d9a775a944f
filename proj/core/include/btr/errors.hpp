#ifndef BTR_ERRORS_HPP
#define BTR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace btr {

enum class ErrorKind {
  Validation,
  InsufficientTruncation,
  LogarithmicTerm,
  ZeroLeadingCoefficient,
  AlphaZero,
  NonHolomorphicBlob,
  UnstablePair,
  NonSquareU,
  SizeLimitExceeded,
  ArityMismatch,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Carries the known order that would have been needed.
class InsufficientTruncation : public Error {
 public:
  InsufficientTruncation(int required, int available, const std::string& where)
      : Error(ErrorKind::InsufficientTruncation,
              where + ": coefficient of degree " + std::to_string(required) +
                  " requested, known order is " + std::to_string(available)),
        required_(required),
        available_(available) {}
  int required() const noexcept { return required_; }
  int available() const noexcept { return available_; }

 private:
  int required_;
  int available_;
};

}  // namespace btr

#endif
