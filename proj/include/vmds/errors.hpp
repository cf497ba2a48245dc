#pragma once

#include <stdexcept>
#include <string>

namespace vmds {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define VMDS_DEFINE_ERROR(Name)                                                \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {}       \
  }

// algebra
VMDS_DEFINE_ERROR(NotPrime);
VMDS_DEFINE_ERROR(OrderTooLarge);
VMDS_DEFINE_ERROR(DivideByZero);
VMDS_DEFINE_ERROR(Singular);
VMDS_DEFINE_ERROR(ShapeMismatch);

// model
VMDS_DEFINE_ERROR(FieldMismatch);
VMDS_DEFINE_ERROR(InvariantViolation);
VMDS_DEFINE_ERROR(TooManyErasures);
VMDS_DEFINE_ERROR(NotMds);

// repair / analysis
VMDS_DEFINE_ERROR(InvalidScheme);
VMDS_DEFINE_ERROR(ErasedOutOfRange);
VMDS_DEFINE_ERROR(NotNormalized);
VMDS_DEFINE_ERROR(NotDiagonal);
VMDS_DEFINE_ERROR(NotConstant);
VMDS_DEFINE_ERROR(NotPowerOfR);
VMDS_DEFINE_ERROR(NoValidIndexSet);
VMDS_DEFINE_ERROR(InvalidParameters);

// construct / search
VMDS_DEFINE_ERROR(ConstructionFailed);
VMDS_DEFINE_ERROR(NotOptimalBandwidth);
VMDS_DEFINE_ERROR(EmptyKeepSet);
VMDS_DEFINE_ERROR(BudgetExhausted);

#undef VMDS_DEFINE_ERROR

/// Malformed code document. Carries the 1-based line of the offending token.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what)
      : Error("ParseError: line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace vmds
