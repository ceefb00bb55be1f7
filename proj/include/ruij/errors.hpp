#pragma once

#include <stdexcept>
#include <string>

namespace ruij {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define RUIJ_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                        \
   public:                                                           \
    using Error::Error;                                              \
    const char* kind() const noexcept override { return #Name; }     \
  }

RUIJ_DEFINE_ERROR(DimensionMismatch);
RUIJ_DEFINE_ERROR(DivisionByZero);
// Quotient does not exist in the Laurent ring.  Every call site divides by a
// known divisor, so this always indicates an algebra bug.
RUIJ_DEFINE_ERROR(NonExactDivision);
RUIJ_DEFINE_ERROR(NotSymmetric);
RUIJ_DEFINE_ERROR(NotDominant);
RUIJ_DEFINE_ERROR(NonUnitSeries);
RUIJ_DEFINE_ERROR(TriangularityViolation);
RUIJ_DEFINE_ERROR(EigenvalueCollision);
RUIJ_DEFINE_ERROR(GenericityViolation);
RUIJ_DEFINE_ERROR(NonConstantRatio);
RUIJ_DEFINE_ERROR(NonConstantQuotient);
RUIJ_DEFINE_ERROR(MismatchedCoefficient);
RUIJ_DEFINE_ERROR(PoleProximity);
RUIJ_DEFINE_ERROR(ConfigError);

#undef RUIJ_DEFINE_ERROR

}  // namespace ruij
