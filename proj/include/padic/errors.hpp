#pragma once

#include <stdexcept>
#include <string>

namespace padic {

/// Base class for every mathematical precondition failure raised by the
/// library. `name()` is the stable identifier printed by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define PADIC_DEFINE_ERROR(Type)                                      \
  class Type : public Error {                                         \
   public:                                                            \
    explicit Type(const std::string& what) : Error(#Type, what) {}    \
  };

PADIC_DEFINE_ERROR(InvalidArgument)
PADIC_DEFINE_ERROR(NotAUnit)
PADIC_DEFINE_ERROR(ModulusMismatch)
PADIC_DEFINE_ERROR(NotIntegrable)
PADIC_DEFINE_ERROR(BadReduction)
PADIC_DEFINE_ERROR(SingularReduction)
PADIC_DEFINE_ERROR(DegenerateColumn)
PADIC_DEFINE_ERROR(PreconditionViolated)
PADIC_DEFINE_ERROR(PrecisionLoss)
PADIC_DEFINE_ERROR(TorsionCollapse)
PADIC_DEFINE_ERROR(EvenModulus)
PADIC_DEFINE_ERROR(FactorizationTooHard)
PADIC_DEFINE_ERROR(NotGoodOrdinary)
PADIC_DEFINE_ERROR(TorsionPoint)
PADIC_DEFINE_ERROR(A1Violated)
PADIC_DEFINE_ERROR(A2Violated)
PADIC_DEFINE_ERROR(InvariantViolated)

#undef PADIC_DEFINE_ERROR

}  // namespace padic
