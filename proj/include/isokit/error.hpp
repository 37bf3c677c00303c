#pragma once

#include <stdexcept>
#include <string>

namespace isokit {

/// Base of every error the library throws. `kind()` is the stable name that
/// the CLI reports; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define ISOKIT_DEFINE_ERROR(Name)                                     \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  }

ISOKIT_DEFINE_ERROR(ParseError);
ISOKIT_DEFINE_ERROR(ConfigError);
ISOKIT_DEFINE_ERROR(DegenerateInput);
ISOKIT_DEFINE_ERROR(NotFullDimensional);
ISOKIT_DEFINE_ERROR(NoConvergence);
ISOKIT_DEFINE_ERROR(TooFewContacts);
ISOKIT_DEFINE_ERROR(NoDecomposition);
ISOKIT_DEFINE_ERROR(InfeasibleMagnitudes);
ISOKIT_DEFINE_ERROR(NoSignAssignment);
ISOKIT_DEFINE_ERROR(SingularPoint);
ISOKIT_DEFINE_ERROR(IndexError);
ISOKIT_DEFINE_ERROR(InvariantError);
ISOKIT_DEFINE_ERROR(PreconditionError);
ISOKIT_DEFINE_ERROR(SingularLattice);
ISOKIT_DEFINE_ERROR(ModeError);

#undef ISOKIT_DEFINE_ERROR

}  // namespace isokit
