#ifndef GCOH_ERRORS_HPP
#define GCOH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gcoh {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GCOH_DEFINE_ERROR(Name) \
  class Name : public Error {   \
   public:                      \
    using Error::Error;         \
  }

GCOH_DEFINE_ERROR(NonPrimeModulus);
GCOH_DEFINE_ERROR(DimensionMismatch);
GCOH_DEFINE_ERROR(OverflowError);
GCOH_DEFINE_ERROR(ShapeMismatch);
GCOH_DEFINE_ERROR(UnknownName);
GCOH_DEFINE_ERROR(NotSurjective);
GCOH_DEFINE_ERROR(NotHomomorphism);
GCOH_DEFINE_ERROR(NotNormal);
GCOH_DEFINE_ERROR(DegreeTooHigh);
GCOH_DEFINE_ERROR(NotACocycle);
GCOH_DEFINE_ERROR(InvalidSystem);
GCOH_DEFINE_ERROR(InputError);
GCOH_DEFINE_ERROR(UnknownScenario);
GCOH_DEFINE_ERROR(InternalInconsistency);

#undef GCOH_DEFINE_ERROR

// Thrown when an enumeration would exceed its configured size budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, unsigned long long examined = 0)
      : Error(what), examined_(examined) {}
  unsigned long long examined() const { return examined_; }

 private:
  unsigned long long examined_;
};

}  // namespace gcoh

#endif
