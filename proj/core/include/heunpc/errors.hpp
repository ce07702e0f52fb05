#ifndef HEUNPC_ERRORS_HPP
#define HEUNPC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace heunpc {

// Two failure classes: violated preconditions/contracts (CLI exit 2) and
// numerical breakdowns (CLI exit 3).
enum class ErrorClass { Precondition, Numeric };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
  ErrorClass error_class() const { return cls_; }

 private:
  ErrorClass cls_;
};

#define HEUNPC_DEFINE_ERROR(Name, Cls)                                  \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(ErrorClass::Cls, what) {} \
  }

HEUNPC_DEFINE_ERROR(PoleError, Precondition);
HEUNPC_DEFINE_ERROR(DomainError, Precondition);
HEUNPC_DEFINE_ERROR(CriterionError, Precondition);
HEUNPC_DEFINE_ERROR(PreconditionError, Precondition);
HEUNPC_DEFINE_ERROR(DegenerateLambda, Precondition);
HEUNPC_DEFINE_ERROR(DegenerateData, Precondition);
HEUNPC_DEFINE_ERROR(RegionError, Precondition);

HEUNPC_DEFINE_ERROR(ConvergenceError, Numeric);
HEUNPC_DEFINE_ERROR(DependenceError, Numeric);
HEUNPC_DEFINE_ERROR(RootFindError, Numeric);
HEUNPC_DEFINE_ERROR(NotAnEigenvalue, Numeric);
HEUNPC_DEFINE_ERROR(EvalError, Numeric);
HEUNPC_DEFINE_ERROR(SingularGauge, Numeric);
HEUNPC_DEFINE_ERROR(SingularFrame, Numeric);
HEUNPC_DEFINE_ERROR(DivisionError, Numeric);

#undef HEUNPC_DEFINE_ERROR

}  // namespace heunpc

#endif
