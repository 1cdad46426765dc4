#ifndef MOPKIT_ERRORS_HPP
#define MOPKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mopkit {

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define MOPKIT_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  };

MOPKIT_DEFINE_ERROR(SingularSystem)
MOPKIT_DEFINE_ERROR(NonRationalSpectrum)
MOPKIT_DEFINE_ERROR(InconsistentMultiplicity)
MOPKIT_DEFINE_ERROR(FloatSmithUnsupported)
MOPKIT_DEFINE_ERROR(OracleMissing)
MOPKIT_DEFINE_ERROR(PoleOnSupport)
MOPKIT_DEFINE_ERROR(SeriesDivergent)
MOPKIT_DEFINE_ERROR(IntegrabilityViolation)
MOPKIT_DEFINE_ERROR(MissingSpectralData)
MOPKIT_DEFINE_ERROR(EvaluationAtPole)
MOPKIT_DEFINE_ERROR(BackendUnsupported)
MOPKIT_DEFINE_ERROR(ATViolation)
MOPKIT_DEFINE_ERROR(DimensionMismatch)
MOPKIT_DEFINE_ERROR(NotDivisible)
MOPKIT_DEFINE_ERROR(WindowError)

#undef MOPKIT_DEFINE_ERROR

// Zero pivot at leading minor `index` (0-based) of an unpivoted factorization.
class SingularLeadingMinor : public Error {
 public:
  explicit SingularLeadingMinor(long index)
      : Error("SingularLeadingMinor", "zero pivot at index " + std::to_string(index)),
        index_(index) {}
  long index() const { return index_; }

 private:
  long index_;
};

class ConfigInvalid : public Error {
 public:
  ConfigInvalid(std::string path, const std::string& what)
      : Error("ConfigInvalid", path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace mopkit

#endif
