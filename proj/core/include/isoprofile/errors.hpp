#ifndef ISOPROFILE_ERRORS_HPP
#define ISOPROFILE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace isoprofile {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define ISOPROFILE_DEFINE_ERROR(Name)                          \
  class Name : public Error {                                  \
   public:                                                     \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

ISOPROFILE_DEFINE_ERROR(DegenerateInput);
ISOPROFILE_DEFINE_ERROR(OriginNotInterior);
ISOPROFILE_DEFINE_ERROR(MethodDimensionMismatch);
ISOPROFILE_DEFINE_ERROR(DimensionMismatch);
ISOPROFILE_DEFINE_ERROR(CenterOutsideBody);
ISOPROFILE_DEFINE_ERROR(NoCommonCore);
ISOPROFILE_DEFINE_ERROR(PointOutsideSource);
ISOPROFILE_DEFINE_ERROR(InvalidRadii);
ISOPROFILE_DEFINE_ERROR(NonpositiveAngle);
ISOPROFILE_DEFINE_ERROR(NonpositiveVolume);
ISOPROFILE_DEFINE_ERROR(InteriorPoint);
ISOPROFILE_DEFINE_ERROR(VolumeOutOfRange);
ISOPROFILE_DEFINE_ERROR(ResolutionTooCoarse);
ISOPROFILE_DEFINE_ERROR(WitnessNotBall);
ISOPROFILE_DEFINE_ERROR(InvalidVolume);
ISOPROFILE_DEFINE_ERROR(InvalidArgument);
ISOPROFILE_DEFINE_ERROR(IoError);

#undef ISOPROFILE_DEFINE_ERROR

}  // namespace isoprofile

#endif
