#ifndef DETEM_ERRORS_HPP
#define DETEM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace detem {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoClosedFormEStep : Error {
  using Error::Error;
};
struct DegenerateStatistics : Error {
  using Error::Error;
};
struct NonFiniteWeight : Error {
  using Error::Error;
};
struct AllZeroMass : Error {
  using Error::Error;
};
struct SingularCovariance : Error {
  using Error::Error;
};
struct InitOutsideK0 : Error {
  using Error::Error;
};
struct UnknownIntegrand : Error {
  using Error::Error;
};
struct UnknownFamily : Error {
  using Error::Error;
};
struct TooFewPoints : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct VariantUnsupported : Error {
  using Error::Error;
};
struct InvalidConfig : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

}  // namespace detem

#endif
